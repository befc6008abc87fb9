#pragma once

#include <optional>
#include <string>
#include <vector>

#include "boolelab/term.hpp"

namespace boolelab {

/// Universally quantified Horn sentence:
///   (forall vars) (a_1 & ... & a_k) -> consequent
/// An empty consequent stands for falsum, which encodes negative sentences
/// such as 0 != 1 as (0 = 1) -> false.
class HornSentence {
 public:
  /// Throws std::invalid_argument if a term uses a variable outside `vars`,
  /// if `vars` repeats a name, or if a falsum sentence has no antecedent.
  HornSentence(std::vector<std::string> vars, std::vector<Equation> antecedents, std::optional<Equation> consequent);

  /// Quantifies over the variables of the equation, sorted.
  static HornSentence identity(const Equation& e);
  /// Quantifies over all variables occurring, in order of first occurrence.
  static HornSentence closure(std::vector<Equation> antecedents, std::optional<Equation> consequent);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Equation>& antecedents() const { return antecedents_; }
  const std::optional<Equation>& consequent() const { return consequent_; }
  bool is_negative() const { return !consequent_.has_value(); }

  /// Every term occurring in the sentence, antecedents first.
  std::vector<Term> terms() const;

 private:
  std::vector<std::string> vars_;
  std::vector<Equation> antecedents_;
  std::optional<Equation> consequent_;
};

/// "(forall x, y) x + y = x" / "(forall x) x*x = x & x = 0 -> false".
std::string to_string(const HornSentence& s);

/// One line of the theory format: `a & b -> c`, `-> c`, `a -> false`, or a
/// bare equation `c`. Variables are quantified in order of first occurrence.
HornSentence parse_sentence(std::string_view line);
std::string to_theory_line(const HornSentence& s);

}  // namespace boolelab
