#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boolelab/kernels.hpp"
#include "boolelab/sentence.hpp"
#include "boolelab/term.hpp"

namespace boolelab {

/// Index into an algebra's carrier.
using Element = std::uint32_t;

struct Operation {
  std::string name;
  unsigned arity;

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// Term symbols map to operations by name: "+", "-", "*", and the decimal
/// spelling of an integer literal for constants ("0", "1", "2", ...).
std::string operation_symbol(Term::Kind kind);

/// Finite partial algebra. Tables are stored row-major; an entry may be
/// undefined.
class FinitePartialAlgebra {
 public:
  /// All entries start undefined. Throws std::invalid_argument on an empty
  /// carrier or duplicated element/operation names.
  FinitePartialAlgebra(std::vector<std::string> carrier, std::vector<Operation> signature);

  std::size_t size() const { return carrier_.size(); }
  const std::vector<std::string>& carrier() const { return carrier_; }
  const std::string& name(Element e) const { return carrier_.at(e); }
  std::optional<Element> find_element(const std::string& name) const;

  const std::vector<Operation>& signature() const { return signature_; }
  std::optional<std::size_t> find_operation(const std::string& name) const;

  /// n^arity.
  std::size_t table_size(std::size_t op) const { return tables_.at(op).size(); }
  std::size_t flat_index(std::size_t op, std::span<const Element> args) const;
  std::vector<Element> unflatten(std::size_t op, std::size_t index) const;

  std::optional<Element> apply(std::size_t op, std::span<const Element> args) const;
  std::optional<Element> entry(std::size_t op, std::size_t index) const;
  void define(std::size_t op, std::span<const Element> args, Element result);
  void set_entry(std::size_t op, std::size_t index, std::optional<Element> result);

  std::size_t defined_count(std::size_t op) const;
  bool is_total() const;

  friend bool operator==(const FinitePartialAlgebra&, const FinitePartialAlgebra&) = default;

  static constexpr Element kUndefined = std::numeric_limits<Element>::max();

 private:
  std::vector<std::string> carrier_;
  std::vector<Operation> signature_;
  std::vector<std::vector<Element>> tables_;
};

using Assignment = std::map<std::string, Element>;

std::string to_string(const FinitePartialAlgebra& a, const Assignment& assignment);

/// Strict evaluation: undefined as soon as any subterm is undefined.
/// Throws EvaluationError for an unassigned variable, or for an operation
/// symbol missing from the signature (integer literals other than 0 and 1
/// evaluate to undefined instead).
std::optional<Element> eval_term(const FinitePartialAlgebra& a, const Term& t, const Assignment& assignment);

struct HoldsResult {
  bool holds;
  /// Least falsifying assignment inside the sentence's domain, variables in
  /// quantifier order, elements in carrier order.
  std::optional<Assignment> witness;
};

/// Partial-algebra satisfaction: the matrix must be true wherever every term
/// of the sentence (antecedents and consequent) is defined.
HoldsResult holds(const FinitePartialAlgebra& a, const HornSentence& s, Execution exec = Execution::Parallel);

/// True when every term of `s` is defined under every assignment.
bool is_total_for(const FinitePartialAlgebra& a, const HornSentence& s);

struct Verdict {
  bool yes;
  std::string reason;
};

/// P ⊑ Q: carrier containment (by element name) and agreement wherever P
/// is defined. Throws SignatureMismatch.
Verdict is_weak_subalgebra(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q);

/// `alpha[e]` is the image of P's element e in Q. Throws std::invalid_argument
/// if alpha is not total on P; SignatureMismatch on differing signatures.
Verdict check_embedding(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q,
                        const std::vector<Element>& alpha);

/// First embedding in lexicographic order of (alpha(0), alpha(1), ...).
std::optional<std::vector<Element>> search_embedding(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q);

struct GroundEntry {
  std::size_t op;
  std::vector<Element> args;
  Element result;
};

struct Presentation {
  /// One equation f(p) = q per defined table entry, in table order.
  std::vector<GroundEntry> diag_plus;
  /// One p != q per unordered pair of distinct elements, p < q.
  std::vector<std::pair<Element, Element>> distinct;
};

Presentation presentation(const FinitePartialAlgebra& a);
std::string to_string(const FinitePartialAlgebra& a, const GroundEntry& entry);

/// Text format:
///   carrier: a b c
///   op +/2:
///   a b -> c
///   op 0/0:
///   -> a
/// Omitted lines are undefined entries. Printing is canonical (entries in
/// table order), so parse_algebra(format_algebra(a)) == a and canonical
/// text is reproduced byte for byte. Throws FormatError.
FinitePartialAlgebra parse_algebra(std::string_view text);
std::string format_algebra(const FinitePartialAlgebra& a);

}  // namespace boolelab
