#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "boolelab/kernels.hpp"
#include "boolelab/partial_algebra.hpp"
#include "boolelab/sentence.hpp"

namespace boolelab {

/// Conjunction of atomic formulas in the single free variable `var`.
struct Delta {
  std::string var;
  std::vector<Equation> atoms;

  /// var*var = var.
  static Delta idempotent(const std::string& var = "x");
  /// Throws std::invalid_argument unless every atom mentions only `var`.
  void validate() const;
};

/// Prepends delta(x_i) for every quantified variable x_i, in quantifier
/// order, ahead of the original antecedents.
HornSentence relativize(const HornSentence& s, const Delta& d);

/// Classical satisfaction in a total algebra. Throws Error if `a` is partial.
HoldsResult holds_total(const FinitePartialAlgebra& a, const HornSentence& s, Execution exec = Execution::Parallel);

/// Constants (integer literals, ascending) followed by the binary symbols
/// that occur, in the order +, -, *.
std::vector<Operation> theory_signature(const std::vector<HornSentence>& sigma);

struct ModelSearchOptions {
  std::size_t max_size = 4;
};

/// First total model of `sigma` with `size` elements (named e0, e1, ...).
/// Tables are filled operation by operation in signature order, row-major,
/// trying values in carrier order; the first complete consistent table is
/// returned. Throws CapExceeded when size > options.max_size.
std::optional<FinitePartialAlgebra> search_total_model(const std::vector<HornSentence>& sigma, std::size_t size,
                                                       const ModelSearchOptions& options = {});

/// Visits every total model of `sigma` of the given size in canonical order.
/// `visit` returns false to stop. Returns the number of models visited.
std::size_t for_each_total_model(const std::vector<HornSentence>& sigma, std::size_t size,
                                 const std::function<bool(const FinitePartialAlgebra&)>& visit,
                                 const ModelSearchOptions& options = {});

struct ModEmbedding {
  FinitePartialAlgebra model;
  /// Image of each element of P in `model`.
  std::vector<Element> alpha;
};

struct ModEmbeddingResult {
  std::optional<ModEmbedding> witness;
  /// Largest model size searched.
  std::size_t searched_up_to;
};

/// Searches models of sigma ∪ Diag+(P) ∪ Distinct(P) of size |P| .. max_size.
/// The model's first |P| elements are P's, so alpha is the identity on
/// them; every embedding is of this shape up to renaming.
ModEmbeddingResult embeds_into_mod_bounded(const FinitePartialAlgebra& p, const std::vector<HornSentence>& sigma,
                                           std::size_t max_size, const ModelSearchOptions& options = {});

/// Commutative ring with unity laws (binary minus), 0 != 1, and
/// n*x = 0 -> x = 0 for n = 2 .. max_multiplier with n*x written as the
/// n-fold sum x + ... + x.
std::vector<HornSentence> hailperin_sigma(unsigned max_multiplier = 4);

/// One sentence per line; blank lines and '#' comments ignored.
/// Throws FormatError.
std::vector<HornSentence> parse_theory(std::string_view text);
std::string format_theory(const std::vector<HornSentence>& sigma);

}  // namespace boolelab
