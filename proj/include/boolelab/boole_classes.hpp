#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boolelab/integer.hpp"
#include "boolelab/kernels.hpp"
#include "boolelab/partial_algebra.hpp"
#include "boolelab/term.hpp"

namespace boolelab {

/// Boole's algebra of the subsets of U = {0, ..., n-1}:
///   A*B = A ∩ B (total), A+B = A ∪ B when A ∩ B = ∅, A-B = A \ B when
///   B ⊆ A, 0 = ∅, 1 = U.
/// Element e is the subset whose bitmask is e (bit i set iff i ∈ A).
/// Signature order: +, -, *, 0, 1.
struct ClassAlgebra {
  unsigned universe_size;
  FinitePartialAlgebra algebra;
};

inline constexpr unsigned kDefaultMaxUniverse = 5;

/// Throws std::invalid_argument for n = 0 (the universe is nonempty) and
/// CapExceeded above `max_universe`.
ClassAlgebra build_class_algebra(unsigned n, unsigned max_universe = kDefaultMaxUniverse);

/// "0" for ∅, "U" for the whole universe, "{0,2}" otherwise.
std::string class_name(std::uint32_t subset, unsigned n);

/// Element of Z^U.
using IntVector = std::vector<Integer>;

/// Characteristic function of `subset` (entry i is 1 iff i ∈ subset).
IntVector chi(std::uint32_t subset, unsigned n);

struct ChiCheck {
  bool yes;
  /// Description of the first failing entry (empty when yes).
  std::string failing_entry;
  /// Table entries (including constants) checked.
  std::size_t entries_checked;
};

/// Checks that χ is injective and carries every defined entry of +, -, *, 0, 1
/// in P_U to the componentwise ring operation of Z^U.
ChiCheck verify_chi_embedding(unsigned n, unsigned max_universe = kDefaultMaxUniverse);

struct SemanticOptions {
  unsigned max_n = 3;
  unsigned max_universe = kDefaultMaxUniverse;
  Execution execution = Execution::Parallel;
};

struct SemanticResult {
  bool valid;
  /// Largest universe size searched.
  unsigned checked_up_to;
  /// Variables of the argument, sorted.
  std::vector<std::string> vars;
  /// Universe size of the counter-assignment.
  unsigned witness_n = 0;
  /// Subset (bitmask) per variable of the counter-assignment.
  std::vector<std::uint32_t> witness;
};

/// Searches U of size 1..max_n for an assignment of subsets under which every
/// term of every premiss and of the conclusion is defined, all premisses
/// hold and the conclusion fails. The least counterexample is reported:
/// smallest n, then lexicographic on bitmasks with the first variable most
/// significant. "Valid" means valid up to max_n.
SemanticResult semantic_consequence(const std::vector<Equation>& premisses, const Equation& conclusion,
                                    const SemanticOptions& options = {});

/// "{x=U, y=0}".
std::string witness_string(const SemanticResult& r);

}  // namespace boolelab
