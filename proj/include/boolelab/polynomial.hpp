#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "boolelab/integer.hpp"
#include "boolelab/kernels.hpp"
#include "boolelab/term.hpp"

namespace boolelab {

/// Sorted variable names. For multilinear polynomials every name occurs at
/// most once; for RingPoly a name repeats once per power.
using Monomial = std::vector<std::string>;

/// Degree first, then lexicographic on variable names.
struct DegLex {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using CoeffMap = std::map<Monomial, Integer, DegLex>;

/// Integer polynomial with every exponent at most 1: the normal form of terms
/// modulo the commutative ring laws plus x*x = x for every variable.
///
/// `vars` records the variables of the originating term even when their
/// monomials cancel; equality compares coefficients only.
class MultilinearPoly {
 public:
  MultilinearPoly() = default;
  /// `vars` must be sorted and unique and contain every monomial's variables.
  /// Zero coefficients are dropped.
  MultilinearPoly(std::vector<std::string> vars, CoeffMap coeffs);

  static MultilinearPoly constant(Integer c);
  static MultilinearPoly variable(const std::string& name);

  const std::vector<std::string>& vars() const { return vars_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Integer coefficient(const Monomial& m) const;

  /// Same coefficients over vars() united with `extra`.
  MultilinearPoly with_vars(const std::vector<std::string>& extra) const;

  friend MultilinearPoly operator+(const MultilinearPoly& a, const MultilinearPoly& b);
  friend MultilinearPoly operator-(const MultilinearPoly& a, const MultilinearPoly& b);
  friend MultilinearPoly operator*(const MultilinearPoly& a, const MultilinearPoly& b);
  friend MultilinearPoly operator*(const Integer& k, const MultilinearPoly& p);
  friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const MultilinearPoly& a, const MultilinearPoly& b) { return !(a == b); }

 private:
  std::vector<std::string> vars_;
  CoeffMap coeffs_;
};

/// Polynomial over free commutative-ring indeterminates (no idempotence).
/// Used to check ring-axiom steps of derivation traces.
class RingPoly {
 public:
  RingPoly() = default;
  static RingPoly constant(Integer c);
  static RingPoly variable(const std::string& name);

  const CoeffMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  friend RingPoly operator+(const RingPoly& a, const RingPoly& b);
  friend RingPoly operator-(const RingPoly& a, const RingPoly& b);
  friend RingPoly operator*(const RingPoly& a, const RingPoly& b);
  friend RingPoly operator*(const Integer& k, const RingPoly& p);
  friend bool operator==(const RingPoly& a, const RingPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const RingPoly& a, const RingPoly& b) { return !(a == b); }

 private:
  CoeffMap coeffs_;
};

/// Canonical printing, degree-lexicographic: "1 - x - y + x*y". Zero is "0".
std::string to_string(const MultilinearPoly& p);
std::string to_string(const RingPoly& p);
std::string to_string(const Monomial& m);

/// Term whose normal form is `p`.
Term to_term(const MultilinearPoly& p);

MultilinearPoly normalize(const Term& t);
/// normalize(lhs - rhs).
MultilinearPoly normalize(const Equation& e);
RingPoly normalize_ring(const Term& t);
RingPoly normalize_ring(const Equation& e);

// ---------------------------------------------------------------------------
// 0/1 vertices

/// A point of {0,1}^m over an ordered variable list. Bit (m-1-i) holds the
/// value of variable i, so numeric order is lexicographic order with the
/// first variable most significant.
using Vertex = std::uint64_t;

inline bool vertex_value(Vertex v, std::size_t m, std::size_t i) { return ((v >> (m - 1 - i)) & 1U) != 0; }
inline Vertex vertex_count(std::size_t m) { return Vertex{1} << m; }

/// "10" for x=1, y=0.
std::string vertex_label(Vertex v, std::size_t m);
/// "x=1, y=0".
std::string vertex_assignment(Vertex v, const std::vector<std::string>& vars);
/// "x*(1 - y)".
std::string constituent(Vertex v, const std::vector<std::string>& vars);

/// Evaluates a multilinear polynomial at vertices of a fixed variable list.
class VertexEvaluator {
 public:
  /// `vars` must contain p.vars() with at most 63 entries.
  VertexEvaluator(const MultilinearPoly& p, const std::vector<std::string>& vars);

  Integer operator()(Vertex v) const;
  bool vanishes_at(Vertex v) const;

 private:
  std::vector<std::pair<std::uint64_t, Integer>> terms_;
  std::vector<std::pair<std::uint64_t, long>> small_terms_;
  bool all_small_ = true;
};

struct VertexOptions {
  /// Enumeration is refused above this many variables (CapExceeded).
  std::size_t max_vars = 20;
  Execution execution = Execution::Parallel;
};

/// Boole's development: one coefficient per constituent.
struct ConstituentExpansion {
  std::vector<std::string> vars;
  /// Indexed by Vertex; size 2^|vars|.
  std::vector<Integer> coeff_at;

  const Integer& at(Vertex v) const { return coeff_at.at(v); }
};

ConstituentExpansion expand(const MultilinearPoly& p, const VertexOptions& options = {});
MultilinearPoly unexpand(const ConstituentExpansion& e);

struct Interpretability {
  enum class Verdict { Interpretable, ConditionallyInterpretable, Never };
  Verdict verdict;
  std::vector<std::string> vars;
  /// Vertices whose coefficient is neither 0 nor 1, ascending.
  std::vector<Vertex> bad_vertices;
};

Interpretability interpretability(const MultilinearPoly& p, const VertexOptions& options = {});
std::string to_string(Interpretability::Verdict v);

struct OracleResult {
  bool valid;
  /// Union of all variables of premisses and conclusion, sorted.
  std::vector<std::string> vars;
  /// Least vertex where every premiss vanishes and the conclusion does not.
  std::optional<Vertex> witness;
};

/// Rule of 0 and 1: the conclusion must vanish at every 0/1 vertex where all
/// premisses vanish.
OracleResult boole_oracle(const std::vector<Equation>& premisses, const Equation& conclusion,
                          const VertexOptions& options = {});

std::vector<std::string> argument_variables(const std::vector<Equation>& premisses, const Equation& conclusion);

}  // namespace boolelab
