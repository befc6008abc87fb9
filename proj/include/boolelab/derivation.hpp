#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "boolelab/integer.hpp"
#include "boolelab/polynomial.hpp"
#include "boolelab/term.hpp"

namespace boolelab {

/// Algebraic witness that a ground argument follows from the ring laws, the
/// idempotence of its class symbols and the no-nilpotents rule:
///
///   n * (lhs - rhs) = sum_j cofactors[j] * (lhs_j - rhs_j)
///
/// as multilinear polynomials. The ring laws give n*(lhs - rhs) = 0 from the
/// premisses; n*t = 0 -> t = 0 then discharges n.
struct Certificate {
  Integer n = 1;
  std::vector<MultilinearPoly> cofactors;
};

/// Builds a certificate from the constituent basis, or nullopt when
/// boole_oracle rejects the argument. At each vertex v the premiss values
/// g_j(v) have gcd d_v = sum_j c_j g_j(v); n is the least multiplier making
/// n*f(v) a multiple of every nonzero d_v, and cofactor j takes the value
/// (n*f(v)/d_v) * c_j at v. Throws CapExceeded above options.max_vars.
std::optional<Certificate> certify_consequence(const std::vector<Equation>& premisses, const Equation& conclusion,
                                               const VertexOptions& options = {});

struct CertificateCheck {
  bool verified;
  /// n*(lhs - rhs) - sum_j cofactors[j]*(lhs_j - rhs_j), normalized.
  MultilinearPoly residual;
};

/// Throws std::invalid_argument if the cofactor count differs from the
/// number of premisses or n < 1.
CertificateCheck verify_certificate(const std::vector<Equation>& premisses, const Equation& conclusion,
                                    const Certificate& c);

/// {"n": 2, "cofactors": [[{"monomial": ["x"], "coeff": 1}], ...]}. Integers
/// outside the 64-bit range are written as decimal strings.
nlohmann::json certificate_to_json(const Certificate& c);
/// Throws FormatError on malformed input.
Certificate certificate_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Rule-based traces

enum class TraceMode {
  /// Idempotence only for variables (class symbols).
  Hailperin,
  /// Idempotence for every term. Unsound for Boole's class algebras; kept to
  /// replay the (2x)(2x) = 2x counterexample.
  Sigma1,
};

std::string to_string(TraceMode mode);

struct TraceRule {
  enum class Kind {
    Premiss,
    RingAxiomInstance,
    DeltaIdempotence,
    Refl,
    Sym,
    Trans,
    Congruence,
    NoNilpotent,
    IntegerSimplification,
  };
  Kind kind;
  /// Cited step numbers.
  std::vector<std::size_t> refs;
  /// DeltaIdempotence target, or Congruence context (containing `_`).
  std::optional<Term> term;
  /// NoNilpotent multiplier.
  Integer multiplier = 0;
};

struct TraceStep {
  std::size_t number;
  Equation equation;
  TraceRule rule;
};

struct DerivationTrace {
  std::vector<TraceStep> steps;
};

struct TraceCheck {
  bool accepted;
  /// Number of the first rejected step (0 when accepted).
  std::size_t step = 0;
  std::string reason;
};

/// Validates every step against its rule. Ring-axiom steps must be
/// identities of free commutative rings; integer simplification compares
/// the multilinear normal forms of the two differences (up to sign);
/// no-nilpotent steps need the cited difference to be n times the new one.
/// Throws Error when a step cites a step that does not precede it.
TraceCheck check_trace(const DerivationTrace& trace, TraceMode mode, const std::vector<Equation>& premisses = {});

/// `k: lhs = rhs [Rule args]`, steps numbered 1, 2, ... Blank lines and '#'
/// comments are ignored. Throws FormatError.
DerivationTrace parse_trace(std::string_view text);
std::string format_trace(const DerivationTrace& trace);
std::string format_rule(const TraceRule& rule);

}  // namespace boolelab
