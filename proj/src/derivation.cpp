#include "boolelab/derivation.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "boolelab/errors.hpp"

namespace boolelab {

// ---------------------------------------------------------------------------
// Certificates

namespace {

struct VertexData {
  Integer d;                  // gcd of the premiss values
  std::vector<Integer> bezout;  // sum_j bezout[j] * g_j(v) = d
  Integer f;
};

}  // namespace

std::optional<Certificate> certify_consequence(const std::vector<Equation>& premisses, const Equation& conclusion,
                                               const VertexOptions& options) {
  if (!boole_oracle(premisses, conclusion, options).valid) return std::nullopt;
  const std::vector<std::string> vars = argument_variables(premisses, conclusion);
  const std::size_t m = vars.size();
  const std::size_t k = premisses.size();
  std::vector<VertexEvaluator> gs;
  for (const auto& e : premisses) gs.emplace_back(normalize(e), vars);
  const VertexEvaluator f(normalize(conclusion), vars);

  const std::uint64_t count = vertex_count(m);
  std::vector<VertexData> data(count);
  kernels::for_each(options.execution, count, [&](std::uint64_t v) {
    VertexData& out = data[v];
    out.bezout.assign(k, Integer(0));
    out.f = f(v);
    out.d = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const Integer g = gs[j](v);
      Integer d2, s, t;
      mpz_gcdext(d2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), out.d.get_mpz_t(), g.get_mpz_t());
      for (std::size_t i = 0; i < j; ++i) out.bezout[i] *= s;
      out.bezout[j] = t;
      out.d = d2;
    }
  });

  Certificate cert;
  cert.n = 1;
  for (const auto& vd : data) {
    if (vd.d == 0 || vd.f == 0) continue;
    Integer g;
    mpz_gcd(g.get_mpz_t(), vd.d.get_mpz_t(), vd.f.get_mpz_t());
    const Integer need = vd.d / g;
    mpz_lcm(cert.n.get_mpz_t(), cert.n.get_mpz_t(), need.get_mpz_t());
  }

  std::vector<ConstituentExpansion> values(k);
  for (auto& e : values) {
    e.vars = vars;
    e.coeff_at.assign(count, Integer(0));
  }
  kernels::for_each(options.execution, count, [&](std::uint64_t v) {
    const VertexData& vd = data[v];
    if (vd.d == 0) return;  // premisses vanish, and so does f
    const Integer scale = cert.n * vd.f / vd.d;
    for (std::size_t j = 0; j < k; ++j) values[j].coeff_at[v] = scale * vd.bezout[j];
  });
  for (const auto& e : values) cert.cofactors.push_back(unexpand(e));
  return cert;
}

CertificateCheck verify_certificate(const std::vector<Equation>& premisses, const Equation& conclusion,
                                    const Certificate& c) {
  if (c.cofactors.size() != premisses.size())
    throw std::invalid_argument("certificate has " + std::to_string(c.cofactors.size()) + " cofactor(s) for " +
                                std::to_string(premisses.size()) + " premiss(es)");
  if (c.n < 1) throw std::invalid_argument("certificate multiplier must be at least 1");
  MultilinearPoly residual = c.n * normalize(conclusion);
  for (std::size_t j = 0; j < premisses.size(); ++j) residual = residual - c.cofactors[j] * normalize(premisses[j]);
  const bool zero = residual.is_zero();
  return {zero, std::move(residual)};
}

namespace {

nlohmann::json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw FormatError(0, "bad integer '" + j.get<std::string>() + "'");
    return v;
  }
  throw FormatError(0, "expected an integer");
}

}  // namespace

nlohmann::json certificate_to_json(const Certificate& c) {
  nlohmann::json cofactors = nlohmann::json::array();
  for (const auto& p : c.cofactors) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& [mono, coeff] : p.coeffs()) records.push_back({{"monomial", mono}, {"coeff", integer_json(coeff)}});
    cofactors.push_back(std::move(records));
  }
  return {{"n", integer_json(c.n)}, {"cofactors", std::move(cofactors)}};
}

Certificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("cofactors") || !j["cofactors"].is_array())
    throw FormatError(0, "certificate needs 'n' and a 'cofactors' array");
  Certificate c;
  c.n = integer_from_json(j["n"]);
  for (const auto& records : j["cofactors"]) {
    if (!records.is_array()) throw FormatError(0, "each cofactor is an array of monomial records");
    CoeffMap coeffs;
    std::set<std::string> vars;
    for (const auto& r : records) {
      if (!r.is_object() || !r.contains("monomial") || !r.contains("coeff") || !r["monomial"].is_array())
        throw FormatError(0, "monomial record needs 'monomial' and 'coeff'");
      Monomial mono;
      for (const auto& v : r["monomial"]) {
        if (!v.is_string() || !is_identifier(v.get<std::string>())) throw FormatError(0, "bad variable in monomial");
        mono.push_back(v.get<std::string>());
      }
      std::sort(mono.begin(), mono.end());
      if (std::adjacent_find(mono.begin(), mono.end()) != mono.end())
        throw FormatError(0, "monomial repeats a variable");
      vars.insert(mono.begin(), mono.end());
      Integer value = integer_from_json(r["coeff"]);
      auto [it, inserted] = coeffs.emplace(std::move(mono), value);
      if (!inserted) it->second += value;
    }
    c.cofactors.emplace_back(std::vector<std::string>(vars.begin(), vars.end()), std::move(coeffs));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Traces

std::string to_string(TraceMode mode) { return mode == TraceMode::Hailperin ? "hailperin" : "sigma1"; }

namespace {

struct RuleInfo {
  TraceRule::Kind kind;
  const char* name;
  std::size_t refs;
  bool term_arg;
  bool multiplier_arg;
};

constexpr RuleInfo kRules[] = {
    {TraceRule::Kind::Premiss, "Premiss", 0, false, false},
    {TraceRule::Kind::RingAxiomInstance, "RingAxiomInstance", 0, false, false},
    {TraceRule::Kind::DeltaIdempotence, "DeltaIdempotence", 0, true, false},
    {TraceRule::Kind::Refl, "Refl", 0, false, false},
    {TraceRule::Kind::Sym, "Sym", 1, false, false},
    {TraceRule::Kind::Trans, "Trans", 2, false, false},
    {TraceRule::Kind::Congruence, "Congruence", 1, true, false},
    {TraceRule::Kind::NoNilpotent, "NoNilpotent", 1, false, true},
    {TraceRule::Kind::IntegerSimplification, "IntegerSimplification", 1, false, false},
};

const RuleInfo& info(TraceRule::Kind kind) {
  for (const auto& r : kRules)
    if (r.kind == kind) return r;
  throw std::logic_error("unknown rule");
}

bool contains_hole(const Term& t) {
  if (t.is_hole()) return true;
  return t.is_binary() && (contains_hole(t.left()) || contains_hole(t.right()));
}

TraceCheck reject(std::size_t step, std::string reason) { return {false, step, std::move(reason)}; }

}  // namespace

TraceCheck check_trace(const DerivationTrace& trace, TraceMode mode, const std::vector<Equation>& premisses) {
  std::vector<const Equation*> earlier;
  for (std::size_t s = 0; s < trace.steps.size(); ++s) {
    const TraceStep& step = trace.steps[s];
    const Equation& eq = step.equation;
    const TraceRule& rule = step.rule;
    if (rule.refs.size() != info(rule.kind).refs)
      throw Error("step " + std::to_string(step.number) + ": " + info(rule.kind).name + " cites " +
                  std::to_string(info(rule.kind).refs) + " step(s)");
    std::vector<const Equation*> cited;
    for (std::size_t r : rule.refs) {
      if (r == 0 || r > earlier.size())
        throw Error("step " + std::to_string(step.number) + " cites step " + std::to_string(r) +
                    ", which is not an earlier step");
      cited.push_back(earlier[r - 1]);
    }
    const std::size_t n = step.number;
    switch (rule.kind) {
      case TraceRule::Kind::Premiss: {
        bool found = false;
        for (const auto& p : premisses) found = found || p == eq;
        if (!found) return reject(n, "not one of the premisses");
        break;
      }
      case TraceRule::Kind::RingAxiomInstance:
        if (normalize_ring(eq.lhs) != normalize_ring(eq.rhs))
          return reject(n, "not a commutative ring identity: sides differ by " + to_string(normalize_ring(eq)));
        break;
      case TraceRule::Kind::DeltaIdempotence: {
        Term target = rule.term ? *rule.term : eq.rhs;
        const Term square = Term::mul(target, target);
        if (!((eq.lhs == square && eq.rhs == target) || (eq.lhs == target && eq.rhs == square)))
          return reject(n, "expected " + pretty(square) + " = " + pretty(target));
        if (mode == TraceMode::Hailperin && !target.is_var())
          return reject(n, "idempotence applied to " + pretty(target) + ", which is not a class symbol");
        break;
      }
      case TraceRule::Kind::Refl:
        if (eq.lhs != eq.rhs) return reject(n, "sides are not identical");
        break;
      case TraceRule::Kind::Sym:
        if (!(eq.lhs == cited[0]->rhs && eq.rhs == cited[0]->lhs))
          return reject(n, "not the reverse of step " + std::to_string(rule.refs[0]));
        break;
      case TraceRule::Kind::Trans:
        if (cited[0]->rhs != cited[1]->lhs)
          return reject(n, "steps " + std::to_string(rule.refs[0]) + " and " + std::to_string(rule.refs[1]) +
                               " do not chain");
        if (!(eq.lhs == cited[0]->lhs && eq.rhs == cited[1]->rhs)) return reject(n, "does not match the chained ends");
        break;
      case TraceRule::Kind::Congruence: {
        if (!rule.term || !contains_hole(*rule.term)) return reject(n, "congruence context has no hole");
        const Term l = substitute(*rule.term, "_", cited[0]->lhs);
        const Term r = substitute(*rule.term, "_", cited[0]->rhs);
        if (!(eq.lhs == l && eq.rhs == r)) return reject(n, "expected " + pretty(l) + " = " + pretty(r));
        break;
      }
      case TraceRule::Kind::NoNilpotent:
        if (rule.multiplier < 1) return reject(n, "multiplier must be a positive integer");
        if (normalize_ring(*cited[0]) != rule.multiplier * normalize_ring(eq))
          return reject(n, "step " + std::to_string(rule.refs[0]) + " is not " + rule.multiplier.get_str() +
                               " times this equation");
        break;
      case TraceRule::Kind::IntegerSimplification: {
        const MultilinearPoly before = normalize(*cited[0]);
        const MultilinearPoly after = normalize(eq);
        if (before != after && before != Integer(-1) * after)
          return reject(n, "normal forms differ: " + to_string(before) + " vs " + to_string(after));
        break;
      }
    }
    earlier.push_back(&eq);
  }
  return {true, 0, {}};
}

std::string format_rule(const TraceRule& rule) {
  const RuleInfo& ri = info(rule.kind);
  std::string out = std::string("[") + ri.name;
  for (std::size_t r : rule.refs) out += " " + std::to_string(r);
  if (ri.multiplier_arg) out += " " + rule.multiplier.get_str();
  if (ri.term_arg && rule.term) out += " " + pretty(*rule.term);
  return out + "]";
}

std::string format_trace(const DerivationTrace& trace) {
  std::string out;
  for (const auto& s : trace.steps) out += std::to_string(s.number) + ": " + pretty(s.equation) + " " + format_rule(s.rule) + "\n";
  return out;
}

DerivationTrace parse_trace(std::string_view text) {
  DerivationTrace trace;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

    const std::size_t colon = line.find(':');
    const std::size_t open = line.rfind('[');
    const std::size_t close = line.rfind(']');
    if (colon == std::string_view::npos || open == std::string_view::npos || close == std::string_view::npos ||
        close < open || open < colon)
      throw FormatError(line_no, "expected 'k: lhs = rhs [Rule args]'");
    if (line.find_first_not_of(" \t\r", close + 1) != std::string_view::npos)
      throw FormatError(line_no, "unexpected text after ']'");

    std::string number_text(line.substr(0, colon));
    number_text.erase(0, number_text.find_first_not_of(" \t"));
    number_text.erase(number_text.find_last_not_of(" \t") + 1);
    if (number_text.empty() || !std::all_of(number_text.begin(), number_text.end(),
                                            [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw FormatError(line_no, "step number expected before ':'");
    TraceStep step{std::stoul(number_text), {Term::lit(0), Term::lit(0)}, {}};
    if (step.number != trace.steps.size() + 1)
      throw FormatError(line_no, "steps must be numbered 1, 2, ... (expected " + std::to_string(trace.steps.size() + 1) + ")");

    try {
      step.equation = parse_equation(line.substr(colon + 1, open - colon - 1));
    } catch (const ParseError& e) {
      throw FormatError(line_no, std::string("equation: ") + e.what());
    }

    std::istringstream args{std::string(line.substr(open + 1, close - open - 1))};
    std::string name;
    if (!(args >> name)) throw FormatError(line_no, "missing rule name");
    const RuleInfo* ri = nullptr;
    for (const auto& r : kRules)
      if (name == r.name) ri = &r;
    if (!ri) throw FormatError(line_no, "unknown rule '" + name + "'");
    step.rule.kind = ri->kind;
    for (std::size_t i = 0; i < ri->refs; ++i) {
      std::size_t ref;
      if (!(args >> ref)) throw FormatError(line_no, std::string(ri->name) + " needs a step number");
      step.rule.refs.push_back(ref);
    }
    if (ri->multiplier_arg) {
      std::string k;
      if (!(args >> k) || step.rule.multiplier.set_str(k, 10) != 0)
        throw FormatError(line_no, std::string(ri->name) + " needs an integer multiplier");
    }
    std::string rest;
    std::getline(args, rest);
    if (rest.find_first_not_of(" \t") != std::string::npos) {
      if (!ri->term_arg) throw FormatError(line_no, "unexpected arguments for " + name);
      try {
        step.rule.term = parse_term(rest, ParseOptions{ri->kind == TraceRule::Kind::Congruence});
      } catch (const ParseError& e) {
        throw FormatError(line_no, std::string("rule argument: ") + e.what());
      }
    } else if (ri->kind == TraceRule::Kind::Congruence) {
      throw FormatError(line_no, "Congruence needs a context term");
    }
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

}  // namespace boolelab
