#include "boolelab/polynomial.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "boolelab/errors.hpp"

namespace boolelab {

bool DegLex::operator()(const Monomial& a, const Monomial& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

namespace {

std::vector<std::string> unite(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void accumulate(CoeffMap& into, const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = into.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) into.erase(it);
  }
}

CoeffMap add_maps(const CoeffMap& a, const CoeffMap& b, int sign) {
  CoeffMap out = a;
  for (const auto& [m, c] : b) accumulate(out, m, sign > 0 ? c : Integer(-c));
  return out;
}

Monomial merge(const Monomial& a, const Monomial& b, bool idempotent) {
  Monomial out;
  out.reserve(a.size() + b.size());
  if (idempotent)
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  else
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

CoeffMap multiply_maps(const CoeffMap& a, const CoeffMap& b, bool idempotent) {
  CoeffMap out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) accumulate(out, merge(ma, mb, idempotent), ca * cb);
  return out;
}

CoeffMap scale_map(const Integer& k, const CoeffMap& p) {
  CoeffMap out;
  if (k == 0) return out;
  for (const auto& [m, c] : p) out.emplace(m, k * c);
  return out;
}

std::string map_to_string(const CoeffMap& coeffs) {
  if (coeffs.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : coeffs) {
    Integer magnitude = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (m.empty()) {
      out += magnitude.get_str();
    } else {
      if (magnitude != 1) out += magnitude.get_str() + "*";
      out += to_string(m);
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// MultilinearPoly

MultilinearPoly::MultilinearPoly(std::vector<std::string> vars, CoeffMap coeffs) : vars_(std::move(vars)) {
  for (auto& [m, c] : coeffs) {
    if (c != 0) coeffs_.emplace(m, std::move(c));
  }
}

MultilinearPoly MultilinearPoly::constant(Integer c) {
  CoeffMap coeffs;
  coeffs.emplace(Monomial{}, std::move(c));
  return MultilinearPoly({}, std::move(coeffs));
}

MultilinearPoly MultilinearPoly::variable(const std::string& name) {
  CoeffMap coeffs;
  coeffs.emplace(Monomial{name}, Integer(1));
  return MultilinearPoly({name}, std::move(coeffs));
}

Integer MultilinearPoly::coefficient(const Monomial& m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

MultilinearPoly MultilinearPoly::with_vars(const std::vector<std::string>& extra) const {
  MultilinearPoly out = *this;
  out.vars_ = unite(vars_, extra);
  return out;
}

MultilinearPoly operator+(const MultilinearPoly& a, const MultilinearPoly& b) {
  MultilinearPoly out;
  out.vars_ = unite(a.vars_, b.vars_);
  out.coeffs_ = add_maps(a.coeffs_, b.coeffs_, +1);
  return out;
}

MultilinearPoly operator-(const MultilinearPoly& a, const MultilinearPoly& b) {
  MultilinearPoly out;
  out.vars_ = unite(a.vars_, b.vars_);
  out.coeffs_ = add_maps(a.coeffs_, b.coeffs_, -1);
  return out;
}

MultilinearPoly operator*(const MultilinearPoly& a, const MultilinearPoly& b) {
  MultilinearPoly out;
  out.vars_ = unite(a.vars_, b.vars_);
  out.coeffs_ = multiply_maps(a.coeffs_, b.coeffs_, true);
  return out;
}

MultilinearPoly operator*(const Integer& k, const MultilinearPoly& p) {
  MultilinearPoly out;
  out.vars_ = p.vars_;
  out.coeffs_ = scale_map(k, p.coeffs_);
  return out;
}

// ---------------------------------------------------------------------------
// RingPoly

RingPoly RingPoly::constant(Integer c) {
  RingPoly p;
  if (c != 0) p.coeffs_.emplace(Monomial{}, std::move(c));
  return p;
}

RingPoly RingPoly::variable(const std::string& name) {
  RingPoly p;
  p.coeffs_.emplace(Monomial{name}, Integer(1));
  return p;
}

RingPoly operator+(const RingPoly& a, const RingPoly& b) {
  RingPoly out;
  out.coeffs_ = add_maps(a.coeffs_, b.coeffs_, +1);
  return out;
}

RingPoly operator-(const RingPoly& a, const RingPoly& b) {
  RingPoly out;
  out.coeffs_ = add_maps(a.coeffs_, b.coeffs_, -1);
  return out;
}

RingPoly operator*(const RingPoly& a, const RingPoly& b) {
  RingPoly out;
  out.coeffs_ = multiply_maps(a.coeffs_, b.coeffs_, false);
  return out;
}

RingPoly operator*(const Integer& k, const RingPoly& p) {
  RingPoly out;
  out.coeffs_ = scale_map(k, p.coeffs_);
  return out;
}

// ---------------------------------------------------------------------------
// Printing and conversion

std::string to_string(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += '*';
    out += m[i];
  }
  return out;
}

std::string to_string(const MultilinearPoly& p) { return map_to_string(p.coeffs()); }
std::string to_string(const RingPoly& p) { return map_to_string(p.coeffs()); }

Term to_term(const MultilinearPoly& p) {
  std::optional<Term> acc;
  for (const auto& [m, c] : p.coeffs()) {
    Integer magnitude = abs(c);
    std::optional<Term> mono;
    if (m.empty() || magnitude != 1) mono = Term::lit(magnitude);
    for (const auto& v : m) mono = mono ? Term::mul(*mono, Term::var(v)) : Term::var(v);
    if (!acc)
      acc = c < 0 ? Term::sub(Term::lit(0), *mono) : *mono;
    else
      acc = c < 0 ? Term::sub(*acc, *mono) : Term::add(*acc, *mono);
  }
  return acc ? *acc : Term::lit(0);
}

MultilinearPoly normalize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return MultilinearPoly::variable(t.name());
    case Term::Kind::IntLit:
      return MultilinearPoly::constant(t.value());
    case Term::Kind::Add:
      return normalize(t.left()) + normalize(t.right());
    case Term::Kind::Sub:
      return normalize(t.left()) - normalize(t.right());
    case Term::Kind::Mul:
      return normalize(t.left()) * normalize(t.right());
  }
  return {};
}

MultilinearPoly normalize(const Equation& e) { return normalize(e.lhs) - normalize(e.rhs); }

RingPoly normalize_ring(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return RingPoly::variable(t.name());
    case Term::Kind::IntLit:
      return RingPoly::constant(t.value());
    case Term::Kind::Add:
      return normalize_ring(t.left()) + normalize_ring(t.right());
    case Term::Kind::Sub:
      return normalize_ring(t.left()) - normalize_ring(t.right());
    case Term::Kind::Mul:
      return normalize_ring(t.left()) * normalize_ring(t.right());
  }
  return {};
}

RingPoly normalize_ring(const Equation& e) { return normalize_ring(e.lhs) - normalize_ring(e.rhs); }

// ---------------------------------------------------------------------------
// Vertices

std::string vertex_label(Vertex v, std::size_t m) {
  std::string out;
  for (std::size_t i = 0; i < m; ++i) out += vertex_value(v, m, i) ? '1' : '0';
  return out;
}

std::string vertex_assignment(Vertex v, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ", ";
    out += vars[i] + "=" + (vertex_value(v, vars.size(), i) ? "1" : "0");
  }
  return out;
}

std::string constituent(Vertex v, const std::vector<std::string>& vars) {
  if (vars.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += '*';
    out += vertex_value(v, vars.size(), i) ? vars[i] : "(1 - " + vars[i] + ")";
  }
  return out;
}

VertexEvaluator::VertexEvaluator(const MultilinearPoly& p, const std::vector<std::string>& vars) {
  const std::size_t m = vars.size();
  if (m > 63) throw CapExceeded("number of variables", m, 63);
  static const Integer kSmall = Integer(1) << 32;
  for (const auto& [mono, c] : p.coeffs()) {
    std::uint64_t mask = 0;
    for (const auto& name : mono) {
      auto it = std::lower_bound(vars.begin(), vars.end(), name);
      if (it == vars.end() || *it != name) throw std::invalid_argument("variable '" + name + "' not in vertex space");
      mask |= std::uint64_t{1} << (m - 1 - static_cast<std::size_t>(it - vars.begin()));
    }
    terms_.emplace_back(mask, c);
    if (abs(c) >= kSmall) all_small_ = false;
  }
  if (terms_.size() > (std::size_t{1} << 20)) all_small_ = false;
  if (all_small_) {
    for (const auto& [mask, c] : terms_) small_terms_.emplace_back(mask, c.get_si());
  }
}

Integer VertexEvaluator::operator()(Vertex v) const {
  if (all_small_) {
    long sum = 0;
    for (const auto& [mask, c] : small_terms_)
      if ((mask & ~v) == 0) sum += c;
    return Integer(sum);
  }
  Integer sum = 0;
  for (const auto& [mask, c] : terms_)
    if ((mask & ~v) == 0) sum += c;
  return sum;
}

bool VertexEvaluator::vanishes_at(Vertex v) const {
  if (all_small_) {
    long sum = 0;
    for (const auto& [mask, c] : small_terms_)
      if ((mask & ~v) == 0) sum += c;
    return sum == 0;
  }
  return (*this)(v) == 0;
}

namespace {

void check_vertex_cap(std::size_t m, const VertexOptions& options) {
  const std::size_t limit = std::min<std::size_t>(options.max_vars, 62);
  if (m > limit) throw CapExceeded("number of variables", m, limit);
}

}  // namespace

ConstituentExpansion expand(const MultilinearPoly& p, const VertexOptions& options) {
  const std::size_t m = p.vars().size();
  check_vertex_cap(m, options);
  ConstituentExpansion out;
  out.vars = p.vars();
  out.coeff_at.resize(vertex_count(m));
  VertexEvaluator eval(p, p.vars());
  kernels::for_each(options.execution, vertex_count(m), [&](std::uint64_t v) { out.coeff_at[v] = eval(v); });
  return out;
}

MultilinearPoly unexpand(const ConstituentExpansion& e) {
  const std::size_t m = e.vars.size();
  if (e.coeff_at.size() != vertex_count(m))
    throw std::invalid_argument("expansion must carry one coefficient per vertex");
  // Moebius inversion over the subset lattice: the coefficient of the
  // monomial with support S is the alternating sum of values below S.
  std::vector<Integer> a = e.coeff_at;
  for (std::size_t bit = 0; bit < m; ++bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    for (std::uint64_t s = 0; s < a.size(); ++s)
      if (s & b) a[s] -= a[s ^ b];
  }
  CoeffMap coeffs;
  for (std::uint64_t s = 0; s < a.size(); ++s) {
    if (a[s] == 0) continue;
    Monomial mono;
    for (std::size_t i = 0; i < m; ++i)
      if (vertex_value(s, m, i)) mono.push_back(e.vars[i]);
    coeffs.emplace(std::move(mono), a[s]);
  }
  return MultilinearPoly(e.vars, std::move(coeffs));
}

Interpretability interpretability(const MultilinearPoly& p, const VertexOptions& options) {
  ConstituentExpansion e = expand(p, options);
  Interpretability out{Interpretability::Verdict::Interpretable, e.vars, {}};
  for (Vertex v = 0; v < e.coeff_at.size(); ++v) {
    const Integer& c = e.coeff_at[v];
    if (c != 0 && c != 1) out.bad_vertices.push_back(v);
  }
  if (out.bad_vertices.size() == e.coeff_at.size())
    out.verdict = Interpretability::Verdict::Never;
  else if (!out.bad_vertices.empty())
    out.verdict = Interpretability::Verdict::ConditionallyInterpretable;
  return out;
}

std::string to_string(Interpretability::Verdict v) {
  switch (v) {
    case Interpretability::Verdict::Interpretable:
      return "Interpretable";
    case Interpretability::Verdict::ConditionallyInterpretable:
      return "ConditionallyInterpretable";
    case Interpretability::Verdict::Never:
      return "Never";
  }
  return "?";
}

std::vector<std::string> argument_variables(const std::vector<Equation>& premisses, const Equation& conclusion) {
  std::set<std::string> all;
  for (const auto& e : premisses) {
    collect_variables(e.lhs, all);
    collect_variables(e.rhs, all);
  }
  collect_variables(conclusion.lhs, all);
  collect_variables(conclusion.rhs, all);
  return {all.begin(), all.end()};
}

OracleResult boole_oracle(const std::vector<Equation>& premisses, const Equation& conclusion,
                          const VertexOptions& options) {
  OracleResult out{true, argument_variables(premisses, conclusion), std::nullopt};
  const std::size_t m = out.vars.size();
  check_vertex_cap(m, options);
  std::vector<VertexEvaluator> gs;
  gs.reserve(premisses.size());
  for (const auto& e : premisses) gs.emplace_back(normalize(e), out.vars);
  VertexEvaluator f(normalize(conclusion), out.vars);
  const std::uint64_t count = vertex_count(m);
  const std::uint64_t hit = kernels::first_match(options.execution, count, [&](std::uint64_t v) {
    for (const auto& g : gs)
      if (!g.vanishes_at(v)) return false;
    return !f.vanishes_at(v);
  });
  if (hit < count) {
    out.valid = false;
    out.witness = hit;
  }
  return out;
}

}  // namespace boolelab
