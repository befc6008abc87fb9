#include "boolelab/horn.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "boolelab/errors.hpp"
#include "compiled.hpp"

namespace boolelab {

Delta Delta::idempotent(const std::string& var) {
  Term x = Term::var(var);
  return {var, {{Term::mul(x, x), x}}};
}

void Delta::validate() const {
  for (const auto& a : atoms) {
    for (const auto& v : variables(a))
      if (v != var) throw std::invalid_argument("delta mentions '" + v + "' besides '" + var + "'");
  }
}

HornSentence relativize(const HornSentence& s, const Delta& d) {
  d.validate();
  std::vector<Equation> antecedents;
  for (const auto& v : s.vars()) {
    const Term x = Term::var(v);
    for (const auto& atom : d.atoms)
      antecedents.push_back({substitute(atom.lhs, d.var, x), substitute(atom.rhs, d.var, x)});
  }
  antecedents.insert(antecedents.end(), s.antecedents().begin(), s.antecedents().end());
  return HornSentence(s.vars(), std::move(antecedents), s.consequent());
}

HoldsResult holds_total(const FinitePartialAlgebra& a, const HornSentence& s, Execution exec) {
  if (!a.is_total()) throw Error("holds_total needs a total algebra");
  return holds(a, s, exec);
}

namespace {

void collect_symbols(const Term& t, std::set<Integer>& constants, std::set<Term::Kind>& binaries) {
  if (t.is_lit()) {
    constants.insert(t.value());
  } else if (t.is_binary()) {
    binaries.insert(t.kind());
    collect_symbols(t.left(), constants, binaries);
    collect_symbols(t.right(), constants, binaries);
  }
}

std::string fresh_name(const std::vector<std::string>& taken, std::size_t index) {
  std::string name = "e" + std::to_string(index);
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "'";
  return name;
}

/// Depth-first completion of every undefined table cell.
class TableSearch {
 public:
  TableSearch(FinitePartialAlgebra start, const std::vector<HornSentence>& sigma) : q_(std::move(start)) {
    for (const auto& s : sigma) sentences_.emplace_back(q_, s);
    for (std::size_t op = 0; op < q_.signature().size(); ++op)
      for (std::size_t idx = 0; idx < q_.table_size(op); ++idx)
        if (!q_.entry(op, idx)) cells_.emplace_back(op, idx);
    for (const auto& s : sigma) {
      counts_.push_back(detail::assignment_count(q_.size(), s.vars().size()));
      arities_.push_back(s.vars().size());
    }
  }

  std::size_t run(const std::function<bool(const FinitePartialAlgebra&)>& visit) {
    visited_ = 0;
    stop_ = false;
    if (consistent()) descend(0, visit);
    return visited_;
  }

 private:
  bool consistent() const {
    std::vector<Element> values;
    for (std::size_t s = 0; s < sentences_.size(); ++s) {
      values.resize(arities_[s]);
      for (std::uint64_t index = 0; index < counts_[s]; ++index) {
        detail::decode_assignment(index, q_.size(), values);
        if (sentences_[s].evaluate(q_, values) == detail::CompiledSentence::Outcome::False) return false;
      }
    }
    return true;
  }

  void descend(std::size_t k, const std::function<bool(const FinitePartialAlgebra&)>& visit) {
    if (k == cells_.size()) {
      ++visited_;
      if (!visit(q_)) stop_ = true;
      return;
    }
    const auto [op, idx] = cells_[k];
    for (Element v = 0; v < q_.size() && !stop_; ++v) {
      q_.set_entry(op, idx, v);
      if (consistent()) descend(k + 1, visit);
    }
    q_.set_entry(op, idx, std::nullopt);
  }

  FinitePartialAlgebra q_;
  std::vector<detail::CompiledSentence> sentences_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::size_t> arities_;
  std::vector<std::pair<std::size_t, std::size_t>> cells_;
  std::size_t visited_ = 0;
  bool stop_ = false;
};

void check_size(std::size_t size, const ModelSearchOptions& options) {
  if (size == 0) throw std::invalid_argument("model size must be positive");
  if (size > options.max_size) throw CapExceeded("model size", size, options.max_size);
}

FinitePartialAlgebra empty_model(const std::vector<HornSentence>& sigma, std::size_t size) {
  std::vector<std::string> carrier;
  for (std::size_t i = 0; i < size; ++i) carrier.push_back(fresh_name(carrier, i));
  return FinitePartialAlgebra(std::move(carrier), theory_signature(sigma));
}

}  // namespace

std::vector<Operation> theory_signature(const std::vector<HornSentence>& sigma) {
  std::set<Integer> constants;
  std::set<Term::Kind> binaries;
  for (const auto& s : sigma)
    for (const auto& t : s.terms()) collect_symbols(t, constants, binaries);
  std::vector<Operation> out;
  for (const auto& c : constants) out.push_back({c.get_str(), 0});
  for (auto kind : {Term::Kind::Add, Term::Kind::Sub, Term::Kind::Mul})
    if (binaries.count(kind)) out.push_back({operation_symbol(kind), 2});
  return out;
}

std::optional<FinitePartialAlgebra> search_total_model(const std::vector<HornSentence>& sigma, std::size_t size,
                                                       const ModelSearchOptions& options) {
  check_size(size, options);
  std::optional<FinitePartialAlgebra> found;
  TableSearch(empty_model(sigma, size), sigma).run([&](const FinitePartialAlgebra& q) {
    found = q;
    return false;
  });
  return found;
}

std::size_t for_each_total_model(const std::vector<HornSentence>& sigma, std::size_t size,
                                 const std::function<bool(const FinitePartialAlgebra&)>& visit,
                                 const ModelSearchOptions& options) {
  check_size(size, options);
  return TableSearch(empty_model(sigma, size), sigma).run(visit);
}

ModEmbeddingResult embeds_into_mod_bounded(const FinitePartialAlgebra& p, const std::vector<HornSentence>& sigma,
                                           std::size_t max_size, const ModelSearchOptions& options) {
  check_size(max_size, options);
  for (const auto& op : theory_signature(sigma)) {
    auto j = p.find_operation(op.name);
    if (!j || p.signature()[*j].arity != op.arity)
      throw SignatureMismatch("theory uses '" + op.name + "', which the algebra lacks");
  }
  ModEmbeddingResult out{std::nullopt, max_size};
  for (std::size_t size = p.size(); size <= max_size; ++size) {
    std::vector<std::string> carrier = p.carrier();
    for (std::size_t i = p.size(); i < size; ++i) carrier.push_back(fresh_name(carrier, i));
    FinitePartialAlgebra start(std::move(carrier), p.signature());
    for (std::size_t op = 0; op < p.signature().size(); ++op)
      for (std::size_t idx = 0; idx < p.table_size(op); ++idx)
        if (auto r = p.entry(op, idx)) start.define(op, p.unflatten(op, idx), *r);
    std::optional<FinitePartialAlgebra> found;
    TableSearch(std::move(start), sigma).run([&](const FinitePartialAlgebra& q) {
      found = q;
      return false;
    });
    if (found) {
      std::vector<Element> alpha(p.size());
      for (Element e = 0; e < p.size(); ++e) alpha[e] = e;
      out.witness = ModEmbedding{std::move(*found), std::move(alpha)};
      return out;
    }
  }
  return out;
}

std::vector<HornSentence> hailperin_sigma(unsigned max_multiplier) {
  std::vector<HornSentence> out;
  for (const char* law : {
           "(x + y) + z = x + (y + z)",
           "x + y = y + x",
           "x + 0 = x",
           "(x - y) + y = x",
           "(x*y)*z = x*(y*z)",
           "x*y = y*x",
           "x*1 = x",
           "x*(y + z) = x*y + x*z",
       })
    out.push_back(HornSentence::closure({}, parse_equation(law)));
  out.push_back(HornSentence::closure({parse_equation("0 = 1")}, std::nullopt));
  const Term x = Term::var("x");
  for (unsigned n = 2; n <= max_multiplier; ++n) {
    Term sum = x;
    for (unsigned i = 1; i < n; ++i) sum = Term::add(sum, x);
    out.push_back(HornSentence::closure({{sum, Term::lit(0)}}, Equation{x, Term::lit(0)}));
  }
  return out;
}

std::vector<HornSentence> parse_theory(std::string_view text) {
  std::vector<HornSentence> out;
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
    try {
      out.push_back(parse_sentence(line));
    } catch (const ParseError& e) {
      throw FormatError(line_no, e.what());
    } catch (const std::invalid_argument& e) {
      throw FormatError(line_no, e.what());
    }
  }
  return out;
}

std::string format_theory(const std::vector<HornSentence>& sigma) {
  std::string out;
  for (const auto& s : sigma) out += to_theory_line(s) + "\n";
  return out;
}

}  // namespace boolelab
