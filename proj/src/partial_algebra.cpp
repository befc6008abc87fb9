#include "boolelab/partial_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "boolelab/errors.hpp"
#include "compiled.hpp"

namespace boolelab {

std::string operation_symbol(Term::Kind kind) {
  switch (kind) {
    case Term::Kind::Add:
      return "+";
    case Term::Kind::Sub:
      return "-";
    case Term::Kind::Mul:
      return "*";
    default:
      throw std::invalid_argument("not an operation kind");
  }
}

// ---------------------------------------------------------------------------
// FinitePartialAlgebra

FinitePartialAlgebra::FinitePartialAlgebra(std::vector<std::string> carrier, std::vector<Operation> signature)
    : carrier_(std::move(carrier)), signature_(std::move(signature)) {
  if (carrier_.empty()) throw std::invalid_argument("carrier must be nonempty");
  if (std::set<std::string>(carrier_.begin(), carrier_.end()).size() != carrier_.size())
    throw std::invalid_argument("carrier names repeat");
  std::set<std::string> names;
  for (const auto& op : signature_) {
    if (!names.insert(op.name).second) throw std::invalid_argument("operation '" + op.name + "' declared twice");
    std::size_t cells = 1;
    for (unsigned i = 0; i < op.arity; ++i) {
      if (cells > (std::size_t{1} << 26) / carrier_.size()) throw std::invalid_argument("operation table too large");
      cells *= carrier_.size();
    }
    tables_.emplace_back(cells, kUndefined);
  }
}

std::optional<Element> FinitePartialAlgebra::find_element(const std::string& name) const {
  auto it = std::find(carrier_.begin(), carrier_.end(), name);
  if (it == carrier_.end()) return std::nullopt;
  return static_cast<Element>(it - carrier_.begin());
}

std::optional<std::size_t> FinitePartialAlgebra::find_operation(const std::string& name) const {
  for (std::size_t i = 0; i < signature_.size(); ++i)
    if (signature_[i].name == name) return i;
  return std::nullopt;
}

std::size_t FinitePartialAlgebra::flat_index(std::size_t op, std::span<const Element> args) const {
  if (args.size() != signature_.at(op).arity) throw std::invalid_argument("arity mismatch");
  std::size_t index = 0;
  for (Element e : args) index = index * carrier_.size() + e;
  return index;
}

std::vector<Element> FinitePartialAlgebra::unflatten(std::size_t op, std::size_t index) const {
  std::vector<Element> args(signature_.at(op).arity);
  detail::decode_assignment(index, carrier_.size(), args);
  return args;
}

std::optional<Element> FinitePartialAlgebra::apply(std::size_t op, std::span<const Element> args) const {
  Element r = tables_[op][flat_index(op, args)];
  if (r == kUndefined) return std::nullopt;
  return r;
}

std::optional<Element> FinitePartialAlgebra::entry(std::size_t op, std::size_t index) const {
  Element r = tables_.at(op).at(index);
  if (r == kUndefined) return std::nullopt;
  return r;
}

void FinitePartialAlgebra::define(std::size_t op, std::span<const Element> args, Element result) {
  if (args.size() != signature_.at(op).arity) throw std::invalid_argument("arity mismatch for " + signature_[op].name);
  for (Element e : args)
    if (e >= size()) throw std::out_of_range("argument outside the carrier");
  if (result >= size()) throw std::out_of_range("result outside the carrier");
  tables_[op][flat_index(op, args)] = result;
}

void FinitePartialAlgebra::set_entry(std::size_t op, std::size_t index, std::optional<Element> result) {
  if (result && *result >= size()) throw std::out_of_range("result outside the carrier");
  tables_.at(op).at(index) = result ? *result : kUndefined;
}

std::size_t FinitePartialAlgebra::defined_count(std::size_t op) const {
  return static_cast<std::size_t>(
      std::count_if(tables_.at(op).begin(), tables_[op].end(), [](Element e) { return e != kUndefined; }));
}

bool FinitePartialAlgebra::is_total() const {
  for (const auto& table : tables_)
    if (std::find(table.begin(), table.end(), kUndefined) != table.end()) return false;
  return true;
}

std::string to_string(const FinitePartialAlgebra& a, const Assignment& assignment) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, e] : assignment) {
    if (!first) out += ", ";
    first = false;
    out += var + "=" + a.name(e);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Evaluation and satisfaction

std::optional<Element> eval_term(const FinitePartialAlgebra& a, const Term& t, const Assignment& assignment) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = assignment.find(t.name());
      if (it == assignment.end()) throw EvaluationError("variable '" + t.name() + "' is not assigned");
      if (it->second >= a.size()) throw EvaluationError("variable '" + t.name() + "' is assigned outside the carrier");
      return it->second;
    }
    case Term::Kind::IntLit: {
      const std::string sym = t.value().get_str();
      auto op = a.find_operation(sym);
      if (op && a.signature()[*op].arity == 0) return a.apply(*op, {});
      if (t.value() == 0 || t.value() == 1) throw EvaluationError("constant '" + sym + "' is not in the signature");
      return std::nullopt;
    }
    default: {
      const std::string sym = operation_symbol(t.kind());
      auto op = a.find_operation(sym);
      if (!op || a.signature()[*op].arity != 2) throw EvaluationError("operation '" + sym + "' is not in the signature");
      // Both children are evaluated so that errors surface regardless of definedness.
      auto l = eval_term(a, t.left(), assignment);
      auto r = eval_term(a, t.right(), assignment);
      if (!l || !r) return std::nullopt;
      const Element args[2] = {*l, *r};
      return a.apply(*op, args);
    }
  }
}

using detail::CompiledSentence;

HoldsResult holds(const FinitePartialAlgebra& a, const HornSentence& s, Execution exec) {
  const CompiledSentence compiled(a, s);
  const std::size_t m = s.vars().size();
  const std::uint64_t count = detail::assignment_count(a.size(), m);
  const std::uint64_t hit = kernels::first_match(exec, count, [&](std::uint64_t index) {
    std::vector<Element> values(m);
    detail::decode_assignment(index, a.size(), values);
    return compiled.evaluate(a, values) == CompiledSentence::Outcome::False;
  });
  if (hit == count) return {true, std::nullopt};
  std::vector<Element> values(m);
  detail::decode_assignment(hit, a.size(), values);
  Assignment witness;
  for (std::size_t i = 0; i < m; ++i) witness[s.vars()[i]] = values[i];
  return {false, witness};
}

bool is_total_for(const FinitePartialAlgebra& a, const HornSentence& s) {
  const CompiledSentence compiled(a, s);
  const std::size_t m = s.vars().size();
  const std::uint64_t count = detail::assignment_count(a.size(), m);
  std::vector<Element> values(m);
  for (std::uint64_t index = 0; index < count; ++index) {
    detail::decode_assignment(index, a.size(), values);
    if (compiled.evaluate(a, values) == CompiledSentence::Outcome::OutsideDomain) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Subalgebras and embeddings

namespace {

/// op_map[i] = index in q of p's operation i.
std::vector<std::size_t> match_signatures(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q) {
  if (p.signature().size() != q.signature().size()) throw SignatureMismatch("signatures differ in size");
  std::vector<std::size_t> op_map;
  for (const auto& op : p.signature()) {
    auto j = q.find_operation(op.name);
    if (!j || q.signature()[*j].arity != op.arity)
      throw SignatureMismatch("operation '" + op.name + "/" + std::to_string(op.arity) + "' missing from target");
    op_map.push_back(*j);
  }
  return op_map;
}

std::string describe_entry(const FinitePartialAlgebra& a, std::size_t op, std::span<const Element> args,
                           std::optional<Element> result) {
  GroundEntry e{op, {args.begin(), args.end()}, result ? *result : 0};
  std::string text = to_string(a, e);
  if (!result) text = text.substr(0, text.rfind(" = ")) + " undefined";
  return text;
}

/// Checks every defined entry of p against q under alpha (which must be total).
Verdict check_entries(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q,
                      const std::vector<std::size_t>& op_map, const std::vector<Element>& alpha) {
  for (std::size_t op = 0; op < p.signature().size(); ++op) {
    for (std::size_t idx = 0; idx < p.table_size(op); ++idx) {
      auto r = p.entry(op, idx);
      if (!r) continue;
      std::vector<Element> args = p.unflatten(op, idx);
      std::vector<Element> image(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) image[i] = alpha[args[i]];
      auto qr = q.apply(op_map[op], image);
      if (!qr || *qr != alpha[*r]) {
        return {false, "entry " + to_string(p, GroundEntry{op, args, *r}) + " maps to " +
                           describe_entry(q, op_map[op], image, qr)};
      }
    }
  }
  return {true, {}};
}

}  // namespace

Verdict is_weak_subalgebra(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q) {
  auto op_map = match_signatures(p, q);
  std::vector<Element> inclusion;
  for (const auto& name : p.carrier()) {
    auto e = q.find_element(name);
    if (!e) return {false, "element '" + name + "' is not in the larger carrier"};
    inclusion.push_back(*e);
  }
  return check_entries(p, q, op_map, inclusion);
}

Verdict check_embedding(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q,
                        const std::vector<Element>& alpha) {
  if (alpha.size() != p.size()) throw std::invalid_argument("mapping is not total on the source carrier");
  for (Element e : alpha)
    if (e >= q.size()) throw std::invalid_argument("mapping leaves the target carrier");
  auto op_map = match_signatures(p, q);
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (std::size_t j = i + 1; j < alpha.size(); ++j)
      if (alpha[i] == alpha[j])
        return {false, "not injective: " + p.name(static_cast<Element>(i)) + " and " +
                           p.name(static_cast<Element>(j)) + " both map to " + q.name(alpha[i])};
  return check_entries(p, q, op_map, alpha);
}

std::optional<std::vector<Element>> search_embedding(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q) {
  auto op_map = match_signatures(p, q);
  if (p.size() > q.size()) return std::nullopt;

  // Entries are checked as soon as the largest element they mention is mapped.
  struct Pending {
    std::size_t op;
    std::vector<Element> args;
    Element result;
  };
  std::vector<std::vector<Pending>> by_max(p.size());
  for (std::size_t op = 0; op < p.signature().size(); ++op) {
    for (std::size_t idx = 0; idx < p.table_size(op); ++idx) {
      auto r = p.entry(op, idx);
      if (!r) continue;
      auto args = p.unflatten(op, idx);
      Element top = *r;
      for (Element e : args) top = std::max(top, e);
      by_max[top].push_back({op, std::move(args), *r});
    }
  }

  std::vector<Element> alpha(p.size());
  std::vector<bool> used(q.size(), false);
  std::vector<Element> image;
  auto consistent = [&](std::size_t k) {
    for (const auto& pending : by_max[k]) {
      image.resize(pending.args.size());
      for (std::size_t i = 0; i < image.size(); ++i) image[i] = alpha[pending.args[i]];
      auto qr = q.apply(op_map[pending.op], image);
      if (!qr || *qr != alpha[pending.result]) return false;
    }
    return true;
  };
  auto search = [&](auto&& self, std::size_t k) -> bool {
    if (k == p.size()) return true;
    for (Element target = 0; target < q.size(); ++target) {
      if (used[target]) continue;
      alpha[k] = target;
      used[target] = true;
      if (consistent(k) && self(self, k + 1)) return true;
      used[target] = false;
    }
    return false;
  };
  if (search(search, 0)) return alpha;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Diagrams

Presentation presentation(const FinitePartialAlgebra& a) {
  Presentation out;
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    for (std::size_t idx = 0; idx < a.table_size(op); ++idx) {
      if (auto r = a.entry(op, idx)) out.diag_plus.push_back({op, a.unflatten(op, idx), *r});
    }
  }
  for (Element i = 0; i < a.size(); ++i)
    for (Element j = i + 1; j < a.size(); ++j) out.distinct.emplace_back(i, j);
  return out;
}

std::string to_string(const FinitePartialAlgebra& a, const GroundEntry& entry) {
  const Operation& op = a.signature().at(entry.op);
  std::string lhs;
  if (op.arity == 0) {
    lhs = op.name;
  } else if (op.arity == 2 && !std::isalnum(static_cast<unsigned char>(op.name.front()))) {
    lhs = a.name(entry.args[0]) + " " + op.name + " " + a.name(entry.args[1]);
  } else {
    lhs = op.name + "(";
    for (std::size_t i = 0; i < entry.args.size(); ++i) lhs += (i ? ", " : "") + a.name(entry.args[i]);
    lhs += ")";
  }
  return lhs + " = " + a.name(entry.result);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

FinitePartialAlgebra parse_algebra(std::string_view text) {
  std::vector<std::string> carrier;
  struct Block {
    Operation op;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;  // line number, tokens
  };
  std::vector<Block> blocks;
  bool have_carrier = false;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (!have_carrier) {
      if (tokens[0] != "carrier:") throw FormatError(line_no, "expected 'carrier:' header");
      carrier.assign(tokens.begin() + 1, tokens.end());
      if (carrier.empty()) throw FormatError(line_no, "carrier must be nonempty");
      if (std::set<std::string>(carrier.begin(), carrier.end()).size() != carrier.size())
        throw FormatError(line_no, "carrier names repeat");
      for (const auto& c : carrier)
        if (c == "->") throw FormatError(line_no, "'->' is not an element name");
      have_carrier = true;
    } else if (tokens[0] == "op") {
      if (tokens.size() != 2 || tokens[1].size() < 4 || tokens[1].back() != ':')
        throw FormatError(line_no, "expected 'op NAME/ARITY:'");
      std::string spec = tokens[1].substr(0, tokens[1].size() - 1);
      auto slash = spec.rfind('/');
      if (slash == std::string::npos || slash == 0 || slash + 1 == spec.size())
        throw FormatError(line_no, "expected 'op NAME/ARITY:'");
      std::string arity_text = spec.substr(slash + 1);
      if (!std::all_of(arity_text.begin(), arity_text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
          arity_text.size() > 2)
        throw FormatError(line_no, "bad arity '" + arity_text + "'");
      Operation op{spec.substr(0, slash), static_cast<unsigned>(std::stoul(arity_text))};
      for (const auto& b : blocks)
        if (b.op.name == op.name) throw FormatError(line_no, "operation '" + op.name + "' declared twice");
      blocks.push_back({op, {}});
    } else {
      if (blocks.empty()) throw FormatError(line_no, "table entry before any 'op' header");
      blocks.back().lines.emplace_back(line_no, std::move(tokens));
    }
    if (end == text.size()) break;
  }
  if (!have_carrier) throw FormatError(line_no, "missing 'carrier:' header");

  std::vector<Operation> signature;
  for (const auto& b : blocks) signature.push_back(b.op);
  FinitePartialAlgebra a = [&] {
    try {
      return FinitePartialAlgebra(carrier, signature);
    } catch (const std::invalid_argument& e) {
      throw FormatError(1, e.what());
    }
  }();
  for (std::size_t op = 0; op < blocks.size(); ++op) {
    const unsigned arity = blocks[op].op.arity;
    for (const auto& [ln, tokens] : blocks[op].lines) {
      if (tokens.size() != arity + 2 || tokens[arity] != "->")
        throw FormatError(ln, "expected " + std::to_string(arity) + " argument(s), '->' and a result");
      std::vector<Element> args;
      for (unsigned i = 0; i < arity; ++i) {
        auto e = a.find_element(tokens[i]);
        if (!e) throw FormatError(ln, "unknown element '" + tokens[i] + "'");
        args.push_back(*e);
      }
      auto r = a.find_element(tokens[arity + 1]);
      if (!r) throw FormatError(ln, "unknown element '" + tokens[arity + 1] + "'");
      if (a.apply(op, args)) throw FormatError(ln, "entry defined twice");
      a.define(op, args, *r);
    }
  }
  return a;
}

std::string format_algebra(const FinitePartialAlgebra& a) {
  std::string out = "carrier:";
  for (const auto& name : a.carrier()) out += " " + name;
  out += "\n";
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    const Operation& o = a.signature()[op];
    out += "op " + o.name + "/" + std::to_string(o.arity) + ":\n";
    for (std::size_t idx = 0; idx < a.table_size(op); ++idx) {
      auto r = a.entry(op, idx);
      if (!r) continue;
      for (Element e : a.unflatten(op, idx)) out += a.name(e) + " ";
      out += "-> " + a.name(*r) + "\n";
    }
  }
  return out;
}

}  // namespace boolelab
