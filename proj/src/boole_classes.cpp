#include "boolelab/boole_classes.hpp"

#include <stdexcept>

#include "boolelab/errors.hpp"
#include "boolelab/polynomial.hpp"
#include "compiled.hpp"

namespace boolelab {

namespace {

enum OpIndex : std::size_t { kAdd = 0, kSub = 1, kMul = 2, kZero = 3, kOne = 4 };

void check_universe(unsigned n, unsigned max_universe) {
  if (n == 0) throw std::invalid_argument("the universe must be nonempty");
  const unsigned limit = std::min(max_universe, 16U);
  if (n > limit) throw CapExceeded("universe size", n, limit);
}

}  // namespace

std::string class_name(std::uint32_t subset, unsigned n) {
  if (subset == 0) return "0";
  if (subset == (std::uint32_t{1} << n) - 1) return "U";
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < n; ++i) {
    if (!(subset >> i & 1U)) continue;
    if (!first) out += ",";
    first = false;
    out += std::to_string(i);
  }
  return out + "}";
}

ClassAlgebra build_class_algebra(unsigned n, unsigned max_universe) {
  check_universe(n, max_universe);
  const std::uint32_t size = std::uint32_t{1} << n;
  const std::uint32_t full = size - 1;
  std::vector<std::string> carrier;
  for (std::uint32_t a = 0; a < size; ++a) carrier.push_back(class_name(a, n));
  FinitePartialAlgebra alg(std::move(carrier), {{"+", 2}, {"-", 2}, {"*", 2}, {"0", 0}, {"1", 0}});
  for (std::uint32_t a = 0; a < size; ++a) {
    for (std::uint32_t b = 0; b < size; ++b) {
      const Element args[2] = {a, b};
      alg.define(kMul, args, a & b);
      if ((a & b) == 0) alg.define(kAdd, args, a | b);
      if ((b & ~a) == 0) alg.define(kSub, args, a & ~b);
    }
  }
  alg.define(kZero, {}, 0);
  alg.define(kOne, {}, full);
  return {n, std::move(alg)};
}

IntVector chi(std::uint32_t subset, unsigned n) {
  IntVector out(n);
  for (unsigned i = 0; i < n; ++i) out[i] = (subset >> i) & 1U;
  return out;
}

namespace {

IntVector ring_op(std::size_t op, const IntVector& a, const IntVector& b) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    switch (op) {
      case kAdd: out[i] = a[i] + b[i]; break;
      case kSub: out[i] = a[i] - b[i]; break;
      default: out[i] = a[i] * b[i]; break;
    }
  }
  return out;
}

}  // namespace

ChiCheck verify_chi_embedding(unsigned n, unsigned max_universe) {
  const ClassAlgebra pu = build_class_algebra(n, max_universe);
  const FinitePartialAlgebra& a = pu.algebra;
  std::vector<IntVector> images;
  for (Element e = 0; e < a.size(); ++e) images.push_back(chi(e, n));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] == images[j])
        return {false, "chi identifies " + a.name(static_cast<Element>(i)) + " and " + a.name(static_cast<Element>(j)), 0};

  ChiCheck out{true, {}, 0};
  const IntVector zero(n, Integer(0));
  const IntVector one(n, Integer(1));
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    for (std::size_t idx = 0; idx < a.table_size(op); ++idx) {
      auto r = a.entry(op, idx);
      if (!r) continue;
      ++out.entries_checked;
      IntVector target;
      std::vector<Element> args = a.unflatten(op, idx);
      if (op == kZero)
        target = zero;
      else if (op == kOne)
        target = one;
      else
        target = ring_op(op, images[args[0]], images[args[1]]);
      if (target != images[*r]) {
        out.yes = false;
        out.failing_entry = to_string(a, GroundEntry{op, args, *r});
        return out;
      }
    }
  }
  return out;
}

SemanticResult semantic_consequence(const std::vector<Equation>& premisses, const Equation& conclusion,
                                    const SemanticOptions& options) {
  SemanticResult out{true, 0, argument_variables(premisses, conclusion), 0, {}};
  const std::size_t m = out.vars.size();
  if (options.max_n > 0) check_universe(options.max_n, options.max_universe);
  for (unsigned n = 1; n <= options.max_n; ++n) {
    const ClassAlgebra pu = build_class_algebra(n, options.max_universe);
    const FinitePartialAlgebra& a = pu.algebra;
    std::vector<detail::CompiledTerm> sides;
    for (const auto& e : premisses) {
      sides.emplace_back(a, e.lhs, out.vars);
      sides.emplace_back(a, e.rhs, out.vars);
    }
    sides.emplace_back(a, conclusion.lhs, out.vars);
    sides.emplace_back(a, conclusion.rhs, out.vars);

    const std::uint64_t count = detail::assignment_count(a.size(), m);
    const std::uint64_t hit = kernels::first_match(options.execution, count, [&](std::uint64_t index) {
      std::vector<Element> values(m);
      detail::decode_assignment(index, a.size(), values);
      std::vector<Element> results(sides.size());
      for (std::size_t i = 0; i < sides.size(); ++i) {
        auto v = sides[i].eval(a, values);
        if (!v) return false;  // outside the domain of the argument
        results[i] = *v;
      }
      for (std::size_t i = 0; i + 2 < results.size(); i += 2)
        if (results[i] != results[i + 1]) return false;
      return results[results.size() - 2] != results.back();
    });
    out.checked_up_to = n;
    if (hit < count) {
      out.valid = false;
      out.witness_n = n;
      std::vector<Element> values(m);
      detail::decode_assignment(hit, a.size(), values);
      out.witness.assign(values.begin(), values.end());
      return out;
    }
  }
  return out;
}

std::string witness_string(const SemanticResult& r) {
  std::string out = "{";
  for (std::size_t i = 0; i < r.witness.size(); ++i) {
    if (i) out += ", ";
    out += r.vars[i] + "=" + class_name(r.witness[i], r.witness_n);
  }
  return out + "}";
}

}  // namespace boolelab
