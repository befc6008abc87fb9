#pragma once

// Flat postfix form of a term bound to one algebra's operation indices, for
// the enumeration loops. Not part of the public surface.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boolelab/errors.hpp"
#include "boolelab/partial_algebra.hpp"
#include "boolelab/sentence.hpp"

namespace boolelab::detail {

class CompiledTerm {
 public:
  /// `slots[i]` names the variable read from values[i] at evaluation time.
  CompiledTerm(const FinitePartialAlgebra& a, const Term& t, const std::vector<std::string>& slots) {
    compile(a, t, slots);
  }

  /// nullopt when undefined (or, during model search, not yet assigned).
  std::optional<Element> eval(const FinitePartialAlgebra& a, std::span<const Element> values) const {
    constexpr std::size_t kInline = 64;
    Element inline_stack[kInline];
    std::vector<Element> heap;
    Element* stack = inline_stack;
    if (max_stack_ > kInline) {
      heap.resize(max_stack_);
      stack = heap.data();
    }
    std::size_t top = 0;
    for (const Instr& in : code_) {
      switch (in.code) {
        case Code::Var:
          stack[top++] = values[in.arg];
          break;
        case Code::Undef:
          return std::nullopt;
        case Code::Apply: {
          top -= in.arity;
          auto r = a.apply(in.arg, std::span<const Element>(stack + top, in.arity));
          if (!r) return std::nullopt;
          stack[top++] = *r;
          break;
        }
      }
    }
    return stack[0];
  }

 private:
  enum class Code : std::uint8_t { Var, Undef, Apply };
  struct Instr {
    Code code;
    std::uint32_t arg;
    std::uint32_t arity;
  };

  void compile(const FinitePartialAlgebra& a, const Term& t, const std::vector<std::string>& slots) {
    std::size_t depth = 0;
    emit(a, t, slots, depth);
    // A literal without a table always yields undefined; the whole term does too.
    for (const auto& in : code_) {
      if (in.code == Code::Undef) {
        code_ = {Instr{Code::Undef, 0, 0}};
        break;
      }
    }
  }

  void emit(const FinitePartialAlgebra& a, const Term& t, const std::vector<std::string>& slots, std::size_t& depth) {
    switch (t.kind()) {
      case Term::Kind::Var: {
        std::size_t slot = slots.size();
        for (std::size_t i = 0; i < slots.size(); ++i)
          if (slots[i] == t.name()) slot = i;
        if (slot == slots.size()) throw EvaluationError("variable '" + t.name() + "' is not assigned");
        push(Instr{Code::Var, static_cast<std::uint32_t>(slot), 0}, depth, +1);
        return;
      }
      case Term::Kind::IntLit: {
        const std::string sym = t.value().get_str();
        auto op = a.find_operation(sym);
        if (op && a.signature()[*op].arity == 0) {
          push(Instr{Code::Apply, static_cast<std::uint32_t>(*op), 0}, depth, +1);
        } else if (t.value() == 0 || t.value() == 1) {
          throw EvaluationError("constant '" + sym + "' is not in the signature");
        } else {
          push(Instr{Code::Undef, 0, 0}, depth, +1);
        }
        return;
      }
      default: {
        const std::string sym = operation_symbol(t.kind());
        auto op = a.find_operation(sym);
        if (!op || a.signature()[*op].arity != 2)
          throw EvaluationError("operation '" + sym + "' is not in the signature");
        emit(a, t.left(), slots, depth);
        emit(a, t.right(), slots, depth);
        push(Instr{Code::Apply, static_cast<std::uint32_t>(*op), 2}, depth, -1);
        return;
      }
    }
  }

  void push(Instr in, std::size_t& depth, int delta) {
    code_.push_back(in);
    depth = static_cast<std::size_t>(static_cast<long>(depth) + delta);
    if (depth > max_stack_) max_stack_ = depth;
  }

  std::vector<Instr> code_;
  std::size_t max_stack_ = 1;
};

/// All terms of a Horn sentence compiled against one algebra.
struct CompiledSentence {
  std::vector<CompiledTerm> terms;  // antecedent sides, then consequent sides
  std::size_t antecedents;
  bool falsum;

  CompiledSentence(const FinitePartialAlgebra& a, const HornSentence& s)
      : antecedents(s.antecedents().size()), falsum(s.is_negative()) {
    for (const auto& t : s.terms()) terms.emplace_back(a, t, s.vars());
  }

  /// OutsideDomain: some term is undefined (unassigned, during model search).
  enum class Outcome { OutsideDomain, True, False };

  Outcome evaluate(const FinitePartialAlgebra& a, std::span<const Element> values) const {
    Element buffer[64];
    std::vector<Element> heap;
    Element* out = buffer;
    if (terms.size() > 64) {
      heap.resize(terms.size());
      out = heap.data();
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
      auto v = terms[i].eval(a, values);
      if (!v) return Outcome::OutsideDomain;
      out[i] = *v;
    }
    for (std::size_t i = 0; i < antecedents; ++i)
      if (out[2 * i] != out[2 * i + 1]) return Outcome::True;
    if (falsum) return Outcome::False;
    return out[2 * antecedents] == out[2 * antecedents + 1] ? Outcome::True : Outcome::False;
  }
};

/// Number of assignments of `vars` elements from a carrier of size n; throws
/// CapExceeded above 2^40.
inline std::uint64_t assignment_count(std::size_t n, std::size_t vars) {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 40;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < vars; ++i) {
    if (count > kLimit / n) throw CapExceeded("assignment space (carrier^vars)", static_cast<std::size_t>(kLimit) + 1, static_cast<std::size_t>(kLimit));
    count *= n;
  }
  return count;
}

/// Decodes index into base-n digits, first variable most significant.
inline void decode_assignment(std::uint64_t index, std::size_t n, std::span<Element> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<Element>(index % n);
    index /= n;
  }
}

}  // namespace boolelab::detail
