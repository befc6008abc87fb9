#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "boolelab/integer.hpp"

namespace boolelab {

/// Immutable term over the signature {+, -, *, integer literals, variables}.
///
/// Terms are cheap to copy: children are shared. Equality is structural and
/// says nothing about equality in any algebra.
class Term {
 public:
  enum class Kind { Var, IntLit, Add, Sub, Mul };

  /// Throws std::invalid_argument unless `name` matches [a-zA-Z][a-zA-Z0-9_]*.
  static Term var(std::string name);
  static Term lit(Integer value);
  static Term lit(long value) { return lit(Integer(value)); }
  static Term add(Term left, Term right);
  static Term sub(Term left, Term right);
  static Term mul(Term left, Term right);

  /// Placeholder used by congruence contexts; prints and parses as `_`.
  static Term hole();

  Kind kind() const;
  bool is_var() const { return kind() == Kind::Var; }
  bool is_lit() const { return kind() == Kind::IntLit; }
  bool is_binary() const { return !is_var() && !is_lit(); }
  bool is_hole() const;

  const std::string& name() const;
  const Integer& value() const;
  const Term& left() const;
  const Term& right() const;

  std::size_t depth() const;
  std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

 private:
  struct Node;
  static Term binary(Kind kind, Term left, Term right);
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Equation {
  Term lhs;
  Term rhs;

  friend bool operator==(const Equation& a, const Equation& b) { return a.lhs == b.lhs && a.rhs == b.rhs; }
  friend bool operator!=(const Equation& a, const Equation& b) { return !(a == b); }
};

bool is_identifier(std::string_view text);

void collect_variables(const Term& t, std::set<std::string>& out);
/// Sorted, duplicate free.
std::vector<std::string> variables(const Term& t);
std::vector<std::string> variables(const Equation& e);

/// Replaces every occurrence of variable `name` (or of the hole, when `name` is "_").
Term substitute(const Term& t, const std::string& name, const Term& replacement);

struct ParseOptions {
  /// Accept `_` as an atom (congruence contexts).
  bool allow_hole = false;
};

/// Grammar:
///   term := sum
///   sum  := prod (('+' | '-') prod)*
///   prod := atom ('*'? atom)*
///   atom := ident | intlit | '(' sum ')'
/// Throws ParseError.
Term parse_term(std::string_view text, ParseOptions options = {});

/// `lhs = rhs`, both sides in the term grammar.
Equation parse_equation(std::string_view text, ParseOptions options = {});

/// Minimal-parentheses rendering; parse_term(pretty(t)) == t.
std::string pretty(const Term& t);
std::string pretty(const Equation& e);

}  // namespace boolelab
