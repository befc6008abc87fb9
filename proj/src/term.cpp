#include "boolelab/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "boolelab/errors.hpp"

namespace boolelab {

struct Term::Node {
  Kind kind;
  std::string name;
  Integer value;
  Term left{nullptr};
  Term right{nullptr};
  std::size_t depth = 0;
  std::size_t size = 1;
};

namespace {

const char* const kHoleName = "_";
constexpr std::size_t kMaxParseDepth = 10000;

}  // namespace

bool is_identifier(std::string_view text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text.front()))) return false;
  for (char c : text) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

Term Term::var(std::string name) {
  if (!is_identifier(name)) throw std::invalid_argument("not an identifier: '" + name + "'");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->name = std::move(name);
  return Term(std::move(node));
}

Term Term::hole() {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->name = kHoleName;
  return Term(std::move(node));
}

Term Term::lit(Integer value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::IntLit;
  node->value = std::move(value);
  return Term(std::move(node));
}

Term Term::add(Term left, Term right) { return binary(Kind::Add, std::move(left), std::move(right)); }
Term Term::sub(Term left, Term right) { return binary(Kind::Sub, std::move(left), std::move(right)); }
Term Term::mul(Term left, Term right) { return binary(Kind::Mul, std::move(left), std::move(right)); }

Term::Kind Term::kind() const { return node_->kind; }
bool Term::is_hole() const { return node_->kind == Kind::Var && node_->name == kHoleName; }
const std::string& Term::name() const { return node_->name; }
const Integer& Term::value() const { return node_->value; }
const Term& Term::left() const { return node_->left; }
const Term& Term::right() const { return node_->right; }
std::size_t Term::depth() const { return node_->depth; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.name() == b.name();
    case Term::Kind::IntLit:
      return a.value() == b.value();
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

Term Term::binary(Kind kind, Term left, Term right) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->depth = 1 + std::max(left.depth(), right.depth());
  node->size = 1 + left.size() + right.size();
  node->left = std::move(left);
  node->right = std::move(right);
  return Term(std::move(node));
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      if (!t.is_hole()) out.insert(t.name());
      return;
    case Term::Kind::IntLit:
      return;
    default:
      collect_variables(t.left(), out);
      collect_variables(t.right(), out);
  }
}

std::vector<std::string> variables(const Term& t) {
  std::set<std::string> out;
  collect_variables(t, out);
  return {out.begin(), out.end()};
}

std::vector<std::string> variables(const Equation& e) {
  std::set<std::string> out;
  collect_variables(e.lhs, out);
  collect_variables(e.rhs, out);
  return {out.begin(), out.end()};
}

Term substitute(const Term& t, const std::string& name, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == name ? replacement : t;
    case Term::Kind::IntLit:
      return t;
    default: {
      Term l = substitute(t.left(), name, replacement);
      Term r = substitute(t.right(), name, replacement);
      switch (t.kind()) {
        case Term::Kind::Add: return Term::add(std::move(l), std::move(r));
        case Term::Kind::Sub: return Term::sub(std::move(l), std::move(r));
        default: return Term::mul(std::move(l), std::move(r));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, Int, Plus, Minus, Star, LParen, RParen, Equals, Hole, End };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string_view text;
};

class Parser {
 public:
  Parser(std::string_view text, ParseOptions options) : text_(text), options_(options) { advance(); }

  Term sum() {
    Term acc = product();
    while (tok_.kind == Tok::Plus || tok_.kind == Tok::Minus) {
      bool plus = tok_.kind == Tok::Plus;
      advance();
      Term rhs = product();
      acc = plus ? Term::add(std::move(acc), std::move(rhs)) : Term::sub(std::move(acc), std::move(rhs));
      check_depth(acc);
    }
    return acc;
  }

  void expect(Tok kind, const char* what) {
    if (tok_.kind != kind) fail(std::string("expected ") + what + ", found " + describe(tok_));
    advance();
  }

  const Token& current() const { return tok_; }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(tok_.pos, message); }

  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + std::string(t.text) + "'";
  }

 private:
  bool starts_atom() const {
    return tok_.kind == Tok::Ident || tok_.kind == Tok::Int || tok_.kind == Tok::LParen || tok_.kind == Tok::Hole;
  }

  Term product() {
    Term acc = atom();
    for (;;) {
      if (tok_.kind == Tok::Star) {
        advance();
        acc = Term::mul(std::move(acc), atom());
      } else if (starts_atom()) {
        acc = Term::mul(std::move(acc), atom());
      } else {
        return acc;
      }
      check_depth(acc);
    }
  }

  void check_depth(const Term& t) const {
    if (t.depth() > kMaxParseDepth) fail("term nested too deeply");
  }

  Term atom() {
    switch (tok_.kind) {
      case Tok::Ident: {
        Term t = Term::var(std::string(tok_.text));
        advance();
        return t;
      }
      case Tok::Int: {
        Term t = Term::lit(Integer(std::string(tok_.text), 10));
        advance();
        return t;
      }
      case Tok::Hole:
        advance();
        return Term::hole();
      case Tok::LParen: {
        if (++open_parens_ > kMaxParseDepth) fail("parentheses nested too deeply");
        advance();
        Term inner = sum();
        --open_parens_;
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Minus:
        fail("unary minus is not supported; write 0 - t instead");
      default:
        fail("expected a variable, an integer or '(', found " + describe(tok_));
    }
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Tok::End, start, {}};
      return;
    }
    auto single = [&](Tok k) {
      ++pos_;
      tok_ = {k, start, text_.substr(start, 1)};
    };
    unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (std::isalpha(c)) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      tok_ = {Tok::Ident, start, text_.substr(start, pos_ - start)};
      return;
    }
    if (std::isdigit(c)) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      tok_ = {Tok::Int, start, text_.substr(start, pos_ - start)};
      return;
    }
    switch (c) {
      case '+': return single(Tok::Plus);
      case '-': return single(Tok::Minus);
      case '*': return single(Tok::Star);
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '=': return single(Tok::Equals);
      case '_':
        if (options_.allow_hole) return single(Tok::Hole);
        break;
      default:
        break;
    }
    throw ParseError(start, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::size_t open_parens_ = 0;
  Token tok_{Tok::End, 0, {}};
};

}  // namespace

Term parse_term(std::string_view text, ParseOptions options) {
  Parser p(text, options);
  Term t = p.sum();
  if (p.current().kind != Tok::End) p.fail("unexpected " + Parser::describe(p.current()) + " after term");
  return t;
}

Equation parse_equation(std::string_view text, ParseOptions options) {
  Parser p(text, options);
  Term lhs = p.sum();
  p.expect(Tok::Equals, "'='");
  Term rhs = p.sum();
  if (p.current().kind != Tok::End) p.fail("unexpected " + Parser::describe(p.current()) + " after equation");
  return {std::move(lhs), std::move(rhs)};
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// 0 = sum level, 1 = product level, 2 = atom level.
int level(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Add:
    case Term::Kind::Sub:
      return 0;
    case Term::Kind::Mul:
      return 1;
    default:
      return 2;
  }
}

void print(const Term& t, std::string& out);

void print_at(const Term& t, int min_level, std::string& out) {
  if (level(t) < min_level) {
    out += '(';
    print(t, out);
    out += ')';
  } else {
    print(t, out);
  }
}

void print(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += t.name();
      return;
    case Term::Kind::IntLit:
      out += t.value().get_str();
      return;
    case Term::Kind::Add:
    case Term::Kind::Sub:
      print_at(t.left(), 0, out);
      out += t.kind() == Term::Kind::Add ? " + " : " - ";
      print_at(t.right(), 1, out);
      return;
    case Term::Kind::Mul:
      print_at(t.left(), 1, out);
      out += '*';
      print_at(t.right(), 2, out);
      return;
  }
}

}  // namespace

std::string pretty(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::string pretty(const Equation& e) { return pretty(e.lhs) + " = " + pretty(e.rhs); }

}  // namespace boolelab
