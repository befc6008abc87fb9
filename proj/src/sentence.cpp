#include "boolelab/sentence.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "boolelab/errors.hpp"

namespace boolelab {

namespace {

void first_occurrence(const Term& t, std::vector<std::string>& order) {
  if (t.is_var()) {
    if (!t.is_hole() && std::find(order.begin(), order.end(), t.name()) == order.end()) order.push_back(t.name());
  } else if (t.is_binary()) {
    first_occurrence(t.left(), order);
    first_occurrence(t.right(), order);
  }
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

HornSentence::HornSentence(std::vector<std::string> vars, std::vector<Equation> antecedents,
                           std::optional<Equation> consequent)
    : vars_(std::move(vars)), antecedents_(std::move(antecedents)), consequent_(std::move(consequent)) {
  std::set<std::string> declared(vars_.begin(), vars_.end());
  if (declared.size() != vars_.size()) throw std::invalid_argument("quantified variables repeat");
  std::set<std::string> used;
  for (const auto& t : terms()) collect_variables(t, used);
  for (const auto& v : used) {
    if (!declared.count(v)) throw std::invalid_argument("variable '" + v + "' is not quantified");
  }
  if (!consequent_ && antecedents_.empty()) throw std::invalid_argument("a falsum sentence needs an antecedent");
}

HornSentence HornSentence::identity(const Equation& e) { return HornSentence(variables(e), {}, e); }

HornSentence HornSentence::closure(std::vector<Equation> antecedents, std::optional<Equation> consequent) {
  std::vector<std::string> order;
  for (const auto& a : antecedents) {
    first_occurrence(a.lhs, order);
    first_occurrence(a.rhs, order);
  }
  if (consequent) {
    first_occurrence(consequent->lhs, order);
    first_occurrence(consequent->rhs, order);
  }
  return HornSentence(std::move(order), std::move(antecedents), std::move(consequent));
}

std::vector<Term> HornSentence::terms() const {
  std::vector<Term> out;
  for (const auto& a : antecedents_) {
    out.push_back(a.lhs);
    out.push_back(a.rhs);
  }
  if (consequent_) {
    out.push_back(consequent_->lhs);
    out.push_back(consequent_->rhs);
  }
  return out;
}

std::string to_theory_line(const HornSentence& s) {
  std::vector<std::string> ante;
  for (const auto& a : s.antecedents()) ante.push_back(pretty(a));
  std::string out = join(ante, " & ");
  if (!out.empty()) out += " ";
  out += "-> ";
  out += s.consequent() ? pretty(*s.consequent()) : "false";
  return out;
}

std::string to_string(const HornSentence& s) {
  std::string body;
  if (s.antecedents().empty()) {
    body = pretty(*s.consequent());
  } else {
    body = to_theory_line(s);
  }
  if (s.vars().empty()) return body;
  return "(forall " + join(s.vars(), ", ") + ") " + body;
}

HornSentence parse_sentence(std::string_view line) {
  auto equation_at = [&](std::string_view piece) {
    const auto offset = static_cast<std::size_t>(piece.data() - line.data());
    try {
      return parse_equation(piece);
    } catch (const ParseError& e) {
      throw ParseError(offset + e.position(), e.detail());
    }
  };
  const std::size_t arrow = line.find("->");
  if (arrow == std::string_view::npos) {
    return HornSentence::closure({}, equation_at(trim(line)));
  }
  if (line.find("->", arrow + 2) != std::string_view::npos) throw ParseError(arrow, "more than one '->'");
  std::vector<Equation> antecedents;
  std::string_view left = trim(line.substr(0, arrow));
  while (!left.empty()) {
    const std::size_t amp = left.find('&');
    std::string_view piece = trim(left.substr(0, amp));
    if (piece.empty()) throw ParseError(static_cast<std::size_t>(left.data() - line.data()), "empty antecedent");
    antecedents.push_back(equation_at(piece));
    if (amp == std::string_view::npos) break;
    left = left.substr(amp + 1);
    if (trim(left).empty()) throw ParseError(arrow, "empty antecedent after '&'");
  }
  std::string_view right = trim(line.substr(arrow + 2));
  if (right == "false") {
    if (antecedents.empty()) throw ParseError(arrow, "a falsum sentence needs an antecedent");
    return HornSentence::closure(std::move(antecedents), std::nullopt);
  }
  if (right.empty()) throw ParseError(line.size(), "missing consequent");
  Equation c = equation_at(right);
  return HornSentence::closure(std::move(antecedents), std::move(c));
}

}  // namespace boolelab
