#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "boolelab/boole_classes.hpp"
#include "boolelab/errors.hpp"
#include "boolelab/horn.hpp"
#include "boolelab/partial_algebra.hpp"
#include "boolelab/polynomial.hpp"

namespace boolelab::cli {

namespace {

using json = nlohmann::json;

constexpr const char* kSchema = "boolelab/1";

constexpr const char* kIntroAlgebra =
    "carrier: 0 1\n"
    "op +/2:\n"
    "0 0 -> 0\n"
    "1 1 -> 1\n";

constexpr const char* kIntroTheory =
    "x + y = x\n"
    "x + y = y\n";

constexpr const char* kCxTrace =
    "1: (2*x)*(2*x) = 2*x [DeltaIdempotence 2*x]\n"
    "2: 4*x = 2*x [IntegerSimplification 1]\n"
    "3: 2*x = 0 [IntegerSimplification 2]\n"
    "4: x = 0 [NoNilpotent 3 2]\n";

constexpr const char* kSigma1Note = "sigma1 applies idempotence to every term; it is unsound for class algebras";

struct Caps {
  std::size_t max_vars = 20;
  unsigned max_universe = kDefaultMaxUniverse;
  std::size_t max_model_size = 4;

  VertexOptions vertex() const {
    VertexOptions o;
    o.max_vars = max_vars;
    return o;
  }
};

struct Report {
  std::string command;
  int exit_code = kAffirmative;
  json verdicts = json::object();
  json details = json::object();
  std::string text;

  void line(const std::string& s) {
    text += s;
    text += '\n';
  }
  void negative() { exit_code = kNegative; }
};

json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reads and parses a file, prefixing format errors with its path.
template <class Parse>
auto load(const std::string& path, Parse parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const FormatError& e) {
    throw Error(path + ": " + e.what());
  }
}

/// Parses a term given on the command line; errors point at the column.
Term term_argument(const std::string& text) {
  try {
    return parse_term(text);
  } catch (const ParseError& e) {
    throw Error("column " + std::to_string(e.position() + 1) + ": " + e.detail() + "\n  " + text + "\n  " +
                std::string(e.position(), ' ') + "^");
  }
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string argument_text(const std::vector<Equation>& premisses, const Equation& conclusion) {
  std::vector<std::string> ps;
  for (const auto& p : premisses) ps.push_back(pretty(p));
  return (ps.empty() ? std::string() : join(ps, ", ") + " ") + "|- " + pretty(conclusion);
}

json assignment_json(const FinitePartialAlgebra& a, const Assignment& asg) {
  json out = json::object();
  for (const auto& [var, e] : asg) out[var] = a.name(e);
  return out;
}

std::string alpha_text(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q, const std::vector<Element>& alpha) {
  std::vector<std::string> parts;
  for (Element e = 0; e < alpha.size(); ++e) parts.push_back(p.name(e) + " -> " + q.name(alpha[e]));
  return join(parts, ", ");
}

json alpha_json(const FinitePartialAlgebra& p, const FinitePartialAlgebra& q, const std::vector<Element>& alpha) {
  json out = json::object();
  for (Element e = 0; e < alpha.size(); ++e) out[p.name(e)] = q.name(alpha[e]);
  return out;
}

json semantic_witness_json(const SemanticResult& r) {
  json asg = json::object();
  for (std::size_t i = 0; i < r.vars.size(); ++i) asg[r.vars[i]] = class_name(r.witness[i], r.witness_n);
  return {{"n", r.witness_n}, {"assignment", asg}};
}

void indent(Report& r, const std::string& block) {
  std::istringstream in(block);
  for (std::string l; std::getline(in, l);) r.line("  " + l);
}

// ---------------------------------------------------------------------------
// normalize / expand / interpret

Report cmd_normalize(const std::string& text) {
  Report r{"normalize"};
  const MultilinearPoly p = normalize(term_argument(text));
  r.line(to_string(p));
  r.details = {{"input", text}, {"normal_form", to_string(p)}, {"vars", p.vars()}};
  return r;
}

Report cmd_expand(const std::string& text, const Caps& caps) {
  Report r{"expand"};
  const MultilinearPoly p = normalize(term_argument(text));
  const ConstituentExpansion e = expand(p, caps.vertex());
  const std::size_t m = e.vars.size();
  r.line("normal form: " + to_string(p));
  r.line("vars: " + (m ? join(e.vars, ", ") : std::string("(none)")));
  std::size_t width = 1;
  for (const auto& c : e.coeff_at) width = std::max(width, c.get_str().size());
  json rows = json::array();
  for (Vertex v = 0; v < e.coeff_at.size(); ++v) {
    const std::string coeff = e.coeff_at[v].get_str();
    const std::string label = m ? vertex_label(v, m) : "-";
    r.line("  " + label + "  " + std::string(width - coeff.size(), ' ') + coeff + "  " + constituent(v, e.vars));
    rows.push_back({{"vertex", label}, {"coeff", integer_json(e.coeff_at[v])}, {"constituent", constituent(v, e.vars)}});
  }
  r.details = {{"input", text}, {"normal_form", to_string(p)}, {"vars", e.vars}, {"coefficients", rows}};
  return r;
}

Report cmd_interpret(const std::string& text, const Caps& caps) {
  Report r{"interpret"};
  const MultilinearPoly p = normalize(term_argument(text));
  const Interpretability it = interpretability(p, caps.vertex());
  const ConstituentExpansion e = expand(p, caps.vertex());
  const std::string verdict = to_string(it.verdict);
  r.line("normal form: " + to_string(p));
  r.line("verdict: " + verdict);
  json bad = json::array();
  if (!it.bad_vertices.empty()) {
    r.line("constituents that must vanish for a class reading:");
    for (Vertex v : it.bad_vertices) {
      const std::string label = it.vars.empty() ? "-" : vertex_label(v, it.vars.size());
      r.line("  " + label + "  " + constituent(v, it.vars) + "  (coefficient " + e.at(v).get_str() + ")");
      bad.push_back({{"vertex", label}, {"constituent", constituent(v, it.vars)}, {"coeff", integer_json(e.at(v))}});
    }
  }
  r.verdicts["interpretability"] = verdict;
  r.details = {{"input", text}, {"normal_form", to_string(p)}, {"vars", it.vars}, {"bad_constituents", bad}};
  if (it.verdict != Interpretability::Verdict::Interpretable) r.negative();
  return r;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string file;
  std::string mode = "all";
  std::string trace;
  std::string trace_mode;
  unsigned max_n = 0;
};

Report cmd_check(const CheckArgs& args, const Caps& caps) {
  Report r{"check"};
  const Problem pr = load(args.file, parse_problem);
  const bool all = args.mode == "all";
  const std::vector<Equation>& ps = pr.premisses;
  const Equation& c = pr.conclusion;
  r.line("argument: " + argument_text(ps, c));
  r.details["argument"] = argument_text(ps, c);

  std::vector<std::pair<std::string, bool>> symbolic;  // oracle, certificate, trace
  std::optional<bool> semantic;

  if (all || args.mode == "oracle") {
    const OracleResult o = boole_oracle(ps, c, caps.vertex());
    if (o.valid) {
      r.line("oracle: Valid");
      r.details["oracle"] = {{"vars", o.vars}};
    } else {
      const std::string at = vertex_assignment(*o.witness, o.vars);
      r.line("oracle: Invalid at " + at);
      r.details["oracle"] = {{"vars", o.vars}, {"witness", vertex_label(*o.witness, o.vars.size())}};
      r.negative();
    }
    r.verdicts["oracle"] = o.valid ? "Valid" : "Invalid";
    symbolic.emplace_back("oracle", o.valid);
  }

  if (all || args.mode == "certificate") {
    const auto cert = certify_consequence(ps, c, caps.vertex());
    if (cert) {
      const CertificateCheck chk = verify_certificate(ps, c, *cert);
      r.verdicts["certificate"] = chk.verified ? "Verified" : "Rejected";
      r.line("certificate: " + std::string(chk.verified ? "Verified" : "Rejected") + " (n = " + cert->n.get_str() + ")");
      for (std::size_t j = 0; j < cert->cofactors.size(); ++j)
        r.line("  cofactor " + std::to_string(j + 1) + ": " + to_string(cert->cofactors[j]));
      r.details["certificate"] = certificate_to_json(*cert);
      if (!chk.verified) r.negative();
      symbolic.emplace_back("certificate", chk.verified);
    } else {
      r.verdicts["certificate"] = "None";
      r.line("certificate: None");
      r.details["certificate"] = nullptr;
      r.negative();
      symbolic.emplace_back("certificate", false);
    }
  }

  if (all || args.mode == "semantic") {
    SemanticOptions so;
    so.max_n = args.max_n ? args.max_n : pr.max_n.value_or(3);
    so.max_universe = caps.max_universe;
    const SemanticResult s = semantic_consequence(ps, c, so);
    if (s.valid) {
      r.line("semantic: Valid up to n = " + std::to_string(s.checked_up_to));
      r.details["semantic"] = {{"checked_up_to", s.checked_up_to}};
    } else {
      r.line("semantic: Invalid at n = " + std::to_string(s.witness_n) + ", " + witness_string(s));
      r.details["semantic"] = {{"checked_up_to", s.checked_up_to}, {"witness", semantic_witness_json(s)}};
      r.negative();
    }
    r.verdicts["semantic"] = s.valid ? "Valid" : "Invalid";
    semantic = s.valid;
  }

  if (!args.trace.empty()) {
    TraceMode mode = pr.mode;
    if (args.trace_mode == "sigma1") mode = TraceMode::Sigma1;
    if (args.trace_mode == "hailperin") mode = TraceMode::Hailperin;
    const DerivationTrace trace = load(args.trace, parse_trace);
    TraceCheck tc = check_trace(trace, mode, ps);
    if (tc.accepted && (trace.steps.empty() || trace.steps.back().equation != c))
      tc = {false, trace.steps.size(), "the trace does not end with the conclusion"};
    const std::string head = "trace (" + to_string(mode) + "): ";
    if (tc.accepted)
      r.line(head + "Accepted");
    else
      r.line(head + "Rejected at step " + std::to_string(tc.step) + ": " + tc.reason);
    if (mode == TraceMode::Sigma1) r.line("  note: " + std::string(kSigma1Note));
    r.verdicts["trace"] = tc.accepted ? "Accepted" : "Rejected";
    r.details["trace"] = {{"mode", to_string(mode)}, {"steps", trace.steps.size()}};
    if (!tc.accepted) {
      r.details["trace"]["rejected_step"] = tc.step;
      r.details["trace"]["reason"] = tc.reason;
      r.negative();
    }
    symbolic.emplace_back("trace", tc.accepted);
  }

  if (semantic && !symbolic.empty()) {
    std::vector<std::string> differ;
    for (const auto& [name, ok] : symbolic)
      if (ok != *semantic) differ.push_back(name);
    r.verdicts["agreement"] = differ.empty() ? "Agree" : "Disagree";
    if (!differ.empty())
      r.line("DISAGREEMENT: " + join(differ, ", ") + " and semantic verdicts differ");
  }
  return r;
}

// ---------------------------------------------------------------------------
// embed / model-search

struct EmbedArgs {
  std::vector<std::string> files;
  unsigned boole = 0;
  std::string theory;
  std::size_t max_size = 0;
};

Report cmd_embed(const EmbedArgs& args, const Caps& caps) {
  Report r{"embed"};
  if (args.boole) {
    const ChiCheck c = verify_chi_embedding(args.boole, caps.max_universe);
    const std::string n = std::to_string(args.boole);
    r.line("characteristic functions: class algebra on " + n + " point(s) into Z^" + n + ": " +
           (c.yes ? "Yes" : "No") + " (" + std::to_string(c.entries_checked) + " entries checked)");
    if (!c.yes) {
      r.line("  failing entry: " + c.failing_entry);
      r.negative();
    }
    r.verdicts["chi_embedding"] = c.yes ? "Yes" : "No";
    r.details = {{"universe_size", args.boole}, {"entries_checked", c.entries_checked}};
    if (!c.yes) r.details["failing_entry"] = c.failing_entry;
    return r;
  }
  if (args.files.empty()) throw CLI::ValidationError("embed", "needs --boole N, P.alg Q.alg, or P.alg --theory T");
  const FinitePartialAlgebra p = load(args.files[0], parse_algebra);
  if (!args.theory.empty()) {
    if (args.files.size() != 1) throw CLI::ValidationError("embed", "--theory takes a single algebra");
    const auto sigma = load(args.theory, parse_theory);
    const std::size_t max_size = args.max_size ? args.max_size : caps.max_model_size;
    const ModEmbeddingResult res = embeds_into_mod_bounded(p, sigma, max_size, ModelSearchOptions{caps.max_model_size});
    if (res.witness) {
      const auto& w = *res.witness;
      r.line("embedding into a model of the theory: Witness (model of size " + std::to_string(w.model.size()) + ")");
      r.line("  alpha: " + alpha_text(p, w.model, w.alpha));
      indent(r, format_algebra(w.model));
      r.verdicts["embedding"] = "Witness";
      r.details = {{"model", format_algebra(w.model)}, {"alpha", alpha_json(p, w.model, w.alpha)}};
    } else {
      r.line("embedding into a model of the theory: None up to size " + std::to_string(res.searched_up_to));
      r.verdicts["embedding"] = "NoneUpTo";
      r.details = {{"searched_up_to", res.searched_up_to}};
      r.negative();
    }
    return r;
  }
  if (args.files.size() != 2) throw CLI::ValidationError("embed", "expected two algebra files");
  const FinitePartialAlgebra q = load(args.files[1], parse_algebra);
  const Verdict sub = is_weak_subalgebra(p, q);
  r.line("weak subalgebra: " + std::string(sub.yes ? "Yes" : "No (" + sub.reason + ")"));
  r.verdicts["weak_subalgebra"] = sub.yes ? "Yes" : "No";
  const auto alpha = search_embedding(p, q);
  if (alpha) {
    r.line("embedding: Witness " + alpha_text(p, q, *alpha));
    r.verdicts["embedding"] = "Witness";
    r.details["alpha"] = alpha_json(p, q, *alpha);
  } else {
    r.line("embedding: None");
    r.verdicts["embedding"] = "None";
    r.negative();
  }
  return r;
}

Report cmd_model_search(const std::string& file, std::size_t size, const Caps& caps) {
  Report r{"model-search"};
  const auto sigma = load(file, parse_theory);
  const auto m = search_total_model(sigma, size, ModelSearchOptions{caps.max_model_size});
  const std::string head = "model of size " + std::to_string(size) + ": ";
  r.details["size"] = size;
  if (m) {
    r.line(head + "Found");
    indent(r, format_algebra(*m));
    r.verdicts["model"] = "Found";
    r.details["model"] = format_algebra(*m);
  } else {
    r.line(head + "None");
    r.verdicts["model"] = "None";
    r.negative();
  }
  return r;
}

// ---------------------------------------------------------------------------
// replays

Report cmd_counterexample(const std::string& which, const Caps& caps) {
  Report r{"counterexample"};
  r.details["example"] = which;
  if (which == "intro") {
    const FinitePartialAlgebra p = parse_algebra(kIntroAlgebra);
    r.line("partial algebra:");
    indent(r, format_algebra(p));
    bool as_expected = true;
    json rows = json::array();
    for (const char* text : {"x + y = x", "x + y = y", "x = y"}) {
      const HornSentence s = HornSentence::identity(parse_equation(text));
      const HoldsResult h = holds(p, s);
      std::string line = to_string(s) + ": " + (h.holds ? "Holds" : "Fails");
      json row = {{"sentence", to_string(s)}, {"verdict", h.holds ? "Holds" : "Fails"}};
      if (h.witness) {
        line += " at " + to_string(p, *h.witness);
        row["witness"] = assignment_json(p, *h.witness);
      }
      r.line(line);
      rows.push_back(row);
      as_expected = as_expected && h.holds == (std::string(text) != "x = y");
    }
    const OracleResult o = boole_oracle({parse_equation("x + y = x"), parse_equation("x + y = y")}, parse_equation("x = y"));
    r.line(std::string("rule of 0 and 1 on x + y = x, x + y = y |- x = y: ") + (o.valid ? "Valid" : "Invalid"));
    r.verdicts["replay"] = as_expected ? "Reproduced" : "Differs";
    r.details["sentences"] = rows;
    if (!as_expected) r.negative();
    return r;
  }
  if (which == "cx") {
    const DerivationTrace trace = parse_trace(kCxTrace);
    r.line("trace:");
    indent(r, format_trace(trace));
    const TraceCheck loose = check_trace(trace, TraceMode::Sigma1);
    const TraceCheck strict = check_trace(trace, TraceMode::Hailperin);
    r.line(std::string("sigma1 mode: ") + (loose.accepted ? "Accepted" : "Rejected at step " + std::to_string(loose.step)));
    r.line("  note: " + std::string(kSigma1Note));
    r.line(std::string("hailperin mode: ") +
           (strict.accepted ? "Accepted" : "Rejected at step " + std::to_string(strict.step) + ": " + strict.reason));
    const Equation conclusion = trace.steps.back().equation;
    SemanticOptions so;
    so.max_universe = caps.max_universe;
    const SemanticResult s = semantic_consequence({}, conclusion, so);
    const std::string sentence = to_string(HornSentence::identity(conclusion));
    r.line(sentence + " in class algebras: " +
           (s.valid ? "Holds up to n = " + std::to_string(s.checked_up_to)
                    : "Fails at n = " + std::to_string(s.witness_n) + ", " + witness_string(s)));
    r.verdicts["sigma1"] = loose.accepted ? "Accepted" : "Rejected";
    r.verdicts["hailperin"] = strict.accepted ? "Accepted" : "Rejected";
    r.verdicts["semantic"] = s.valid ? "Valid" : "Invalid";
    r.details["hailperin_rejected_step"] = strict.step;
    if (!s.valid) r.details["semantic_witness"] = semantic_witness_json(s);
    const bool as_expected = loose.accepted && !strict.accepted && strict.step == 1 && !s.valid;
    r.verdicts["replay"] = as_expected ? "Reproduced" : "Differs";
    if (!as_expected) r.negative();
    return r;
  }
  throw CLI::ValidationError("counterexample", "expected 'intro' or 'cx'");
}

Report cmd_theorem_demo(const Caps& caps) {
  Report r{"theorem-demo"};
  bool as_expected = true;

  r.line("the ring laws are sound for class algebras:");
  json chi_rows = json::array();
  for (unsigned n = 1; n <= 3; ++n) {
    const ChiCheck c = verify_chi_embedding(n, caps.max_universe);
    r.line("  chi embeds the class algebra on " + std::to_string(n) + " point(s) into Z^" + std::to_string(n) + ": " +
           (c.yes ? "Yes" : "No") + " (" + std::to_string(c.entries_checked) + " entries)");
    chi_rows.push_back({{"n", n}, {"verdict", c.yes ? "Yes" : "No"}, {"entries_checked", c.entries_checked}});
    as_expected = as_expected && c.yes;
  }
  r.details["chi_embedding"] = chi_rows;

  const FinitePartialAlgebra p = parse_algebra(kIntroAlgebra);
  const auto sigma = parse_theory(kIntroTheory);
  const HornSentence target = HornSentence::identity(parse_equation("x = y"));
  r.line("they fail for the two-element partial algebra with 0+0 = 0 and 1+1 = 1:");
  for (const auto& s : sigma) {
    const bool h = holds(p, s).holds;
    r.line("  " + to_string(s) + " in P: " + (h ? "Holds" : "Fails"));
    as_expected = as_expected && h;
  }
  const std::size_t max_size = std::min<std::size_t>(4, caps.max_model_size);
  const ModEmbeddingResult emb = embeds_into_mod_bounded(p, sigma, max_size, ModelSearchOptions{caps.max_model_size});
  r.line("  P embeds in a model of these laws: " +
         (emb.witness ? std::string("Witness") : "None up to size " + std::to_string(emb.searched_up_to)));
  as_expected = as_expected && !emb.witness;
  r.verdicts["embedding"] = emb.witness ? "Witness" : "NoneUpTo";

  json model_rows = json::array();
  bool target_everywhere = true;
  for (std::size_t k = 1; k <= max_size; ++k) {
    std::size_t failures = 0;
    const std::size_t count = for_each_total_model(
        sigma, k,
        [&](const FinitePartialAlgebra& q) {
          if (!holds_total(q, target).holds) ++failures;
          return true;
        },
        ModelSearchOptions{caps.max_model_size});
    r.line("  total models of size " + std::to_string(k) + ": " + std::to_string(count) + ", " + to_string(target) +
           " fails in " + std::to_string(failures));
    model_rows.push_back({{"size", k}, {"models", count}, {"failures", failures}});
    target_everywhere = target_everywhere && failures == 0;
  }
  r.details["total_models"] = model_rows;
  r.verdicts["derived"] = target_everywhere ? "HoldsInAllModels" : "FailsInSomeModel";

  const OracleResult o = boole_oracle({sigma[0].consequent().value(), sigma[1].consequent().value()}, *target.consequent());
  r.line(std::string("  rule of 0 and 1 on x + y = x, x + y = y |- x = y: ") + (o.valid ? "Valid" : "Invalid"));
  const HoldsResult h = holds(p, target);
  r.line("  " + to_string(target) + " in P: " + (h.holds ? "Holds" : "Fails at " + to_string(p, *h.witness)));
  r.verdicts["in_partial_algebra"] = h.holds ? "Holds" : "Fails";
  if (h.witness) r.details["witness"] = assignment_json(p, *h.witness);
  as_expected = as_expected && target_everywhere && o.valid && !h.holds;

  r.verdicts["replay"] = as_expected ? "Reproduced" : "Differs";
  if (!as_expected) r.negative();
  return r;
}

void emit(const Report& r, bool as_json, double ms, std::ostream& out) {
  if (!as_json) {
    out << r.text;
    return;
  }
  const json doc = {{"schema", kSchema},  {"command", r.command}, {"exit_code", r.exit_code},
                    {"verdicts", r.verdicts}, {"details", r.details}, {"timing_ms", ms}};
  out << doc.dump(2) << '\n';
}

std::string strip(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

Problem parse_problem(std::string_view text) {
  Problem pr{std::nullopt, {}, {Term::lit(0L), Term::lit(0L)}, TraceMode::Hailperin, std::nullopt};
  bool have_conclusion = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string body = strip(line);
    if (body.empty()) continue;
    const auto colon = body.find(':');
    if (colon == std::string::npos) throw FormatError(line_no, "expected 'key: value'");
    const std::string key = strip(std::string_view(body).substr(0, colon));
    const std::string value = strip(std::string_view(body).substr(colon + 1));
    auto equation = [&]() {
      try {
        return parse_equation(value);
      } catch (const ParseError& e) {
        throw FormatError(line_no, e.what());
      }
    };
    if (key == "premiss") {
      pr.premisses.push_back(equation());
    } else if (key == "conclude") {
      if (have_conclusion) throw FormatError(line_no, "more than one 'conclude:' line");
      pr.conclusion = equation();
      have_conclusion = true;
    } else if (key == "vars") {
      std::istringstream in(value);
      std::vector<std::string> vars;
      for (std::string v; in >> v;) {
        if (!is_identifier(v)) throw FormatError(line_no, "'" + v + "' is not a variable name");
        vars.push_back(v);
      }
      pr.vars = vars;
    } else if (key == "mode") {
      if (value == "hailperin")
        pr.mode = TraceMode::Hailperin;
      else if (value == "sigma1")
        pr.mode = TraceMode::Sigma1;
      else
        throw FormatError(line_no, "mode must be 'hailperin' or 'sigma1'");
    } else if (key == "max_n") {
      if (value.empty() || value.size() > 2 || value.find_first_not_of("0123456789") != std::string::npos ||
          std::stoul(value) == 0)
        throw FormatError(line_no, "max_n must be a positive integer");
      pr.max_n = static_cast<unsigned>(std::stoul(value));
    } else {
      throw FormatError(line_no, "unknown key '" + key + "'");
    }
  }
  if (!have_conclusion) throw FormatError(line_no, "missing 'conclude:' line");
  if (pr.vars) {
    for (const auto& v : argument_variables(pr.premisses, pr.conclusion))
      if (std::find(pr.vars->begin(), pr.vars->end(), v) == pr.vars->end())
        throw FormatError(line_no, "variable '" + v + "' is not declared in 'vars:'");
  }
  return pr;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boole's algebra of classes: normal forms, consequence checks, embeddings and model search", "boolelab"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  Caps caps;
  app.add_flag("--json", as_json, "Emit a JSON report");
  app.add_option("--max-vars", caps.max_vars, "Cap on variables for 0/1 vertex enumeration")
      ->envname("BOOLELAB_MAX_VARS")
      ->check(CLI::Range(1, 40))
      ->capture_default_str();
  app.add_option("--max-universe", caps.max_universe, "Cap on the universe size of class algebras")
      ->envname("BOOLELAB_MAX_UNIVERSE")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  app.add_option("--max-model-size", caps.max_model_size, "Cap on the size of searched models")
      ->envname("BOOLELAB_MAX_MODEL_SIZE")
      ->check(CLI::Range(1, 8))
      ->capture_default_str();

  std::string term_text;
  auto* normalize_cmd = app.add_subcommand("normalize", "Print the multilinear normal form of a term");
  normalize_cmd->add_option("term", term_text)->required();
  auto* expand_cmd = app.add_subcommand("expand", "Print the constituent coefficients of a term");
  expand_cmd->add_option("term", term_text)->required();
  auto* interpret_cmd = app.add_subcommand("interpret", "Decide whether a term denotes a class");
  interpret_cmd->add_option("term", term_text)->required();

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Check a ground argument from a problem file");
  check_cmd->add_option("file", check.file)->required();
  check_cmd->add_option("--mode", check.mode)->check(CLI::IsMember({"oracle", "certificate", "semantic", "all"}))->capture_default_str();
  check_cmd->add_option("--trace", check.trace, "Derivation trace to check against the argument");
  check_cmd->add_option("--trace-mode", check.trace_mode, "Override the problem's mode")
      ->check(CLI::IsMember({"hailperin", "sigma1"}));
  check_cmd->add_option("--max-n", check.max_n, "Largest universe for the semantic check")->check(CLI::Range(1, 16));

  EmbedArgs embed;
  auto* embed_cmd = app.add_subcommand("embed", "Embedding checks: class algebras into Z^U, P into Q, P into models");
  embed_cmd->add_option("algebras", embed.files, "P.alg [Q.alg]")->expected(0, 2);
  embed_cmd->add_option("--boole", embed.boole, "Check the characteristic-function embedding for |U| = N")
      ->check(CLI::Range(1, 16));
  embed_cmd->add_option("--theory", embed.theory, "Search models of this theory containing P");
  embed_cmd->add_option("--max-size", embed.max_size, "Largest model size to search")->check(CLI::Range(1, 8));

  std::string theory_file;
  std::size_t model_size = 0;
  auto* model_cmd = app.add_subcommand("model-search", "Find the first total model of a theory");
  model_cmd->add_option("theory", theory_file)->required();
  model_cmd->add_option("--size", model_size)->required()->check(CLI::Range(1, 8));

  std::string example;
  auto* cx_cmd = app.add_subcommand("counterexample", "Replay a counterexample");
  cx_cmd->add_option("example", example)->required()->check(CLI::IsMember({"intro", "cx"}));

  auto* demo_cmd = app.add_subcommand("theorem-demo", "Both directions of the laws-for-a-class criterion at desk scale");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAffirmative : kUsage;
  }

  const auto t0 = std::chrono::steady_clock::now();
  try {
    Report r;
    if (normalize_cmd->parsed())
      r = cmd_normalize(term_text);
    else if (expand_cmd->parsed())
      r = cmd_expand(term_text, caps);
    else if (interpret_cmd->parsed())
      r = cmd_interpret(term_text, caps);
    else if (check_cmd->parsed())
      r = cmd_check(check, caps);
    else if (embed_cmd->parsed())
      r = cmd_embed(embed, caps);
    else if (model_cmd->parsed())
      r = cmd_model_search(theory_file, model_size, caps);
    else if (cx_cmd->parsed())
      r = cmd_counterexample(example, caps);
    else if (demo_cmd->parsed())
      r = cmd_theorem_demo(caps);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(r, as_json, ms, out);
    return r.exit_code;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace boolelab::cli
