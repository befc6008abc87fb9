// Acceptance gate: one PASS/FAIL line per criterion, exact comparisons only.
#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "boolelab/boole_classes.hpp"
#include "boolelab/derivation.hpp"
#include "boolelab/horn.hpp"
#include "boolelab/partial_algebra.hpp"
#include "boolelab/polynomial.hpp"
#include "cli.hpp"
#include "support/algebras.hpp"
#include "support/arguments.hpp"
#include "support/terms.hpp"

using namespace boolelab;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct CliRun {
  int code;
  json doc;
  std::string text;
};

std::string data(const char* name) { return std::string(BOOLELAB_DATA_DIR) + "/" + name; }

CliRun cli_json(std::vector<std::string> args) {
  std::ostringstream out, err, text_out, text_err;
  args.insert(args.begin(), "--json");
  const int code = cli::run(args, out, err);
  args.erase(args.begin());
  cli::run(args, text_out, text_err);
  return {code, json::parse(out.str()), text_out.str()};
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

// ---------------------------------------------------------------------------

Outcome intro_counterexample() {
  const CliRun r = cli_json({"counterexample", "intro"});
  const json& rows = r.doc["details"]["sentences"];
  std::vector<std::string> bad;
  if (r.code != 0) bad.push_back("exit " + std::to_string(r.code));
  if (rows.size() != 3) return {false, "expected three sentences"};
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"(forall x, y) x + y = x", "Holds"}, {"(forall x, y) x + y = y", "Holds"}, {"(forall x, y) x = y", "Fails"}};
  for (std::size_t i = 0; i < 3; ++i) {
    if (rows[i]["sentence"] != expected[i].first || rows[i]["verdict"] != expected[i].second)
      bad.push_back(rows[i].dump());
  }
  if (rows[2]["witness"] != json{{"x", "0"}, {"y", "1"}}) bad.push_back("witness " + rows[2]["witness"].dump());
  if (r.doc["timing_ms"].get<double>() >= 1000.0) bad.push_back("slower than 1 s");
  if (!bad.empty()) return {false, join(bad)};
  return {true, "x+y=x Holds, x+y=y Holds, x=y Fails at {x=0, y=1}"};
}

Outcome cx_replay() {
  const CliRun r = cli_json({"counterexample", "cx"});
  std::vector<std::string> bad;
  const json& v = r.doc["verdicts"];
  if (r.code != 0) bad.push_back("exit " + std::to_string(r.code));
  if (v["sigma1"] != "Accepted") bad.push_back("sigma1 " + v["sigma1"].dump());
  if (v["hailperin"] != "Rejected" || r.doc["details"]["hailperin_rejected_step"] != 1)
    bad.push_back("hailperin " + v["hailperin"].dump());
  if (r.doc["details"]["semantic_witness"] != json{{"n", 1}, {"assignment", {{"x", "U"}}}})
    bad.push_back("semantic witness " + r.doc["details"]["semantic_witness"].dump());
  if (r.text.find("  4: x = 0 [NoNilpotent 3 2]\n") == std::string::npos) bad.push_back("trace does not end with x = 0");
  if (r.doc["timing_ms"].get<double>() >= 1000.0) bad.push_back("slower than 1 s");

  // the shipped trace file behaves the same, and step 1 is the idempotence step
  std::ifstream in(data("cx.trace"));
  std::stringstream ss;
  ss << in.rdbuf();
  const DerivationTrace trace = parse_trace(ss.str());
  if (trace.steps.size() != 4 || trace.steps[0].rule.kind != TraceRule::Kind::DeltaIdempotence ||
      !check_trace(trace, TraceMode::Sigma1).accepted || check_trace(trace, TraceMode::Hailperin).step != 1)
    bad.push_back("data/cx.trace disagrees");
  if (!bad.empty()) return {false, join(bad)};
  return {true, "sigma1 Accepted; hailperin Rejected at step 1; (forall x) x = 0 fails at n=1, x=U"};
}

Outcome expansion_theorem() {
  std::size_t checked = 0, mismatches = 0;
  std::string first;
  VertexOptions serial;
  serial.execution = Execution::Serial;
  auto check = [&](const Term& t, const std::vector<std::string>& vars, const VertexOptions& opts) {
    ++checked;
    const MultilinearPoly p = normalize(t).with_vars(vars);
    const ConstituentExpansion e = expand(p, opts);
    bool ok = unexpand(e) == p;
    for (Vertex v = 0; v < e.coeff_at.size(); ++v)
      ok = ok && e.coeff_at[v] == testsupport::eval_z(t, testsupport::vertex_env(vars, v));
    if (!ok && mismatches++ == 0) first = pretty(t);
  };
  const std::vector<std::string> two = {"x", "y"};
  testsupport::for_each_term({Term::var("x"), Term::var("y")}, 3, [&](const Term& t) { check(t, two, serial); });
  const std::size_t exhaustive = checked;

  const std::vector<std::string> three = {"x", "y", "z"};
  testsupport::TermGen gen{three};
  std::mt19937_64 rng(1854);
  for (int i = 0; i < 1000; ++i) check(gen(rng, 5), three, VertexOptions{});
  if (mismatches) return {false, std::to_string(mismatches) + " mismatches, first " + first};
  return {true, std::to_string(exhaustive) + " exhaustive terms over {x, y}, 1000 random over {x, y, z}"};
}

Outcome chi_embedding() {
  std::vector<std::string> parts;
  bool pass = true;
  for (unsigned n = 1; n <= 3; ++n) {
    // independent count of defined entries: disjoint pairs, contained pairs,
    // all pairs, two constants
    std::size_t expected = 2;
    const std::uint32_t full = 1U << n;
    for (std::uint32_t a = 0; a < full; ++a)
      for (std::uint32_t b = 0; b < full; ++b) expected += ((a & b) == 0) + ((b & ~a) == 0) + 1;
    const ChiCheck c = verify_chi_embedding(n);
    pass = pass && c.yes && c.entries_checked == expected;
    parts.push_back("n=" + std::to_string(n) + " " + (c.yes ? "Yes" : "No") + " " + std::to_string(c.entries_checked) +
                    "/" + std::to_string(expected));
  }
  return {pass, join(parts)};
}

struct SweepCounts {
  std::size_t instances = 0, oracle_valid = 0, certificates = 0, verified = 0;
  std::size_t soundness_violations = 0, agreement_violations = 0;
  std::size_t semantic_valid = 0, rule01_disagreements = 0;
  std::string first_soundness, first_agreement;
};

const SweepCounts& sweep() {
  static const SweepCounts counts = [] {
    SweepCounts c;
    testsupport::ArgumentGen gen(1847);
    for (int i = 0; i < 500; ++i) {
      const testsupport::Argument a = gen();
      ++c.instances;
      const OracleResult o = boole_oracle(a.premisses, a.conclusion);
      const auto cert = certify_consequence(a.premisses, a.conclusion);
      const bool verified = cert && verify_certificate(a.premisses, a.conclusion, *cert).verified;
      const SemanticResult s = semantic_consequence(a.premisses, a.conclusion, SemanticOptions{3});
      c.oracle_valid += o.valid;
      c.certificates += cert.has_value();
      c.verified += verified;
      c.semantic_valid += s.valid;
      std::vector<std::string> ps;
      for (const auto& p : a.premisses) ps.push_back(pretty(p));
      const std::string text = "[" + join(ps) + "] |- " + pretty(a.conclusion);
      if (verified && !s.valid && c.soundness_violations++ == 0) c.first_soundness = text;
      if ((o.valid != cert.has_value() || (cert && !verified)) && c.agreement_violations++ == 0) c.first_agreement = text;
      if (o.valid != s.valid) ++c.rule01_disagreements;
    }
    return c;
  }();
  return counts;
}

Outcome certificate_soundness() {
  const SweepCounts& c = sweep();
  const std::string detail = std::to_string(c.verified) + " verified certificates of " + std::to_string(c.instances) +
                             " instances, " + std::to_string(c.soundness_violations) + " semantic counterexamples";
  if (c.soundness_violations) return {false, detail + "; first " + c.first_soundness};
  if (c.verified == 0) return {false, "no certificate produced; the sweep is vacuous"};
  return {true, detail};
}

Outcome oracle_certificate_agreement() {
  const SweepCounts& c = sweep();
  const std::string detail = "oracle Valid " + std::to_string(c.oracle_valid) + ", certificates " +
                             std::to_string(c.certificates) + ", verified " + std::to_string(c.verified) + ", violations " +
                             std::to_string(c.agreement_violations);
  if (c.agreement_violations) return {false, detail + "; first " + c.first_agreement};
  if (c.oracle_valid == 0 || c.oracle_valid == c.instances) return {false, detail + "; sweep is one-sided"};
  return {true, detail};
}

Outcome barbara() {
  std::vector<std::string> bad;
  const std::vector<std::pair<std::string, std::string>> modes = {
      {"oracle", "Valid"}, {"certificate", "Verified"}, {"semantic", "Valid"}};
  const CliRun all = cli_json({"check", data("barbara.prob"), "--mode", "all"});
  if (all.code != 0) bad.push_back("--mode all exit " + std::to_string(all.code));
  for (const auto& [mode, verdict] : modes) {
    if (all.doc["verdicts"][mode] != verdict) bad.push_back("all/" + mode + " " + all.doc["verdicts"][mode].dump());
    const CliRun one = cli_json({"check", data("barbara.prob"), "--mode", mode});
    if (one.code != 0 || one.doc["verdicts"][mode] != verdict || one.doc["verdicts"].size() != 1)
      bad.push_back(mode + " " + one.doc["verdicts"].dump());
  }
  const std::vector<Equation> ps = {parse_equation("x - x*y = 0"), parse_equation("y - y*z = 0")};
  const Equation c = parse_equation("x - x*z = 0");
  const Certificate compact{1, {normalize(parse_term("1 - z")), normalize(parse_term("x"))}};
  if (!verify_certificate(ps, c, compact).verified) bad.push_back("compact certificate rejected");
  if (!bad.empty()) return {false, join(bad)};
  return {true, "Valid/Verified/Valid; n=1, (1 - z, x) verifies"};
}

Outcome principles_failure() {
  std::vector<std::string> bad;
  const FinitePartialAlgebra p = testsupport::p_intro();
  const auto sigma = parse_theory("x + y = x\nx + y = y\n");
  const ModEmbeddingResult emb = embeds_into_mod_bounded(p, sigma, 4);
  if (emb.witness || emb.searched_up_to != 4) bad.push_back("embedding found or search stopped early");

  const HornSentence target = HornSentence::identity(parse_equation("x = y"));
  std::vector<std::string> sizes;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::size_t failures = 0;
    const std::size_t models = for_each_total_model(sigma, k, [&](const FinitePartialAlgebra& q) {
      failures += !holds_total(q, target).holds;
      return true;
    });
    if (failures) bad.push_back("x = y fails in a model of size " + std::to_string(k));
    sizes.push_back(std::to_string(models));
  }
  for (const auto& s : sigma)
    if (!holds(p, s).holds) bad.push_back(to_string(s) + " fails in P");
  const HoldsResult h = holds(p, target);
  if (h.holds || h.witness != Assignment{{"x", 0}, {"y", 1}}) bad.push_back("x = y does not fail in P at {x=0, y=1}");

  const CliRun demo = cli_json({"theorem-demo"});
  if (demo.code != 0 || demo.doc["verdicts"]["replay"] != "Reproduced") bad.push_back("theorem-demo did not reproduce");
  if (!bad.empty()) return {false, join(bad)};
  return {true, "NoneUpTo(4); models per size 1..4: " + sizes[0] + "," + sizes[1] + "," + sizes[2] + "," + sizes[3] +
                    "; x = y holds in all, fails in P at {x=0, y=1}"};
}

Outcome no_finite_models() {
  const auto sigma = hailperin_sigma();
  std::vector<std::string> found;
  for (std::size_t k = 1; k <= 4; ++k)
    if (search_total_model(sigma, k)) found.push_back(std::to_string(k));
  // guard against a search that finds nothing at all: the ring laws alone
  // have the two-element ring as a model
  const std::vector<HornSentence> rings(sigma.begin(), sigma.begin() + 8);
  if (!search_total_model(rings, 2)) return {false, "search misses Z/2 for the ring laws alone"};
  if (!found.empty()) return {false, "model found at size " + join(found)};
  return {true, "None at sizes 1, 2, 3, 4 (" + std::to_string(sigma.size()) + " sentences)"};
}

// Weak subalgebras over carriers within {0,1} and one binary operation.
Outcome subalgebra_lemma() {
  std::vector<FinitePartialAlgebra> algebras;
  for (const std::vector<std::string>& carrier :
       std::vector<std::vector<std::string>>{{"0"}, {"1"}, {"0", "1"}}) {
    const std::size_t cells = carrier.size() * carrier.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < cells; ++i) combos *= carrier.size() + 1;
    for (std::size_t code = 0; code < combos; ++code) {
      FinitePartialAlgebra a(carrier, {{"+", 2}});
      std::size_t c = code;
      for (std::size_t idx = 0; idx < cells; ++idx, c /= carrier.size() + 1)
        if (c % (carrier.size() + 1) < carrier.size()) a.set_entry(0, idx, static_cast<Element>(c % (carrier.size() + 1)));
      algebras.push_back(std::move(a));
    }
  }

  // definition check by element name, independent of the library
  auto value_by_name = [](const FinitePartialAlgebra& a, const std::string& l, const std::string& r) -> std::string {
    const auto li = a.find_element(l), ri = a.find_element(r);
    if (!li || !ri) return "";
    const Element args[] = {*li, *ri};
    const auto v = a.apply(0, args);
    return v ? a.name(*v) : "";
  };
  auto weak_sub = [&](const FinitePartialAlgebra& p, const FinitePartialAlgebra& q) {
    for (const auto& e : p.carrier())
      if (!q.find_element(e)) return false;
    for (const auto& l : p.carrier())
      for (const auto& r : p.carrier()) {
        const std::string v = value_by_name(p, l, r);
        if (!v.empty() && value_by_name(q, l, r) != v) return false;
      }
    return true;
  };

  std::vector<Term> terms;
  testsupport::for_each_term({Term::var("x"), Term::var("y")}, 3, [&](const Term& t) {
    if (t.kind() == Term::Kind::Var || t.kind() == Term::Kind::Add) {
      bool plus_only = true;
      std::function<void(const Term&)> scan = [&](const Term& u) {
        if (u.is_binary()) {
          plus_only = plus_only && u.kind() == Term::Kind::Add;
          scan(u.left());
          scan(u.right());
        }
      };
      scan(t);
      if (plus_only) terms.push_back(t);
    }
  });
  std::stable_sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.depth() < b.depth(); });
  std::size_t depth2 = 0, depth1 = 0;
  for (const auto& t : terms) {
    depth2 += t.depth() <= 2;
    depth1 += t.depth() <= 1;
  }

  // term values: [algebra][term][assignment by names], "" for undefined
  const std::vector<std::string> names = {"0", "1"};
  auto values_of = [&](const FinitePartialAlgebra& a) {
    std::vector<std::vector<std::string>> table(terms.size(), std::vector<std::string>(4));
    for (std::size_t t = 0; t < terms.size(); ++t)
      for (std::size_t v = 0; v < 4; ++v) {
        const auto xe = a.find_element(names[v >> 1]), ye = a.find_element(names[v & 1]);
        if (!xe || !ye) continue;
        const auto r = eval_term(a, terms[t], {{"x", *xe}, {"y", *ye}});
        if (r) table[t][v] = a.name(*r);
      }
    return table;
  };
  std::vector<std::vector<std::vector<std::string>>> values;
  for (const auto& a : algebras) values.push_back(values_of(a));

  // open Horn formulas: single atoms over depth <= 2 terms; a -> b, a -> false
  // and a & b -> false over depth <= 1 terms
  struct Formula {
    std::vector<std::pair<std::size_t, std::size_t>> ante;
    std::optional<std::pair<std::size_t, std::size_t>> cons;
  };
  std::vector<Formula> formulas;
  std::vector<std::pair<std::size_t, std::size_t>> small_atoms;
  for (std::size_t i = 0; i < depth2; ++i)
    for (std::size_t j = 0; j < depth2; ++j) {
      formulas.push_back({{}, std::pair{i, j}});
      if (i < depth1 && j < depth1) small_atoms.emplace_back(i, j);
    }
  for (const auto& a : small_atoms)
    for (const auto& b : small_atoms) {
      formulas.push_back({{a}, b});
      formulas.push_back({{a, b}, std::nullopt});
    }
  for (const auto& a : small_atoms) formulas.push_back({{a}, std::nullopt});

  using Truth = std::optional<bool>;  // nullopt: outside the domain
  auto evaluate = [](const std::vector<std::vector<std::string>>& vals, const Formula& f, std::size_t v) -> Truth {
    auto atom = [&](const std::pair<std::size_t, std::size_t>& a) -> Truth {
      const std::string& l = vals[a.first][v];
      const std::string& r = vals[a.second][v];
      if (l.empty() || r.empty()) return std::nullopt;
      return l == r;
    };
    bool all_ante = true, defined = true;
    for (const auto& a : f.ante) {
      const Truth t = atom(a);
      defined = defined && t.has_value();
      all_ante = all_ante && t.value_or(false);
    }
    Truth cons = true;
    if (f.cons) {
      cons = atom(*f.cons);
      defined = defined && cons.has_value();
    } else {
      cons = false;
    }
    if (!defined) return std::nullopt;
    return !all_ante || *cons;
  };

  std::size_t pairs = 0, library_mismatch = 0, dom_violations = 0, value_violations = 0, elev_violations = 0;
  std::size_t formula_checks = 0;
  for (std::size_t pi = 0; pi < algebras.size(); ++pi) {
    for (std::size_t qi = 0; qi < algebras.size(); ++qi) {
      const FinitePartialAlgebra& p = algebras[pi];
      const FinitePartialAlgebra& q = algebras[qi];
      const bool sub = weak_sub(p, q);
      if (sub != is_weak_subalgebra(p, q).yes) ++library_mismatch;
      if (!sub) continue;
      ++pairs;
      for (std::size_t v = 0; v < 4; ++v) {
        if (!p.find_element(names[v >> 1]) || !p.find_element(names[v & 1])) continue;
        for (std::size_t t = 0; t < terms.size(); ++t) {
          const std::string& pv = values[pi][t][v];
          if (pv.empty()) continue;
          const std::string& qv = values[qi][t][v];
          if (qv.empty())
            ++dom_violations;
          else if (qv != pv)
            ++value_violations;
        }
        for (const auto& f : formulas) {
          const Truth in_p = evaluate(values[pi], f, v);
          if (!in_p) continue;
          ++formula_checks;
          const Truth in_q = evaluate(values[qi], f, v);
          if (!in_q || *in_q != *in_p) ++elev_violations;
        }
      }
    }
  }
  const std::string detail = std::to_string(algebras.size()) + " algebras, " + std::to_string(pairs) + " pairs, " +
                             std::to_string(terms.size()) + " terms, " + std::to_string(formula_checks) +
                             " formula instances; violations: Dom " + std::to_string(dom_violations) + ", value " +
                             std::to_string(value_violations) + ", transfer " + std::to_string(elev_violations) +
                             ", library/definition " + std::to_string(library_mismatch);
  const bool pass = dom_violations + value_violations + elev_violations + library_mismatch == 0 && pairs > 0;
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"intro counterexample", intro_counterexample},
      {"(2x)(2x) = 2x counterexample", cx_replay},
      {"expansion theorem", expansion_theorem},
      {"characteristic-function embedding", chi_embedding},
      {"certificate soundness sweep", certificate_soundness},
      {"oracle/certificate agreement", oracle_certificate_agreement},
      {"Barbara", barbara},
      {"laws fail for the intro algebra", principles_failure},
      {"no finite models of the ring laws without torsion", no_finite_models},
      {"weak subalgebra lemma", subalgebra_lemma},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << o.detail << " ("
              << ms << " ms)" << std::endl;
  }
  const SweepCounts& c = sweep();
  std::cout << "info: rule of 0 and 1 vs class algebras up to n = 3 disagree on " << c.rule01_disagreements << " of "
            << c.instances << " sweep instances (semantic Valid " << c.semantic_valid << ", oracle Valid "
            << c.oracle_valid << ")" << std::endl;
  return failed ? 1 : 0;
}
