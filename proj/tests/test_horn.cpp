#include <doctest.h>

#include <random>

#include "boolelab/errors.hpp"
#include "boolelab/horn.hpp"
#include "support/algebras.hpp"
#include "support/terms.hpp"

using namespace boolelab;
using testsupport::p_intro;
using testsupport::q_max;

namespace {

HornSentence identity(const char* text) { return HornSentence::identity(parse_equation(text)); }
std::vector<HornSentence> theory(const char* text) { return parse_theory(text); }

}  // namespace

TEST_CASE("sentences print and parse") {
  const HornSentence s = parse_sentence("x*x = x & y = 0 -> x*y = 0");
  CHECK(s.vars() == std::vector<std::string>{"x", "y"});
  CHECK(s.antecedents().size() == 2);
  CHECK(to_string(s) == "(forall x, y) x*x = x & y = 0 -> x*y = 0");
  CHECK(to_theory_line(s) == "x*x = x & y = 0 -> x*y = 0");
  CHECK(to_theory_line(parse_sentence("-> x = x")) == "-> x = x");
  CHECK(to_theory_line(parse_sentence("x = x")) == "-> x = x");
  CHECK(to_theory_line(parse_sentence("0 = 1 -> false")) == "0 = 1 -> false");
  CHECK(parse_sentence("0 = 1 -> false").is_negative());
  CHECK_THROWS_AS(parse_sentence("-> false"), ParseError);
  CHECK_THROWS_AS(parse_sentence("x = -> y"), ParseError);
  CHECK_THROWS_AS(HornSentence({"x"}, {}, parse_equation("x = y")), std::invalid_argument);
  CHECK_THROWS_AS(HornSentence({"x", "x"}, {}, parse_equation("x = x")), std::invalid_argument);
}

TEST_CASE("theory files") {
  const auto t = theory("# laws\nx + y = y + x\n\n(x + y) + z = x + (y + z)  # assoc\n0 = 1 -> false\n");
  REQUIRE(t.size() == 3);
  CHECK(format_theory(t) == "-> x + y = y + x\n-> x + y + z = x + (y + z)\n0 = 1 -> false\n");
  CHECK(format_theory(parse_theory(format_theory(t))) == format_theory(t));
  try {
    theory("x = x\nx + = y\n");
    FAIL("accepted");
  } catch (const FormatError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("relativize") {
  const HornSentence s = identity("x*y = y*x");
  const HornSentence r = relativize(s, Delta::idempotent());
  CHECK(to_string(r) == "(forall x, y) x*x = x & y*y = y -> x*y = y*x");
  CHECK(r.antecedents().size() == s.antecedents().size() + s.vars().size());

  const HornSentence ground = identity("1*1 = 1");
  CHECK(to_string(relativize(ground, Delta::idempotent())) == to_string(ground));

  const HornSentence q = parse_sentence("x = 0 -> x = 0");
  CHECK(to_string(relativize(q, Delta::idempotent())) == "(forall x) x*x = x & x = 0 -> x = 0");

  Delta bad{"x", {parse_equation("x = y")}};
  CHECK_THROWS_AS(relativize(s, bad), std::invalid_argument);
}

TEST_CASE("total satisfaction") {
  CHECK(holds_total(q_max(), identity("x + y = y + x")).holds);
  CHECK_THROWS(holds_total(q_max(), identity("x + x = 0")));  // no constant 0 in the signature
  auto with_zero = parse_algebra("carrier: 0 1\nop +/2:\n0 0 -> 0\n0 1 -> 1\n1 0 -> 1\n1 1 -> 1\nop 0/0:\n-> 0\n");
  const auto f = holds_total(with_zero, identity("x + x = 0"));
  CHECK_FALSE(f.holds);
  CHECK(*f.witness == Assignment{{"x", 1}});
  CHECK(holds_total(q_max(), identity("x = x")).holds);
  CHECK_THROWS_AS(holds_total(p_intro(), identity("x = x")), Error);
}

TEST_CASE("theory signature") {
  const auto sig = theory_signature(hailperin_sigma());
  CHECK(sig == std::vector<Operation>{{"0", 0}, {"1", 0}, {"+", 2}, {"-", 2}, {"*", 2}});
  CHECK(theory_signature(theory("x + y = y + x")) == std::vector<Operation>{{"+", 2}});
}

TEST_CASE("model search") {
  const auto comm = theory("x + y = y + x");
  const auto m = search_total_model(comm, 2);
  REQUIRE(m);
  CHECK(format_algebra(*m) == "carrier: e0 e1\nop +/2:\ne0 e0 -> e0\ne0 e1 -> e0\ne1 e0 -> e0\ne1 e1 -> e0\n");

  // 2^3 commutative tables on two elements
  CHECK(for_each_total_model(comm, 2, [](const FinitePartialAlgebra&) { return true; }) == 8);
  // and 3^6 on three
  CHECK(for_each_total_model(comm, 3, [](const FinitePartialAlgebra&) { return true; }) == 729);

  const auto trivial = theory("x = y\n0 = 1 -> false");
  for (std::size_t k = 1; k <= 4; ++k) CHECK_FALSE(search_total_model(trivial, k));

  CHECK_THROWS_AS(search_total_model(comm, 5), CapExceeded);
  CHECK_THROWS_AS(search_total_model(comm, 0), std::invalid_argument);
  CHECK(search_total_model(comm, 5, ModelSearchOptions{5}));
}

TEST_CASE("every enumerated model satisfies the theory") {
  const auto t = theory("(x + y) + z = x + (y + z)\nx + x = x\n");
  std::size_t count = 0;
  for_each_total_model(t, 3, [&](const FinitePartialAlgebra& q) {
    ++count;
    for (const auto& s : t) REQUIRE(holds_total(q, s).holds);
    return true;
  });
  CHECK(count > 0);
}

TEST_CASE("no finite models of the ring laws without torsion") {
  const auto sigma = hailperin_sigma();
  CHECK(sigma.size() == 12);
  for (std::size_t k = 1; k <= 4; ++k) {
    CAPTURE(k);
    CHECK_FALSE(search_total_model(sigma, k));
  }
  // dropping the torsion laws admits Z/2 as the first model of size 2
  const std::vector<HornSentence> rings(sigma.begin(), sigma.begin() + 9);
  const auto z2 = search_total_model(rings, 2);
  REQUIRE(z2);
  for (const auto& s : rings) CHECK(holds_total(*z2, s).holds);
}

TEST_CASE("embedding into models of a theory") {
  const auto intro = theory("x + y = x\nx + y = y");
  const auto none = embeds_into_mod_bounded(p_intro(), intro, 4);
  CHECK_FALSE(none.witness);
  CHECK(none.searched_up_to == 4);

  const auto w = embeds_into_mod_bounded(p_intro(), theory("x + y = y + x"), 4);
  REQUIRE(w.witness);
  CHECK(w.witness->alpha == std::vector<Element>{0, 1});
  CHECK(w.witness->model == testsupport::q_min());
  CHECK(check_embedding(p_intro(), q_max(), {0, 1}).yes);
  CHECK(holds_total(q_max(), identity("x + y = y + x")).holds);

  const auto any = embeds_into_mod_bounded(p_intro(), {}, 2);
  REQUIRE(any.witness);
  CHECK(any.witness->model.is_total());
  CHECK(check_embedding(p_intro(), any.witness->model, any.witness->alpha).yes);

  CHECK_THROWS_AS(embeds_into_mod_bounded(p_intro(), theory("x*y = y*x"), 2), SignatureMismatch);
}

TEST_CASE("embedding may need fresh elements") {
  // a + a = b, b + b = a, idempotence forbids both, so a third element is
  // not enough either; commutativity alone needs none
  const auto p = parse_algebra("carrier: a b\nop +/2:\na a -> b\n");
  const auto w = embeds_into_mod_bounded(p, theory("x + y = y + x\n(x + y) + z = x + (y + z)\nx + x + x = x"), 3);
  REQUIRE(w.witness);
  CHECK(check_embedding(p, w.witness->model, w.witness->alpha).yes);
  const auto none = embeds_into_mod_bounded(p, theory("x + x = x"), 4);
  CHECK_FALSE(none.witness);
}

// Transfer of universal Horn sentences along an embedding into a model of
// Sigma, relativized to an idempotence-style delta that is total on P.
TEST_CASE("universal sentences transfer from models to embedded algebras") {
  std::mt19937_64 rng(2024);
  testsupport::TermGen gen{{"x", "y"}};
  gen.literals = {};
  gen.ops = {0};
  const std::vector<const char*> pool = {
      "x + y = y + x", "x + x = x", "(x + y) + z = x + (y + z)", "x + y = x", "x + (x + y) = x + y", "x + y = y",
  };
  const Delta delta{"x", {parse_equation("x + x = x + x")}};
  std::size_t exercised = 0;
  for (int i = 0; i < 500; ++i) {
    FinitePartialAlgebra p({"0", "1"}, {{"+", 2}});
    std::uniform_int_distribution<int> cell(0, 2);
    std::uniform_int_distribution<int> size(1, 2);
    if (size(rng) == 1) p = FinitePartialAlgebra({"0"}, {{"+", 2}});
    for (std::size_t idx = 0; idx < p.table_size(0); ++idx) {
      const int c = cell(rng);
      if (c < static_cast<int>(p.size())) p.set_entry(0, idx, c);
    }
    std::vector<HornSentence> sigma;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int k = std::uniform_int_distribution<int>(0, 2)(rng); k > 0; --k) sigma.push_back(parse_sentence(pool[pick(rng)]));
    sigma.push_back(parse_sentence("x + y = x + y"));  // fixes the signature

    std::vector<Equation> ante;
    if (std::bernoulli_distribution(0.5)(rng)) ante.push_back({gen(rng, 2), gen(rng, 2)});
    const HornSentence s(std::vector<std::string>{"x", "y"}, ante, Equation{gen(rng, 2), gen(rng, 2)});

    const auto w = embeds_into_mod_bounded(p, sigma, 3);
    if (!w.witness) continue;
    const HornSentence rel = relativize(s, delta);
    if (!holds_total(w.witness->model, rel).holds) continue;
    const HornSentence delta_holds({"x"}, {}, delta.atoms[0]);
    if (!is_total_for(p, delta_holds) || !holds(p, delta_holds).holds) continue;
    ++exercised;
    CAPTURE(format_algebra(p));
    CAPTURE(to_string(s));
    CHECK(holds(p, s).holds);
  }
  CHECK(exercised > 20);
}
