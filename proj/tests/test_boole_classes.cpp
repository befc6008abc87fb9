#include <doctest.h>

#include <set>

#include "boolelab/boole_classes.hpp"
#include "boolelab/errors.hpp"

using namespace boolelab;

namespace {

using Set = std::set<unsigned>;

Set members(std::uint32_t mask, unsigned n) {
  Set s;
  for (unsigned i = 0; i < n; ++i)
    if (mask & (1U << i)) s.insert(i);
  return s;
}

bool disjoint(const Set& a, const Set& b) {
  for (unsigned i : a)
    if (b.count(i)) return false;
  return true;
}

bool subset(const Set& b, const Set& a) {
  for (unsigned i : b)
    if (!a.count(i)) return false;
  return true;
}

std::uint32_t mask_of(const Set& s) {
  std::uint32_t m = 0;
  for (unsigned i : s) m |= 1U << i;
  return m;
}

Equation eq(const char* text) { return parse_equation(text); }

}  // namespace

TEST_CASE("class algebra tables match the set definitions") {
  for (unsigned n = 1; n <= 3; ++n) {
    const ClassAlgebra c = build_class_algebra(n);
    const auto& a = c.algebra;
    REQUIRE(a.size() == (1U << n));
    REQUIRE(a.signature() == std::vector<Operation>{{"+", 2}, {"-", 2}, {"*", 2}, {"0", 0}, {"1", 0}});
    for (Element x = 0; x < a.size(); ++x) {
      for (Element y = 0; y < a.size(); ++y) {
        const Set sx = members(x, n), sy = members(y, n);
        const Element args[] = {x, y};
        Set uni = sx, diff, inter;
        uni.insert(sy.begin(), sy.end());
        for (unsigned i : sx) (sy.count(i) ? inter : diff).insert(i);
        if (disjoint(sx, sy))
          CHECK(a.apply(0, args) == mask_of(uni));
        else
          CHECK_FALSE(a.apply(0, args));
        if (subset(sy, sx))
          CHECK(a.apply(1, args) == mask_of(diff));
        else
          CHECK_FALSE(a.apply(1, args));
        CHECK(a.apply(2, args) == mask_of(inter));
      }
    }
    CHECK(a.apply(3, {}) == Element{0});
    CHECK(a.apply(4, {}) == Element{(1U << n) - 1});
  }
}

TEST_CASE("entry counts") {
  const auto one = build_class_algebra(1).algebra;
  CHECK(one.defined_count(0) == 3);
  CHECK(one.defined_count(1) == 3);
  CHECK(one.defined_count(2) == 4);
  const auto two = build_class_algebra(2).algebra;
  CHECK(two.defined_count(1) == 9);
  CHECK(two.defined_count(0) == 9);
  CHECK(two.defined_count(2) == 16);
}

TEST_CASE("universe limits") {
  CHECK_THROWS_AS(build_class_algebra(0), std::invalid_argument);
  CHECK_THROWS_AS(build_class_algebra(6), CapExceeded);
  CHECK_NOTHROW(build_class_algebra(6, 6));
}

TEST_CASE("names and characteristic vectors") {
  CHECK(class_name(0, 2) == "0");
  CHECK(class_name(3, 2) == "U");
  CHECK(class_name(5, 3) == "{0,2}");
  CHECK(class_name(1, 1) == "U");
  CHECK(chi(0, 2) == IntVector{0, 0});
  CHECK(chi(3, 2) == IntVector{1, 1});
  CHECK(chi(1, 2) == IntVector{1, 0});
}

TEST_CASE("characteristic functions embed the class algebra") {
  const ChiCheck c1 = verify_chi_embedding(1);
  CHECK(c1.yes);
  CHECK(c1.entries_checked == 12);
  for (unsigned n = 2; n <= 4; ++n) {
    const ChiCheck c = verify_chi_embedding(n);
    CHECK(c.yes);
    CHECK(c.failing_entry.empty());
    // 3^n for + and -, 4^n for *, two constants
    std::size_t p3 = 1, p4 = 1;
    for (unsigned i = 0; i < n; ++i) p3 *= 3, p4 *= 4;
    CHECK(c.entries_checked == 2 * p3 + p4 + 2);
  }
}

TEST_CASE("semantic consequence") {
  SemanticResult r = semantic_consequence({eq("x*y = 0")}, eq("(x + y)*x = x"));
  CHECK(r.valid);
  CHECK(r.checked_up_to == 3);

  CHECK(semantic_consequence({eq("x + y = x"), eq("x + y = y")}, eq("x = y")).valid);

  SemanticOptions one;
  one.max_n = 1;
  r = semantic_consequence({}, eq("x = 0"), one);
  CHECK_FALSE(r.valid);
  CHECK(r.witness_n == 1);
  CHECK(r.witness == std::vector<std::uint32_t>{1});
  CHECK(witness_string(r) == "{x=U}");

  // Barbara
  CHECK(semantic_consequence({eq("x - x*y = 0"), eq("y - y*z = 0")}, eq("x - x*z = 0")).valid);

  // needs two points: x and y overlap without either containing the other
  r = semantic_consequence({}, eq("x*y = x"));
  CHECK_FALSE(r.valid);
  CHECK(r.witness_n == 1);
  CHECK(witness_string(r) == "{x=U, y=0}");

  // undefined terms take the assignment out of the domain
  r = semantic_consequence({}, eq("x + x = 0"));
  CHECK(r.valid);  // x+x defined only for x = 0
  r = semantic_consequence({}, eq("x - y = 0"));
  CHECK_FALSE(r.valid);
  CHECK(witness_string(r) == "{x=U, y=0}");

  // 2x has no class reading: never in the domain
  CHECK(semantic_consequence({}, eq("2x = 0")).valid);
}

TEST_CASE("semantic consequence: serial and parallel agree") {
  SemanticOptions s;
  s.execution = Execution::Serial;
  const std::vector<Equation> ps = {eq("x*y = z")};
  const Equation c = eq("x + z = x");
  const auto a = semantic_consequence(ps, c, s);
  const auto b = semantic_consequence(ps, c);
  CHECK(a.valid == b.valid);
  CHECK(a.witness_n == b.witness_n);
  CHECK(a.witness == b.witness);
  CHECK_THROWS_AS(semantic_consequence({}, c, SemanticOptions{6, 5, Execution::Serial}), CapExceeded);
}
