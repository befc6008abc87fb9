// Serial reference vs OpenMP kernels. Arg 0 runs serial, arg 1 parallel.
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "boolelab/boole_classes.hpp"
#include "boolelab/derivation.hpp"
#include "boolelab/polynomial.hpp"
#include "boolelab/term.hpp"

using namespace boolelab;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

// a chain x0 = x0*x1, ..., x{k-2} = x{k-2}*x{k-1}, concluding x0 = x0*x{k-1}
struct Argument {
  std::vector<Equation> premisses;
  Equation conclusion;
};

Argument chain(int k) {
  std::vector<Equation> ps;
  for (int i = 0; i + 1 < k; ++i) {
    const std::string a = "x" + std::to_string(i), b = "x" + std::to_string(i + 1);
    ps.push_back(parse_equation(a + " = " + a + "*" + b));
  }
  const std::string last = "x" + std::to_string(k - 1);
  return {ps, parse_equation("x0 = x0*" + last)};
}

void BM_Oracle(benchmark::State& state) {
  const auto [ps, c] = chain(18);
  VertexOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(boole_oracle(ps, c, opts).valid);
}

void BM_Expand(benchmark::State& state) {
  std::string text = "1";
  for (int i = 0; i < 14; ++i) text = "(" + text + ")*(1 + 2*x" + std::to_string(i) + ")";
  const MultilinearPoly p = normalize(parse_term(text));
  VertexOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(expand(p, opts).coeff_at.size());
}

void BM_Certify(benchmark::State& state) {
  const auto [ps, c] = chain(10);
  VertexOptions opts;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(certify_consequence(ps, c, opts).has_value());
}

void BM_Semantic(benchmark::State& state) {
  const std::vector<Equation> ps = {parse_equation("x*y = x"), parse_equation("y*z = y")};
  const Equation c = parse_equation("x*z = x");
  SemanticOptions opts;
  opts.max_n = 4;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(semantic_consequence(ps, c, opts).valid);
}

}  // namespace

BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Expand)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Certify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Semantic)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
