#pragma once

#include <cstdint>
#include <functional>

namespace boolelab {

/// Selects the serial reference loops or the OpenMP kernels. Both produce
/// identical results; witnesses are always the least index in enumeration
/// order.
enum class Execution { Serial, Parallel };

namespace kernels {

using IndexPredicate = std::function<bool(std::uint64_t)>;
using IndexBody = std::function<void(std::uint64_t)>;

/// Least index in [0, count) for which `pred` holds, or `count` if none.
std::uint64_t first_match_serial(std::uint64_t count, const IndexPredicate& pred);
std::uint64_t first_match_parallel(std::uint64_t count, const IndexPredicate& pred);

/// Calls `body` once per index. `body` must only write to per-index state.
void for_each_serial(std::uint64_t count, const IndexBody& body);
void for_each_parallel(std::uint64_t count, const IndexBody& body);

inline std::uint64_t first_match(Execution exec, std::uint64_t count, const IndexPredicate& pred) {
  return exec == Execution::Parallel ? first_match_parallel(count, pred) : first_match_serial(count, pred);
}

inline void for_each(Execution exec, std::uint64_t count, const IndexBody& body) {
  if (exec == Execution::Parallel)
    for_each_parallel(count, body);
  else
    for_each_serial(count, body);
}

/// Number of OpenMP threads the parallel kernels will use.
int parallel_width();

}  // namespace kernels
}  // namespace boolelab
