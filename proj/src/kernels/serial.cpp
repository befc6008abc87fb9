#include "boolelab/kernels.hpp"

namespace boolelab::kernels {

std::uint64_t first_match_serial(std::uint64_t count, const IndexPredicate& pred) {
  for (std::uint64_t i = 0; i < count; ++i) {
    if (pred(i)) return i;
  }
  return count;
}

void for_each_serial(std::uint64_t count, const IndexBody& body) {
  for (std::uint64_t i = 0; i < count; ++i) body(i);
}

}  // namespace boolelab::kernels
