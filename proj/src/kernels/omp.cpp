#include <omp.h>

#include <algorithm>
#include <exception>
#include <mutex>

#include "boolelab/kernels.hpp"

namespace boolelab::kernels {

namespace {

// Blocks are scanned in order so that a hit in an early block stops the
// search without visiting the rest of the index space.
constexpr std::uint64_t kBlock = 4096;

// Exceptions may not cross an OpenMP region boundary; the first one thrown
// by any thread is rethrown on the calling thread.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace

std::uint64_t first_match_parallel(std::uint64_t count, const IndexPredicate& pred) {
  ExceptionSlot errors;
  for (std::uint64_t base = 0; base < count; base += kBlock) {
    const std::int64_t end = static_cast<std::int64_t>(std::min(count, base + kBlock));
    std::uint64_t best = count;
#pragma omp parallel for reduction(min : best) schedule(static)
    for (std::int64_t i = static_cast<std::int64_t>(base); i < end; ++i) {
      const auto index = static_cast<std::uint64_t>(i);
      if (index < best) {
        errors.run([&] {
          if (pred(index)) best = index;
        });
      }
    }
    errors.rethrow();
    if (best < count) return best;
  }
  return count;
}

void for_each_parallel(std::uint64_t count, const IndexBody& body) {
  ExceptionSlot errors;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    errors.run([&] { body(static_cast<std::uint64_t>(i)); });
  }
  errors.rethrow();
}

int parallel_width() { return omp_get_max_threads(); }

}  // namespace boolelab::kernels
