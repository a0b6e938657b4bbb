#pragma once

#include <cstddef>
#include <exception>

#include <omp.h>

namespace vetocore {

/// Every kernel that fans out independent subproblems takes one of these. The
/// serial path is the reference the parallel path is tested against.
enum class Execution { serial, parallel };

/// Runs body(i) for i in [0, count). In parallel mode iterations are spread over
/// OpenMP threads; the first exception thrown by any iteration is rethrown.
template <class Body>
void for_each_index(std::size_t count, Execution exec, Body&& body) {
  if (exec == Execution::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < total; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(vetocore_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace vetocore
