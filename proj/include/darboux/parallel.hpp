#pragma once

#include <exception>

namespace darboux {

/// Execution policy for per-sample kernels. `serial` is the reference path.
enum class Exec { serial, parallel };

/// Runs fn(k) for k in [0, n). In parallel mode the exception from the
/// lowest failing index is rethrown, so errors match the serial path.
template <class F>
void for_each_sample(int n, Exec exec, F&& fn) {
  if (exec == Exec::serial) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::exception_ptr first;
  int first_index = n;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    try {
      fn(k);
    } catch (...) {
#pragma omp critical(darboux_sample_error)
      {
        if (k < first_index) {
          first_index = k;
          first = std::current_exception();
        }
      }
    }
  }
  if (first) std::rethrow_exception(first);
}

}  // namespace darboux
