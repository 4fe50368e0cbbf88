#pragma once

#include <exception>

namespace wbkt::detail {

// Runs fn(j, k) over [j0, j1) x [k0, k1) with rows distributed over OpenMP threads.
// Exceptions thrown by fn are captured and the one from the lowest row is rethrown
// after the loop, so error reporting does not depend on thread scheduling.
template <class Fn>
void parallel_for_2d(int j0, int j1, int k0, int k1, Fn&& fn) {
  std::exception_ptr error;
  int error_row = k1;
#pragma omp parallel for schedule(static)
  for (int k = k0; k < k1; ++k) {
    try {
      for (int j = j0; j < j1; ++j) fn(j, k);
    } catch (...) {
#pragma omp critical(wbkt_parallel_error)
      {
        if (k < error_row) {
          error_row = k;
          error = std::current_exception();
        }
      }
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace wbkt::detail
