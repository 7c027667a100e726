#pragma once

#include <omp.h>

#include <cstdlib>
#include <exception>

#include "qvla/report.hpp"

namespace qvla {

// QVLA_THREADS caps the OpenMP team size
inline int thread_cap() {
  if (const char* s = std::getenv("QVLA_THREADS")) {
    int n = std::atoi(s);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

// f(i) must write only to slot i of its output; ordering is then independent of scheduling
template <class F>
void for_each_index(Exec ex, size_t n, F&& f) {
  if (ex == Exec::Serial || n < 2) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
  for (long i = 0; i < long(n); ++i) {
    try {
      f(size_t(i));
    } catch (...) {
#pragma omp critical(qvla_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
}

}  // namespace qvla
