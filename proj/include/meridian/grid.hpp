#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "meridian/error.hpp"

namespace meridian {

/// Uniform tensor grid over [u_min, u_max] x [v_min, v_max], endpoints included.
struct Grid2 {
  double u_min = 0.0, u_max = 1.0;
  int nu = 2;
  double v_min = 0.0, v_max = 1.0;
  int nv = 2;

  void validate() const {
    if (nu < 2 || nv < 2) throw Error(Errc::ConfigError, "grid counts must be at least 2");
    if (!(u_max > u_min) || !(v_max > v_min)) throw Error(Errc::ConfigError, "grid ranges must be increasing");
  }
  double u(int i) const { return u_min + (u_max - u_min) * i / (nu - 1); }
  double v(int j) const { return v_min + (v_max - v_min) * j / (nv - 1); }
  std::size_t size() const { return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv); }

  std::string describe() const {
    std::ostringstream os;
    os << "u[" << u_min << ", " << u_max << "]x" << nu << " v[" << v_min << ", " << v_max << "]x" << nv;
    return os.str();
  }
};

/// Worker count for grid sweeps: MERIDIAN_THREADS if set (>= 1), otherwise
/// the hardware concurrency.
inline unsigned sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MERIDIAN_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Calls body(k) for k in [0, n). Work is split into contiguous blocks; the
/// first exception thrown by any block is rethrown on the caller.
template <class Body>
void parallel_for(std::size_t n, const Body& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(sweep_threads(), std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < n; ++k) body(k);
    return;
  }
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::thread> pool;
  const std::size_t block = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = w * block, hi = std::min(n, lo + block);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t k = lo; k < hi; ++k) body(k);
      } catch (...) {
        std::lock_guard lock(m);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace meridian
