// Copyright 2026 The drsolve Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Data-parallel kernels shared by the solvers and checkers.
//
// Every kernel has a serial reference version and an OpenMP version that
// returns bit-identical results: reductions break ties on the loop index, so
// the parallel answer never depends on the thread schedule.

#pragma once

#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace drsolve::kernels {

enum class Execution { serial, parallel, automatic };

/// Below this many loop iterations `automatic` stays serial.
inline constexpr std::int64_t kParallelThreshold = 256;

inline bool use_parallel(Execution ex, std::int64_t work) {
  switch (ex) {
    case Execution::serial: return false;
    case Execution::parallel: return true;
    case Execution::automatic: break;
  }
#ifdef _OPENMP
  return work >= kParallelThreshold && omp_get_max_threads() > 1;
#else
  (void)work;
  return false;
#endif
}

/// Rethrows the first exception raised inside a parallel region.
class ExceptionSlot {
 public:
  void capture() {
    std::lock_guard lock(mu_);
    if (!ptr_) ptr_ = std::current_exception();
  }
  void rethrow() const {
    if (ptr_) std::rethrow_exception(ptr_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr ptr_;
};

template <class Key>
struct PairChoice {
  int a = -1;
  int b = -1;
  Key key{};
};

namespace detail {

template <class Key>
bool better(const Key& k, int a, int b, const std::optional<PairChoice<Key>>& best) {
  if (!best) return true;
  if (k < best->key) return true;
  if (best->key < k) return false;
  return std::pair(a, b) < std::pair(best->a, best->b);
}

}  // namespace detail

/// argmin over ordered pairs (a, b), a != b, of eval(a, b) -> optional<Key>.
/// nullopt marks a disallowed pair. Ties go to the lexicographically smallest
/// (a, b). Serial reference.
template <class Key, class Eval>
std::optional<PairChoice<Key>> argmin_pairs_serial(int n, Eval&& eval) {
  std::optional<PairChoice<Key>> best;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      std::optional<Key> k = eval(a, b);
      if (k && detail::better(*k, a, b, best)) best = PairChoice<Key>{a, b, *k};
    }
  }
  return best;
}

/// OpenMP version of argmin_pairs_serial with the same result.
template <class Key, class Eval>
std::optional<PairChoice<Key>> argmin_pairs_parallel(int n, Eval&& eval) {
#ifdef _OPENMP
  std::optional<PairChoice<Key>> best;
  ExceptionSlot err;
  const std::int64_t total = static_cast<std::int64_t>(n) * n;
#pragma omp parallel
  {
    std::optional<PairChoice<Key>> local;
#pragma omp for schedule(static) nowait
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const int a = static_cast<int>(idx / n);
      const int b = static_cast<int>(idx % n);
      if (a == b) continue;
      try {
        std::optional<Key> k = eval(a, b);
        if (k && detail::better(*k, a, b, local)) local = PairChoice<Key>{a, b, *k};
      } catch (...) {
        err.capture();
      }
    }
#pragma omp critical(drsolve_argmin_pairs)
    {
      if (local && detail::better(local->key, local->a, local->b, best)) best = local;
    }
  }
  err.rethrow();
  return best;
#else
  return argmin_pairs_serial<Key>(n, std::forward<Eval>(eval));
#endif
}

template <class Key, class Eval>
std::optional<PairChoice<Key>> argmin_pairs(int n, Eval&& eval, Execution ex) {
  if (use_parallel(ex, static_cast<std::int64_t>(n) * n))
    return argmin_pairs_parallel<Key>(n, std::forward<Eval>(eval));
  return argmin_pairs_serial<Key>(n, std::forward<Eval>(eval));
}

/// out[i] = fn(i) for i in [0, count). Serial reference.
template <class T, class Fn>
std::vector<T> tabulate_serial(std::int64_t count, Fn&& fn) {
  std::vector<T> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

template <class T, class Fn>
std::vector<T> tabulate_parallel(std::int64_t count, Fn&& fn) {
#ifdef _OPENMP
  std::vector<T> out(static_cast<std::size_t>(count));
  ExceptionSlot err;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(i);
    } catch (...) {
      err.capture();
    }
  }
  err.rethrow();
  return out;
#else
  return tabulate_serial<T>(count, std::forward<Fn>(fn));
#endif
}

template <class T, class Fn>
std::vector<T> tabulate(std::int64_t count, Fn&& fn, Execution ex) {
  if (use_parallel(ex, count)) return tabulate_parallel<T>(count, std::forward<Fn>(fn));
  return tabulate_serial<T>(count, std::forward<Fn>(fn));
}

/// Threads OpenMP would use for a parallel region (1 without OpenMP).
inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace drsolve::kernels
