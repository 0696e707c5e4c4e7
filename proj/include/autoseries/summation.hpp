#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

namespace autoseries {

/// Neumaier's variant of Kahan summation. Also tracks sum |x| so callers can
/// charge a rounding budget.
template <class Real>
struct CompensatedSum {
  Real sum{0};
  Real compensation{0};
  Real magnitude{0};

  void add(Real x) {
    using std::abs;
    accumulate(x);
    magnitude += abs(x);
  }

  void merge(const CompensatedSum& other) {
    accumulate(other.sum);
    accumulate(other.compensation);
    magnitude += other.magnitude;
  }

  Real value() const { return sum + compensation; }

 private:
  void accumulate(Real x) {
    using std::abs;
    const Real t = sum + x;
    if (abs(sum) >= abs(x)) {
      compensation += (sum - t) + x;
    } else {
      compensation += (x - t) + sum;
    }
    sum = t;
  }
};

/// Terms per chunk of a blocked summation. Fixed so that results do not depend
/// on the number of workers.
inline constexpr std::uint64_t kChunkTerms = std::uint64_t{1} << 14;

/// Runs fn(lo, hi) over the fixed chunks of [first, last] (inclusive) and
/// returns the per-chunk results in chunk order. Workers pull chunk indices
/// from a shared counter; the caller reduces the vector sequentially, so the
/// final value is bit-identical for any worker count.
template <class Fn>
auto map_chunks(std::uint64_t first, std::uint64_t last, unsigned workers, Fn fn)
    -> std::vector<decltype(fn(first, last))> {
  using Result = decltype(fn(first, last));
  if (last < first) return {};
  const std::uint64_t count = (last - first) / kChunkTerms + 1;
  std::vector<Result> results(count);
  auto chunk = [&](std::uint64_t j) {
    const std::uint64_t lo = first + j * kChunkTerms;
    const std::uint64_t hi = std::min(last, lo + kChunkTerms - 1);
    results[j] = fn(lo, hi);
  };
  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), count));
  if (n_workers == 1) {
    for (std::uint64_t j = 0; j < count; ++j) chunk(j);
    return results;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint64_t j = next.fetch_add(1); j < count; j = next.fetch_add(1)) chunk(j);
    });
  }
  pool.clear();
  return results;
}

}  // namespace autoseries
