#pragma once

#include <cstdint>
#include <functional>

namespace azeta {

// Worker cap: AZETA_THREADS if set, else hardware concurrency.
int thread_count();

// Runs task(i) for i in [0, n). Callers write results into slot i and reduce
// afterwards in index order, so output never depends on scheduling.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& task);

// Counter-based generator: the k-th draw depends only on (seed, k).
struct CounterRng {
  std::uint64_t seed;
  std::uint64_t bits(std::uint64_t k) const;
  // Uniform in [0, 1).
  double uniform(std::uint64_t k) const;
};

}  // namespace azeta
