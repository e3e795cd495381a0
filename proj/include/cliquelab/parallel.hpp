// Copyright 2026 The cliquelab Authors
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

#ifndef CLIQUELAB_PARALLEL_HPP_
#define CLIQUELAB_PARALLEL_HPP_

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace cliquelab {

/// Worker count: hardware concurrency, capped by CLIQUELAB_THREADS when set.
unsigned worker_count();

/// Overrides the worker count for the current process (0 restores the
/// default). Used by tests that check thread-count invariance.
void set_worker_count_override(unsigned workers);

/// Splits [0, count) into contiguous blocks, evaluates them on worker
/// threads and folds the partial results left to right with `combine`.
/// `block(begin, end)` must be a pure function of its range and `combine`
/// associative, so the result is independent of how many workers run.
template <typename T, typename Combine>
T parallel_reduce(std::uint64_t count, const std::function<T(std::uint64_t, std::uint64_t)>& block,
                  Combine combine) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(count, 1)));
  if (workers <= 1) return block(0, count);

  std::vector<T> partial(workers);
  std::vector<std::exception_ptr> failure(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = count * w / workers;
    const std::uint64_t end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        partial[w] = block(begin, end);
      } catch (...) {
        failure[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& f : failure)
    if (f) std::rethrow_exception(f);
  T total = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w) total = combine(std::move(total), partial[w]);
  return total;
}

template <typename T>
T parallel_sum(std::uint64_t count, const std::function<T(std::uint64_t, std::uint64_t)>& block) {
  return parallel_reduce<T>(count, block, [](T a, const T& b) { return a + b; });
}

}  // namespace cliquelab

#endif  // CLIQUELAB_PARALLEL_HPP_
