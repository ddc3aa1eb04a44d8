// Copyright 2026 The claimorder Authors.
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

#ifndef CLAIMORDER_PARALLEL_HPP_
#define CLAIMORDER_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace claimorder {

/// Worker count for engine loops: `CLAIMORDER_THREADS` when set to a
/// positive integer (at most 256), otherwise the hardware concurrency.
inline unsigned thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CLAIMORDER_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) return static_cast<unsigned>(std::min(cap, 256L));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return hw;
}

/// Runs `body(begin, end)` over contiguous chunks of [0, count). Each index
/// is visited exactly once; callers write results by index, so the outcome
/// does not depend on scheduling. The first exception thrown by any chunk
/// is rethrown on the calling thread.
template <typename Body>
void parallel_for_chunks(std::size_t count, Body&& body,
                         std::size_t min_chunk = 4096) {
  const unsigned budget = thread_budget();
  const std::size_t chunks =
      std::min<std::size_t>(budget, (count + min_chunk - 1) / std::max<std::size_t>(min_chunk, 1));
  if (chunks <= 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(chunks);
  const std::size_t step = (count + chunks - 1) / chunks;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t begin = c * step;
    const std::size_t end = std::min(count, begin + step);
    if (begin >= end) break;
    workers.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace claimorder

#endif  // CLAIMORDER_PARALLEL_HPP_
