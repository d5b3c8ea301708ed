// Copyright 2026 The cfmimo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace cfmimo {

/// Worker count from CFMIMO_THREADS, else the hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("CFMIMO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, n) on up to `workers` threads, in contiguous
/// chunks. Results must be written to per-index slots so that reductions
/// stay independent of the schedule. The first exception is rethrown.
inline void parallel_for(long n, const std::function<void(long)>& body, int workers = 0) {
  if (workers <= 0) workers = worker_count();
  workers = static_cast<int>(std::min<long>(workers, n));
  if (workers <= 1) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const long begin = n * w / workers;
        const long end = n * (w + 1) / workers;
        try {
          for (long i = begin; i < end; ++i) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace cfmimo
