// Copyright 2026 The massart-lwe Authors
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

#ifndef MASSART_SRC_PARALLEL_HPP_
#define MASSART_SRC_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace massart::internal {

inline constexpr size_t kChunk = 4096;

// Runs fn(chunk_index, begin, end) over [0, total) in fixed-size chunks.
// Chunk boundaries do not depend on the thread count.
template <typename Fn>
void for_chunks(size_t total, Fn&& fn) {
  const size_t chunks = (total + kChunk - 1) / kChunk;
  const size_t workers = std::min<size_t>(
      chunks, std::max(1u, std::thread::hardware_concurrency()));
  auto run = [&](size_t w) {
    for (size_t c = w; c < chunks; c += workers)
      fn(c, c * kChunk, std::min(total, (c + 1) * kChunk));
  };
  if (workers <= 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  for (auto& th : pool) th.join();
}

}  // namespace massart::internal

#endif  // MASSART_SRC_PARALLEL_HPP_
