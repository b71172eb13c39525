#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "ugcmt/core/corpus.hpp"

namespace ugcmt {

/// Resolves a user thread count: 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

/// Calls fn(i) for every i in [0, n) on up to `threads` workers, each taking a
/// contiguous block. The first exception thrown by any worker is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, n);
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

/// Order-preserving parallel map.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, unsigned threads, Fn&& fn) {
  using R = std::decay_t<decltype(fn(in[0], std::size_t{0}))>;
  std::vector<R> out(in.size());
  parallel_for(in.size(), threads,
               [&](std::size_t i) { out[i] = fn(in[i], i); });
  return out;
}

/// Streams `reader` through fn(line, index) in batches and writes results in
/// input order. `index` is the 0-based global line index, which is what
/// counter-based randomness keys on, so output is independent of `threads`.
template <class Fn>
std::size_t map_lines(LineReader& reader, LineWriter& writer, unsigned threads,
                      Fn&& fn, std::size_t batch_size = 4096) {
  std::vector<std::string> batch;
  std::vector<std::string> results;
  std::size_t base = 0;
  for (;;) {
    batch.clear();
    while (batch.size() < batch_size) {
      auto line = reader.next();
      if (!line) break;
      batch.push_back(std::move(*line));
    }
    if (batch.empty()) break;
    results.assign(batch.size(), std::string());
    parallel_for(batch.size(), threads,
                 [&](std::size_t i) { results[i] = fn(batch[i], base + i); });
    for (const auto& r : results) writer.write(r);
    base += batch.size();
  }
  reader.finish();
  return base;
}

}  // namespace ugcmt
