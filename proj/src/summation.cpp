#include "asymptolim/summation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace asymptolim {

double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc += x;
  return acc.value();
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task,
                  unsigned threads) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

namespace {

std::size_t chunk_count(std::uint64_t first, std::uint64_t last) {
  if (last <= first) return 0;
  return static_cast<std::size_t>((last - first + kReductionChunk - 1) / kReductionChunk);
}

}  // namespace

double parallel_sum(std::uint64_t first, std::uint64_t last,
                    const std::function<double(std::uint64_t)>& term, unsigned threads) {
  const std::size_t chunks = chunk_count(first, last);
  std::vector<CompensatedSum> partial(chunks);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        const std::uint64_t lo = first + c * kReductionChunk;
        const std::uint64_t hi = std::min(last, lo + kReductionChunk);
        CompensatedSum acc;
        for (std::uint64_t i = lo; i < hi; ++i) acc += term(i);
        partial[c] = acc;
      },
      threads);
  CompensatedSum total;
  for (const auto& p : partial) total += p;
  return total.value();
}

std::uint64_t parallel_count(std::uint64_t first, std::uint64_t last,
                             const std::function<bool(std::uint64_t)>& pred,
                             unsigned threads) {
  const std::size_t chunks = chunk_count(first, last);
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        const std::uint64_t lo = first + c * kReductionChunk;
        const std::uint64_t hi = std::min(last, lo + kReductionChunk);
        std::uint64_t hits = 0;
        for (std::uint64_t i = lo; i < hi; ++i) hits += pred(i) ? 1 : 0;
        partial[c] = hits;
      },
      threads);
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

}  // namespace asymptolim
