#pragma once

// Engine behind every sumset/product-set style operation: the canonical
// (sorted, deduplicated) image of op over lhs x rhs.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <iterator>
#include <span>
#include <thread>
#include <unordered_set>
#include <vector>

#include "sumprod/setops.hpp"

namespace sumprod::detail {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs job(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any job is rethrown on the calling thread.
template <class Job>
void run_parallel(std::size_t count, unsigned threads, Job job) {
  if (count == 0) return;
  if (threads <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  const std::size_t workers = std::min<std::size_t>(threads, count);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) {
        try {
          job(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

template <class T>
std::vector<T> merge_unique(std::vector<T> a, std::vector<T> b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<T> out;
  out.reserve(a.size() + b.size());
  std::set_union(std::make_move_iterator(a.begin()), std::make_move_iterator(a.end()),
                 std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()),
                 std::back_inserter(out));
  return out;
}

/// Merges sorted unique runs pairwise until one remains (order-independent
/// result, since the output is the canonical union).
template <class T>
std::vector<T> merge_runs(std::vector<std::vector<T>> runs) {
  if (runs.empty()) return {};
  while (runs.size() > 1) {
    std::vector<std::vector<T>> next;
    next.reserve((runs.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < runs.size(); i += 2) {
      next.push_back(merge_unique(std::move(runs[i]), std::move(runs[i + 1])));
    }
    if (runs.size() % 2 == 1) next.push_back(std::move(runs.back()));
    runs = std::move(next);
  }
  return std::move(runs.front());
}

inline constexpr std::size_t kBlockElements = std::size_t{1} << 16;

// Sort/dedup blocks of rows, keeping a stack of runs whose sizes shrink
// geometrically; memory stays near the size of the output.
template <class T, class Op>
std::vector<T> merge_rows(std::span<const T> lhs, std::span<const T> rhs, Op& op,
                          std::size_t first_row, std::size_t last_row,
                          std::size_t rows_per_block) {
  std::vector<std::vector<T>> stack;
  for (std::size_t row = first_row; row < last_row; row += rows_per_block) {
    const std::size_t stop = std::min(last_row, row + rows_per_block);
    std::vector<T> buf;
    buf.reserve((stop - row) * rhs.size());
    for (std::size_t i = row; i < stop; ++i) {
      for (const T& y : rhs) buf.push_back(op(lhs[i], y));
    }
    std::sort(buf.begin(), buf.end());
    buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
    stack.push_back(std::move(buf));
    while (stack.size() >= 2 && stack[stack.size() - 2].size() <= 2 * stack.back().size()) {
      auto top = std::move(stack.back());
      stack.pop_back();
      stack.back() = merge_unique(std::move(stack.back()), std::move(top));
    }
  }
  return merge_runs(std::move(stack));
}

template <class T, class Hash, class Op>
std::vector<T> pairwise_image(std::span<const T> lhs, std::span<const T> rhs, Op op,
                              const SetOpOptions& options) {
  if (lhs.empty() || rhs.empty()) return {};
  const unsigned threads = resolve_threads(options.threads);
  const std::size_t rows_per_block = std::max<std::size_t>(1, kBlockElements / rhs.size());
  const std::size_t blocks = (lhs.size() + rows_per_block - 1) / rows_per_block;
  const std::size_t parts = std::min<std::size_t>(threads, blocks);
  std::vector<std::vector<T>> partial(parts);

  auto row_range = [&](std::size_t part) {
    const std::size_t b0 = blocks * part / parts;
    const std::size_t b1 = blocks * (part + 1) / parts;
    return std::pair{std::min(lhs.size(), b0 * rows_per_block),
                     std::min(lhs.size(), b1 * rows_per_block)};
  };

  if (options.strategy == Strategy::merge) {
    run_parallel(parts, threads, [&](std::size_t part) {
      auto [r0, r1] = row_range(part);
      partial[part] = merge_rows(lhs, rhs, op, r0, r1, rows_per_block);
    });
    return merge_runs(std::move(partial));
  }

  run_parallel(parts, threads, [&](std::size_t part) {
    auto [r0, r1] = row_range(part);
    std::unordered_set<T, Hash> seen;
    seen.reserve(std::min<std::size_t>((r1 - r0) * rhs.size(), kBlockElements * 16));
    for (std::size_t i = r0; i < r1; ++i) {
      for (const T& y : rhs) seen.insert(op(lhs[i], y));
    }
    std::vector<T> run;
    run.reserve(seen.size());
    for (auto it = seen.begin(); it != seen.end();) {
      run.push_back(std::move(seen.extract(it++).value()));
    }
    std::sort(run.begin(), run.end());
    partial[part] = std::move(run);
  });
  return merge_runs(std::move(partial));
}

}  // namespace sumprod::detail
