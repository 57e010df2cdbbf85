#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace qpol {

/// Calls body(i) for i in [0, count) over `threads` workers with a fixed
/// strided assignment. Callers write into slots indexed by i, so results do
/// not depend on the thread count or scheduling.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t)
    workers.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) body(i);
    });
}

}  // namespace qpol
