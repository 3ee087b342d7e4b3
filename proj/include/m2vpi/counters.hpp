#pragma once

#include <cstddef>
#include <cstdint>

namespace m2vpi {

/// Per-thread work counters. Solvers only ever add to them.
struct WorkCounters {
  std::uint64_t edge_relaxations = 0;
  std::uint64_t locate_calls = 0;
  std::uint64_t kcycle_calls = 0;
  std::uint64_t reconstruct_calls = 0;
  /// Auxiliary cells currently held by scratch arrays, and the high-water mark.
  std::int64_t live_cells = 0;
  std::int64_t peak_cells = 0;
};

WorkCounters& counters();
void reset_counters();

/// Accounts `cells` auxiliary cells for the guard's lifetime.
class ScratchCells {
 public:
  explicit ScratchCells(std::size_t cells) : cells_(static_cast<std::int64_t>(cells)) {
    auto& c = counters();
    c.live_cells += cells_;
    if (c.live_cells > c.peak_cells) c.peak_cells = c.live_cells;
  }
  ~ScratchCells() { counters().live_cells -= cells_; }
  ScratchCells(const ScratchCells&) = delete;
  ScratchCells& operator=(const ScratchCells&) = delete;

 private:
  std::int64_t cells_;
};

}  // namespace m2vpi
