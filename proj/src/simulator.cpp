#include "dpa/simulator.hpp"

#include <algorithm>

#include "dpa/errors.hpp"

namespace dpa {

std::vector<std::array<std::uint64_t, 3>> CountGrid::nonzero() const {
  std::vector<std::array<std::uint64_t, 3>> cells;
  for (int i = 0; i < kDenseDim; ++i) {
    for (int j = 0; j < kDenseDim; ++j) {
      if (auto c = dense_[std::size_t(i) * kDenseDim + j]; c != 0) {
        cells.push_back({std::uint64_t(i), std::uint64_t(j), c});
      }
    }
  }
  for (const auto& [k, c] : overflow_) {
    cells.push_back({k >> 32, k & 0xffffffffULL, c});
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

GraphState::GraphState(const ModelParams& params)
    : params_(params),
      inv1pl_(1.0 / (1.0 + params.lambda())),
      inv1pm_(1.0 / (1.0 + params.mu())) {
  // Node 0 carries a self-loop: degree (1,1), loop not counted as an edge.
  in_targets_.push_back(0);
  out_sources_.push_back(0);
  in_deg_.push_back(1);
  out_deg_.push_back(1);
  counts_.inc(1, 1);
}

void GraphState::step(Rng& rng) {
  const std::uint64_t n = in_targets_.size();
  const bool in_event = rng.next_double() < params_.alpha();
  const std::uint32_t w = std::uint32_t(n);

  if (in_event) {
    // New node w with an edge w -> v; v gains one unit of in-degree.
    const std::uint32_t v = rng.next_double() < inv1pl_
                                ? in_targets_[rng.bounded(n)]
                                : std::uint32_t(rng.bounded(n));
    counts_.inc(0, 1);
    in_deg_.push_back(0);
    out_deg_.push_back(1);
    out_sources_.push_back(w);

    counts_.dec(int(in_deg_[v]), int(out_deg_[v]));
    ++in_deg_[v];
    counts_.inc(int(in_deg_[v]), int(out_deg_[v]));
    in_targets_.push_back(v);
  } else {
    // New node w with an edge v -> w; v gains one unit of out-degree.
    const std::uint32_t v = rng.next_double() < inv1pm_
                                ? out_sources_[rng.bounded(n)]
                                : std::uint32_t(rng.bounded(n));
    counts_.inc(1, 0);
    in_deg_.push_back(1);
    out_deg_.push_back(0);
    in_targets_.push_back(w);

    counts_.dec(int(in_deg_[v]), int(out_deg_[v]));
    ++out_deg_[v];
    counts_.inc(int(in_deg_[v]), int(out_deg_[v]));
    out_sources_.push_back(v);
  }
}

std::vector<std::uint64_t> window_counts(const CountGrid& grid,
                                         const IndexWindow& window) {
  std::vector<std::uint64_t> out;
  out.reserve(window.coords.size());
  for (const auto& c : window.coords) out.push_back(grid.at(c.i, c.j));
  return out;
}

GrowResult grow(const ModelParams& params, std::uint64_t n,
                std::uint64_t seed, const GrowOptions& options) {
  if (n < 1) throw ValidationError("target size must be at least 1");
  if (n > options.max_nodes) {
    throw CapacityExceededError("requested size exceeds the memory budget");
  }
  if (!options.checkpoints.empty() && !options.window.has_value()) {
    throw ValidationError("checkpoints require a window");
  }

  std::vector<std::uint64_t> cps = options.checkpoints;
  std::sort(cps.begin(), cps.end());

  GraphState state(params);
  Rng rng(seed);
  GrowResult result;
  std::size_t next_cp = 0;

  auto maybe_snapshot = [&]() {
    while (next_cp < cps.size() && cps[next_cp] == state.n()) {
      result.snapshots.push_back(
          {state.n(), window_counts(state.counts(), *options.window)});
      ++next_cp;
    }
  };

  maybe_snapshot();
  while (state.n() < n) {
    state.step(rng);
    maybe_snapshot();
  }
  result.counts = state.counts();
  return result;
}

}  // namespace dpa
