#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpa/count_grid.hpp"
#include "dpa/params.hpp"
#include "dpa/rng.hpp"

namespace dpa {

/// One growing directed preferential attachment graph.
///
/// The graph starts as a single node with a self-loop, so its degree pair is
/// (1,1); the loop contributes degree mass but is not an edge. Each step adds
/// one node and one edge. Targets are sampled in O(1) by the endpoint-array
/// mixture: the flat array in_targets holds node v once per unit of
/// in-degree, so P(pick v) = (1/(1+lambda)) * D_in(v)/n + (lambda/(1+lambda)) * 1/n
/// = (D_in(v)+lambda) / ((1+lambda) n), the model's attachment law, exactly.
class GraphState {
 public:
  explicit GraphState(const ModelParams& params);

  /// Advances the graph by one node/edge.
  void step(Rng& rng);

  std::uint64_t n() const noexcept { return in_targets_.size(); }
  const CountGrid& counts() const noexcept { return counts_; }
  const std::vector<std::uint32_t>& in_targets() const noexcept {
    return in_targets_;
  }
  const std::vector<std::uint32_t>& out_sources() const noexcept {
    return out_sources_;
  }
  std::uint32_t in_degree(std::uint32_t v) const { return in_deg_[v]; }
  std::uint32_t out_degree(std::uint32_t v) const { return out_deg_[v]; }

 private:
  ModelParams params_;
  double inv1pl_;  // 1/(1+lambda), mixture weight of the endpoint array
  double inv1pm_;  // 1/(1+mu)
  std::vector<std::uint32_t> in_targets_;   // v appears D_in(v) times
  std::vector<std::uint32_t> out_sources_;  // v appears D_out(v) times
  std::vector<std::uint32_t> in_deg_;
  std::vector<std::uint32_t> out_deg_;
  CountGrid counts_;
};

/// Window counts captured at one checkpoint, aligned with window.coords.
struct WindowSnapshot {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> counts;
};

struct GrowOptions {
  std::uint64_t max_nodes = 100'000'000;  // memory budget, ~16 bytes/node
  std::vector<std::uint64_t> checkpoints;  // ascending; final n is implicit
  std::optional<IndexWindow> window;       // required when checkpoints given
};

struct GrowResult {
  CountGrid counts;
  std::vector<WindowSnapshot> snapshots;
};

/// Grows one graph to n nodes. Deterministic given (params, n, seed).
/// Throws CapacityExceededError when n exceeds options.max_nodes.
GrowResult grow(const ModelParams& params, std::uint64_t n,
                std::uint64_t seed, const GrowOptions& options = {});

/// Reads the window counts out of a grid, aligned with window.coords.
std::vector<std::uint64_t> window_counts(const CountGrid& grid,
                                         const IndexWindow& window);

}  // namespace dpa
