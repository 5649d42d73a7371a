#pragma once

#include <vector>

#include "dpa/params.hpp"

namespace dpa {

/// Limiting joint degree distribution p_ij on [0,rmax] x [0,qmax], filled by
/// the explicit recursion
///   p_ij = [alpha 1{(0,1)} + gamma 1{(1,0)}
///           + c1 (i-1+lambda) p_{i-1,j} + c2 (j-1+mu) p_{i,j-1}] / (1 + delta_ij),
/// p_00 = 0, negative indices 0. Entries are exact per cell (no truncation
/// error); total_mass and the first moments are grid-restricted sums.
struct PGrid {
  int rmax = 0;
  int qmax = 0;
  std::vector<double> table;
  double total_mass = 0.0;  // sum p_ij over the grid
  double mean_i = 0.0;      // sum i * p_ij over the grid
  double mean_j = 0.0;      // sum j * p_ij over the grid

  double at(int i, int j) const {
    if (i < 0 || j < 0 || i > rmax || j > qmax) return 0.0;
    return table[std::size_t(i) * (qmax + 1) + j];
  }
};

PGrid p_grid(const ModelParams& params, int rmax, int qmax);

/// The deviation envelope C * sqrt(log n / n); n >= 2.
double concentration_envelope(double n, double c);

}  // namespace dpa
