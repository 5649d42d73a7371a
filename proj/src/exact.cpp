#include "dpa/exact.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace dpa {

NuRecursion::NuRecursion(const ModelParams& params, int imax, int jmax)
    : params_(params), imax_(imax), jmax_(jmax) {
  if (imax < 0 || jmax < 0) {
    throw GridTooSmallError("nu grid bounds must be nonnegative");
  }
  grid_.assign(std::size_t(imax + 1) * (jmax + 1), 0.0);
  scratch_ = grid_;
  // nu_1(1,1) = 1; a rectangle without (1,1) stays exact for its own cells
  // because the recursion never pulls from above or from the right.
  if (imax >= 1 && jmax >= 1) grid_[std::size_t(1) * (jmax_ + 1) + 1] = 1.0;
}

void NuRecursion::advance() {
  const double c1 = params_.c1();
  const double c2 = params_.c2();
  const double lambda = params_.lambda();
  const double mu = params_.mu();
  const double inv_n = 1.0 / double(n_);

  for (int i = 0; i <= imax_; ++i) {
    for (int j = 0; j <= jmax_; ++j) {
      double v = (1.0 - params_.delta(i, j) * inv_n) * at(i, j) +
                 c1 * (i - 1 + lambda) * inv_n * at(i - 1, j) +
                 c2 * (j - 1 + mu) * inv_n * at(i, j - 1);
      if (i == 0 && j == 1) v += params_.alpha();
      if (i == 1 && j == 0) v += params_.gamma();
      scratch_[std::size_t(i) * (jmax_ + 1) + j] = v;
    }
  }
  grid_.swap(scratch_);
  ++n_;
}

void NuRecursion::advance_to(std::uint64_t n_target) {
  while (n_ < n_target) advance();
}

double NuRecursion::sum() const {
  long double s = 0.0L;
  for (double v : grid_) s += v;
  return double(s);
}

NuRecursion nu_full(const ModelParams& params, std::uint64_t n, int imax,
                    int jmax) {
  if (std::uint64_t(imax) < n || std::uint64_t(jmax) < n) {
    throw GridTooSmallError(
        "full-support expected counts need bounds covering n");
  }
  NuRecursion nu(params, imax, jmax);
  nu.advance_to(n);
  return nu;
}

CountState initial_state() { return {{1, 1, 1}}; }

namespace {

// Moves one node from cell `from` to cell `to` and adds one `birth` node.
// `from` may coincide with `birth` (attachment to a (0,1) or (1,0) node);
// `to` never coincides with either.
CountState apply_event(const CountState& state, StateCell from,
                       DegreePair to, DegreePair birth) {
  CountState next;
  next.reserve(state.size() + 2);
  bool to_done = false, birth_done = false;
  for (const auto& cell : state) {
    StateCell c = cell;
    if (c.i == from.i && c.j == from.j) --c.count;
    if (c.i == to.i && c.j == to.j) {
      ++c.count;
      to_done = true;
    }
    if (c.i == birth.i && c.j == birth.j) {
      ++c.count;
      birth_done = true;
    }
    if (c.count > 0) next.push_back(c);
  }
  if (!to_done) next.push_back({to.i, to.j, 1});
  if (!birth_done) next.push_back({birth.i, birth.j, 1});
  std::sort(next.begin(), next.end());
  return next;
}

std::uint64_t state_size(const CountState& state) {
  std::uint64_t n = 0;
  for (const auto& c : state) n += c.count;
  return n;
}

}  // namespace

std::vector<std::pair<CountState, double>> transitions(
    const CountState& state, const ModelParams& params) {
  const double n = double(state_size(state));
  std::vector<std::pair<CountState, double>> branches;
  branches.reserve(state.size() * 2);
  for (const auto& cell : state) {
    const double m = double(cell.count);
    // in-attachment to a node of this cell
    const double p_in =
        params.c1() * (cell.i + params.lambda()) * m / n;
    branches.emplace_back(
        apply_event(state, cell, {cell.i + 1, cell.j}, {0, 1}), p_in);
    // out-attachment from a node of this cell
    const double p_out = params.c2() * (cell.j + params.mu()) * m / n;
    branches.emplace_back(
        apply_event(state, cell, {cell.i, cell.j + 1}, {1, 0}), p_out);
  }
  return branches;
}

std::vector<StateDistribution> enumerate_exact(const ModelParams& params,
                                               int n_max) {
  if (n_max < 1) throw ValidationError("n must be at least 1");
  if (n_max > 6) {
    throw StateSpaceExplosionError("exact enumeration is capped at n = 6");
  }
  std::vector<StateDistribution> levels;
  levels.push_back({{initial_state(), 1.0}});
  for (int n = 1; n < n_max; ++n) {
    StateDistribution next;
    for (const auto& [state, prob] : levels.back()) {
      for (const auto& [succ, p] : transitions(state, params)) {
        next[succ] += prob * p;
      }
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

double state_mean(const StateDistribution& dist, int i, int j) {
  double mean = 0.0;
  for (const auto& [state, prob] : dist) {
    for (const auto& cell : state) {
      if (cell.i == i && cell.j == j) mean += prob * double(cell.count);
    }
  }
  return mean;
}

}  // namespace dpa
