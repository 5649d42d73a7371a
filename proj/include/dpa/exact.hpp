#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dpa/params.hpp"

namespace dpa {

/// Expected degree counts nu_n(i,j) = E N_n(i,j) on a rectangle, advanced one
/// step at a time by the exact recursion
///   nu_{n+1}(i,j) = alpha 1{(0,1)} + gamma 1{(1,0)}
///                 + (1 - delta_ij/n) nu_n(i,j)
///                 + c1 (i-1+lambda)/n nu_n(i-1,j)
///                 + c2 (j-1+mu)/n   nu_n(i,j-1).
/// Dependencies point down-left, so the values on the rectangle are exact at
/// every n regardless of the rectangle size.
class NuRecursion {
 public:
  NuRecursion(const ModelParams& params, int imax, int jmax);

  void advance();  // n -> n+1
  void advance_to(std::uint64_t n_target);

  std::uint64_t n() const noexcept { return n_; }
  int imax() const noexcept { return imax_; }
  int jmax() const noexcept { return jmax_; }
  double at(int i, int j) const {
    if (i < 0 || j < 0 || i > imax_ || j > jmax_) return 0.0;
    return grid_[std::size_t(i) * (jmax_ + 1) + j];
  }
  /// Sum over the rectangle; equals n when the rectangle covers the full
  /// support (imax, jmax >= n).
  double sum() const;

 private:
  ModelParams params_;
  int imax_, jmax_;
  std::uint64_t n_ = 1;
  std::vector<double> grid_, scratch_;
};

/// Full-support expected counts at n: requires imax, jmax >= n so the mass
/// identity sum(nu_n) = n holds; throws GridTooSmallError otherwise.
NuRecursion nu_full(const ModelParams& params, std::uint64_t n, int imax,
                    int jmax);

/// One cell of a count-grid state: count nodes of degree (i,j).
struct StateCell {
  int i = 0;
  int j = 0;
  std::uint32_t count = 0;
  friend auto operator<=>(const StateCell&, const StateCell&) = default;
};

/// Canonical count-grid state: nonzero cells sorted lexicographically.
using CountState = std::vector<StateCell>;

/// Probability distribution over count-grid states at one step.
using StateDistribution = std::map<CountState, double>;

/// All one-step successors of a state with their probabilities. The count
/// process is Markov: every event is either an in-attachment to a node of
/// some cell (a,q), moving it to (a+1,q) and creating a (0,1) node with
/// probability c1 (a+lambda) N(a,q)/n, or the symmetric out-attachment
/// creating a (1,0) node. Branch probabilities add to 1.
std::vector<std::pair<CountState, double>> transitions(
    const CountState& state, const ModelParams& params);

/// Exact distribution of the count grid at steps 1..n_max by exhaustive
/// expansion. Hard cap n_max <= 6 (StateSpaceExplosionError above).
/// result[k] is the distribution at n = k+1.
std::vector<StateDistribution> enumerate_exact(const ModelParams& params,
                                               int n_max);

/// E N_n(i,j) read off an exact distribution.
double state_mean(const StateDistribution& dist, int i, int j);

CountState initial_state();

}  // namespace dpa
