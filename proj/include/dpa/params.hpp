#pragma once

#include <compare>
#include <vector>

#include "dpa/errors.hpp"

namespace dpa {

/// A joint (in-degree, out-degree) pair.
struct DegreePair {
  int i = 0;
  int j = 0;
  friend auto operator<=>(const DegreePair&, const DegreePair&) = default;
};

/// Validated model parameters plus the derived attachment constants.
///
/// The growth rule draws, at every step, either an in-attachment (probability
/// alpha, target weighted by in-degree + lambda) or an out-attachment
/// (probability gamma = 1 - alpha, target weighted by out-degree + mu).
/// c1 = alpha/(1+lambda) and c2 = gamma/(1+mu) are the per-degree attachment
/// rates; delta(i,j) = c1*(i+lambda) + c2*(j+mu) is the depletion rate of the
/// (i,j) degree cell. delta(1,1) == 1 for every valid parameter choice.
class ModelParams {
 public:
  /// Validates raw inputs and normalizes gamma to exactly 1 - alpha.
  /// Throws NonPositiveParameterError (lambda/mu <= 0), DegenerateCaseError
  /// (alpha or gamma outside the open interval (0,1)), or
  /// AlphaGammaSumError (|alpha + gamma - 1| > 1e-12).
  static ModelParams validate(double alpha, double gamma, double lambda,
                              double mu);

  double alpha() const noexcept { return alpha_; }
  double gamma() const noexcept { return gamma_; }
  double lambda() const noexcept { return lambda_; }
  double mu() const noexcept { return mu_; }
  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }

  double delta(int i, int j) const noexcept {
    return c1_ * (i + lambda_) + c2_ * (j + mu_);
  }

 private:
  ModelParams(double alpha, double lambda, double mu);

  double alpha_, gamma_, lambda_, mu_;
  double c1_, c2_;
};

/// The rectangle [0,imax] x [0,jmax] of degree pairs, with (0,0) excluded
/// (the count N(0,0) is identically zero). Coordinates are kept in
/// lexicographic order; this ordering makes the coefficient matrix of the
/// count deviations unit lower triangular.
struct IndexWindow {
  int imax = 0;
  int jmax = 0;
  std::vector<DegreePair> coords;

  static IndexWindow make(int imax, int jmax);
  std::size_t size() const noexcept { return coords.size(); }
};

}  // namespace dpa
