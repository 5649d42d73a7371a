#include "dpa/params.hpp"

#include <cmath>

namespace dpa {

ModelParams ModelParams::validate(double alpha, double gamma, double lambda,
                                  double mu) {
  if (!(lambda > 0.0) || !(mu > 0.0)) {
    throw NonPositiveParameterError(
        "lambda and mu must be strictly positive");
  }
  if (!(alpha > 0.0) || alpha >= 1.0 || !(gamma > 0.0) || gamma >= 1.0) {
    throw DegenerateCaseError(
        "alpha and gamma must lie strictly inside (0, 1)");
  }
  if (std::fabs(alpha + gamma - 1.0) > 1e-12) {
    throw AlphaGammaSumError("alpha + gamma must equal 1 (tolerance 1e-12)");
  }
  return ModelParams(alpha, lambda, mu);
}

ModelParams::ModelParams(double alpha, double lambda, double mu)
    : alpha_(alpha),
      gamma_(1.0 - alpha),  // stored exactly, absorbing decimal input drift
      lambda_(lambda),
      mu_(mu),
      c1_(alpha / (1.0 + lambda)),
      c2_((1.0 - alpha) / (1.0 + mu)) {}

IndexWindow IndexWindow::make(int imax, int jmax) {
  if (imax < 0 || jmax < 0 || (imax == 0 && jmax == 0)) {
    throw ValidationError("window must contain a coordinate besides (0,0)");
  }
  IndexWindow w;
  w.imax = imax;
  w.jmax = jmax;
  w.coords.reserve(std::size_t(imax + 1) * (jmax + 1) - 1);
  for (int i = 0; i <= imax; ++i) {
    for (int j = 0; j <= jmax; ++j) {
      if (i == 0 && j == 0) continue;
      w.coords.push_back({i, j});
    }
  }
  return w;
}

}  // namespace dpa
