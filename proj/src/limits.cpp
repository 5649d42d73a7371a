#include "dpa/limits.hpp"

#include <cmath>

#include "dpa/errors.hpp"

namespace dpa {

PGrid p_grid(const ModelParams& params, int rmax, int qmax) {
  if (rmax < 1 || qmax < 1) {
    throw GridTooSmallError("p grid bounds must be at least 1");
  }
  PGrid g;
  g.rmax = rmax;
  g.qmax = qmax;
  g.table.assign(std::size_t(rmax + 1) * (qmax + 1), 0.0);

  const double c1 = params.c1();
  const double c2 = params.c2();
  const double lambda = params.lambda();
  const double mu = params.mu();

  // Dependencies (i-1,j), (i,j-1) precede (i,j) in row-major order.
  for (int i = 0; i <= rmax; ++i) {
    for (int j = 0; j <= qmax; ++j) {
      if (i == 0 && j == 0) continue;  // p_00 = 0
      double num = c1 * (i - 1 + lambda) * g.at(i - 1, j) +
                   c2 * (j - 1 + mu) * g.at(i, j - 1);
      if (i == 0 && j == 1) num += params.alpha();
      if (i == 1 && j == 0) num += params.gamma();
      g.table[std::size_t(i) * (qmax + 1) + j] =
          num / (1.0 + params.delta(i, j));
    }
  }

  // Heavy-tailed summands; accumulate at extended precision.
  long double mass = 0.0L, mi = 0.0L, mj = 0.0L;
  for (int i = 0; i <= rmax; ++i) {
    for (int j = 0; j <= qmax; ++j) {
      const long double p = g.at(i, j);
      mass += p;
      mi += i * p;
      mj += j * p;
    }
  }
  g.total_mass = double(mass);
  g.mean_i = double(mi);
  g.mean_j = double(mj);
  return g;
}

double concentration_envelope(double n, double c) {
  if (!(n >= 2.0)) throw ValidationError("envelope needs n >= 2");
  if (c < 0.0) throw ValidationError("envelope constant must be >= 0");
  return c * std::sqrt(std::log(n) / n);
}

}  // namespace dpa
