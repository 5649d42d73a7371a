#include "dpa/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "dpa/errors.hpp"

namespace dpa {

void solve_unit_lower(std::size_t n, std::span<const double> l,
                      std::span<double> b, std::size_t ncols) {
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < r; ++k) {
      const double coeff = l[r * n + k];
      if (coeff == 0.0) continue;
      for (std::size_t c = 0; c < ncols; ++c) {
        b[r * ncols + c] -= coeff * b[k * ncols + c];
      }
    }
  }
}

std::vector<double> sandwich_unit_lower_inverse(std::size_t n,
                                                std::span<const double> l,
                                                std::span<const double> a) {
  std::vector<double> work(a.begin(), a.end());
  solve_unit_lower(n, l, work, n);  // work = L^{-1} A
  // transpose, solve again, transpose back
  std::vector<double> t(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) t[c * n + r] = work[r * n + c];
  }
  solve_unit_lower(n, l, t, n);  // t = L^{-1} (L^{-1} A)^T
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) work[r * n + c] = t[c * n + r];
  }
  return work;
}

bool cholesky(std::size_t n, std::span<const double> a,
              std::vector<double>& lower) {
  lower.assign(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c <= r; ++c) {
      double s = a[r * n + c];
      for (std::size_t k = 0; k < c; ++k) {
        s -= lower[r * n + k] * lower[c * n + k];
      }
      if (r == c) {
        if (s <= 0.0) return false;
        lower[r * n + r] = std::sqrt(s);
      } else {
        lower[r * n + c] = s / lower[c * n + c];
      }
    }
  }
  return true;
}

double quadratic_form_inverse(std::size_t n, std::span<const double> lower,
                              std::span<const double> x) {
  // solve L y = x, then |y|^2
  std::vector<double> y(x.begin(), x.end());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < r; ++k) y[r] -= lower[r * n + k] * y[k];
    y[r] /= lower[r * n + r];
  }
  double s = 0.0;
  for (double v : y) s += v * v;
  return s;
}

std::vector<double> symmetric_eigenvalues(std::size_t n,
                                          std::span<const double> a) {
  std::vector<double> m(a.begin(), a.end());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = r + 1; c < n; ++c) off += std::fabs(m[r * n + c]);
    }
    if (off < 1e-14) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (m[q * n + q] - m[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double mkp = m[k * n + p];
          const double mkq = m[k * n + q];
          m[k * n + p] = c * mkp - s * mkq;
          m[k * n + q] = s * mkp + c * mkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double mpk = m[p * n + k];
          const double mqk = m[q * n + k];
          m[p * n + k] = c * mpk - s * mqk;
          m[q * n + k] = s * mpk + c * mqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t r = 0; r < n; ++r) eig[r] = m[r * n + r];
  std::sort(eig.begin(), eig.end());
  return eig;
}

double max_asymmetry(std::size_t n, std::span<const double> a) {
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r + 1; c < n; ++c) {
      worst = std::max(worst, std::fabs(a[r * n + c] - a[c * n + r]));
    }
  }
  return worst;
}

}  // namespace dpa
