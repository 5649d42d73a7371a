#include "dpa/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpa/errors.hpp"
#include "dpa/rng.hpp"

namespace dpa {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double u) {
  if (!(u > 0.0) || !(u < 1.0)) {
    throw ValidationError("quantile level must lie in (0,1)");
  }
  // bisection seeded wide, then a few Newton steps
  double lo = -40.0, hi = 40.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < u ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    if (pdf < 1e-300) break;
    x -= (normal_cdf(x) - u) / pdf;
  }
  return x;
}

namespace {

// Lanczos-free: series for x < a+1, continued fraction otherwise.
double gamma_p_series(double a, double x) {
  double sum = 1.0 / a;
  double term = sum;
  for (int k = 1; k < 1000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int k = 1; k < 1000; ++k) {
    const double an = -k * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw ValidationError("gamma_p domain error");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_contfrac(a, x);
}

double chi_square_cdf(double x, double df) {
  if (x <= 0.0) return 0.0;
  return regularized_gamma_p(0.5 * df, 0.5 * x);
}

double chi_square_quantile(double df, double q) {
  if (!(q > 0.0) || !(q < 1.0)) {
    throw ValidationError("quantile level must lie in (0,1)");
  }
  double lo = 0.0;
  double hi = df + 20.0 * std::sqrt(2.0 * df) + 20.0;
  while (chi_square_cdf(hi, df) < q) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (chi_square_cdf(mid, df) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double kolmogorov_ccdf(double t) {
  if (t <= 1e-4) return 1.0;
  if (t < 1.0) {
    // Jacobi theta dual form; converges fast for small t where the
    // alternating series does not.
    double sum = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double e =
          std::exp(-(2.0 * k - 1.0) * (2.0 * k - 1.0) * M_PI * M_PI /
                   (8.0 * t * t));
      sum += e;
      if (e < 1e-18) break;
    }
    return std::min(1.0, std::max(0.0, 1.0 - std::sqrt(2.0 * M_PI) / t * sum));
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

KsResult ks_test_normal(std::span<const double> samples, double variance) {
  if (!(variance > 0.0)) {
    throw ZeroPredictedVarianceError("predicted variance must be positive");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double sigma = std::sqrt(variance);
  const double inv_r = 1.0 / double(sorted.size());
  double stat = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    const double f = normal_cdf(sorted[k] / sigma);
    stat = std::max(stat, std::max((k + 1) * inv_r - f, f - k * inv_r));
  }
  KsResult res;
  res.statistic = stat;
  res.p_value = kolmogorov_ccdf(std::sqrt(double(sorted.size())) * stat);
  return res;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ValidationError("quantile of empty sample");
  const double h = (double(sorted.size()) - 1.0) * q;
  const std::size_t lo = std::size_t(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - double(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw ValidationError("variance needs two samples");
  long double mean = 0.0L;
  for (double x : xs) mean += x;
  mean /= xs.size();
  long double ss = 0.0L;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return double(ss / (xs.size() - 1));
}

CovarianceJackknife covariance_with_jackknife(std::span<const double> rows,
                                              std::size_t nrows,
                                              std::size_t dim) {
  if (nrows < 3) throw ValidationError("jackknife needs at least 3 rows");
  CovarianceJackknife out;
  out.covariance.assign(dim * dim, 0.0);
  out.standard_error.assign(dim * dim, 0.0);

  std::vector<long double> sum(dim, 0.0L);
  std::vector<long double> cross(dim * dim, 0.0L);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t a = 0; a < dim; ++a) {
      sum[a] += rows[r * dim + a];
      for (std::size_t b = a; b < dim; ++b) {
        cross[a * dim + b] += (long double)rows[r * dim + a] * rows[r * dim + b];
      }
    }
  }
  const long double r_all = nrows;
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a; b < dim; ++b) {
      const long double cov =
          (cross[a * dim + b] - sum[a] * sum[b] / r_all) / (r_all - 1.0L);
      out.covariance[a * dim + b] = double(cov);
      out.covariance[b * dim + a] = double(cov);
    }
  }

  // Leave-one-out estimates from the same sufficient statistics.
  std::vector<long double> loo(nrows);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a; b < dim; ++b) {
      long double mean_loo = 0.0L;
      for (std::size_t r = 0; r < nrows; ++r) {
        const long double xa = rows[r * dim + a];
        const long double xb = rows[r * dim + b];
        const long double s_ab = cross[a * dim + b] - xa * xb;
        const long double s_a = sum[a] - xa;
        const long double s_b = sum[b] - xb;
        const long double m = r_all - 1.0L;
        loo[r] = (s_ab - s_a * s_b / m) / (m - 1.0L);
        mean_loo += loo[r];
      }
      mean_loo /= r_all;
      long double ss = 0.0L;
      for (std::size_t r = 0; r < nrows; ++r) {
        ss += (loo[r] - mean_loo) * (loo[r] - mean_loo);
      }
      const double se = double(std::sqrt((r_all - 1.0L) / r_all * ss));
      out.standard_error[a * dim + b] = se;
      out.standard_error[b * dim + a] = se;
    }
  }
  return out;
}

double bootstrap_quantile_se(std::span<const double> samples, double q,
                             int resamples, std::uint64_t seed) {
  if (samples.size() < 2 || resamples < 2) {
    throw ValidationError("bootstrap needs data and resamples");
  }
  Rng rng(seed);
  std::vector<double> resample(samples.size());
  std::vector<double> stats(resamples);
  for (int b = 0; b < resamples; ++b) {
    for (auto& v : resample) v = samples[rng.bounded(samples.size())];
    std::sort(resample.begin(), resample.end());
    stats[b] = quantile_sorted(resample, q);
  }
  return std::sqrt(sample_variance(stats));
}

}  // namespace dpa
