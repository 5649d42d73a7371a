#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dpa {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF), u in (0,1).
double normal_quantile(double u);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// Chi-square CDF with df degrees of freedom.
double chi_square_cdf(double x, double df);

/// Chi-square quantile, q in (0,1).
double chi_square_quantile(double df, double q);

/// Complementary CDF of the Kolmogorov distribution,
/// Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
double kolmogorov_ccdf(double t);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// Two-sided KS statistic of samples against the centered normal with the
/// given variance; p-value from the asymptotic Kolmogorov distribution.
KsResult ks_test_normal(std::span<const double> samples, double variance);

/// Empirical quantile with linear interpolation between order statistics
/// (h = (n-1) q). Input must be sorted.
double quantile_sorted(std::span<const double> sorted, double q);

/// Sample variance (n-1 denominator).
double sample_variance(std::span<const double> xs);

/// Leave-one-out jackknife standard errors for every entry of the sample
/// covariance matrix of rows(nrows x dim, row-major). Returns dim x dim
/// row-major SEs alongside the covariance itself.
struct CovarianceJackknife {
  std::vector<double> covariance;
  std::vector<double> standard_error;
};
CovarianceJackknife covariance_with_jackknife(std::span<const double> rows,
                                              std::size_t nrows,
                                              std::size_t dim);

/// Bootstrap standard error of an empirical quantile (B resamples with the
/// given seed; deterministic).
double bootstrap_quantile_se(std::span<const double> samples, double q,
                             int resamples, std::uint64_t seed);

}  // namespace dpa
