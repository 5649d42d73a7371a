#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "dpa/rng.hpp"
#include "dpa/stats.hpp"

using namespace dpa;

TEST_CASE("normal quantiles against reference values") {
  CHECK(normal_quantile(0.975) ==
        doctest::Approx(1.959963984540054).epsilon(1e-9));
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).scale(1).epsilon(1e-9));
  CHECK(normal_quantile(0.01) ==
        doctest::Approx(-2.3263478740408408).epsilon(1e-9));
  CHECK_THROWS_AS(normal_quantile(0.0), ValidationError);
}

TEST_CASE("regularized incomplete gamma against reference values") {
  CHECK(regularized_gamma_p(2.5, 3.0) ==
        doctest::Approx(0.6937810815867212).epsilon(1e-12));
  CHECK(regularized_gamma_p(0.5, 0.1) ==
        doctest::Approx(0.34527915398142317).epsilon(1e-12));
  CHECK(regularized_gamma_p(1.0, 0.0) == 0.0);
}

TEST_CASE("chi-square quantiles against reference values") {
  CHECK(chi_square_quantile(2, 0.5) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
  CHECK(chi_square_quantile(8, 0.5) ==
        doctest::Approx(7.344121497701794).epsilon(1e-9));
  CHECK(chi_square_quantile(8, 0.9) ==
        doctest::Approx(13.36156613651173).epsilon(1e-9));
  CHECK(chi_square_quantile(8, 0.99) ==
        doctest::Approx(20.090235029663233).epsilon(1e-9));
  CHECK(chi_square_quantile(15, 0.9) ==
        doctest::Approx(22.307129581578693).epsilon(1e-9));
}

TEST_CASE("kolmogorov tail against reference values") {
  CHECK(kolmogorov_ccdf(0.5) ==
        doctest::Approx(0.9639452436648751).epsilon(1e-12));
  CHECK(kolmogorov_ccdf(1.0) ==
        doctest::Approx(0.26999967167735456).epsilon(1e-12));
  CHECK(kolmogorov_ccdf(1.63) ==
        doctest::Approx(0.009846364888486529).epsilon(1e-12));
}

TEST_CASE("KS test behaviour") {
  SUBCASE("rejects constant samples decisively") {
    std::vector<double> constant(500, 5.0);
    const auto res = ks_test_normal(constant, 1.0);
    CHECK(res.statistic > 0.999);
    CHECK(res.p_value < 1e-10);
  }
  SUBCASE("zero predicted variance is an error") {
    std::vector<double> xs{0.1, -0.2};
    CHECK_THROWS_AS(ks_test_normal(xs, 0.0), ZeroPredictedVarianceError);
  }
  SUBCASE("p-values are calibrated under the null") {
    // self-test: samples drawn from the reference normal itself
    Rng rng(20240601);
    int below_5pct = 0;
    const int reps = 200;
    std::vector<double> xs(400);
    for (int rep = 0; rep < reps; ++rep) {
      for (auto& x : xs) {
        double u;
        do {
          u = rng.next_double();
        } while (u <= 0.0);
        x = 2.0 * normal_quantile(u);
      }
      if (ks_test_normal(xs, 4.0).p_value < 0.05) ++below_5pct;
    }
    const double fraction = double(below_5pct) / reps;
    CHECK(fraction >= 0.02);
    CHECK(fraction <= 0.10);
  }
}

TEST_CASE("sorted quantiles interpolate order statistics") {
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0, 5.0};
  CHECK(quantile_sorted(xs, 0.0) == 1.0);
  CHECK(quantile_sorted(xs, 1.0) == 5.0);
  CHECK(quantile_sorted(xs, 0.5) == 3.0);
  CHECK(quantile_sorted(xs, 0.25) == 2.0);
  CHECK(quantile_sorted(xs, 0.1) == doctest::Approx(1.4).epsilon(1e-15));
}

TEST_CASE("jackknife covariance agrees with the two-pass estimate") {
  Rng rng(88);
  const std::size_t nrows = 300, dim = 3;
  std::vector<double> rows(nrows * dim);
  for (std::size_t r = 0; r < nrows; ++r) {
    const double shared = rng.next_double();
    rows[r * dim + 0] = shared + 0.2 * rng.next_double();
    rows[r * dim + 1] = -shared + 0.3 * rng.next_double();
    rows[r * dim + 2] = rng.next_double();
  }
  const auto jk = covariance_with_jackknife(rows, nrows, dim);

  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      double ma = 0, mb = 0;
      for (std::size_t r = 0; r < nrows; ++r) {
        ma += rows[r * dim + a];
        mb += rows[r * dim + b];
      }
      ma /= nrows;
      mb /= nrows;
      double cov = 0;
      for (std::size_t r = 0; r < nrows; ++r) {
        cov += (rows[r * dim + a] - ma) * (rows[r * dim + b] - mb);
      }
      cov /= (nrows - 1);
      CHECK(jk.covariance[a * dim + b] ==
            doctest::Approx(cov).epsilon(1e-10));
      CHECK(jk.standard_error[a * dim + b] > 0.0);
    }
  }
}

TEST_CASE("bootstrap SE is deterministic in the seed and positive") {
  Rng rng(321);
  std::vector<double> xs(250);
  for (auto& x : xs) x = rng.next_double() * 3.0;
  const double a = bootstrap_quantile_se(xs, 0.9, 300, 777);
  const double b = bootstrap_quantile_se(xs, 0.9, 300, 777);
  CHECK(a == b);
  CHECK(a > 0.0);
  CHECK(bootstrap_quantile_se(xs, 0.9, 300, 778) != a);
}
