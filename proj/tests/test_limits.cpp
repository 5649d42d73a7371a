#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dpa/exact.hpp"
#include "dpa/limits.hpp"

using namespace dpa;

namespace {
const ModelParams kRef = ModelParams::validate(0.5, 0.5, 1.0, 1.0);
}

TEST_CASE("hand-evaluated entries of the limiting distribution") {
  const auto g = p_grid(kRef, 8, 8);
  CHECK(g.at(0, 1) == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK(g.at(1, 0) == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK(g.at(1, 1) == doctest::Approx(1.0 / 14.0).epsilon(1e-14));
  CHECK(g.at(2, 0) == doctest::Approx(1.0 / 14.0).epsilon(1e-14));
  CHECK(g.at(0, 2) == doctest::Approx(1.0 / 14.0).epsilon(1e-14));
  CHECK(g.at(2, 1) == doctest::Approx(1.0 / 42.0).epsilon(1e-14));
  CHECK(g.at(0, 0) == 0.0);
  CHECK(g.at(-1, 3) == 0.0);
  CHECK(g.at(3, 9) == 0.0);  // outside the grid reads as zero
}

TEST_CASE("entries positive away from (0,0)") {
  const auto g = p_grid(ModelParams::validate(0.27, 0.73, 2.1, 0.4), 12, 12);
  for (int i = 0; i <= 12; ++i) {
    for (int j = 0; j <= 12; ++j) {
      if (i == 0 && j == 0) continue;
      CHECK(g.at(i, j) > 0.0);
    }
  }
}

TEST_CASE("mass and first moments climb toward 1 with the grid") {
  const auto g250 = p_grid(kRef, 250, 250);
  const auto g500 = p_grid(kRef, 500, 500);
  const auto g1000 = p_grid(kRef, 1000, 1000);
  CHECK(g250.total_mass < g500.total_mass);
  CHECK(g500.total_mass < g1000.total_mass);
  CHECK(g1000.total_mass >= 0.999);
  CHECK(g1000.total_mass <= 1.0 + 1e-12);
  CHECK(g250.mean_i < g500.mean_i);
  CHECK(g500.mean_i < g1000.mean_i);
  CHECK(g1000.mean_i >= 0.999);
  CHECK(g1000.mean_j >= 0.999);
}

TEST_CASE("envelope arithmetic") {
  const double e2 = std::exp(2.0);
  CHECK(concentration_envelope(e2, 1.0) ==
        doctest::Approx(std::sqrt(2.0) / std::exp(1.0)).epsilon(1e-14));
  CHECK(concentration_envelope(1000.0, 0.0) == 0.0);
  for (int n = 3; n < 2000; n += 7) {
    CHECK(concentration_envelope(double(n), 5.0) >
          concentration_envelope(double(n + 1), 5.0));
  }
  CHECK_THROWS_AS(concentration_envelope(1.5, 1.0), ValidationError);
}

TEST_CASE("expected counts stay within a constant of n * p") {
  // small-n slice of the full deviation bound (acceptance runs 1e5)
  const auto g = p_grid(kRef, 4, 4);
  NuRecursion nu(kRef, 3, 3);
  double worst = 0.0;
  for (int n = 1; n <= 10000; ++n) {
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 3; ++j) {
        worst = std::max(worst,
                         std::fabs(nu.at(i, j) - double(n) * g.at(i, j)));
      }
    }
    nu.advance();
  }
  CHECK(worst <= 5.0);
}
