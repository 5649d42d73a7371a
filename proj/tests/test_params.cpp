#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dpa/params.hpp"
#include "dpa/rng.hpp"

using namespace dpa;

TEST_CASE("validate accepts the symmetric reference set") {
  const auto p = ModelParams::validate(0.5, 0.5, 1.0, 1.0);
  CHECK(p.c1() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.c2() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p.gamma() == 0.5);
}

TEST_CASE("validate rejects bad inputs with typed errors") {
  CHECK_THROWS_AS(ModelParams::validate(0.3, 0.7, 0.0, 1.0),
                  NonPositiveParameterError);
  CHECK_THROWS_AS(ModelParams::validate(0.3, 0.7, 1.0, -2.0),
                  NonPositiveParameterError);
  CHECK_THROWS_AS(ModelParams::validate(1.0, 0.0, 1.0, 1.0),
                  DegenerateCaseError);
  CHECK_THROWS_AS(ModelParams::validate(0.3, 0.6, 1.0, 1.0),
                  AlphaGammaSumError);
  // 1e-12 tolerance absorbs decimal drift
  CHECK_NOTHROW(ModelParams::validate(0.3, 0.7 + 4e-13, 1.0, 1.0));
}

TEST_CASE("delta values for the reference set") {
  const auto p = ModelParams::validate(0.5, 0.5, 1.0, 1.0);
  CHECK(p.delta(0, 1) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(p.delta(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.delta(0, 0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("delta(1,1) == 1 and exact increments for random parameters") {
  Rng rng(12345);
  for (int rep = 0; rep < 200; ++rep) {
    const double alpha = 0.05 + 0.9 * rng.next_double();
    const double lambda = 0.05 + 5.0 * rng.next_double();
    const double mu = 0.05 + 5.0 * rng.next_double();
    const auto p = ModelParams::validate(alpha, 1.0 - alpha, lambda, mu);
    // c1(1+lambda) + c2(1+mu) = alpha + gamma = 1 identically
    CHECK(p.delta(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        CHECK(p.delta(i + 1, j) - p.delta(i, j) ==
              doctest::Approx(p.c1()).epsilon(1e-12));
        CHECK(p.delta(i, j + 1) - p.delta(i, j) ==
              doctest::Approx(p.c2()).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("index window excludes (0,0) and keeps lexicographic order") {
  const auto w = IndexWindow::make(2, 2);
  CHECK(w.size() == 8);  // (I+1)(O+1) - 1
  for (const auto& c : w.coords) CHECK((c.i != 0 || c.j != 0));
  for (std::size_t k = 1; k < w.coords.size(); ++k) {
    CHECK(w.coords[k - 1] < w.coords[k]);
  }
  CHECK(w.coords.front() == DegreePair{0, 1});
  CHECK(w.coords.back() == DegreePair{2, 2});

  CHECK_THROWS_AS(IndexWindow::make(0, 0), ValidationError);
  CHECK(IndexWindow::make(0, 1).size() == 1);
}
