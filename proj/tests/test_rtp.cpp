#include <cmath>
#include <random>

#include "doctest.h"
#include "qre/rtp.hpp"

using namespace qre;

namespace {

double h2(double x) {  // direct evaluation, independent of the module
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

}  // namespace

TEST_CASE("binary_entropy") {
  CHECK(rtp::binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rtp::binary_entropy(0.0) == 0.0);
  CHECK(rtp::binary_entropy(1.0) == 0.0);
  CHECK(rtp::binary_entropy(0.75) == doctest::Approx(h2(0.75)).epsilon(1e-15));
  CHECK_THROWS_AS(rtp::binary_entropy(-0.01), domain_error);
  CHECK_THROWS_AS(rtp::binary_entropy(1.01), domain_error);

  SUBCASE("symmetry h(x) = h(1-x)") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double x = unit(rng);
      CHECK(std::abs(rtp::binary_entropy(x) - rtp::binary_entropy(1.0 - x)) < 1e-14);
    }
  }
}

TEST_CASE("nonequilibrium monotone") {
  SUBCASE("maximally mixed is free") {
    for (int d : {2, 3, 5}) {
      const DensityOperator mixed(CMatrix::Identity(d, d) / static_cast<double>(d));
      CHECK(std::abs(rtp::nonequilibrium(mixed)) < 1e-12);
    }
  }
  SUBCASE("pure states are maximal") {
    for (int d : {2, 4}) {
      const DensityOperator pure(PureState::basis(d, 0).projector());
      CHECK(rtp::nonequilibrium(pure) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("depolarized qubit at 0.75") {
    const DensityOperator rho = depolarized_state(PureState::basis(2, 0), 0.75);
    CHECK(rtp::nonequilibrium(rho) == doctest::Approx(1.0 - h2(0.75)).epsilon(1e-12));
  }
}

TEST_CASE("nonequilibrium_closed") {
  CHECK(rtp::nonequilibrium_closed(1.0, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(rtp::nonequilibrium_closed(1.0, 5) == doctest::Approx(std::log2(5.0)).epsilon(1e-15));
  CHECK(std::abs(rtp::nonequilibrium_closed(0.5, 2)) < 1e-15);
  CHECK(std::abs(rtp::nonequilibrium_closed(1.0 / 3.0, 3)) < 1e-14);
  CHECK(rtp::nonequilibrium_closed(0.75, 2) == doctest::Approx(1.0 - h2(0.75)).epsilon(1e-12));
  CHECK_THROWS_AS(rtp::nonequilibrium_closed(0.2, 2), domain_error);

  SUBCASE("agrees with the eigendecomposition route") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const int d = 2 + static_cast<int>(rng() % 4);  // 2..5
      const double f = 1.0 / d + (1.0 - 1.0 / d) * (0.02 + 0.97 * unit(rng));
      const PureState psi = haar_random_pure(d, rng);
      const double via_eig =
          std::log2(static_cast<double>(d)) * rtp::nonequilibrium(depolarized_state(psi, f));
      CHECK(std::abs(rtp::nonequilibrium_closed(f, d) - via_eig) <= 1e-10);
    }
  }
}

TEST_CASE("rtp equivalent_m") {
  const Ensemble ref{1000.0, 0.75, 2};

  CHECK(rtp::equivalent_m(ref, ref.f) == doctest::Approx(ref.n).epsilon(1e-12));

  // Hand computation: 1000 (1 - h(0.75)) / (1 - h(g)).
  CHECK(rtp::equivalent_m(ref, 1.0)
        == doctest::Approx(1000.0 * (1.0 - h2(0.75))).epsilon(1e-12));
  CHECK(rtp::equivalent_m(ref, 1.0) == doctest::Approx(188.72).epsilon(1e-4));
  CHECK(rtp::equivalent_m(ref, 0.65)
        == doctest::Approx(1000.0 * (1.0 - h2(0.75)) / (1.0 - h2(0.65))).epsilon(1e-12));
  CHECK(rtp::equivalent_m(ref, 0.65) == doctest::Approx(2862.4).epsilon(1e-4));

  SUBCASE("singularity at g = 1/d carries the boundary") {
    try {
      rtp::equivalent_m(ref, 0.5);
      FAIL("expected singularity_error");
    } catch (const singularity_error& e) {
      CHECK(e.boundary() == doctest::Approx(0.5));
      CHECK(e.from_above());
    }
    CHECK_THROWS_AS(rtp::equivalent_m(ref, 0.3), singularity_error);
    CHECK_THROWS_AS(rtp::equivalent_m(ref, 1.2), domain_error);
  }

  SUBCASE("exchange symmetry") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
      const int d = 2 + static_cast<int>(rng() % 3);
      const double f = 1.0 / d + (1.0 - 1.0 / d) * (0.05 + 0.94 * unit(rng));
      const double g = 1.0 / d + (1.0 - 1.0 / d) * (0.05 + 0.94 * unit(rng));
      const double n = 1.0 + 9999.0 * unit(rng);
      const double m = rtp::equivalent_m({n, f, d}, g);
      const double back = rtp::equivalent_m({m, g, d}, f);
      CHECK(std::abs(back - n) <= 1e-9 * n);
    }
  }

  SUBCASE("strictly decreasing in g") {
    double prev = rtp::equivalent_m(ref, 0.55);
    for (double g = 0.60; g <= 1.0; g += 0.05) {
      const double m = rtp::equivalent_m(ref, g);
      CHECK(m < prev);
      prev = m;
    }
  }

  SUBCASE("conservation n I(f) = m I(g) along the curve") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const double g = 0.52 + 0.48 * unit(rng);
      const double m = rtp::equivalent_m(ref, g);
      const double lhs = ref.n * rtp::nonequilibrium_closed(ref.f, 2);
      const double rhs = m * rtp::nonequilibrium_closed(g, 2);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * lhs);
    }
  }
}

TEST_CASE("rtp curve") {
  const Ensemble ref{1000.0, 0.75, 2};

  SUBCASE("single point grid") {
    const EquivalenceCurve c = rtp::curve(ref, {0.75});
    REQUIRE(c.points.size() == 1);
    CHECK(c.points[0].g == 0.75);
    CHECK(c.points[0].m == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(c.task == Task::rtp);
  }
  SUBCASE("two point example") {
    const EquivalenceCurve c = rtp::curve(ref, {0.65, 1.0});
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0].m == doctest::Approx(2862.4).epsilon(1e-4));
    CHECK(c.points[1].m == doctest::Approx(188.72).epsilon(1e-4));
  }
  SUBCASE("empty grid rejected") {
    CHECK_THROWS_AS(rtp::curve(ref, {}), domain_error);
  }
  SUBCASE("points at the singular edge are truncated, not errors") {
    const EquivalenceCurve c = rtp::curve(ref, {0.5005, 0.7, 0.9});
    CHECK(c.truncated == 1);
    CHECK(c.points.size() == 2);
    CHECK(c.singular_g == doctest::Approx(0.5));
  }
  SUBCASE("higher d needs fewer copies near its singular edge") {
    // The d = 2 requirement blows up toward g = 1/2 while d = 3 stays finite,
    // so below the reference fidelity the d = 3 curve runs underneath.
    const Ensemble ref3{1000.0, 0.75, 3};
    for (double g : {0.55, 0.6, 0.65, 0.7}) {
      CHECK(rtp::equivalent_m(ref3, g) < rtp::equivalent_m(ref, g));
    }
    // Both pass through the shared reference point.
    CHECK(rtp::equivalent_m(ref3, 0.75) == doctest::Approx(1000.0).epsilon(1e-12));
  }
}
