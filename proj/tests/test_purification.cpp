#include <cmath>
#include <random>

#include "doctest.h"
#include "qre/purification.hpp"

using namespace qre;
using purification::Favored;
using purification::Region;
using purification::Strength;

TEST_CASE("purification infidelity") {
  CHECK(purification::infidelity({500.0, 1.0, 2}) == 0.0);
  CHECK(purification::infidelity({1000.0, 0.75, 2}) == doctest::Approx(0.0005).epsilon(1e-12));
  CHECK(purification::infidelity({2000.0, 0.75, 2}) == doctest::Approx(0.00025).epsilon(1e-12));
  CHECK_THROWS_AS(purification::infidelity({1000.0, 0.5, 2}), singularity_error);
  CHECK_THROWS_AS(purification::infidelity({0.5, 0.75, 2}), domain_error);

  SUBCASE("decreasing in both n and f") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double n = 2.0 + 500.0 * unit(rng);
      const double f = 0.55 + 0.40 * unit(rng);
      const double base = purification::infidelity({n, f, 2});
      CHECK(purification::infidelity({n * 1.5, f, 2}) < base);
      CHECK(purification::infidelity({n, f + 0.02, 2}) < base);
    }
  }
  SUBCASE("general dimension factor (1 - 1/d)") {
    const double d2 = purification::infidelity({1000.0, 0.75, 2});
    const double d4 = purification::infidelity({1000.0, 0.75, 4});
    CHECK(d4 / d2 == doctest::Approx(1.5).epsilon(1e-12));
  }
}

TEST_CASE("separation_m") {
  const Ensemble ref{1000.0, 0.75, 2};
  CHECK(purification::separation_m(ref, 0.75) == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(purification::separation_m(ref, 0.9) == doctest::Approx(156.25).epsilon(1e-9));
  CHECK(purification::separation_m(ref, 0.65)
        == doctest::Approx(3888.888888888889).epsilon(1e-9));
  CHECK(purification::separation_m(ref, 1.0) == 0.0);
  CHECK_THROWS_AS(purification::separation_m(ref, 0.5), singularity_error);
  CHECK_THROWS_AS(purification::separation_m({1000.0, 1.0, 2}, 0.9), domain_error);

  SUBCASE("locked to the infidelity formula: m solves delta(m, g) = delta(ref)") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
      const Ensemble r{1.0 + 5000.0 * unit(rng), 0.55 + 0.44 * unit(rng), 2};
      const double g = 0.55 + 0.44 * unit(rng);
      const double m = purification::separation_m(r, g);
      const double delta_ref = purification::infidelity(r);
      const double delta_m = purification::infidelity({m, g, 2});
      CHECK(std::abs(delta_m - delta_ref) <= 1e-9 * delta_ref);
    }
  }
}

TEST_CASE("required_copies clamps to one") {
  const Ensemble ref{1000.0, 0.75, 2};
  CHECK(purification::required_copies(ref, 1.0) == 1.0);
  CHECK(purification::required_copies(ref, 0.9999) == 1.0);
  CHECK(purification::required_copies(ref, 0.9) == 157.0);  // ceil(156.25)
}

TEST_CASE("classify_region quadrants and separation split") {
  const Ensemble ref{1000.0, 0.75, 2};

  SUBCASE("more copies at lower fidelity, above the separation: offer sufficient") {
    const auto v = purification::classify_region(ref, {10000.0, 0.65, 2});
    CHECK(v.region == Region::II);
    CHECK(v.strength == Strength::sufficient);
    CHECK(v.favored == Favored::offer);
    CHECK(v.separation_m == doctest::Approx(3888.888888888889).epsilon(1e-9));
    CHECK_FALSE(v.on_copy_line);
    CHECK_FALSE(v.on_separation_curve);
  }
  SUBCASE("fewer copies at higher fidelity, below the separation: reference sufficient") {
    // 100 < separation_m(0.9) = 156.25: the offer misses the copy count that
    // is necessary for it to purify better, so the reference wins outright.
    const auto v = purification::classify_region(ref, {100.0, 0.90, 2});
    CHECK(v.region == Region::V);
    CHECK(v.strength == Strength::sufficient);
    CHECK(v.favored == Favored::reference);
    CHECK(v.separation_m == doctest::Approx(156.25).epsilon(1e-9));
  }
  SUBCASE("more copies and higher fidelity: offer definitive") {
    const auto v = purification::classify_region(ref, {2000.0, 0.80, 2});
    CHECK(v.region == Region::III);
    CHECK(v.strength == Strength::definitive);
    CHECK(v.favored == Favored::offer);
  }
  SUBCASE("fewer copies and lower fidelity: reference definitive") {
    const auto v = purification::classify_region(ref, {500.0, 0.70, 2});
    CHECK(v.region == Region::IV);
    CHECK(v.strength == Strength::definitive);
    CHECK(v.favored == Favored::reference);
  }
  SUBCASE("between the copy line and the separation curve: necessary only") {
    // g < f and n < m < separation: the offer passes its necessary condition
    // but not the sufficient one.
    const auto v = purification::classify_region(ref, {2000.0, 0.65, 2});
    CHECK(v.region == Region::I);
    CHECK(v.strength == Strength::necessary_only);
    CHECK(v.favored == Favored::neither);
    const auto w = purification::classify_region(ref, {500.0, 0.9, 2});
    CHECK(w.region == Region::VI);
    CHECK(w.strength == Strength::necessary_only);
  }
  SUBCASE("same ensemble flags every boundary") {
    const auto v = purification::classify_region(ref, ref);
    CHECK(v.on_copy_line);
    CHECK(v.on_fidelity_line);
    CHECK(v.on_separation_curve);
    CHECK(v.strength == Strength::indeterminate);
    CHECK(v.favored == Favored::neither);
  }
  SUBCASE("a single boundary downgrades the strength") {
    const auto v = purification::classify_region(ref, {1000.0, 0.80, 2});  // on m = n
    CHECK(v.on_copy_line);
    CHECK(v.region == Region::III);
    CHECK(v.strength == Strength::necessary_only);
    const auto w = purification::classify_region(ref, {156.25, 0.90, 2});  // on separation
    CHECK(w.on_separation_curve);
    CHECK(w.strength != Strength::definitive);
    CHECK(w.strength != Strength::sufficient);
  }
  SUBCASE("domain checks") {
    CHECK_THROWS_AS(purification::classify_region(ref, {100.0, 0.4, 2}), domain_error);
    CHECK_THROWS_AS(purification::classify_region(ref, {100.0, 0.9, 3}), domain_error);
  }
}

TEST_CASE("classify_region swap antisymmetry") {
  // Swapping the two ensembles exchanges the favored side: III <-> IV,
  // II <-> V, I <-> VI.
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto swapped = [](Region r) {
    switch (r) {
      case Region::I: return Region::VI;
      case Region::II: return Region::V;
      case Region::III: return Region::IV;
      case Region::IV: return Region::III;
      case Region::V: return Region::II;
      case Region::VI: return Region::I;
    }
    return Region::I;
  };
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Ensemble a{1.0 + 5000.0 * unit(rng), 0.55 + 0.44 * unit(rng), 2};
    const Ensemble b{1.0 + 5000.0 * unit(rng), 0.55 + 0.44 * unit(rng), 2};
    const auto ab = purification::classify_region(a, b);
    if (ab.on_copy_line || ab.on_fidelity_line || ab.on_separation_curve) continue;
    const auto ba = purification::classify_region(b, a);
    CHECK(ba.region == swapped(ab.region));
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("purification curve") {
  const Ensemble ref{1000.0, 0.75, 2};

  SUBCASE("passes through the reference and samples the separation") {
    const EquivalenceCurve c = purification::curve(ref, {0.65, 0.75, 0.9});
    REQUIRE(c.points.size() == 3);
    CHECK(c.points[0].m == doctest::Approx(3888.888888888889).epsilon(1e-9));
    CHECK(c.points[1].m == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(c.points[2].m == doctest::Approx(156.25).epsilon(1e-9));
    CHECK(c.separation);
    CHECK(c.task == Task::purification);
  }
  SUBCASE("endpoint g = 1 reaches zero copies on the raw curve") {
    const EquivalenceCurve c = purification::curve(ref, {0.9, 1.0});
    CHECK(c.points.back().m == 0.0);
  }
  SUBCASE("strictly decreasing in g") {
    const EquivalenceCurve c =
        purification::curve(ref, {0.55, 0.65, 0.75, 0.85, 0.95, 1.0});
    for (std::size_t k = 0; k + 1 < c.points.size(); ++k) {
      CHECK(c.points[k].m > c.points[k + 1].m);
    }
  }
}
