#include "qre/purification.hpp"

#include <algorithm>
#include <cmath>

namespace qre::purification {

std::string to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::VI: return "VI";
  }
  return "?";
}

std::string to_string(Strength s) {
  switch (s) {
    case Strength::definitive: return "definitive";
    case Strength::sufficient: return "sufficient";
    case Strength::necessary_only: return "necessary-only";
    case Strength::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(Favored f) {
  switch (f) {
    case Favored::reference: return "reference";
    case Favored::offer: return "offer";
    case Favored::neither: return "neither";
  }
  return "?";
}

double infidelity(const Ensemble& ens) {
  if (ens.d < 2) {
    throw domain_error("purification::infidelity: need d >= 2");
  }
  if (!(ens.n >= 1.0)) {
    throw domain_error("purification::infidelity: need n >= 1");
  }
  if (ens.f > 1.0) {
    throw domain_error("purification::infidelity: fidelity must lie in (0.5, 1]");
  }
  if (ens.f <= 0.5) {
    throw singularity_error("purification::infidelity: diverges as f -> 1/2 from above "
                            "((2f-1)^2 -> 0)", 0.5, true);
  }
  const double lambda = 2.0 * ens.f - 1.0;
  return (1.0 / ens.n) * (1.0 - 1.0 / ens.d) * (1.0 - ens.f) / (lambda * lambda);
}

double separation_m(const Ensemble& ref, double g) {
  if (!(ref.f > 0.5 && ref.f < 1.0)) {
    throw domain_error("purification::separation_m: reference fidelity must lie in (0.5, 1)");
  }
  if (g > 1.0) {
    throw domain_error("purification::separation_m: fidelity must lie in (0.5, 1]");
  }
  if (g <= 0.5) {
    throw singularity_error("purification::separation_m: copy count diverges as g -> 1/2 "
                            "from above", 0.5, true);
  }
  const double ratio = (2.0 * ref.f - 1.0) / (2.0 * g - 1.0);
  return ref.n * ratio * ratio * (1.0 - g) / (1.0 - ref.f);
}

double required_copies(const Ensemble& ref, double g) {
  return std::ceil(std::max(separation_m(ref, g), 1.0));
}

RegionVerdict classify_region(const Ensemble& ref, const Ensemble& other, double rel_tol) {
  if (ref.d != other.d) {
    throw domain_error("purification::classify_region: dimension mismatch");
  }
  for (const Ensemble* e : {&ref, &other}) {
    if (!(e->f > 0.5 && e->f < 1.0)) {
      throw domain_error("purification::classify_region: fidelities must lie in (0.5, 1)");
    }
  }
  const double n = ref.n, f = ref.f;
  const double m = other.n, g = other.f;

  RegionVerdict v;
  v.separation_m = separation_m(ref, g);
  v.on_copy_line = std::abs(m - n) <= rel_tol * std::max({std::abs(m), std::abs(n), 1.0});
  v.on_fidelity_line = std::abs(g - f) <= rel_tol;
  v.on_separation_curve =
      std::abs(m - v.separation_m) <= rel_tol * std::max({std::abs(m), v.separation_m, 1.0});

  if (m >= n && g >= f) {
    v.region = Region::III;
  } else if (m <= n && g <= f) {
    v.region = Region::IV;
  } else if (m > n) {  // g < f: split by the separation curve
    v.region = (m >= v.separation_m) ? Region::II : Region::I;
  } else {             // m < n, g > f
    v.region = (m <= v.separation_m) ? Region::V : Region::VI;
  }

  switch (v.region) {
    case Region::III:
      v.strength = Strength::definitive;
      v.favored = Favored::offer;
      break;
    case Region::IV:
      v.strength = Strength::definitive;
      v.favored = Favored::reference;
      break;
    case Region::II:
      v.strength = Strength::sufficient;
      v.favored = Favored::offer;
      break;
    case Region::V:
      v.strength = Strength::sufficient;
      v.favored = Favored::reference;
      break;
    case Region::I:
    case Region::VI:
      v.strength = Strength::necessary_only;
      v.favored = Favored::neither;
      break;
  }

  // Boundary points never keep a definitive or sufficient claim.
  const bool on_boundary = v.on_copy_line || v.on_fidelity_line || v.on_separation_curve;
  if (v.on_copy_line && v.on_fidelity_line && v.on_separation_curve) {
    v.strength = Strength::indeterminate;
    v.favored = Favored::neither;
  } else if (on_boundary && v.strength != Strength::necessary_only) {
    v.strength = Strength::necessary_only;
  }
  return v;
}

EquivalenceCurve curve(const Ensemble& ref, const std::vector<double>& g_grid,
                       double singular_margin) {
  if (g_grid.empty()) {
    throw domain_error("purification::curve: empty fidelity grid");
  }
  EquivalenceCurve out;
  out.task = Task::purification;
  out.d = ref.d;
  out.singular_g = 0.5;
  out.separation = true;
  for (double g : g_grid) {
    if (!(g > 0.5 && g <= 1.0)) {
      throw domain_error("purification::curve: grid point outside (0.5, 1]");
    }
    if (g <= 0.5 + singular_margin) {
      ++out.truncated;
      continue;
    }
    out.points.push_back({g, separation_m(ref, g)});
  }
  if (out.points.empty()) {
    throw domain_error("purification::curve: all grid points truncated at the singular edge");
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.g < b.g; });
  return out;
}

}  // namespace qre::purification
