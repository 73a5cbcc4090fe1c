#pragma once

#include <string>
#include <vector>

#include "qre/core.hpp"

// Leading-order purification infidelity, the separation curve between the
// necessity and sufficiency regions, and the six-region comparison verdict.
namespace qre::purification {

enum class Region { I, II, III, IV, V, VI };

// How strong the favored side's claim is. Regions III/IV are definitive,
// II/V hold by a sufficient condition, I/VI only pass a necessary condition.
enum class Strength { definitive, sufficient, necessary_only, indeterminate };

enum class Favored { reference, offer, neither };

std::string to_string(Region r);
std::string to_string(Strength s);
std::string to_string(Favored f);

struct RegionVerdict {
  Region region = Region::III;
  Strength strength = Strength::indeterminate;
  Favored favored = Favored::neither;
  bool on_copy_line = false;         // offer.n == ref.n
  bool on_fidelity_line = false;     // offer.f == ref.f
  bool on_separation_curve = false;  // offer.n == separation_m(ref, offer.f)
  double separation_m = 0.0;         // threshold at the offer's fidelity
};

// Leading-order infidelity after distilling one copy from the ensemble:
// (1/n) (1 - 1/d) (1 - f) / (2f - 1)^2. Zero iff f = 1.
double infidelity(const Ensemble& ens);

// Copy count m making (m, g) match ref's purification infidelity at leading
// order: m = ref.n ((2F-1)/(2g-1))^2 (1-g)/(1-F). Returns 0 at g = 1 (one
// perfect copy already outperforms any noisy ensemble). Requires ref.f < 1.
double separation_m(const Ensemble& ref, double g);

// Physical copy count for a verdict: ceil of separation_m, floored at one.
double required_copies(const Ensemble& ref, double g);

// Places `other` into one of the six comparison regions relative to `ref`.
// Points within rel_tol of the m = n line, the g = f line or the separation
// curve carry boundary flags and a downgraded strength.
RegionVerdict classify_region(const Ensemble& ref, const Ensemble& other, double rel_tol = 1e-9);

// Samples separation_m. Marked as a sufficiency/necessity separation rather
// than a strict equivalence curve.
EquivalenceCurve curve(const Ensemble& ref, const std::vector<double>& g_grid,
                       double singular_margin = 1e-3);

}  // namespace qre::purification
