#pragma once

#include <vector>

#include "qre/core.hpp"

// Informational nonequilibrium: how many pure d-level systems a depolarized
// ensemble distills, and the copy-count curve along which two ensembles
// distill equally many.
namespace qre::rtp {

// Binary Shannon entropy in bits, h(0) = h(1) = 0.
double binary_entropy(double x);

// Distillable pure d-level systems per copy: (log2 d - S(rho)) / log2 d, in [0, 1].
double nonequilibrium(const DensityOperator& rho);

// Closed form of the per-copy rate in bits for the isotropic model:
// log2(d (d-1)^(f-1)) - h(f). Accepts f in [1/d, 1]; zero at f = 1/d.
double nonequilibrium_closed(double f, int d);

// Copy count m with (m, g) matching ref's distillable total:
// m = ref.n * I(ref.f) / I(g). Diverges as g -> 1/d.
double equivalent_m(const Ensemble& ref, double g);

EquivalenceCurve curve(const Ensemble& ref, const std::vector<double>& g_grid,
                       double singular_margin = 1e-3);

}  // namespace qre::rtp
