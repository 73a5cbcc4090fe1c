#pragma once

#include <vector>

#include "qre/core.hpp"

// Binary discrimination of two equally depolarized qubit states: Chernoff
// exponent closed forms, a brute-force matrix-power route, exact few-copy
// Helstrom errors, and the equal-error copy-count curve.
namespace qre::qcb {

// Two pure qubit states separated by Bloch angle theta, both depolarized to
// fidelity f in (0.5, 1]. Derived quantities are precomputed on construction.
struct DiscriminationPair {
  DiscriminationPair(double theta, double f);

  double theta;    // separation angle in [0, pi]
  double f;        // per-copy fidelity
  double alpha;    // cos(theta/2)
  double beta;     // sin(theta/2)
  double lambda;   // 2f - 1
  double p_plus;   // (1 + lambda)/2
  double p_minus;  // (1 - lambda)/2

  DensityOperator rho() const;    // depolarized |0>
  DensityOperator sigma() const;  // depolarized cos(theta/2)|0> + sin(theta/2)|1>
};

// tr(rho^s sigma^{1-s}) = alpha^2 + beta^2 (p+^s p-^{1-s} + p-^s p+^{1-s}).
double chernoff_quantity_closed(const DiscriminationPair& pair, double s);

// Same quantity by explicit matrix powers; agrees with the closed form on
// depolarized pairs and works for arbitrary states.
double chernoff_quantity_generic(const DensityOperator& rho, const DensityOperator& sigma,
                                 double s);

// Chernoff exponent in nats: -log(alpha^2 + 2 beta^2 sqrt(f (1-f))), the
// s = 1/2 minimum of the quantity above.
double xi_qcb(const DiscriminationPair& pair);

struct ChernoffMinimum {
  double s_star;    // grid minimizer
  double xi;        // -log of the grid minimum, nats
  bool degenerate;  // quantity constant in s (identical states); s_star meaningless
};

// Grid minimization of tr(rho^s sigma^{1-s}) over s in [0, 1].
ChernoffMinimum xi_qcb_numeric(const DensityOperator& rho, const DensityOperator& sigma,
                               int s_grid_size);

// exp(-n xi): the large-n error estimate used on equal-error curves.
double error_prob_estimate(double n, const DiscriminationPair& pair);

// Exact minimum discrimination error for n copies and equal priors:
// (1 - ||rho^(x)n - sigma^(x)n||_1 / 2) / 2.
double helstrom_exact(const DiscriminationPair& pair, int n, int max_dim = 256);

// Copy count m with (m, g) matching ref's error estimate at separation theta.
double equivalent_m(const Ensemble& ref, double g, double theta);

EquivalenceCurve curve(const Ensemble& ref, double theta, const std::vector<double>& g_grid,
                       double singular_margin = 1e-3);

}  // namespace qre::qcb
