#pragma once

#include <vector>

#include "qre/core.hpp"

// Quantum Fisher information of the depolarized qubit model, the optimal
// mean-squared-Bures-distance floor for state estimation, and the
// equal-estimation-error copy-count curve.
namespace qre::qst {

// QFIM in Bloch parameters (theta, phi). Diagonal for the depolarized model.
struct Qfim2x2 {
  double theta_theta = 0.0;
  double phi_phi = 0.0;
  double theta_phi = 0.0;

  Eigen::Matrix2d matrix() const;
};

// diag(lambda^2, lambda^2 sin^2 theta) with lambda = 2f - 1.
Qfim2x2 qfim_closed(double theta, double f);

// Finite-difference oracle: builds d(rho)/d(theta), d(rho)/d(phi) by central
// differences, solves the Lyapunov equation for each symmetric logarithmic
// derivative in the eigenbasis of rho, and assembles tr(rho {L_a, L_b})/2.
// Restricted to f < 1 (full-rank rho) and theta away from the poles.
Qfim2x2 qfim_numeric(double theta, double phi, double f, double step = 1e-5);

// Bures metric for a pure qubit in Bloch parameters: diag(1, sin^2 theta)/4.
Eigen::Matrix2d bures_metric_pure(double theta);

// Floor on the mean squared Bures distance of any estimate of the pure state
// from the ensemble's copies: 1 / (4 n (2f - 1)^2).
double gill_massar_bound(const Ensemble& ens);

// Copy count m with (m, g) matching ref's estimation-error floor:
// m = ref.n ((2F-1)/(2g-1))^2.
double equivalent_m(const Ensemble& ref, double g);

EquivalenceCurve curve(const Ensemble& ref, const std::vector<double>& g_grid,
                       double singular_margin = 1e-3);

}  // namespace qre::qst
