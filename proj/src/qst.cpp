#include "qre/qst.hpp"

#include <algorithm>
#include <cmath>

namespace qre::qst {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_fidelity(double f, const char* who) {
  if (!(f > 0.5 && f <= 1.0)) {
    throw domain_error(std::string(who) + ": fidelity must lie in (0.5, 1]");
  }
}

CMatrix depolarized_bloch(double theta, double phi, double f) {
  return depolarized_state(PureState::bloch(theta, phi), f).matrix();
}

}  // namespace

Eigen::Matrix2d Qfim2x2::matrix() const {
  Eigen::Matrix2d m;
  m << theta_theta, theta_phi, theta_phi, phi_phi;
  return m;
}

Qfim2x2 qfim_closed(double theta, double f) {
  require_fidelity(f, "qst::qfim_closed");
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw domain_error("qst::qfim_closed: theta must lie in [0, pi]");
  }
  const double lambda = 2.0 * f - 1.0;
  const double s = std::sin(theta);
  Qfim2x2 out;
  out.theta_theta = lambda * lambda;
  out.phi_phi = lambda * lambda * s * s;
  out.theta_phi = 0.0;
  return out;
}

Qfim2x2 qfim_numeric(double theta, double phi, double f, double step) {
  if (!(f > 0.5 && f < 1.0)) {
    throw domain_error("qst::qfim_numeric: need f in (0.5, 1); the Lyapunov solution is "
                       "not unique off the support of a rank-deficient state");
  }
  if (!(step > 0.0)) {
    throw domain_error("qst::qfim_numeric: step must be positive");
  }
  if (theta < 10.0 * step || theta > kPi - 10.0 * step) {
    throw domain_error("qst::qfim_numeric: theta too close to a pole for the phi row");
  }

  const CMatrix rho = depolarized_bloch(theta, phi, f);
  const EigSystem eig = hermitian_eig(rho);

  const CMatrix d_theta =
      (depolarized_bloch(theta + step, phi, f) - depolarized_bloch(theta - step, phi, f)) /
      (2.0 * step);
  const CMatrix d_phi =
      (depolarized_bloch(theta, phi + step, f) - depolarized_bloch(theta, phi - step, f)) /
      (2.0 * step);

  // L solves d(rho) = (rho L + L rho)/2; in the eigenbasis L_ij = 2 D_ij / (w_i + w_j).
  auto sld = [&](const CMatrix& drho) {
    const CMatrix d_basis = eig.vectors.adjoint() * drho * eig.vectors;
    CMatrix l(2, 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        l(i, j) = 2.0 * d_basis(i, j) / (eig.values[i] + eig.values[j]);
      }
    }
    return CMatrix(eig.vectors * l * eig.vectors.adjoint());
  };

  const CMatrix l_theta = sld(d_theta);
  const CMatrix l_phi = sld(d_phi);
  auto entry = [&](const CMatrix& la, const CMatrix& lb) {
    return 0.5 * (rho * (la * lb + lb * la)).trace().real();
  };

  Qfim2x2 out;
  out.theta_theta = entry(l_theta, l_theta);
  out.phi_phi = entry(l_phi, l_phi);
  out.theta_phi = entry(l_theta, l_phi);
  return out;
}

Eigen::Matrix2d bures_metric_pure(double theta) {
  const double s = std::sin(theta);
  Eigen::Matrix2d g;
  g << 0.25, 0.0, 0.0, 0.25 * s * s;
  return g;
}

double gill_massar_bound(const Ensemble& ens) {
  require_fidelity(ens.f, "qst::gill_massar_bound");
  if (!(ens.n >= 1.0)) {
    throw domain_error("qst::gill_massar_bound: need n >= 1");
  }
  const double lambda = 2.0 * ens.f - 1.0;
  return 1.0 / (4.0 * ens.n * lambda * lambda);
}

double equivalent_m(const Ensemble& ref, double g) {
  require_fidelity(ref.f, "qst::equivalent_m (reference)");
  if (g > 1.0) {
    throw domain_error("qst::equivalent_m: fidelity must lie in (0.5, 1]");
  }
  if (g <= 0.5) {
    throw singularity_error("qst::equivalent_m: copy count diverges as g -> 1/2 from above",
                            0.5, true);
  }
  const double ratio = (2.0 * ref.f - 1.0) / (2.0 * g - 1.0);
  return ref.n * ratio * ratio;
}

EquivalenceCurve curve(const Ensemble& ref, const std::vector<double>& g_grid,
                       double singular_margin) {
  if (g_grid.empty()) {
    throw domain_error("qst::curve: empty fidelity grid");
  }
  EquivalenceCurve out;
  out.task = Task::qst;
  out.d = 2;
  out.singular_g = 0.5;
  for (double g : g_grid) {
    if (!(g > 0.5 && g <= 1.0)) {
      throw domain_error("qst::curve: grid point outside (0.5, 1]");
    }
    if (g <= 0.5 + singular_margin) {
      ++out.truncated;
      continue;
    }
    out.points.push_back({g, equivalent_m(ref, g)});
  }
  if (out.points.empty()) {
    throw domain_error("qst::curve: all grid points truncated at the singular edge");
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.g < b.g; });
  return out;
}

}  // namespace qre::qst
