#include "qre/qcb.hpp"

#include <algorithm>
#include <cmath>

namespace qre::qcb {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_fidelity(double f, const char* who) {
  if (!(f > 0.5 && f <= 1.0)) {
    throw domain_error(std::string(who) + ": fidelity must lie in (0.5, 1]");
  }
}

double log_chernoff_min(double f, double theta) {
  const double a2 = std::cos(theta / 2.0) * std::cos(theta / 2.0);
  const double b2 = 1.0 - a2;
  return std::log(a2 + 2.0 * b2 * std::sqrt(f * (1.0 - f)));
}

}  // namespace

DiscriminationPair::DiscriminationPair(double theta_in, double f_in) : theta(theta_in), f(f_in) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw domain_error("DiscriminationPair: theta must lie in [0, pi]");
  }
  require_fidelity(f, "DiscriminationPair");
  alpha = std::cos(theta / 2.0);
  beta = std::sin(theta / 2.0);
  lambda = 2.0 * f - 1.0;
  p_plus = (1.0 + lambda) / 2.0;
  p_minus = (1.0 - lambda) / 2.0;
}

DensityOperator DiscriminationPair::rho() const {
  return depolarized_state(PureState::basis(2, 0), f);
}

DensityOperator DiscriminationPair::sigma() const {
  CVector s(2);
  s[0] = alpha;
  s[1] = beta;
  return depolarized_state(PureState(std::move(s)), f);
}

double chernoff_quantity_closed(const DiscriminationPair& pair, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw domain_error("chernoff_quantity_closed: s must lie in [0, 1]");
  }
  const double pp = pair.p_plus, pm = pair.p_minus;
  return pair.alpha * pair.alpha +
         pair.beta * pair.beta *
             (std::pow(pp, s) * std::pow(pm, 1.0 - s) + std::pow(pm, s) * std::pow(pp, 1.0 - s));
}

double chernoff_quantity_generic(const DensityOperator& rho, const DensityOperator& sigma,
                                 double s) {
  if (rho.dim() != sigma.dim()) {
    throw domain_error("chernoff_quantity_generic: dimension mismatch");
  }
  const CMatrix prod = hermitian_power(rho.matrix(), s) * hermitian_power(sigma.matrix(), 1.0 - s);
  return prod.trace().real();
}

double xi_qcb(const DiscriminationPair& pair) {
  return -log_chernoff_min(pair.f, pair.theta);
}

ChernoffMinimum xi_qcb_numeric(const DensityOperator& rho, const DensityOperator& sigma,
                               int s_grid_size) {
  if (s_grid_size < 3) {
    throw domain_error("xi_qcb_numeric: grid size must be >= 3");
  }
  // Powers are evaluated from one eigendecomposition per state.
  EigSystem er = hermitian_eig(rho.matrix());
  EigSystem es = hermitian_eig(sigma.matrix());
  auto power = [](const EigSystem& e, double s) {
    RVector p(e.values.size());
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
      p[i] = std::pow(std::max(e.values[i], 0.0), s);
    }
    return CMatrix(e.vectors * p.asDiagonal() * e.vectors.adjoint());
  };

  double best = std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  double s_star = 0.0;
  for (int i = 0; i < s_grid_size; ++i) {
    const double s = static_cast<double>(i) / (s_grid_size - 1);
    const double q = (power(er, s) * power(es, 1.0 - s)).trace().real();
    if (q < best) {
      best = q;
      s_star = s;
    }
    worst = std::max(worst, q);
  }
  ChernoffMinimum out;
  out.degenerate = (worst - best) <= 1e-12 * std::max(worst, 1e-300);
  out.s_star = s_star;
  out.xi = -std::log(best);
  return out;
}

double error_prob_estimate(double n, const DiscriminationPair& pair) {
  if (!(n >= 1.0)) {
    throw domain_error("error_prob_estimate: need n >= 1");
  }
  return std::exp(-n * xi_qcb(pair));
}

double helstrom_exact(const DiscriminationPair& pair, int n, int max_dim) {
  const DensityOperator rn = tensor_power(pair.rho(), n, max_dim);
  const DensityOperator sn = tensor_power(pair.sigma(), n, max_dim);
  const EigSystem eig = hermitian_eig(rn.matrix() - sn.matrix());
  const double trace_norm = eig.values.cwiseAbs().sum();
  return 0.5 * (1.0 - 0.5 * trace_norm);
}

double equivalent_m(const Ensemble& ref, double g, double theta) {
  require_fidelity(ref.f, "qcb::equivalent_m (reference)");
  if (!(theta > 0.0 && theta <= kPi)) {
    throw domain_error("qcb::equivalent_m: theta = 0 is degenerate (identical states); "
                       "need theta in (0, pi]");
  }
  if (g > 1.0) {
    throw domain_error("qcb::equivalent_m: fidelity must lie in (0.5, 1]");
  }
  if (g <= 0.5) {
    throw singularity_error("qcb::equivalent_m: copy count diverges as g -> 1/2 from above",
                            0.5, true);
  }
  return ref.n * log_chernoff_min(ref.f, theta) / log_chernoff_min(g, theta);
}

EquivalenceCurve curve(const Ensemble& ref, double theta, const std::vector<double>& g_grid,
                       double singular_margin) {
  if (g_grid.empty()) {
    throw domain_error("qcb::curve: empty fidelity grid");
  }
  EquivalenceCurve out;
  out.task = Task::qcb;
  out.d = 2;
  out.theta = theta;
  out.singular_g = 0.5;
  for (double g : g_grid) {
    if (!(g > 0.5 && g <= 1.0)) {
      throw domain_error("qcb::curve: grid point outside (0.5, 1]");
    }
    if (g <= 0.5 + singular_margin) {
      ++out.truncated;
      continue;
    }
    out.points.push_back({g, equivalent_m(ref, g, theta)});
  }
  if (out.points.empty()) {
    throw domain_error("qcb::curve: all grid points truncated at the singular edge");
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.g < b.g; });
  return out;
}

}  // namespace qre::qcb
