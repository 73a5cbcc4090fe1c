#include "qre/rtp.hpp"

#include <algorithm>
#include <cmath>

namespace qre::rtp {

namespace {

void require_fidelity(double f, int d, const char* who) {
  if (d < 2) {
    throw domain_error(std::string(who) + ": need d >= 2");
  }
  if (!(f > 1.0 / d && f <= 1.0)) {
    throw domain_error(std::string(who) + ": fidelity must lie in (1/d, 1]");
  }
}

}  // namespace

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw domain_error("binary_entropy: argument must lie in [0, 1]");
  }
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double nonequilibrium(const DensityOperator& rho) {
  const double log2d = std::log2(static_cast<double>(rho.dim()));
  return (log2d - von_neumann_entropy(rho, 2.0)) / log2d;
}

double nonequilibrium_closed(double f, int d) {
  if (d < 2) {
    throw domain_error("nonequilibrium_closed: need d >= 2");
  }
  if (!(f >= 1.0 / d && f <= 1.0)) {
    throw domain_error("nonequilibrium_closed: fidelity must lie in [1/d, 1]");
  }
  return std::log2(static_cast<double>(d)) + (f - 1.0) * std::log2(static_cast<double>(d - 1)) -
         binary_entropy(f);
}

double equivalent_m(const Ensemble& ref, double g) {
  require_fidelity(ref.f, ref.d, "rtp::equivalent_m (reference)");
  if (g > 1.0) {
    throw domain_error("rtp::equivalent_m: fidelity must lie in (1/d, 1]");
  }
  const double boundary = 1.0 / ref.d;
  if (g <= boundary) {
    throw singularity_error("rtp::equivalent_m: copy count diverges as g -> 1/d from above",
                            boundary, true);
  }
  return ref.n * nonequilibrium_closed(ref.f, ref.d) / nonequilibrium_closed(g, ref.d);
}

EquivalenceCurve curve(const Ensemble& ref, const std::vector<double>& g_grid,
                       double singular_margin) {
  if (g_grid.empty()) {
    throw domain_error("rtp::curve: empty fidelity grid");
  }
  const double boundary = 1.0 / ref.d;
  EquivalenceCurve out;
  out.task = Task::rtp;
  out.d = ref.d;
  out.singular_g = boundary;
  for (double g : g_grid) {
    if (!(g > boundary && g <= 1.0)) {
      throw domain_error("rtp::curve: grid point outside (1/d, 1]");
    }
    if (g <= boundary + singular_margin) {
      ++out.truncated;  // too close to the divergence to be meaningful
      continue;
    }
    out.points.push_back({g, equivalent_m(ref, g)});
  }
  if (out.points.empty()) {
    throw domain_error("rtp::curve: all grid points truncated at the singular edge");
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const CurvePoint& a, const CurvePoint& b) { return a.g < b.g; });
  return out;
}

}  // namespace qre::rtp
