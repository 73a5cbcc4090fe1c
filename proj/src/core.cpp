#include "qre/core.hpp"

#include <cmath>
#include <string>

namespace qre {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kNormTol = 1e-12;
constexpr double kPsdTol = 1e-10;

void require_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw domain_error("matrix is not square");
  }
  double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw domain_error("matrix is not Hermitian (deviation " + std::to_string(dev) + ")");
  }
}

}  // namespace

std::string to_string(Task task) {
  switch (task) {
    case Task::rtp: return "rtp";
    case Task::qcb: return "qcb";
    case Task::purification: return "purification";
    case Task::qst: return "qst";
    case Task::simulated: return "simulated";
  }
  return "?";
}

PureState::PureState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 2) {
    throw domain_error("pure state needs dimension >= 2");
  }
  if (std::abs(amps_.squaredNorm() - 1.0) > kNormTol) {
    throw domain_error("pure state amplitudes are not normalized");
  }
}

PureState PureState::basis(int d, int index) {
  if (d < 2 || index < 0 || index >= d) {
    throw domain_error("basis index out of range");
  }
  CVector v = CVector::Zero(d);
  v[index] = 1.0;
  return PureState(std::move(v));
}

PureState PureState::bloch(double theta, double phi) {
  CVector v(2);
  v[0] = std::cos(theta / 2.0);
  v[1] = std::polar(std::sin(theta / 2.0), phi);
  return PureState(std::move(v));
}

Complex overlap(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    throw domain_error("overlap: dimension mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());
}

DensityOperator::DensityOperator(CMatrix matrix) : m_(std::move(matrix)) {
  require_hermitian(m_, kHermitianTol);
  if (std::abs(m_.trace().real() - 1.0) > kTraceTol || std::abs(m_.trace().imag()) > kTraceTol) {
    throw domain_error("density operator trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -kPsdTol) {
    throw domain_error("density operator has eigenvalue below -1e-10");
  }
}

DensityOperator::DensityOperator(CMatrix matrix, skip_psd_tag) : m_(std::move(matrix)) {
  require_hermitian(m_, kHermitianTol);
  if (std::abs(m_.trace().real() - 1.0) > kTraceTol || std::abs(m_.trace().imag()) > kTraceTol) {
    throw domain_error("density operator trace is not 1");
  }
}

DensityOperator DensityOperator::without_psd_check(CMatrix matrix) {
  return DensityOperator(std::move(matrix), skip_psd_tag{});
}

DensityOperator depolarized_state(const PureState& psi, double fidelity) {
  const int d = psi.dim();
  if (!(fidelity > 1.0 / d && fidelity <= 1.0)) {
    throw domain_error("depolarized_state: fidelity must lie in (1/d, 1]");
  }
  const double lambda = (d * fidelity - 1.0) / (d - 1.0);
  CMatrix rho = lambda * psi.projector();
  rho += ((1.0 - lambda) / d) * CMatrix::Identity(d, d);
  return DensityOperator(std::move(rho));
}

PureState haar_random_pure(int d, std::mt19937_64& rng) {
  if (d < 2) {
    throw domain_error("haar_random_pure: need d >= 2");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v[i] = Complex(re, im);
  }
  v /= v.norm();
  return PureState(std::move(v));
}

double von_neumann_entropy(const DensityOperator& rho, double log_base) {
  if (!(log_base > 1.0)) {
    throw domain_error("von_neumann_entropy: log base must exceed 1");
  }
  EigSystem eig = hermitian_eig(rho.matrix());
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const double w = eig.values[i];
    if (w < -kPsdTol) {
      throw domain_error("von_neumann_entropy: operator is not PSD");
    }
    if (w > 0.0) {
      s -= w * std::log(w);
    }
  }
  return s / std::log(log_base);
}

double fidelity_with_pure(const PureState& psi, const DensityOperator& rho) {
  if (psi.dim() != rho.dim()) {
    throw domain_error("fidelity_with_pure: dimension mismatch");
  }
  const Complex f = (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0);
  return f.real();
}

double bures_distance_sq(const PureState& a, const PureState& b) {
  return 2.0 * (1.0 - std::abs(overlap(a, b)));
}

EigSystem hermitian_eig(const CMatrix& m) {
  require_hermitian(m, kHermitianTol);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw domain_error("hermitian_eig: eigensolver failed");
  }
  return EigSystem{solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix hermitian_power(const CMatrix& rho, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw domain_error("hermitian_power: exponent must lie in [0, 1]");
  }
  EigSystem eig = hermitian_eig(rho);
  RVector powers(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    double w = eig.values[i];
    if (w < -kPsdTol) {
      throw domain_error("hermitian_power: eigenvalue below -1e-10");
    }
    w = std::max(w, 0.0);
    powers[i] = std::pow(w, s);  // pow(0, 0) == 1 by the documented convention
  }
  return eig.vectors * powers.asDiagonal() * eig.vectors.adjoint();
}

DensityOperator tensor_power(const DensityOperator& rho, int n, int max_dim) {
  if (n < 1) {
    throw domain_error("tensor_power: need n >= 1");
  }
  const int d = rho.dim();
  long long dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= d;
    if (dim > max_dim) {
      throw size_error("tensor_power: dimension " + std::to_string(d) + "^" +
                       std::to_string(n) + " exceeds cap " + std::to_string(max_dim));
    }
  }
  CMatrix out = rho.matrix();
  for (int i = 1; i < n; ++i) {
    const CMatrix& a = out;
    const CMatrix& b = rho.matrix();
    CMatrix next(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        next.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
      }
    }
    out = std::move(next);
  }
  return DensityOperator(std::move(out));
}

}  // namespace qre
