#pragma once

#include <random>

#include "qre/types.hpp"

namespace qre {

// Unit-norm complex amplitude vector of dimension >= 2.
class PureState {
 public:
  explicit PureState(CVector amplitudes);

  static PureState basis(int d, int index);
  // Qubit on the Bloch sphere: cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
  static PureState bloch(double theta, double phi);

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  CMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  CVector amps_;
};

Complex overlap(const PureState& a, const PureState& b);

// Hermitian, unit-trace matrix, positive semidefinite up to numerical noise
// (eigenvalues >= -1e-10). Linear-inversion estimates may skip the PSD check
// via without_psd_check(); everything else should use the validating ctor.
class DensityOperator {
 public:
  explicit DensityOperator(CMatrix matrix);

  static DensityOperator without_psd_check(CMatrix matrix);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }

 private:
  struct skip_psd_tag {};
  DensityOperator(CMatrix matrix, skip_psd_tag);

  CMatrix m_;
};

struct EigSystem {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns, vectors.col(k) <-> values[k]
};

// rho = lambda |psi><psi| + (1 - lambda) I/d with lambda = (d f - 1)/(d - 1),
// the isotropic noise model with <psi|rho|psi> = f and spectrum
// {f, (1-f)/(d-1) x (d-1)}. Requires f in (1/d, 1].
DensityOperator depolarized_state(const PureState& psi, double fidelity);

// Normalized vector of i.i.d. standard complex Gaussians; the induced
// distribution is invariant under any fixed unitary.
PureState haar_random_pure(int d, std::mt19937_64& rng);

// -tr(rho log rho) in units of log_base; 0 log 0 := 0.
double von_neumann_entropy(const DensityOperator& rho, double log_base = 2.0);

// <psi|rho|psi>, real in [0, 1].
double fidelity_with_pure(const PureState& psi, const DensityOperator& rho);

// Squared Bures distance between pure states: 2 (1 - |<a|b>|).
double bures_distance_sq(const PureState& a, const PureState& b);

// Stable eigendecomposition of a Hermitian matrix (validated to 1e-12).
EigSystem hermitian_eig(const CMatrix& m);

// Matrix power rho^s for s in [0, 1] on a PSD matrix. Eigenvalues below
// -1e-10 are a hard error; small negative ones are clamped to zero before
// exponentiation. Convention: 0^0 = 1 and 0^s = 0 for s > 0, so rho^0 is the
// full identity.
CMatrix hermitian_power(const CMatrix& rho, double s);

// rho^{(x) n}; the result dimension d^n must not exceed max_dim.
DensityOperator tensor_power(const DensityOperator& rho, int n, int max_dim = 256);

}  // namespace qre
