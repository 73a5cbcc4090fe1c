#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "qre/core.hpp"

// Finite-shot single-qubit tomography of depolarized copies of Haar-random
// states: Pauli measurement, linear inversion, top-eigenvector mitigation,
// a seeded mean-error grid, and level-contour extraction from that grid.
namespace qre::tomo {

enum class PauliBasis { x, y, z };

struct PauliCounts {
  std::int64_t plus = 0;
  std::int64_t minus = 0;
};

// Binomial sampling of projective +/- outcomes in one Pauli basis.
PauliCounts measure_pauli_counts(const DensityOperator& rho, PauliBasis basis,
                                 std::int64_t shots, std::mt19937_64& rng);

// n = 3q + r copies split over {x, y, z}; the remainder goes to z, then x.
std::array<std::int64_t, 3> split_shots(std::int64_t n);

// rho_hat = (I + r_hat . sigma)/2 with r_hat_k = (plus_k - minus_k)/shots_k.
// Hermitian and unit trace but possibly non-physical; no PSD check.
DensityOperator linear_inversion(const PauliCounts& x, const PauliCounts& y,
                                 const PauliCounts& z);

struct Mitigated {
  PureState state;  // eigenvector of the largest eigenvalue
  bool degenerate;  // top eigenvalue within tol of the next one; tie broken by solver order
};

Mitigated mitigate_to_pure(const DensityOperator& rho_hat, double degeneracy_tol = 1e-12);

struct TrialResult {
  double infidelity = 0.0;  // 1 - |<psi|psi_hat>|^2
  double bures_sq = 0.0;    // 2 (1 - |<psi|psi_hat>|)
  bool degenerate = false;
};

// One tomography round: n >= 3 depolarized copies of psi at fidelity f,
// measured in the three Pauli bases (x, y, z draw order), inverted, mitigated.
TrialResult run_trial(const PureState& psi, std::int64_t n, double f, std::mt19937_64& rng);

struct SimConfig {
  std::vector<std::int64_t> n_grid;  // copy counts, ascending
  std::vector<double> g_grid;        // fidelities in (0.5, 1], ascending
  int trials = 1000;                 // Haar-random states per grid point
  std::uint64_t master_seed = 0;
  int threads = 0;                   // worker cap; 0 = hardware concurrency
};

struct SimCell {
  double mean_infidelity = 0.0;
  double mean_bures_sq = 0.0;
  double stderr_infidelity = 0.0;  // sample standard error of the infidelity mean
  int degenerate_trials = 0;       // flagged (counted, never discarded)
};

struct SimGrid {
  std::vector<std::int64_t> n_grid;
  std::vector<double> g_grid;
  std::vector<SimCell> cells;  // row-major, cell(i_n, j_g)
  int trials = 0;
  std::uint64_t master_seed = 0;

  const SimCell& cell(std::size_t i_n, std::size_t j_g) const {
    return cells[i_n * g_grid.size() + j_g];
  }
};

// Stream seed for trial t at grid point (i, j). Counter-based so that serial
// and parallel runs agree bit for bit.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t i, std::uint64_t j,
                         std::uint64_t t);

// Mean trial errors over the whole grid. A pure function of the config: cell
// (i, j) averages trials seeded by trial_seed(master_seed, i, j, t) in fixed
// order with compensated summation, whatever the thread count.
SimGrid simulate_grid(const SimConfig& config);

enum class ContourMetric { infidelity, bures_sq };

// Level contour of the gridded mean error through the reference point: the
// level is the grid value interpolated at (ref.n, ref.f), and each fidelity
// column is solved for the crossing copy count by linear interpolation in
// (log n, log value). Columns whose range misses the level are recorded as
// gaps.
EquivalenceCurve extract_contour(const SimGrid& grid, const Ensemble& ref,
                                 ContourMetric metric = ContourMetric::infidelity);

}  // namespace qre::tomo
