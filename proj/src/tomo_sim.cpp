#include "qre/tomo_sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace qre::tomo {

namespace {

const CMatrix& pauli(PauliBasis basis) {
  static const CMatrix sx = [] {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
  }();
  static const CMatrix sy = [] {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
  }();
  static const CMatrix sz = [] {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
  }();
  switch (basis) {
    case PauliBasis::x: return sx;
    case PauliBasis::y: return sy;
    default: return sz;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Neumaier-compensated accumulator; summation order is part of the contract.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

PauliCounts measure_pauli_counts(const DensityOperator& rho, PauliBasis basis,
                                 std::int64_t shots, std::mt19937_64& rng) {
  if (rho.dim() != 2) {
    throw domain_error("measure_pauli_counts: qubit states only");
  }
  if (shots < 0) {
    throw domain_error("measure_pauli_counts: negative shot count");
  }
  const double r = (rho.matrix() * pauli(basis)).trace().real();
  const double p_plus = std::clamp((1.0 + r) / 2.0, 0.0, 1.0);
  std::binomial_distribution<std::int64_t> binom(shots, p_plus);
  PauliCounts counts;
  counts.plus = binom(rng);
  counts.minus = shots - counts.plus;
  return counts;
}

std::array<std::int64_t, 3> split_shots(std::int64_t n) {
  const std::int64_t q = n / 3;
  const std::int64_t r = n % 3;
  std::array<std::int64_t, 3> shots{q, q, q};  // x, y, z
  if (r >= 1) ++shots[2];
  if (r == 2) ++shots[0];
  return shots;
}

DensityOperator linear_inversion(const PauliCounts& x, const PauliCounts& y,
                                 const PauliCounts& z) {
  const PauliCounts* counts[3] = {&x, &y, &z};
  double r_hat[3];
  for (int k = 0; k < 3; ++k) {
    const std::int64_t shots = counts[k]->plus + counts[k]->minus;
    if (shots < 1) {
      throw domain_error("linear_inversion: a basis has zero shots");
    }
    r_hat[k] = static_cast<double>(counts[k]->plus - counts[k]->minus) /
               static_cast<double>(shots);
  }
  CMatrix rho = 0.5 * CMatrix::Identity(2, 2);
  rho += 0.5 * (r_hat[0] * pauli(PauliBasis::x) + r_hat[1] * pauli(PauliBasis::y) +
                r_hat[2] * pauli(PauliBasis::z));
  return DensityOperator::without_psd_check(std::move(rho));
}

Mitigated mitigate_to_pure(const DensityOperator& rho_hat, double degeneracy_tol) {
  const EigSystem eig = hermitian_eig(rho_hat.matrix());
  const Eigen::Index top = eig.values.size() - 1;
  Mitigated out{PureState(eig.vectors.col(top)),
                eig.values[top] - eig.values[top - 1] <= degeneracy_tol};
  return out;
}

TrialResult run_trial(const PureState& psi, std::int64_t n, double f, std::mt19937_64& rng) {
  if (n < 3) {
    throw domain_error("run_trial: need n >= 3 (one shot per basis)");
  }
  const DensityOperator rho = depolarized_state(psi, f);
  const auto shots = split_shots(n);
  const PauliCounts cx = measure_pauli_counts(rho, PauliBasis::x, shots[0], rng);
  const PauliCounts cy = measure_pauli_counts(rho, PauliBasis::y, shots[1], rng);
  const PauliCounts cz = measure_pauli_counts(rho, PauliBasis::z, shots[2], rng);
  const Mitigated est = mitigate_to_pure(linear_inversion(cx, cy, cz));

  const double abs_overlap = std::abs(overlap(psi, est.state));
  TrialResult result;
  result.infidelity = 1.0 - abs_overlap * abs_overlap;
  result.bures_sq = 2.0 * (1.0 - abs_overlap);
  result.degenerate = est.degenerate;
  return result;
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t i, std::uint64_t j,
                         std::uint64_t t) {
  return splitmix64(splitmix64(splitmix64(splitmix64(master) ^ i) ^ j) ^ t);
}

SimGrid simulate_grid(const SimConfig& config) {
  if (config.n_grid.empty() || config.g_grid.empty()) {
    throw domain_error("simulate_grid: empty grid");
  }
  if (config.trials < 1) {
    throw domain_error("simulate_grid: need trials >= 1");
  }
  for (std::int64_t n : config.n_grid) {
    if (n < 3) throw domain_error("simulate_grid: copy counts must be >= 3");
  }
  for (double g : config.g_grid) {
    if (!(g > 0.5 && g <= 1.0)) {
      throw domain_error("simulate_grid: fidelities must lie in (0.5, 1]");
    }
  }

  SimGrid grid;
  grid.n_grid = config.n_grid;
  grid.g_grid = config.g_grid;
  grid.trials = config.trials;
  grid.master_seed = config.master_seed;
  grid.cells.resize(config.n_grid.size() * config.g_grid.size());

  auto run_cell = [&](std::size_t i, std::size_t j) {
    CompensatedSum inf_sum, inf_sq_sum, bures_sum;
    int degenerate = 0;
    for (int t = 0; t < config.trials; ++t) {
      std::mt19937_64 rng(trial_seed(config.master_seed, i, j, static_cast<std::uint64_t>(t)));
      const PureState psi = haar_random_pure(2, rng);
      const TrialResult r = run_trial(psi, config.n_grid[i], config.g_grid[j], rng);
      inf_sum.add(r.infidelity);
      inf_sq_sum.add(r.infidelity * r.infidelity);
      bures_sum.add(r.bures_sq);
      if (r.degenerate) ++degenerate;
    }
    const double t_count = static_cast<double>(config.trials);
    SimCell cell;
    cell.mean_infidelity = inf_sum.value() / t_count;
    cell.mean_bures_sq = bures_sum.value() / t_count;
    if (config.trials > 1) {
      const double var = std::max(
          (inf_sq_sum.value() - inf_sum.value() * inf_sum.value() / t_count) / (t_count - 1.0),
          0.0);
      cell.stderr_infidelity = std::sqrt(var / t_count);
    }
    cell.degenerate_trials = degenerate;
    grid.cells[i * config.g_grid.size() + j] = cell;
  };

  const std::size_t total = grid.cells.size();
  unsigned workers = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(total));
  if (workers <= 1) {
    for (std::size_t c = 0; c < total; ++c) {
      run_cell(c / config.g_grid.size(), c % config.g_grid.size());
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next.fetch_add(1); c < total; c = next.fetch_add(1)) {
          run_cell(c / config.g_grid.size(), c % config.g_grid.size());
        }
      });
    }
    for (auto& th : pool) th.join();
  }
  return grid;
}

EquivalenceCurve extract_contour(const SimGrid& grid, const Ensemble& ref,
                                 ContourMetric metric) {
  const std::size_t rows = grid.n_grid.size();
  const std::size_t cols = grid.g_grid.size();
  if (rows == 0 || cols == 0 || grid.cells.size() != rows * cols) {
    throw domain_error("extract_contour: malformed grid");
  }
  if (!std::is_sorted(grid.n_grid.begin(), grid.n_grid.end()) ||
      !std::is_sorted(grid.g_grid.begin(), grid.g_grid.end())) {
    throw domain_error("extract_contour: grid axes must be ascending");
  }
  if (ref.n < static_cast<double>(grid.n_grid.front()) ||
      ref.n > static_cast<double>(grid.n_grid.back()) || ref.f < grid.g_grid.front() ||
      ref.f > grid.g_grid.back()) {
    throw domain_error("extract_contour: reference point outside the grid hull");
  }

  auto value = [&](std::size_t i, std::size_t j) {
    const SimCell& c = grid.cell(i, j);
    const double v = metric == ContourMetric::infidelity ? c.mean_infidelity : c.mean_bures_sq;
    return std::max(v, 1e-300);  // keep log interpolation defined
  };

  // Column value at an arbitrary copy count, linear in (log n, log value).
  auto column_at = [&](std::size_t j, double n) {
    std::size_t i = 0;
    while (i + 2 < rows && static_cast<double>(grid.n_grid[i + 1]) < n) ++i;
    if (rows == 1) return value(0, j);
    const double ln0 = std::log(static_cast<double>(grid.n_grid[i]));
    const double ln1 = std::log(static_cast<double>(grid.n_grid[i + 1]));
    const double t = (std::log(n) - ln0) / (ln1 - ln0);
    return std::exp((1.0 - t) * std::log(value(i, j)) + t * std::log(value(i + 1, j)));
  };

  // Reference level, interpolated linearly in g between bracketing columns.
  std::size_t j0 = 0;
  while (j0 + 2 < cols && grid.g_grid[j0 + 1] < ref.f) ++j0;
  double level;
  if (cols == 1) {
    level = column_at(0, ref.n);
  } else {
    const double w = (ref.f - grid.g_grid[j0]) / (grid.g_grid[j0 + 1] - grid.g_grid[j0]);
    level = (1.0 - w) * column_at(j0, ref.n) + w * column_at(j0 + 1, ref.n);
  }

  EquivalenceCurve out;
  out.task = Task::simulated;
  out.d = 2;
  out.singular_g = 0.5;
  for (std::size_t j = 0; j < cols; ++j) {
    bool found = false;
    if (rows == 1) {
      // Degenerate single-row grid: the column is one value.
      if (value(0, j) == level) {
        out.points.push_back({grid.g_grid[j], static_cast<double>(grid.n_grid[0])});
        found = true;
      }
    } else {
      for (std::size_t i = 0; i + 1 < rows; ++i) {
        const double v0 = value(i, j);
        const double v1 = value(i + 1, j);
        if ((v0 - level) * (v1 - level) > 0.0) continue;
        double n_star;
        if (v0 == v1) {
          n_star = static_cast<double>(grid.n_grid[i]);
        } else {
          const double t = (std::log(level) - std::log(v0)) / (std::log(v1) - std::log(v0));
          n_star = std::exp((1.0 - t) * std::log(static_cast<double>(grid.n_grid[i])) +
                            t * std::log(static_cast<double>(grid.n_grid[i + 1])));
        }
        out.points.push_back({grid.g_grid[j], n_star});
        found = true;
        break;
      }
    }
    if (!found) {
      out.gaps.push_back(grid.g_grid[j]);
    }
  }
  return out;
}

}  // namespace qre::tomo
