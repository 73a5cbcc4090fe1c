#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qre/purification.hpp"

// Cross-task aggregation: all four analytic curves for a reference ensemble,
// the band where ranking depends on the task, and trade recommendations.
namespace qre::verdicts {

inline constexpr double kDefaultTheta = 1.5707963267948966;  // pi/2

// The four analytic curves over a shared fidelity grid in (0.5, 1]. The
// purification entry is floored at one copy so the small-m end stays
// physical.
std::vector<EquivalenceCurve> all_curves(const Ensemble& ref, const std::vector<double>& g_grid,
                                         double theta = kDefaultTheta, int d = 2);

// Pointwise envelope over task curves. Offers above m_high beat the
// reference on every task; offers below m_low lose on every task.
struct AmbiguityBand {
  std::vector<double> g;
  std::vector<double> m_low;
  std::vector<double> m_high;
};

AmbiguityBand ambiguity_band(const std::vector<EquivalenceCurve>& curves);

enum class TaskVerdict { better, worse, equivalent, indeterminate };
enum class Overall { accept, reject, task_dependent };

std::string to_string(TaskVerdict v);
std::string to_string(Overall o);

struct TaskComparison {
  TaskVerdict verdict = TaskVerdict::indeterminate;
  double m_required = 0.0;  // copies needed at the offer's fidelity
  double m_offered = 0.0;
};

struct TradeReport {
  std::vector<std::pair<Task, TaskComparison>> per_task;  // rtp, qcb, qst, purification
  purification::RegionVerdict region;
  Overall overall = Overall::task_dependent;
  bool indifferent = false;  // offer matches the reference on every task
};

// Compares the offer against the reference task by task. Purification enters
// through the region verdict's strength, not the loose separation curve.
TradeReport trade_verdict(const Ensemble& ref, const Ensemble& offer,
                          double theta = kDefaultTheta, int d = 2, double rel_tol = 1e-9);

}  // namespace qre::verdicts
