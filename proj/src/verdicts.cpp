#include "qre/verdicts.hpp"

#include <algorithm>
#include <cmath>

#include "qre/qcb.hpp"
#include "qre/qst.hpp"
#include "qre/rtp.hpp"

namespace qre::verdicts {

namespace {

// Domain failures surface with the task that raised them.
template <typename Fn>
auto named(Task task, Fn&& fn) {
  try {
    return fn();
  } catch (const singularity_error& e) {
    throw singularity_error(to_string(task) + ": " + e.what(), e.boundary(), e.from_above());
  } catch (const domain_error& e) {
    throw domain_error(to_string(task) + ": " + e.what());
  }
}

TaskVerdict compare(double offered, double required, double rel_tol) {
  if (std::abs(offered - required) <= rel_tol * std::max(std::abs(offered), std::abs(required))) {
    return TaskVerdict::equivalent;
  }
  return offered > required ? TaskVerdict::better : TaskVerdict::worse;
}

}  // namespace

std::string to_string(TaskVerdict v) {
  switch (v) {
    case TaskVerdict::better: return "better";
    case TaskVerdict::worse: return "worse";
    case TaskVerdict::equivalent: return "equivalent";
    case TaskVerdict::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string to_string(Overall o) {
  switch (o) {
    case Overall::accept: return "accept";
    case Overall::reject: return "reject";
    case Overall::task_dependent: return "task-dependent";
  }
  return "?";
}

std::vector<EquivalenceCurve> all_curves(const Ensemble& ref, const std::vector<double>& g_grid,
                                         double theta, int d) {
  Ensemble rtp_ref = ref;
  rtp_ref.d = d;
  Ensemble qubit_ref = ref;
  qubit_ref.d = 2;

  std::vector<EquivalenceCurve> curves;
  curves.push_back(named(Task::rtp, [&] { return rtp::curve(rtp_ref, g_grid); }));
  curves.push_back(named(Task::qcb, [&] { return qcb::curve(qubit_ref, theta, g_grid); }));
  EquivalenceCurve pur =
      named(Task::purification, [&] { return purification::curve(qubit_ref, g_grid); });
  for (CurvePoint& p : pur.points) {
    if (p.m < 1.0) {
      p.m = 1.0;
      pur.clamped = true;
    }
  }
  curves.push_back(std::move(pur));
  curves.push_back(named(Task::qst, [&] { return qst::curve(qubit_ref, g_grid); }));
  return curves;
}

AmbiguityBand ambiguity_band(const std::vector<EquivalenceCurve>& curves) {
  if (curves.size() < 2) {
    throw domain_error("ambiguity_band: need at least two curves");
  }
  const auto& base = curves.front().points;
  for (const EquivalenceCurve& c : curves) {
    if (c.points.size() != base.size()) {
      throw domain_error("ambiguity_band: curves sampled on different grids; resample first");
    }
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (std::abs(c.points[k].g - base[k].g) > 1e-12) {
        throw domain_error("ambiguity_band: curves sampled on different grids; resample first");
      }
    }
  }
  AmbiguityBand band;
  band.g.reserve(base.size());
  for (std::size_t k = 0; k < base.size(); ++k) {
    double lo = base[k].m, hi = base[k].m;
    for (const EquivalenceCurve& c : curves) {
      lo = std::min(lo, c.points[k].m);
      hi = std::max(hi, c.points[k].m);
    }
    band.g.push_back(base[k].g);
    band.m_low.push_back(lo);
    band.m_high.push_back(hi);
  }
  return band;
}

TradeReport trade_verdict(const Ensemble& ref, const Ensemble& offer, double theta, int d,
                          double rel_tol) {
  Ensemble rtp_ref = ref;
  rtp_ref.d = d;
  Ensemble qubit_ref = ref;
  qubit_ref.d = 2;
  Ensemble qubit_offer = offer;
  qubit_offer.d = 2;

  TradeReport report;

  const double rtp_req = named(Task::rtp, [&] { return rtp::equivalent_m(rtp_ref, offer.f); });
  report.per_task.emplace_back(
      Task::rtp, TaskComparison{compare(offer.n, rtp_req, rel_tol), rtp_req, offer.n});

  const double qcb_req =
      named(Task::qcb, [&] { return qcb::equivalent_m(qubit_ref, offer.f, theta); });
  report.per_task.emplace_back(
      Task::qcb, TaskComparison{compare(offer.n, qcb_req, rel_tol), qcb_req, offer.n});

  const double qst_req = named(Task::qst, [&] { return qst::equivalent_m(qubit_ref, offer.f); });
  report.per_task.emplace_back(
      Task::qst, TaskComparison{compare(offer.n, qst_req, rel_tol), qst_req, offer.n});

  report.region = named(Task::purification, [&] {
    return purification::classify_region(qubit_ref, qubit_offer, rel_tol);
  });
  TaskComparison pur;
  pur.m_required = report.region.separation_m;
  pur.m_offered = offer.n;
  if (report.region.on_copy_line && report.region.on_fidelity_line) {
    pur.verdict = TaskVerdict::equivalent;  // same ensemble
  } else {
    switch (report.region.strength) {
      case purification::Strength::definitive:
      case purification::Strength::sufficient:
        pur.verdict = report.region.favored == purification::Favored::offer
                          ? TaskVerdict::better
                          : TaskVerdict::worse;
        break;
      default:
        pur.verdict = TaskVerdict::indeterminate;
        break;
    }
  }
  report.per_task.emplace_back(Task::purification, pur);

  bool all_better_or_eq = true;
  bool all_worse_or_eq = true;
  bool any_worse = false;
  bool all_eq = true;
  for (const auto& [task, cmp] : report.per_task) {
    if (cmp.verdict != TaskVerdict::better && cmp.verdict != TaskVerdict::equivalent) {
      all_better_or_eq = false;
    }
    if (cmp.verdict != TaskVerdict::worse && cmp.verdict != TaskVerdict::equivalent) {
      all_worse_or_eq = false;
    }
    if (cmp.verdict == TaskVerdict::worse) any_worse = true;
    if (cmp.verdict != TaskVerdict::equivalent) all_eq = false;
  }
  if (all_better_or_eq) {
    report.overall = Overall::accept;
  } else if (all_worse_or_eq && any_worse) {
    report.overall = Overall::reject;
  } else {
    report.overall = Overall::task_dependent;
  }
  report.indifferent = all_eq;
  return report;
}

}  // namespace qre::verdicts
