#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qre {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// An argument lies outside the domain a formula is defined on.
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A quantity diverges as a parameter approaches `boundary`. Distinguished
// from overflow so samplers and comparison code can report the limit rather
// than a huge float.
class singularity_error : public domain_error {
 public:
  singularity_error(const std::string& what, double boundary, bool from_above)
      : domain_error(what), boundary_(boundary), from_above_(from_above) {}

  // Parameter value at which the quantity diverges.
  double boundary() const noexcept { return boundary_; }
  // True if the divergence is approached from above the boundary.
  bool from_above() const noexcept { return from_above_; }

 private:
  double boundary_;
  bool from_above_;
};

// A requested matrix dimension exceeds the configured cap.
class size_error : public domain_error {
 public:
  using domain_error::domain_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A batch of n i.i.d. depolarized copies of a pure state, each with fidelity
// f to it. n is real-valued so equivalence curves can be sampled
// continuously; verdicts ceil() where a physical copy count is needed.
struct Ensemble {
  double n = 1.0;
  double f = 1.0;
  int d = 2;
};

enum class Task { rtp, qcb, purification, qst, simulated };

std::string to_string(Task task);

struct CurvePoint {
  double g;  // candidate per-copy fidelity
  double m;  // copy count matching the reference's performance
};

// Locus of (g, m) ensembles performing like a reference ensemble at one
// task. Points are ordered by ascending g; m decreases along the curve.
struct EquivalenceCurve {
  Task task = Task::rtp;
  std::vector<CurvePoint> points;
  int d = 2;
  std::optional<double> theta;  // Bloch separation angle (discrimination only)
  double singular_g = 0.5;      // m -> infinity as g -> singular_g from above
  int truncated = 0;            // grid points dropped at the singular edge
  bool separation = false;      // sufficiency/necessity separation, not strict equivalence
  bool clamped = false;         // m clamped to the one-copy physical floor
  std::vector<double> gaps;     // contour columns without a level crossing
};

}  // namespace qre
