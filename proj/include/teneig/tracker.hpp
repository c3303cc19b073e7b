#pragma once

#include <optional>
#include <string_view>

#include "teneig/polysys.hpp"
#include "teneig/types.hpp"

namespace teneig {

enum class PathStatus { converged, at_infinity, failed };
enum class EndpointKind { regular, singular_isolated, positive_dimensional };

std::string_view to_string(PathStatus s);
std::string_view to_string(EndpointKind k);

struct TrackerConfig {
  /// Start of log-time; 0 selects -20(n+1).
  double s0 = 0.0;
  /// Residual tolerance for warm start and endgame, relative to the term magnitude
  /// EigenSystem::residual_scale.
  double newton_tol = 1e-10;
  /// Relative Newton-step tolerance of the corrector while tracking.
  double corrector_tol = 1e-9;
  int max_corrector_iters = 3;
  double duplicate_tol = 1e-6;
  /// Clustering radius between two ill-conditioned isolated endpoints.
  double singular_cluster_tol = 1e-3;
  double cond_threshold = 1e10;
  double blowup_norm = 1e8;
  double min_step = 1e-10;
  int max_halvings_per_step = 10;
  double imag_tol = 1e-8;
  /// Tracking stops once -s drops below this; the endgame takes over at s = 0.
  double end_zone = 1e-10;
  /// A step failure with -s below this hands the point to the endgame instead of failing.
  double endgame_zone = 1e-4;
  int endgame_iters = 30;
  /// Cap for linearly convergent (singular) endgames.
  int singular_endgame_iters = 200;
  int max_steps = 20000;
  /// |x0| below this (unit inf-norm scaling) marks a projective endpoint at infinity.
  double infinity_tol = 1e-8;
  /// Null-direction perturbation of the positive-dimensional probe; the corrected
  /// point must stay at least probe_step / 10 away.
  double probe_step = 1e-2;
  int probe_directions = 3;

  double start_time(int n) const { return s0 < 0.0 ? s0 : -20.0 * (n + 1); }
  void validate() const;
};

struct PathResult {
  CVector endpoint;
  PathStatus status = PathStatus::failed;
  EndpointKind kind = EndpointKind::regular;
  double residual = 0.0;
  double cond_estimate = 0.0;
  int steps_taken = 0;
  bool retraced_projective = false;
  bool curve_jump = false;
};

struct EndgameResult {
  CVector endpoint;
  bool converged = false;
  double residual = 0.0;
  double cond_estimate = 0.0;
  EndpointKind kind = EndpointKind::regular;
};

/// inf-norm condition number from an explicit LU inverse; +inf when singular.
double condition_number(const CMatrix& j);

/// Newton on H(., s0) from a start root; nullopt if 20 iterations do not reach newton_tol.
std::optional<CVector> warm_start(const LinearHomotopy& h, const CVector& w0, double s0, const TrackerConfig& cfg);

/// Predictor-corrector tracking from s0 to the end zone, followed by the endgame.
/// Blow-up beyond blowup_norm reports at_infinity.
PathResult track_path(const LinearHomotopy& h, const CVector& u0, const TrackerConfig& cfg);

/// Newton refinement on G, condition estimate and endpoint classification.
EndgameResult endgame(const EigenSystem& g, const CVector& u_near, const TrackerConfig& cfg);

/// Tracks the homogenized homotopy from the same start root with a quartered initial
/// step and two corrector iterations, rescaling to unit inf-norm after every step.
PathResult retrace_projective(const LinearHomotopy& h, const CVector& w0, const TrackerConfig& cfg);

/// warm_start + track_path, with a projective retrace whenever the affine attempt
/// blows up or fails.
PathResult solve_path(const LinearHomotopy& h, const CVector& w0, const TrackerConfig& cfg);

}  // namespace teneig
