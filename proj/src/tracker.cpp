#include "teneig/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "teneig/random.hpp"

namespace teneig {

std::string_view to_string(PathStatus s) {
  switch (s) {
    case PathStatus::converged: return "converged";
    case PathStatus::at_infinity: return "at_infinity";
    case PathStatus::failed: return "failed";
  }
  return "failed";
}

std::string_view to_string(EndpointKind k) {
  switch (k) {
    case EndpointKind::regular: return "regular";
    case EndpointKind::singular_isolated: return "singular_isolated";
    case EndpointKind::positive_dimensional: return "positive_dimensional";
  }
  return "regular";
}

void TrackerConfig::validate() const {
  if (s0 > 0.0) throw InputError("s0 must be negative (or 0 for the default)");
  if (newton_tol <= 0.0 || corrector_tol <= 0.0 || duplicate_tol <= 0.0 || min_step <= 0.0 ||
      imag_tol <= 0.0 || end_zone <= 0.0 || endgame_zone <= 0.0 || infinity_tol <= 0.0 || probe_step <= 0.0 ||
      singular_cluster_tol <= 0.0) {
    throw InputError("tracker tolerances must be positive");
  }
  if (duplicate_tol >= 1.0) throw InputError("duplicate_tol must be below 1");
  if (cond_threshold <= 1.0) throw InputError("cond_threshold must exceed 1");
  if (blowup_norm <= 1.0) throw InputError("blowup_norm must exceed 1");
  if (max_corrector_iters < 1 || max_halvings_per_step < 1 || endgame_iters < 1 || singular_endgame_iters < 1 ||
      max_steps < 1 || probe_directions < 1) {
    throw InputError("iteration limits must be positive");
  }
}

double condition_number(const CMatrix& j) {
  Eigen::FullPivLU<CMatrix> lu(j);
  if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
  const CMatrix inv = lu.inverse();
  const double c = j.cwiseAbs().rowwise().sum().maxCoeff() * inv.cwiseAbs().rowwise().sum().maxCoeff();
  return std::isfinite(c) ? c : std::numeric_limits<double>::infinity();
}

namespace {

double scale_of(const CVector& v) { return std::max(1.0, inf_norm(v)); }

CVector min_norm_solve(const CMatrix& j, const CVector& rhs) {
  return j.completeOrthogonalDecomposition().solve(rhs);
}

/// Pseudo-inverse solve ignoring singular values below 1e-8 of the largest.
CVector truncated_solve(const CMatrix& j, const CVector& rhs) {
  Eigen::JacobiSVD<CMatrix> svd(j, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-8);
  return svd.solve(rhs);
}

/// One square system per log-time s; the projective variant carries a moving patch row.
class StepSystem {
 public:
  virtual ~StepSystem() = default;
  virtual void evaluate(const CVector& v, double s, CVector& f, CMatrix& fv, CVector& fs) const = 0;
  virtual void accept(CVector& /*v*/) {}
  virtual bool blown_up(const CVector& v, double limit) const { return inf_norm(v) > limit; }
};

class AffineSteps final : public StepSystem {
 public:
  explicit AffineSteps(const LinearHomotopy& h) : h_(h) {}
  void evaluate(const CVector& v, double s, CVector& f, CMatrix& fv, CVector& fs) const override {
    h_.evaluate(v, s, f, fv, fs);
  }

 private:
  const LinearHomotopy& h_;
};

class ProjectiveSteps final : public StepSystem {
 public:
  explicit ProjectiveSteps(const ProjectiveHomotopy& p) : p_(p) {}

  void evaluate(const CVector& v, double s, CVector& f, CMatrix& fv, CVector& fs) const override {
    CVector hv, hs;
    CMatrix hw;
    p_.evaluate(v, s, hv, hw, hs);
    const int rows = static_cast<int>(hv.size());
    f.resize(rows + 1);
    f.head(rows) = hv;
    f(rows) = patch_.cwiseProduct(v).sum() - 1.0;
    fv.resize(rows + 1, v.size());
    fv.topRows(rows) = hw;
    fv.row(rows) = patch_.transpose();
    fs.resize(rows + 1);
    fs.head(rows) = hs;
    fs(rows) = 0.0;
  }

  void accept(CVector& v) override {
    v /= inf_norm(v);
    patch_ = v.conjugate() / v.squaredNorm();
  }

  bool blown_up(const CVector&, double) const override { return false; }

 private:
  const ProjectiveHomotopy& p_;
  CVector patch_;
};

struct CoreResult {
  CVector v;
  double s = 0.0;
  bool reached_end = false;
  bool blowup = false;
  int steps = 0;
};

CoreResult track_core(StepSystem& sys, CVector v, double s, double ds, int max_corr, const TrackerConfig& cfg) {
  CoreResult out;
  int uncut = 0;
  int halvings = 0;
  CVector f, fs, tangent, delta;
  CMatrix fv;
  sys.accept(v);
  while (-s > cfg.end_zone) {
    if (out.steps + halvings > cfg.max_steps) break;
    const double h = std::min(ds, -s / 3.0);
    bool ok = false;
    sys.evaluate(v, s, f, fv, fs);
    Eigen::PartialPivLU<CMatrix> lu(fv);
    tangent = lu.solve(-fs);
    CVector trial = v;
    if (tangent.allFinite()) {
      trial += h * tangent;
      const double s_new = std::min(s + h, -0.0);
      double prev = std::numeric_limits<double>::infinity();
      for (int it = 0; it < max_corr; ++it) {
        sys.evaluate(trial, s_new, f, fv, fs);
        delta = fv.partialPivLu().solve(-f);
        if (!delta.allFinite()) break;
        const double step = inf_norm(delta);
        trial += delta;
        if (it == 0 && step > 0.1 * scale_of(trial)) break;
        if (it > 0 && step > 0.5 * prev) break;
        prev = step;
        if (step <= cfg.corrector_tol * scale_of(trial)) {
          ok = true;
          break;
        }
      }
    }
    if (ok) {
      v = trial;
      s += h;
      sys.accept(v);
      ++out.steps;
      halvings = 0;
      if (++uncut >= 2) {
        ds = 2.0 * h;
        uncut = 0;
      } else {
        ds = h;
      }
      if (sys.blown_up(v, cfg.blowup_norm)) {
        out.blowup = true;
        break;
      }
    } else {
      ds = h / 2.0;
      uncut = 0;
      if (++halvings > cfg.max_halvings_per_step || ds < cfg.min_step) {
        out.reached_end = -s < cfg.endgame_zone;
        out.v = v;
        out.s = s;
        return out;
      }
    }
  }
  out.reached_end = !out.blowup && -s <= cfg.end_zone;
  out.v = v;
  out.s = s;
  return out;
}

/// Newton with a minimum-norm solve; runs past `iters` only while the step keeps shrinking.
template <typename Eval, typename OnStep = void (*)(const CVector&)>
CVector refine(Eval&& eval, CVector u, int iters, int extended_iters, OnStep on_step = [](const CVector&) {}) {
  CVector f;
  CMatrix j;
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < extended_iters; ++it) {
    eval(u, f, j);
    CVector delta = min_norm_solve(j, -f);
    if (!delta.allFinite()) break;
    double step = inf_norm(delta);
    if (it >= 2 && step >= prev) {
      // near-null directions of a nonreduced or positive-dimensional root throw the
      // step off; drop them and keep going while the truncated step still contracts
      delta = truncated_solve(j, -f);
      step = inf_norm(delta);
      if (!delta.allFinite() || step >= prev) break;
    }
    u += delta;
    on_step(u);
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * scale_of(u)) break;
    if (it + 1 >= iters && step > 0.9 * prev) break;
    prev = step;
  }
  return u;
}

/// Limit of a linearly converging sequence, extrapolated from the median ratio of
/// successive moves over its tail. Returns the last term when the moves do not
/// contract geometrically.
Complex geometric_limit(const std::vector<Complex>& seq) {
  std::size_t end = seq.size();
  while (end >= 2 && std::abs(seq[end - 1] - seq[end - 2]) <= 1e-3 * std::abs(seq[end - 2])) --end;
  if (end < 6) return seq.empty() ? Complex(1.0) : seq.back();
  std::vector<Complex> ratios;
  for (std::size_t i = end - 5; i + 1 < end; ++i) ratios.push_back((seq[i + 1] - seq[i]) / (seq[i] - seq[i - 1]));
  std::vector<double> mags;
  for (const Complex q : ratios) mags.push_back(std::abs(q));
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  const double r = mags[mags.size() / 2];
  if (r >= 0.95) return seq[end - 1];
  for (const Complex q : ratios) {
    if (std::abs(q - r) > 0.1) return seq[end - 1];
  }
  return seq[end - 1] + (seq[end - 1] - seq[end - 2]) * r / (1.0 - r);
}

bool probe_positive_dimensional(const EigenSystem& g, const CVector& u, const CMatrix& j, double residual,
                                const TrackerConfig& cfg) {
  Eigen::JacobiSVD<CMatrix> svd(j, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int cols = static_cast<int>(j.cols());
  int first_null = cols - 1;
  while (first_null > 0 && sv(first_null - 1) <= 1e-8 * sv(0)) --first_null;
  const CMatrix null = svd.matrixV().rightCols(cols - first_null);

  Rng rng(0x5eedULL + static_cast<std::uint64_t>(cols));
  const double eps = cfg.probe_step * scale_of(u);
  auto eval = [&g](const CVector& p, CVector& f, CMatrix& jj) { g.evaluate(p, f, jj); };
  for (int trial = 0; trial < cfg.probe_directions; ++trial) {
    CVector coeff(null.cols());
    for (int c = 0; c < coeff.size(); ++c) coeff(c) = Complex(rng.normal(), rng.normal());
    CVector dir = null * coeff;
    dir /= inf_norm(dir);
    const CVector moved = refine(eval, u + eps * dir, 50, 50);
    const double res = inf_norm(g.eval(moved));
    const bool back_on = res <= std::max(10.0 * residual, cfg.newton_tol * g.residual_scale(moved));
    if (back_on && inf_norm(moved - u) >= 0.1 * eps) return true;
  }
  return false;
}

PathResult from_endgame(const EndgameResult& e, int steps, bool projective) {
  PathResult r;
  r.endpoint = e.endpoint;
  r.status = e.converged ? PathStatus::converged : PathStatus::failed;
  r.kind = e.kind;
  r.residual = e.residual;
  r.cond_estimate = e.cond_estimate;
  r.steps_taken = steps;
  r.retraced_projective = projective;
  return r;
}

}  // namespace

std::optional<CVector> warm_start(const LinearHomotopy& h, const CVector& w0, double s0, const TrackerConfig& cfg) {
  CVector u = w0;
  CVector f, fs;
  CMatrix fu;
  for (int it = 0; it < 20; ++it) {
    h.evaluate(u, s0, f, fu, fs);
    if (inf_norm(f) <= cfg.newton_tol * scale_of(u)) return u;
    const CVector delta = fu.partialPivLu().solve(-f);
    if (!delta.allFinite()) return std::nullopt;
    u += delta;
  }
  h.evaluate(u, s0, f, fu, fs);
  if (inf_norm(f) <= cfg.newton_tol * scale_of(u)) return u;
  return std::nullopt;
}

EndgameResult endgame(const EigenSystem& g, const CVector& u_near, const TrackerConfig& cfg) {
  auto eval = [&g](const CVector& p, CVector& f, CMatrix& j) { g.evaluate(p, f, j); };
  EndgameResult out;
  out.endpoint = refine(eval, u_near, cfg.endgame_iters, cfg.singular_endgame_iters);
  CVector f;
  CMatrix j;
  g.evaluate(out.endpoint, f, j);
  out.residual = inf_norm(f);
  out.converged = out.endpoint.allFinite() && out.residual <= cfg.newton_tol * g.residual_scale(out.endpoint);
  out.cond_estimate = condition_number(j);
  if (out.converged && out.cond_estimate > cfg.cond_threshold) {
    out.kind = probe_positive_dimensional(g, out.endpoint, j, out.residual, cfg) ? EndpointKind::positive_dimensional
                                                                                  : EndpointKind::singular_isolated;
  }
  return out;
}

PathResult track_path(const LinearHomotopy& h, const CVector& u0, const TrackerConfig& cfg) {
  const double s0 = cfg.start_time(h.target().dim());
  AffineSteps sys(h);
  const CoreResult core = track_core(sys, u0, s0, -s0 / 3.0, cfg.max_corrector_iters, cfg);
  PathResult r;
  r.steps_taken = core.steps;
  r.endpoint = core.v;
  if (core.blowup) {
    r.status = PathStatus::at_infinity;
    return r;
  }
  if (!core.reached_end) return r;
  return from_endgame(endgame(h.target(), core.v, cfg), core.steps, false);
}

PathResult retrace_projective(const LinearHomotopy& h, const CVector& w0, const TrackerConfig& cfg) {
  const int n = h.target().dim();
  const double s0 = cfg.start_time(n);
  const ProjectiveHomotopy ph(h);
  ProjectiveSteps sys(ph);

  PathResult r;
  r.retraced_projective = true;
  CVector w = ProjectiveHomotopy::embed(w0);
  sys.accept(w);
  {
    CVector f, fs;
    CMatrix fw;
    bool ok = false;
    for (int it = 0; it < 20 && !ok; ++it) {
      sys.evaluate(w, s0, f, fw, fs);
      if (inf_norm(f) <= cfg.newton_tol) {
        ok = true;
        break;
      }
      w += fw.partialPivLu().solve(-f);
    }
    if (!ok || !w.allFinite()) return r;
  }

  const CoreResult core = track_core(sys, w, s0, -s0 / 12.0, 2, cfg);
  r.steps_taken = core.steps;
  if (!core.reached_end) return r;

  // Projective endgame at s = 0: Newton on (G-hat, patch) drives x0 to 0 for
  // endpoints at infinity, including the nonreduced ones.
  CVector wend = core.v;
  const CVector patch = wend.conjugate() / wend.squaredNorm();
  auto eval = [&](const CVector& p, CVector& f, CMatrix& j) {
    CVector fs;
    sys.evaluate(p, 0.0, f, j, fs);
    f(f.size() - 1) = patch.cwiseProduct(p).sum() - 1.0;
    j.row(j.rows() - 1) = patch.transpose();
  };
  std::vector<Complex> x0_trace{wend(1)};
  wend = refine(eval, wend, cfg.endgame_iters, cfg.singular_endgame_iters,
                [&x0_trace](const CVector& p) { x0_trace.push_back(p(1)); });
  const bool x0_vanishes = std::abs(geometric_limit(x0_trace)) <= cfg.infinity_tol * inf_norm(wend);
  wend /= inf_norm(wend);
  r.endpoint = wend;
  if (std::abs(wend(1)) <= cfg.infinity_tol || x0_vanishes) {
    r.status = PathStatus::at_infinity;
    return r;
  }
  PathResult fin = from_endgame(endgame(h.target(), ProjectiveHomotopy::dehomogenize(wend), cfg), core.steps, true);
  return fin;
}

PathResult solve_path(const LinearHomotopy& h, const CVector& w0, const TrackerConfig& cfg) {
  const double s0 = cfg.start_time(h.target().dim());
  const auto u0 = warm_start(h, w0, s0, cfg);
  if (u0) {
    PathResult r = track_path(h, *u0, cfg);
    if (r.status == PathStatus::converged) return r;
    // an affine blowup already qualifies as at infinity; the retrace only gets to
    // overrule it with a converged endpoint
    PathResult p = retrace_projective(h, w0, cfg);
    if (p.status == PathStatus::failed && r.status == PathStatus::at_infinity) return r;
    return p;
  }
  return retrace_projective(h, w0, cfg);
}

}  // namespace teneig
