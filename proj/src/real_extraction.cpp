#include <algorithm>
#include <cmath>
#include <numbers>

#include "teneig/eig.hpp"
#include "teneig/random.hpp"

namespace teneig {

namespace {

double pair_residual(const DenseTensor& a, const DenseTensor& b, int k, Complex lambda, const CVector& x) {
  return inf_norm(mode_k_apply(a, k, x) - lambda * mode_k_apply(b, 1, x));
}

std::optional<EigenPair> accept_real(const EigenPair& base, double lambda, const RVector& x, const DenseTensor& a,
                                     const DenseTensor& b, int k) {
  if (!x.allFinite() || x.cwiseAbs().maxCoeff() == 0.0 || !std::isfinite(lambda)) return std::nullopt;
  EigenPair p = base;
  p.lambda = lambda;
  p.x = x.cast<Complex>();
  p.residual = pair_residual(a, b, k, p.lambda, p.x);
  p.is_real = true;
  if (p.residual > residual_bound(p, a.order(), b.order())) return std::nullopt;
  return p;
}

/// Real root of B v^m' = c for the heuristic normalization; nullopt when none exists.
std::optional<RVector> real_normalize(const RVector& v, const DenseTensor& b, int m) {
  if (b.order() == m) return v;
  const double form = multilinear_form(b, v.cast<Complex>()).real();
  const int mp = b.order();
  if (form == 0.0) return std::nullopt;
  if (form < 0.0 && mp % 2 == 0) return std::nullopt;
  const double root = form < 0.0 ? -std::pow(-form, 1.0 / mp) : std::pow(form, 1.0 / mp);
  return RVector(v / root);
}

/// Null space of a real (n+1) x (n+2) Jacobian; always at least one column.
RMatrix null_space(const RMatrix& j) {
  Eigen::JacobiSVD<RMatrix> svd(j, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int cols = static_cast<int>(j.cols());
  int rank = static_cast<int>(sv.size());
  while (rank > 0 && sv(rank - 1) <= 1e-8 * std::max(sv(0), 1e-300)) --rank;
  rank = std::min(rank, cols - 1);
  return svd.matrixV().rightCols(cols - rank);
}

/// Gauss-Newton with pseudo-inverse corrections; the rank-deficient branches met on
/// positive-dimensional components need the minimum-norm step.
template <typename Eval>
bool gauss_newton(Eval&& eval, RVector& y, int iters, double tol) {
  double prev = std::numeric_limits<double>::infinity();
  for (int it = 0; it < iters; ++it) {
    RVector f;
    RMatrix j;
    eval(y, f, j);
    const RVector d = j.completeOrthogonalDecomposition().solve(-f);
    if (!d.allFinite()) return false;
    const double step = d.cwiseAbs().maxCoeff();
    y += d;
    if (step <= tol * std::max(1.0, y.cwiseAbs().maxCoeff())) return true;
    if (it > 1 && step > prev) return false;
    prev = step;
  }
  return false;
}

/// Tracks P(v) - (1 - t) P(anchor) = 0 from t = 0 to t = 1 by pseudo-arclength.
std::optional<RVector> newton_homotopy(const NewtonHomotopySystem& nh, const RVector& anchor) {
  const int unknowns = static_cast<int>(anchor.size());
  RVector y(unknowns + 1);
  y << anchor, 0.0;
  RVector tangent = RVector::Zero(unknowns + 1);
  tangent(unknowns) = 1.0;
  double h = 0.05 * std::max(1.0, anchor.cwiseAbs().maxCoeff());
  const double h_max = 0.25 * std::max(1.0, anchor.cwiseAbs().maxCoeff());

  auto full = [&nh, unknowns](const RVector& p, RVector& f, RMatrix& j) {
    f = nh.eval(p.head(unknowns), p(unknowns));
    j = nh.jacobian(p.head(unknowns), p(unknowns));
  };
  auto tangent_at = [&](const RVector& p, const RVector& prev) {
    RVector f;
    RMatrix j;
    full(p, f, j);
    const RMatrix ns = null_space(j);
    RVector t = ns * (ns.transpose() * prev);
    if (t.norm() < 1e-12) t = ns.col(0);
    t.normalize();
    if (t.dot(prev) < 0.0) t = -t;
    return t;
  };

  // Singular targets fold the real curve just short of t = 1; Gauss-Newton from the
  // fold point lands on the nearby real root.
  auto finish = [&nh, unknowns](const RVector& p) {
    RVector v = p.head(unknowns);
    auto at_one = [&nh](const RVector& q, RVector& f, RMatrix& j) {
      f = nh.eval(q, 1.0);
      j = nh.jacobian(q, 1.0).leftCols(q.size());
    };
    gauss_newton(at_one, v, 200, 1e-15);
    return v;
  };

  int successes = 0;
  for (int step = 0; step < 5000; ++step) {
    const double dt_prev = tangent(unknowns);
    tangent = tangent_at(y, tangent);
    if (!tangent.allFinite()) return std::nullopt;
    if (step > 0 && dt_prev > 0.0 && tangent(unknowns) <= 0.0) {
      return y(unknowns) > 0.9 ? std::optional(finish(y)) : std::nullopt;
    }
    RVector trial = y + h * tangent;
    bool ok = gauss_newton(full, trial, 6, 1e-10);
    if (ok && (trial - y).norm() > 2.0 * h) ok = false;
    if (!ok) {
      h /= 2.0;
      successes = 0;
      if (h < 1e-8 && y(unknowns) > 0.9) return finish(y);
      if (h < 1e-12) return std::nullopt;
      continue;
    }
    if (trial(unknowns) >= 1.0) return finish(trial);
    if (trial(unknowns) < -1.0) return std::nullopt;
    y = trial;
    if (++successes >= 2) {
      h = std::min(2.0 * h, h_max);
      successes = 0;
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<EigenPair> real_candidates(const std::vector<EigenPair>& pairs, int m, int mprime, double imag_tol) {
  std::vector<EigenPair> out;
  const int gap = m - mprime;
  const bool rotate = gap != 0 && mprime % gap == 0 && (mprime / gap) % 4 == 0 && mprime / gap != 0;
  for (const auto& p : pairs) {
    if (std::abs(p.lambda.imag()) < imag_tol) {
      out.push_back(p);
      continue;
    }
    if (rotate && std::abs(p.lambda.real()) < imag_tol) {
      const double e = 1.0 / gap;
      EigenPair plus = p;
      plus.lambda = p.lambda.imag();
      plus.x = std::pow(Complex(0.0, -1.0), e) * p.x;
      EigenPair minus = p;
      minus.lambda = -p.lambda.imag();
      minus.x = std::pow(Complex(0.0, 1.0), e) * p.x;
      out.push_back(plus);
      out.push_back(minus);
    }
  }
  return out;
}

std::vector<double> real_eigenvalues(const std::vector<EigenPair>& pairs, int m, int mprime, double imag_tol) {
  std::vector<double> out;
  for (const auto& p : real_candidates(pairs, m, mprime, imag_tol)) out.push_back(p.lambda.real());
  return out;
}

std::optional<EigenPair> extract_real_pair(const EigenPair& pair, const DenseTensor& a, const DenseTensor& b, int k,
                                           const TrackerConfig& cfg, std::uint64_t seed) {
  if (std::abs(pair.lambda.imag()) >= cfg.imag_tol) return std::nullopt;
  if (!a.is_real() || !b.is_real()) return std::nullopt;
  const int m = a.order();
  const double lambda = pair.lambda.real();
  const RVector re = pair.x.real();
  const RVector im = pair.x.imag();

  if (pair.classification != EndpointKind::positive_dimensional && im.norm() < cfg.imag_tol) {
    if (auto p = accept_real(pair, lambda, re, a, b, k)) return p;
  }

  if (pair.classification == EndpointKind::positive_dimensional) {
    for (const RVector& v : {re, im}) {
      if (v.norm() == 0.0) continue;
      if (auto w = real_normalize(v, b, m)) {
        if (auto p = accept_real(pair, lambda, *w, a, b, k)) return p;
      }
    }
  }

  if (re.norm() == 0.0) return std::nullopt;
  Rng rng(derive_seed(seed, 11));
  RVector plane = re / re.norm();
  for (int i = 0; i < plane.size(); ++i) plane(i) += 0.1 * rng.normal();
  const double offset = -plane.dot(re);
  RVector anchor(re.size() + 1);
  anchor << lambda, re;
  const NewtonHomotopySystem nh(a, b, k, plane, offset, anchor);
  const auto root = newton_homotopy(nh, anchor);
  if (!root) return std::nullopt;
  // The homotopy leaves lambda free; a real x for a different eigenvalue is not an answer.
  const auto x = real_normalize(root->tail(re.size()), b, m);
  if (!x) return std::nullopt;
  const double ratio = root->tail(re.size()).dot(*x) / x->squaredNorm();
  const double found = (*root)(0) * std::pow(ratio, b.order() - m);
  if (std::abs(found - lambda) > 1e-4 * std::max(1.0, std::abs(lambda))) return std::nullopt;
  return accept_real(pair, found, *x, a, b, k);
}

namespace {

int first_significant(const RVector& x) {
  const double scale = x.cwiseAbs().maxCoeff();
  for (int i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) > 1e-8 * scale) return i;
  }
  return 0;
}

bool same_real_pair(const EigenPair& p, const EigenPair& q) {
  const double lam = std::abs(p.lambda - q.lambda);
  return lam <= 1e-6 * std::max(1.0, std::abs(p.lambda)) && inf_norm(p.x - q.x) <= 1e-6;
}

template <typename Normalize>
RealReport extract_all(SolveReport complex, const DenseTensor& a, const DenseTensor& b, const TrackerConfig& cfg,
                       Normalize&& normalize) {
  RealReport out;
  const auto candidates = real_candidates(complex.pairs, complex.m, complex.mprime, cfg.imag_tol);
  std::uint64_t salt = 0;
  for (const auto& c : candidates) {
    auto r = extract_real_pair(c, a, b, complex.k, cfg, derive_seed(complex.seed, 1000 + salt++));
    if (!r) continue;
    EigenPair p = normalize(*r);
    p.residual = pair_residual(a, b, complex.k, p.lambda, p.x);
    const auto dup = std::find_if(out.real.begin(), out.real.end(), [&p](const EigenPair& q) { return same_real_pair(p, q); });
    if (dup != out.real.end()) {
      dup->multiplicity += p.multiplicity;
      if (p.classification > dup->classification) {
        dup->classification = p.classification;
        dup->component_id = p.component_id;
      }
      continue;
    }
    out.real.push_back(std::move(p));
  }
  std::sort(out.real.begin(), out.real.end(), [](const EigenPair& p, const EigenPair& q) {
    if (p.lambda.real() != q.lambda.real()) return p.lambda.real() < q.lambda.real();
    const RVector px = p.x.real();
    const RVector qx = q.x.real();
    return std::lexicographical_compare(px.begin(), px.end(), qx.begin(), qx.end());
  });
  out.complex = std::move(complex);
  return out;
}

}  // namespace

RealReport zeig(const DenseTensor& a, std::uint64_t seed, const TrackerConfig& cfg) {
  if (!a.is_real()) throw InputError("zeig requires a real tensor");
  if (a.order() < 3) throw InputError("zeig requires order >= 3");
  const DenseTensor b = identity_tensor(2, a.dim());
  const int m = a.order();
  return extract_all(eeig(a, 1, seed, cfg), a, b, cfg, [m](EigenPair p) {
    RVector x = p.x.real();
    double t = 1.0 / x.norm();
    if (x(first_significant(x)) < 0.0) t = -t;
    p.x = (t * x).cast<Complex>();
    p.lambda = std::pow(t, m - 2) * p.lambda.real();
    return p;
  });
}

RealReport heig(const DenseTensor& a, std::uint64_t seed, const TrackerConfig& cfg) {
  if (!a.is_real()) throw InputError("heig requires a real tensor");
  if (a.order() < 3) throw InputError("heig requires order >= 3");
  const DenseTensor b = identity_tensor(a.order(), a.dim());
  return extract_all(teig(a, b, 1, seed, cfg), a, b, cfg, [](EigenPair p) {
    p.x = max_abs_normalize(CVector(p.x.real().cast<Complex>()));
    return p;
  });
}

}  // namespace teneig
