#pragma once

#include <cstdint>
#include <vector>

#include "teneig/tensor.hpp"
#include "teneig/types.hpp"

namespace teneig {

/// a . x + b = 0 (no conjugation).
struct Hyperplane {
  CVector a;
  Complex b;

  Complex eval(const CVector& x) const { return a.cwiseProduct(x).sum() + b; }
};

/// Unit-modulus random hyperplane of length n.
Hyperplane random_hyperplane(int n, std::uint64_t seed);

/// The augmented eigen-system in u = (lambda, x1..xn):
///
///   A^(k) x^(m-1) - lambda * B x^(m'-1) = 0   (n equations)
///   a . x + b = 0
class EigenSystem {
 public:
  EigenSystem(DenseTensor a, DenseTensor b, int mode, Hyperplane plane);

  int dim() const { return a_.dim(); }
  int order_a() const { return a_.order(); }
  int order_b() const { return b_.order(); }
  int mode() const { return mode_; }
  const DenseTensor& a() const { return a_; }
  const DenseTensor& b() const { return b_; }
  const Hyperplane& plane() const { return plane_; }

  CVector eval(const CVector& u) const;
  CMatrix jacobian(const CVector& u) const;
  void evaluate(const CVector& u, CVector& value, CMatrix& jac) const;

  /// A^(k) x^(m-1) and B x^(m'-1) with their x-Jacobians.
  void contractions(const CVector& x, CVector& ax, CMatrix& dax, CVector& bx, CMatrix& dbx) const;

  /// Magnitude of the summed terms, |A| |x|^(m-1) + |lambda| |B| |x|^(m'-1) in inf-norm
  /// (at least 1); rounding in G(u) is proportional to it.
  double residual_scale(const CVector& u) const;

 private:
  DenseTensor a_;
  DenseTensor b_;
  int mode_;
  Hyperplane plane_;
  ModeContraction a_plan_;
  ModeContraction b_plan_;
  ModeContraction a_abs_;
  ModeContraction b_abs_;
};

/// Validates shapes and mode, checks that B x^m' is not identically zero, and
/// draws the hyperplane from `seed`.
EigenSystem build_eigen_system(DenseTensor a, DenseTensor b, int k, std::uint64_t seed);

/// Product-form start system
///
///   (lambda - mu_i)(x_i^(d-1) - beta_i) = 0,  i = 1..n
///   c . x + d0 = 0
///
/// where d = `degree`. With d = m this is the optimal start system for the
/// m = m' problem; with d = max(m, m') it has the multihomogeneous form of the
/// m != m' problem.
struct StartSystem {
  CVector mu;
  CVector beta;
  CVector c;
  Complex d;
  int degree;

  int dim() const { return static_cast<int>(mu.size()); }
  CVector eval(const CVector& u) const;
  CMatrix jacobian(const CVector& u) const;
  void evaluate(const CVector& u, CVector& value, CMatrix& jac) const;
};

/// Unit-modulus parameters; mu values closer than 1e-3 are redrawn.
StartSystem build_start_system(int n, int degree, std::uint64_t seed);

/// Number of start roots: n (d-1)^(n-1).
long long start_solution_count(int n, int degree);

/// All roots of Q in closed form, grouped by which mu_i lambda equals.
std::vector<CVector> enumerate_start_solutions(const StartSystem& q);

/// H(u, s) = (1 - e^s) gamma Q(u) + e^s G(u), s in (-inf, 0].
class LinearHomotopy {
 public:
  LinearHomotopy(StartSystem q, EigenSystem g, Complex gamma);

  const StartSystem& start() const { return q_; }
  const EigenSystem& target() const { return g_; }
  Complex gamma() const { return gamma_; }
  int unknowns() const { return g_.dim() + 1; }

  CVector eval(const CVector& u, double s) const;
  CMatrix jac_u(const CVector& u, double s) const;
  CVector jac_s(const CVector& u, double s) const;
  void evaluate(const CVector& u, double s, CVector& value, CMatrix& hu, CVector& hs) const;

 private:
  StartSystem q_;
  EigenSystem g_;
  Complex gamma_;
};

/// Homogenized LinearHomotopy in w = (lambda, x0, x1..xn). Every component is
/// homogeneous, so (alpha lambda, alpha xhat) is a root whenever (lambda, xhat)
/// is. The first n components have total degree max(m, m'); the last is linear.
class ProjectiveHomotopy {
 public:
  explicit ProjectiveHomotopy(const LinearHomotopy& h);

  int dim() const { return h_.target().dim(); }
  int degree() const { return degree_; }

  CVector eval(const CVector& w, double s) const;
  void evaluate(const CVector& w, double s, CVector& value, CMatrix& hw, CVector& hs) const;

  /// (lambda, x) -> (lambda, 1, x).
  static CVector embed(const CVector& u);
  /// (lambda, x0, x) -> (lambda / x0, x / x0).
  static CVector dehomogenize(const CVector& w);

 private:
  void parts(const CVector& w, CVector& qv, CMatrix& qj, CVector& gv, CMatrix& gj) const;

  const LinearHomotopy& h_;
  int degree_;
};

/// Real system P(lambda, x) - (1 - t) P(anchor), P the eigen-system over the
/// reals including a real hyperplane. Unknowns v = (lambda, x, t).
class NewtonHomotopySystem {
 public:
  NewtonHomotopySystem(DenseTensor a, DenseTensor b, int mode, RVector plane_a, double plane_b, RVector anchor);

  int dim() const { return static_cast<int>(anchor_.size()) - 1; }
  const RVector& anchor() const { return anchor_; }

  /// P(lambda, x) on the reals, n + 1 components.
  RVector base(const RVector& u) const;
  RVector eval(const RVector& u, double t) const;
  /// (n+1) x (n+2) Jacobian with respect to (lambda, x, t).
  RMatrix jacobian(const RVector& u, double t) const;

 private:
  EigenSystem base_;
  RVector anchor_;
  RVector anchor_value_;
};

}  // namespace teneig
