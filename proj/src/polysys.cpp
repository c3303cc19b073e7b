#include "teneig/polysys.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "teneig/random.hpp"

namespace teneig {

namespace {

DenseTensor magnitudes(const DenseTensor& t) {
  DenseTensor out(t.order(), t.dim());
  for (std::size_t i = 0; i < t.size(); ++i) out.entries()[i] = std::abs(t.entries()[i]);
  return out;
}

int checked_mode(const DenseTensor& a, int mode) {
  if (mode < 1 || mode > a.order()) {
    throw InputError("mode " + std::to_string(mode) + " out of range 1.." + std::to_string(a.order()));
  }
  return mode;
}

Complex ipow(Complex z, int p) {
  Complex r = 1.0;
  for (int i = 0; i < p; ++i) r *= z;
  return r;
}

}  // namespace

Hyperplane random_hyperplane(int n, std::uint64_t seed) {
  Rng rng(seed);
  Hyperplane h{CVector(n), 0.0};
  for (int i = 0; i < n; ++i) h.a(i) = rng.unit_complex();
  h.b = rng.unit_complex();
  return h;
}

EigenSystem::EigenSystem(DenseTensor a, DenseTensor b, int mode, Hyperplane plane)
    : a_(std::move(a)),
      b_(std::move(b)),
      mode_(mode),
      plane_(std::move(plane)),
      a_plan_(a_, checked_mode(a_, mode)),
      b_plan_(b_, 1),
      a_abs_(magnitudes(a_), mode),
      b_abs_(magnitudes(b_), 1) {
  if (a_.dim() != b_.dim()) {
    throw InputError("A has dimension " + std::to_string(a_.dim()) + " but B has dimension " +
                     std::to_string(b_.dim()));
  }
  if (plane_.a.size() != a_.dim()) throw InputError("hyperplane length does not match tensor dimension");
  if (plane_.a.cwiseAbs().maxCoeff() == 0.0) throw InputError("hyperplane normal is zero");
}

void EigenSystem::contractions(const CVector& x, CVector& ax, CMatrix& dax, CVector& bx, CMatrix& dbx) const {
  a_plan_.apply(x, ax, dax);
  b_plan_.apply(x, bx, dbx);
}

double EigenSystem::residual_scale(const CVector& u) const {
  const CVector ax = u.tail(dim()).cwiseAbs().cast<Complex>();
  const RVector terms = a_abs_.apply(ax).real() + std::abs(u(0)) * b_abs_.apply(ax).real();
  return std::max(1.0, terms.maxCoeff());
}

void EigenSystem::evaluate(const CVector& u, CVector& value, CMatrix& jac) const {
  const int n = dim();
  const Complex lambda = u(0);
  const CVector x = u.tail(n);
  CVector ax, bx;
  CMatrix dax, dbx;
  contractions(x, ax, dax, bx, dbx);
  value.resize(n + 1);
  value.head(n) = ax - lambda * bx;
  value(n) = plane_.eval(x);
  jac = CMatrix::Zero(n + 1, n + 1);
  jac.block(0, 0, n, 1) = -bx;
  jac.block(0, 1, n, n) = dax - lambda * dbx;
  jac.block(n, 1, 1, n) = plane_.a.transpose();
}

CVector EigenSystem::eval(const CVector& u) const {
  const int n = dim();
  const CVector x = u.tail(n);
  CVector out(n + 1);
  out.head(n) = a_plan_.apply(x) - u(0) * b_plan_.apply(x);
  out(n) = plane_.eval(x);
  return out;
}

CMatrix EigenSystem::jacobian(const CVector& u) const {
  CVector v;
  CMatrix j;
  evaluate(u, v, j);
  return j;
}

EigenSystem build_eigen_system(DenseTensor a, DenseTensor b, int k, std::uint64_t seed) {
  if (a.dim() != b.dim()) {
    throw InputError("A has dimension " + std::to_string(a.dim()) + " but B has dimension " +
                     std::to_string(b.dim()));
  }
  // B x^m' vanishing at a handful of random points means the form is identically zero.
  Rng probe(derive_seed(seed, 99));
  double largest = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    CVector x(b.dim());
    for (int i = 0; i < b.dim(); ++i) x(i) = Complex(probe.normal(), probe.normal());
    largest = std::max(largest, std::abs(multilinear_form(b, x)));
  }
  if (largest == 0.0) throw InputError("B x^m' is identically zero");
  const int n = a.dim();
  return EigenSystem(std::move(a), std::move(b), k, random_hyperplane(n, derive_seed(seed, 1)));
}

void StartSystem::evaluate(const CVector& u, CVector& value, CMatrix& jac) const {
  const int n = dim();
  const int e = degree - 1;
  const Complex lambda = u(0);
  value.resize(n + 1);
  jac = CMatrix::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    const Complex xi = u(i + 1);
    const Complex pe1 = ipow(xi, e - 1);
    const Complex binom = pe1 * xi - beta(i);
    const Complex lin = lambda - mu(i);
    value(i) = lin * binom;
    jac(i, 0) = binom;
    jac(i, i + 1) = lin * static_cast<double>(e) * pe1;
  }
  value(n) = c.cwiseProduct(u.tail(n)).sum() + d;
  jac.block(n, 1, 1, n) = c.transpose();
}

CVector StartSystem::eval(const CVector& u) const {
  CVector v;
  CMatrix j;
  evaluate(u, v, j);
  return v;
}

CMatrix StartSystem::jacobian(const CVector& u) const {
  CVector v;
  CMatrix j;
  evaluate(u, v, j);
  return j;
}

StartSystem build_start_system(int n, int degree, std::uint64_t seed) {
  if (n < 1) throw InputError("start system needs n >= 1");
  if (degree < 2) throw InputError("start system needs degree >= 2");
  Rng rng(seed);
  StartSystem q{CVector(n), CVector(n), CVector(n), 0.0, degree};
  for (int i = 0; i < n; ++i) {
    bool clash = true;
    while (clash) {
      q.mu(i) = rng.unit_complex();
      clash = false;
      for (int j = 0; j < i; ++j) clash = clash || std::abs(q.mu(i) - q.mu(j)) < 1e-3;
    }
  }
  for (int i = 0; i < n; ++i) q.beta(i) = rng.unit_complex();
  for (int i = 0; i < n; ++i) q.c(i) = rng.unit_complex();
  q.d = rng.unit_complex();
  return q;
}

long long start_solution_count(int n, int degree) {
  long long count = n;
  for (int i = 1; i < n; ++i) count *= degree - 1;
  return count;
}

std::vector<CVector> enumerate_start_solutions(const StartSystem& q) {
  const int n = q.dim();
  const int e = q.degree - 1;
  // roots[j][r] = r-th e-th root of beta_j
  std::vector<std::vector<Complex>> roots(n);
  for (int j = 0; j < n; ++j) {
    const double r = std::pow(std::abs(q.beta(j)), 1.0 / e);
    const double arg = std::arg(q.beta(j)) / e;
    for (int s = 0; s < e; ++s) roots[j].push_back(std::polar(r, arg + 2.0 * std::numbers::pi * s / e));
  }
  std::vector<CVector> out;
  out.reserve(static_cast<std::size_t>(start_solution_count(n, q.degree)));
  for (int i = 0; i < n; ++i) {
    if (q.c(i) == Complex(0.0, 0.0)) throw InputError("start system hyperplane has a zero coefficient");
    std::vector<int> choice(n, 0);
    while (true) {
      CVector u(n + 1);
      u(0) = q.mu(i);
      Complex acc = q.d;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        u(j + 1) = roots[j][choice[j]];
        acc += q.c(j) * u(j + 1);
      }
      u(i + 1) = -acc / q.c(i);
      out.push_back(u);
      int j = n - 1;
      for (; j >= 0; --j) {
        if (j == i) continue;
        if (++choice[j] < e) break;
        choice[j] = 0;
      }
      if (j < 0) break;
    }
  }
  return out;
}

LinearHomotopy::LinearHomotopy(StartSystem q, EigenSystem g, Complex gamma)
    : q_(std::move(q)), g_(std::move(g)), gamma_(gamma) {
  if (q_.dim() != g_.dim()) throw InputError("start and target systems differ in dimension");
  if (gamma_ == Complex(0.0, 0.0)) throw InputError("gamma must be nonzero");
}

void LinearHomotopy::evaluate(const CVector& u, double s, CVector& value, CMatrix& hu, CVector& hs) const {
  CVector qv, gv;
  CMatrix qj, gj;
  q_.evaluate(u, qv, qj);
  g_.evaluate(u, gv, gj);
  const double et = std::exp(s);
  const double om = -std::expm1(s);
  value = om * gamma_ * qv + et * gv;
  hu = om * gamma_ * qj + et * gj;
  hs = et * (gv - gamma_ * qv);
}

CVector LinearHomotopy::eval(const CVector& u, double s) const {
  return -std::expm1(s) * gamma_ * q_.eval(u) + std::exp(s) * g_.eval(u);
}

CMatrix LinearHomotopy::jac_u(const CVector& u, double s) const {
  return -std::expm1(s) * gamma_ * q_.jacobian(u) + std::exp(s) * g_.jacobian(u);
}

CVector LinearHomotopy::jac_s(const CVector& u, double s) const {
  return std::exp(s) * (g_.eval(u) - gamma_ * q_.eval(u));
}

ProjectiveHomotopy::ProjectiveHomotopy(const LinearHomotopy& h) : h_(h), degree_(h.start().degree) {
  const auto& g = h.target();
  if (degree_ < std::max(g.order_a(), g.order_b())) {
    throw InputError("start system degree is below the target degree");
  }
}

void ProjectiveHomotopy::parts(const CVector& w, CVector& qv, CMatrix& qj, CVector& gv, CMatrix& gj) const {
  const auto& q = h_.start();
  const auto& g = h_.target();
  const int n = dim();
  const int e = degree_ - 1;
  const Complex lambda = w(0);
  const Complex x0 = w(1);
  const CVector x = w.tail(n);

  qv.resize(n + 1);
  qj = CMatrix::Zero(n + 1, n + 2);
  const Complex x0e1 = ipow(x0, e - 1);
  const Complex x0e = x0e1 * x0;
  for (int i = 0; i < n; ++i) {
    const Complex xe1 = ipow(x(i), e - 1);
    const Complex binom = xe1 * x(i) - q.beta(i) * x0e;
    const Complex lin = lambda - q.mu(i) * x0;
    qv(i) = lin * binom;
    qj(i, 0) = binom;
    qj(i, 1) = -q.mu(i) * binom - lin * q.beta(i) * static_cast<double>(e) * x0e1;
    qj(i, i + 2) = lin * static_cast<double>(e) * xe1;
  }
  qv(n) = q.c.cwiseProduct(x).sum() + q.d * x0;
  qj(n, 1) = q.d;
  qj.block(n, 2, 1, n) = q.c.transpose();

  CVector ax, bx;
  CMatrix dax, dbx;
  g.contractions(x, ax, dax, bx, dbx);
  const int pa = degree_ - (g.order_a() - 1);
  const int pb = degree_ - g.order_b();
  const Complex x0pa = ipow(x0, pa);
  const Complex x0pb = ipow(x0, pb);
  const Complex dx0pa = pa > 0 ? static_cast<double>(pa) * ipow(x0, pa - 1) : Complex(0.0);
  const Complex dx0pb = pb > 0 ? static_cast<double>(pb) * ipow(x0, pb - 1) : Complex(0.0);
  gv.resize(n + 1);
  gj = CMatrix::Zero(n + 1, n + 2);
  gv.head(n) = x0pa * ax - lambda * x0pb * bx;
  gj.block(0, 0, n, 1) = -x0pb * bx;
  gj.block(0, 1, n, 1) = dx0pa * ax - lambda * dx0pb * bx;
  gj.block(0, 2, n, n) = x0pa * dax - lambda * x0pb * dbx;
  gv(n) = g.plane().a.cwiseProduct(x).sum() + g.plane().b * x0;
  gj(n, 1) = g.plane().b;
  gj.block(n, 2, 1, n) = g.plane().a.transpose();
}

void ProjectiveHomotopy::evaluate(const CVector& w, double s, CVector& value, CMatrix& hw, CVector& hs) const {
  CVector qv, gv;
  CMatrix qj, gj;
  parts(w, qv, qj, gv, gj);
  const Complex gamma = h_.gamma();
  const double et = std::exp(s);
  const double om = -std::expm1(s);
  value = om * gamma * qv + et * gv;
  hw = om * gamma * qj + et * gj;
  hs = et * (gv - gamma * qv);
}

CVector ProjectiveHomotopy::eval(const CVector& w, double s) const {
  CVector v, hs;
  CMatrix hw;
  evaluate(w, s, v, hw, hs);
  return v;
}

CVector ProjectiveHomotopy::embed(const CVector& u) {
  CVector w(u.size() + 1);
  w(0) = u(0);
  w(1) = 1.0;
  w.tail(u.size() - 1) = u.tail(u.size() - 1);
  return w;
}

CVector ProjectiveHomotopy::dehomogenize(const CVector& w) {
  CVector u(w.size() - 1);
  u(0) = w(0) / w(1);
  u.tail(w.size() - 2) = w.tail(w.size() - 2) / w(1);
  return u;
}

NewtonHomotopySystem::NewtonHomotopySystem(DenseTensor a, DenseTensor b, int mode, RVector plane_a,
                                           double plane_b, RVector anchor)
    : base_(std::move(a), std::move(b), mode, Hyperplane{plane_a.cast<Complex>(), Complex(plane_b, 0.0)}),
      anchor_(std::move(anchor)) {
  if (anchor_.size() != base_.dim() + 1) throw InputError("anchor length must be n + 1");
  anchor_value_ = base(anchor_);
}

RVector NewtonHomotopySystem::base(const RVector& u) const { return base_.eval(u.cast<Complex>()).real(); }

RVector NewtonHomotopySystem::eval(const RVector& u, double t) const {
  return base(u) - (1.0 - t) * anchor_value_;
}

RMatrix NewtonHomotopySystem::jacobian(const RVector& u, double /*t*/) const {
  const int n = base_.dim();
  RMatrix j(n + 1, n + 2);
  j.leftCols(n + 1) = base_.jacobian(u.cast<Complex>()).real();
  j.col(n + 1) = anchor_value_;
  return j;
}

}  // namespace teneig
