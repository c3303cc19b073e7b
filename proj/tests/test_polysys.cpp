#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "brute.hpp"
#include "teneig/polysys.hpp"
#include "teneig/random.hpp"
#include "teneig/testkit.hpp"

using namespace teneig;
using testkit::random_vector;

namespace {

template <typename F>
CMatrix central_difference(F&& f, const CVector& u, double h = 1e-6) {
  const CVector f0 = f(u);
  CMatrix jac(f0.size(), u.size());
  for (int j = 0; j < u.size(); ++j) {
    CVector up = u, um = u;
    up(j) += h;
    um(j) -= h;
    jac.col(j) = (f(up) - f(um)) / (2 * h);
  }
  return jac;
}

EigenSystem random_system(int m, int mp, int n, std::uint64_t seed) {
  const testkit::RandomSpec spec{m, mp, n, seed, testkit::Field::complex, false};
  return build_eigen_system(testkit::random_tensor(spec), testkit::random_b_tensor(spec), 1, seed);
}

}  // namespace

TEST_CASE("random hyperplane is seeded and unit modulus") {
  const Hyperplane p = random_hyperplane(4, 7);
  const Hyperplane q = random_hyperplane(4, 7);
  CHECK(p.a == q.a);
  CHECK(p.b == q.b);
  for (const auto& z : p.a) CHECK(std::abs(std::abs(z) - 1.0) < 1e-15);
  CHECK(std::abs(std::abs(p.b) - 1.0) < 1e-15);
  CHECK(random_hyperplane(4, 8).a != p.a);
}

TEST_CASE("eigen-system value and Jacobian") {
  for (auto [m, mp, n] : {std::tuple{3, 2, 2}, {4, 4, 3}, {5, 3, 2}, {3, 4, 3}}) {
    const EigenSystem g = random_system(m, mp, n, 11);
    const CVector u = random_vector(n + 1, 5);
    const CVector x = u.tail(n);
    const CVector value = g.eval(u);
    const CVector expected = brute::apply(g.a(), 1, x) - u(0) * brute::apply(g.b(), 1, x);
    CHECK(inf_norm(value.head(n) - expected) <= 1e-12 * g.residual_scale(u));
    CHECK(std::abs(value(n) - g.plane().eval(x)) <= 1e-14);

    const CMatrix fd = central_difference([&g](const CVector& v) { return g.eval(v); }, u);
    CHECK((g.jacobian(u) - fd).cwiseAbs().maxCoeff() <= 1e-6 * g.residual_scale(u));
    CVector v2;
    CMatrix j2;
    g.evaluate(u, v2, j2);
    CHECK(v2 == value);
    CHECK((j2 - g.jacobian(u)).cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.residual_scale(u) >= 1.0);
  }
}

TEST_CASE("eigen-system input validation") {
  const DenseTensor a = testkit::random_tensor({3, 2, 3, 1, testkit::Field::complex, false});
  CHECK_THROWS_AS(build_eigen_system(a, identity_tensor(2, 2), 1, 0), InputError);
  CHECK_THROWS_AS(build_eigen_system(a, identity_tensor(2, 3), 0, 0), InputError);
  CHECK_THROWS_AS(build_eigen_system(a, identity_tensor(2, 3), 4, 0), InputError);
  CHECK_THROWS_AS(build_eigen_system(a, DenseTensor(2, 3), 1, 0), InputError);
  // x^T S x vanishes identically for skew-symmetric S
  DenseTensor skew(2, 3);
  skew.at({1, 2}) = 1.0;
  skew.at({2, 1}) = -1.0;
  CHECK_THROWS_AS(build_eigen_system(a, skew, 1, 0), InputError);
  CHECK_NOTHROW(build_eigen_system(a, identity_tensor(2, 3), 3, 0));
}

TEST_CASE("start system roots") {
  for (auto [n, d] : {std::pair{2, 3}, {3, 4}, {4, 2}, {2, 6}}) {
    const StartSystem q = build_start_system(n, d, 3);
    CHECK(start_solution_count(n, d) == n * static_cast<long long>(std::pow(d - 1, n - 1)));
    const auto roots = enumerate_start_solutions(q);
    CHECK(static_cast<long long>(roots.size()) == start_solution_count(n, d));
    std::set<std::pair<double, double>> seen;
    for (const auto& r : roots) {
      CHECK(inf_norm(q.eval(r)) <= 1e-12);
      const CMatrix fd = central_difference([&q](const CVector& v) { return q.eval(v); }, r);
      CHECK((q.jacobian(r) - fd).cwiseAbs().maxCoeff() <= 1e-6);
      CHECK(Eigen::FullPivLU<CMatrix>(q.jacobian(r)).isInvertible());
      seen.insert({r.real().sum(), r.imag().sum()});
    }
    CHECK(seen.size() == roots.size());
  }
}

TEST_CASE("linear homotopy interpolates gamma Q and G") {
  const EigenSystem g = random_system(4, 3, 2, 2);
  const StartSystem q = build_start_system(2, 4, 5);
  const Complex gamma = Rng(9).unit_complex();
  const LinearHomotopy h(q, g, gamma);
  const CVector u = random_vector(3, 1);
  CHECK(inf_norm(h.eval(u, 0.0) - g.eval(u)) <= 1e-13 * g.residual_scale(u));
  CHECK(inf_norm(h.eval(u, -60.0) - gamma * q.eval(u)) <= 1e-12 * g.residual_scale(u));
  const double s = -0.7;
  const CMatrix fd = central_difference([&](const CVector& v) { return h.eval(v, s); }, u);
  CHECK((h.jac_u(u, s) - fd).cwiseAbs().maxCoeff() <= 1e-6 * g.residual_scale(u));
  const double ds = 1e-6;
  const CVector fds = (h.eval(u, s + ds) - h.eval(u, s - ds)) / (2 * ds);
  CHECK(inf_norm(h.jac_s(u, s) - fds) <= 1e-6 * g.residual_scale(u));
}

TEST_CASE("projective homotopy is homogeneous and agrees on the affine chart") {
  const EigenSystem g = random_system(3, 5, 2, 4);
  const StartSystem q = build_start_system(2, 5, 6);
  const LinearHomotopy h(q, g, Rng(1).unit_complex());
  const ProjectiveHomotopy p(h);
  CHECK(p.degree() == 5);
  const CVector u = random_vector(3, 2);
  const double s = -1.3;
  const CVector w = ProjectiveHomotopy::embed(u);
  CHECK(w(1) == Complex(1.0));
  CHECK(inf_norm(p.eval(w, s) - h.eval(u, s)) <= 1e-12 * g.residual_scale(u));
  CHECK(inf_norm(ProjectiveHomotopy::dehomogenize(w) - u) == 0.0);

  const Complex alpha(0.3, -1.1);
  const CVector scaled = p.eval(alpha * w, s);
  const CVector base = p.eval(w, s);
  CHECK(inf_norm(scaled.head(2) - std::pow(alpha, 5) * base.head(2)) <= 1e-12 * inf_norm(base));
  CHECK(std::abs(scaled(2) - alpha * base(2)) <= 1e-12 * inf_norm(base));

  CVector value, hs;
  CMatrix hw;
  p.evaluate(w, s, value, hw, hs);
  const CMatrix fd = central_difference([&](const CVector& v) { return p.eval(v, s); }, w);
  CHECK((hw - fd).cwiseAbs().maxCoeff() <= 1e-6 * g.residual_scale(u));
}

TEST_CASE("Newton homotopy system starts at the anchor and ends at the real target") {
  const DenseTensor a = testkit::random_tensor({3, 2, 2, 8, testkit::Field::real, true});
  RVector plane(2);
  plane << 0.6, -0.8;
  RVector anchor(3);
  anchor << 0.4, 1.2, -0.3;
  const NewtonHomotopySystem nh(a, identity_tensor(2, 2), 1, plane, 0.25, anchor);
  CHECK(nh.dim() == 2);
  CHECK(nh.eval(anchor, 0.0).cwiseAbs().maxCoeff() <= 1e-15);
  RVector v(3);
  v << -0.2, 0.5, 0.9;
  CHECK((nh.eval(v, 1.0) - nh.base(v)).cwiseAbs().maxCoeff() == 0.0);
  const RVector x = v.tail(2);
  const RVector expect = (brute::apply(a, 1, x.cast<Complex>()) - v(0) * x.cast<Complex>()).real();
  CHECK((nh.base(v).head(2) - expect).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK(std::abs(nh.base(v)(2) - (plane.dot(x) + 0.25)) <= 1e-15);

  const double t = 0.4;
  const RMatrix jac = nh.jacobian(v, t);
  REQUIRE(jac.rows() == 3);
  REQUIRE(jac.cols() == 4);
  const double h = 1e-6;
  for (int j = 0; j < 3; ++j) {
    RVector vp = v, vm = v;
    vp(j) += h;
    vm(j) -= h;
    CHECK((jac.col(j) - (nh.eval(vp, t) - nh.eval(vm, t)) / (2 * h)).cwiseAbs().maxCoeff() <= 1e-6);
  }
  CHECK((jac.col(3) - (nh.eval(v, t + h) - nh.eval(v, t - h)) / (2 * h)).cwiseAbs().maxCoeff() <= 1e-6);
}
