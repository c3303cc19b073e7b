#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "teneig/random.hpp"
#include "teneig/solution_store.hpp"
#include "teneig/testkit.hpp"
#include "teneig/tracker.hpp"

using namespace teneig;

TEST_CASE("config defaults and validation") {
  TrackerConfig cfg;
  CHECK(cfg.start_time(2) == doctest::Approx(-60.0));
  cfg.s0 = -5.0;
  CHECK(cfg.start_time(2) == -5.0);
  CHECK_NOTHROW(cfg.validate());
  for (auto bad : {&TrackerConfig::newton_tol, &TrackerConfig::duplicate_tol, &TrackerConfig::imag_tol,
                   &TrackerConfig::corrector_tol, &TrackerConfig::min_step}) {
    TrackerConfig c;
    c.*bad = -1.0;
    CHECK_THROWS_AS(c.validate(), InputError);
  }
  TrackerConfig c;
  c.max_corrector_iters = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("condition number") {
  CHECK(condition_number(CMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 1e-6;
  CHECK(condition_number(d) == doctest::Approx(1e6));
  CHECK(std::isinf(condition_number(CMatrix::Zero(2, 2))));
}

TEST_CASE("every start root of a matrix pencil tracks to an eigenpair") {
  const testkit::RandomSpec spec{2, 2, 3, 4, testkit::Field::complex, false};
  const DenseTensor a = testkit::random_tensor(spec);
  const DenseTensor b = testkit::random_b_tensor(spec);
  const EigenSystem g = build_eigen_system(a, b, 1, 1);
  const StartSystem q = build_start_system(3, 2, 2);
  const LinearHomotopy h(q, g, Rng(3).unit_complex());
  const TrackerConfig cfg;
  CMatrix am(3, 3), bm(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      am(i, j) = a.at({i + 1, j + 1});
      bm(i, j) = b.at({i + 1, j + 1});
    }
  }
  auto oracle = testkit::matrix_eig_oracle(am, bm);
  for (const auto& w0 : enumerate_start_solutions(q)) {
    const PathResult r = solve_path(h, w0, cfg);
    REQUIRE(r.status == PathStatus::converged);
    CHECK(r.kind == EndpointKind::regular);
    CHECK(r.residual <= cfg.newton_tol * g.residual_scale(r.endpoint));
    const Complex lambda = r.endpoint(0);
    const auto hit = std::min_element(oracle.begin(), oracle.end(), [&](Complex p, Complex q2) {
      return std::abs(p - lambda) < std::abs(q2 - lambda);
    });
    CHECK(std::abs(*hit - lambda) <= 1e-8 * std::max(1.0, std::abs(lambda)));
    oracle.erase(hit);
  }
  CHECK(oracle.empty());
}

TEST_CASE("endgame refines and classifies") {
  // Z-problem of x1^3 + x2^3: the pair (1, (1, 0)) is regular.
  DenseTensor a(3, 2);
  a.at({1, 1, 1}) = 1.0;
  a.at({2, 2, 2}) = 1.0;
  Hyperplane plane{CVector::Ones(2), Complex(-1.0)};
  const EigenSystem g(a, identity_tensor(2, 2), 1, plane);
  CVector u(3);
  u << 1.0 + 1e-5, 1.0 - 1e-6, 1e-6;
  const TrackerConfig cfg;
  const EndgameResult r = endgame(g, u, cfg);
  CHECK(r.converged);
  CHECK(r.kind == EndpointKind::regular);
  CHECK(std::abs(r.endpoint(0) - 1.0) < 1e-12);
  CHECK(std::abs(r.endpoint(2)) < 1e-12);
  CHECK(r.cond_estimate < cfg.cond_threshold);
}

TEST_CASE("endgame flags a point on a solution curve as positive dimensional") {
  // 2 x1^3 + 3 x1 x2^2 + 3 x1 x3^2: lambda = 2 x1 with x2^2 + x3^2 = 0 is a curve.
  const MonomialForm f(3, 3, {{2.0, {3, 0, 0}}, {3.0, {1, 2, 0}}, {3.0, {1, 0, 2}}});
  const Hyperplane plane = random_hyperplane(3, 4);
  const EigenSystem g(from_monomials(f), identity_tensor(2, 3), 1, plane);
  // pick x = (x1, s, i s) on the hyperplane
  const Complex s(0.3, 0.2);
  const Complex x1 = -(plane.a(1) * s + plane.a(2) * Complex(0, 1) * s + plane.b) / plane.a(0);
  CVector u(4);
  u << 2.0 * x1, x1, s, Complex(0, 1) * s;
  REQUIRE(inf_norm(g.eval(u)) < 1e-12);
  const EndgameResult r = endgame(g, u, TrackerConfig{});
  CHECK(r.converged);
  CHECK(r.kind == EndpointKind::positive_dimensional);
}

TEST_CASE("solution store lookup window") {
  SolutionStore store(1e-6);
  CVector p(2), q(2), r(2);
  p << Complex(1.0, 0.0), Complex(2.0, 0.0);
  q << Complex(1.0 + 5e-7, 0.0), Complex(2.0, 3e-7);
  r << Complex(1.0, 0.0), Complex(2.1, 0.0);
  CHECK(store.insert(p, 1.0) == 0);
  CHECK(store.insert(r, 1e12) == 1);
  CHECK(store.near(q) == std::vector<int>{0});
  CHECK(store.near(r) == std::vector<int>{1});
  CVector far = p;
  far(0) += 1e-3;
  CHECK(store.near(far).empty());

  TrackerConfig cfg;
  const DuplicateCheck d = check_duplicate(store, q, 1.0, cfg);
  CHECK(d.duplicate);
  CHECK(d.id == 0);
  CHECK_FALSE(d.curve_jump);
  const DuplicateCheck jump = check_duplicate(store, r, 1e11, cfg);
  CHECK(jump.duplicate);
  CHECK(jump.curve_jump);
  CHECK_FALSE(check_duplicate(store, far, 1.0, cfg).duplicate);
}
