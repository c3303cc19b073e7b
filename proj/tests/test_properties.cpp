#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "suites.hpp"

using namespace teneig;

namespace {

void report(const suites::Outcome& o) {
  for (const auto& f : o.failures) MESSAGE(f);
}

}  // namespace

TEST_CASE("50 two-variable problems match the elimination oracle") {
  const suites::Outcome o = suites::two_variable_suite(50);
  report(o);
  CHECK(o.instances == 50);
  CHECK(o.ok());
}

TEST_CASE("20 matrix pencils match the dense eigensolver") {
  const suites::Outcome o = suites::pencil_suite(20);
  report(o);
  CHECK(o.instances == 20);
  CHECK(o.ok());
}

TEST_CASE("generic solves satisfy the invariants and rerun identically") {
  for (auto [m, mp, n] : {std::tuple{3, 3, 3}, {4, 2, 3}, {3, 4, 3}, {4, 3, 2}}) {
    const testkit::RandomSpec spec{m, mp, n, 77, testkit::Field::complex, false};
    const DenseTensor a = testkit::random_tensor(spec);
    const DenseTensor b = testkit::random_b_tensor(spec);
    const SolveReport r1 = solve_eigenpairs(a, b, 1, 5);
    const SolveReport r2 = solve_eigenpairs(a, b, 1, 5);
    suites::Outcome o;
    const std::string tag = std::to_string(m) + "," + std::to_string(mp) + "," + std::to_string(n);
    suites::check_report(a, b, r1, tag, o);
    suites::check_rerun(r1, r2, tag, o);
    report(o);
    CHECK(o.ok());
    CHECK(r1.complete());
    long long classes = 0;
    for (const auto& p : r1.pairs) classes += p.multiplicity;
    CHECK(classes == path_count(m, mp, n));
    CHECK(r1.paths_at_infinity == tracked_path_count(m, mp, n) - path_count(m, mp, n));
  }
}

TEST_CASE("mode-k pairs are mode-l pairs of the transposed tensor") {
  const testkit::RandomSpec spec{4, 2, 2, 31, testkit::Field::complex, false};
  const DenseTensor a = testkit::random_tensor(spec);
  const DenseTensor b = testkit::random_b_tensor(spec);
  for (int k = 1; k <= 4; ++k) {
    const SolveReport r = solve_eigenpairs(a, b, k, 2);
    for (int l = 1; l <= 4; ++l) {
      if (l == k) continue;
      const DenseTensor t = transpose_kl(a, std::min(k, l), std::max(k, l));
      for (const auto& p : r.pairs) {
        CHECK(testkit::residual_check(t, b, l, p.lambda, p.x) <= residual_bound(p, 4, 2));
      }
    }
  }
}

TEST_CASE("thread count does not change results") {
  const testkit::RandomSpec spec{3, 2, 3, 8, testkit::Field::complex, false};
  const DenseTensor a = testkit::random_tensor(spec);
  const DenseTensor b = testkit::random_b_tensor(spec);
  ::setenv("TENEIG_THREADS", "1", 1);
  const SolveReport serial = solve_eigenpairs(a, b, 1, 4);
  ::setenv("TENEIG_THREADS", "3", 1);
  const SolveReport threaded = solve_eigenpairs(a, b, 1, 4);
  ::unsetenv("TENEIG_THREADS");
  suites::Outcome o;
  suites::check_rerun(serial, threaded, "threads", o);
  CHECK(o.ok());
}

TEST_CASE("eigenvalues scale with the tensor") {
  for (auto [m, mp] : {std::pair{3, 3}, {4, 2}}) {
    const testkit::RandomSpec spec{m, mp, 3, 41, testkit::Field::complex, false};
    const DenseTensor a = testkit::random_tensor(spec);
    const DenseTensor b = mp == 2 ? identity_tensor(2, 3) : identity_tensor(m, 3);
    DenseTensor scaled = a;
    for (auto& e : scaled.entries()) e *= 2.5;
    // lambda scales by 2.5 at fixed x; the invariant carries it to the power m' when m != m'
    const double factor = m == mp ? 2.5 : std::pow(2.5, mp);
    std::vector<Complex> got, want;
    for (const auto& p : solve_eigenpairs(scaled, b, 1, 0).pairs) got.push_back(suites::class_invariant(p.lambda, p.x, b, m));
    for (const auto& p : solve_eigenpairs(a, b, 1, 0).pairs) want.push_back(factor * suites::class_invariant(p.lambda, p.x, b, m));
    CHECK(suites::same_multiset(got, want, 1e-6));
  }
}

TEST_CASE("symmetric tensors share one spectrum across modes") {
  const DenseTensor a = testkit::random_tensor({4, 2, 3, 19, testkit::Field::real, true});
  std::vector<Complex> first;
  for (const auto& p : eeig(a, 1, 0).pairs) first.push_back(p.lambda * p.lambda);
  for (int k = 2; k <= 4; ++k) {
    std::vector<Complex> other;
    for (const auto& p : eeig(a, k, 0).pairs) other.push_back(p.lambda * p.lambda);
    CHECK(suites::same_multiset(other, first, 1e-6));
  }
}
