#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "brute.hpp"
#include "teneig/testkit.hpp"

using namespace teneig;

using testkit::random_vector;

namespace {

DenseTensor example_2_1() {
  DenseTensor t(3, 2);
  t.at({1, 1, 1}) = 1;
  t.at({1, 2, 1}) = 2;
  t.at({2, 1, 1}) = 3;
  t.at({2, 2, 1}) = 4;
  t.at({1, 1, 2}) = 5;
  t.at({1, 2, 2}) = 6;
  t.at({2, 1, 2}) = 7;
  return t;
}

}  // namespace

TEST_CASE("storage is row-major with the first index slowest") {
  const DenseTensor t = example_2_1();
  CHECK(t.entries()[0] == Complex(1));
  CHECK(t.entries()[1] == Complex(5));
  CHECK(t.entries()[2] == Complex(2));
  CHECK(t.entries()[4] == Complex(3));
  const std::vector<int> idx{1, 0, 1};
  CHECK(t(idx) == Complex(7));
  CHECK_THROWS_AS(DenseTensor(3, 2, std::vector<Complex>(7)), InputError);
  CHECK_THROWS_AS(t.at({3, 1, 1}), InputError);
}

TEST_CASE("hand-computed mode contractions of the 3x2x2 example") {
  const DenseTensor t = example_2_1();
  const CVector x = (CVector(2) << 1.0, 2.0).finished();
  // sum_{j,l} A_ijl x_j x_l
  const CVector m1 = mode_k_apply(t, 1, x);
  CHECK(m1(0) == Complex(39));
  CHECK(m1(1) == Complex(25));
  // sum_{i,l} A_ijl x_i x_l, j free
  const CVector m2 = mode_k_apply(t, 2, x);
  CHECK(m2(0) == Complex(1 + 2 * 5 + 2 * 3 + 4 * 7));
  CHECK(m2(1) == Complex(2 + 2 * 6 + 2 * 4 + 0));
  CHECK(multilinear_form(t, x) == x.cwiseProduct(m1).sum());
}

TEST_CASE("mode_k_apply and its Jacobian agree with brute-force sums") {
  for (int m = 2; m <= 5; ++m) {
    for (int n = 1; n <= 4; ++n) {
      const DenseTensor a = testkit::random_tensor({m, 2, n, std::uint64_t(10 * m + n), testkit::Field::complex, false});
      const CVector x = random_vector(n, 99 + m + n);
      const double scale = std::max(1.0, brute::apply(a, 1, x).cwiseAbs().maxCoeff());
      for (int k = 1; k <= m; ++k) {
        const CVector expected = brute::apply(a, k, x);
        CHECK(inf_norm(mode_k_apply(a, k, x) - expected) <= 1e-12 * scale);

        const CMatrix jac = mode_k_jacobian(a, k, x);
        const double h = 1e-6;
        for (int j = 0; j < n; ++j) {
          CVector xp = x, xm = x;
          xp(j) += h;
          xm(j) -= h;
          const CVector fd = (brute::apply(a, k, xp) - brute::apply(a, k, xm)) / (2 * h);
          CHECK(inf_norm(jac.col(j) - fd) <= 1e-6 * scale);
        }

        CVector value;
        CMatrix one_pass;
        mode_k_apply_with_jacobian(a, k, x, value, one_pass);
        CHECK(inf_norm(value - expected) <= 1e-12 * scale);
        CHECK((one_pass - jac).cwiseAbs().maxCoeff() <= 1e-12 * scale);

        const ModeContraction plan(a, k);
        CVector pv;
        CMatrix pj;
        plan.apply(x, pv, pj);
        CHECK(inf_norm(pv - expected) <= 1e-12 * scale);
        CHECK((pj - jac).cwiseAbs().maxCoeff() <= 1e-11 * scale);
        CHECK(inf_norm(plan.apply(x) - expected) <= 1e-12 * scale);
      }
      CHECK(std::abs(multilinear_form(a, x) - brute::form(a, x)) <= 1e-12 * scale * (1 + x.norm()));
    }
  }
}

TEST_CASE("transpose swaps two index slots and exchanges the modes") {
  const DenseTensor a = testkit::random_tensor({4, 2, 3, 5, testkit::Field::complex, false});
  const CVector x = random_vector(3, 6);
  for (int k = 1; k <= 4; ++k) {
    for (int l = k + 1; l <= 4; ++l) {
      const DenseTensor t = transpose_kl(a, k, l);
      CHECK(transpose_kl(t, k, l) == a);
      CHECK(inf_norm(mode_k_apply(t, l, x) - mode_k_apply(a, k, x)) <= 1e-12);
      std::vector<int> idx{0, 1, 2, 1};
      std::vector<int> swapped = idx;
      std::swap(swapped[k - 1], swapped[l - 1]);
      CHECK(t(swapped) == a(idx));
    }
  }
  CHECK_THROWS_AS(transpose_kl(a, 2, 2), InputError);
  CHECK_THROWS_AS(transpose_kl(a, 1, 5), InputError);
}

TEST_CASE("from_monomials gives the symmetric tensor of the form") {
  const MonomialForm motzkin(6, 3, {{1.0, {0, 0, 6}}, {1.0, {4, 2, 0}}, {1.0, {2, 4, 0}}, {-3.0, {2, 2, 2}}});
  const DenseTensor t = from_monomials(motzkin);
  CHECK(is_symmetric(t));
  CHECK(t.at({3, 3, 3, 3, 3, 3}) == Complex(1.0));
  // 6!/(4!2!) = 15 placements share the coefficient of x1^4 x2^2
  CHECK(std::abs(t.at({1, 1, 2, 1, 2, 1}) - 1.0 / 15.0) < 1e-16);
  // 6!/(2!2!2!) = 90 placements for x1^2 x2^2 x3^2
  CHECK(std::abs(t.at({3, 1, 2, 2, 1, 3}) + 3.0 / 90.0) < 1e-16);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const CVector x = random_vector(3, s);
    CHECK(std::abs(multilinear_form(t, x) - motzkin.evaluate(x)) <= 1e-12 * std::pow(1 + x.norm(), 6));
    CHECK(std::abs(brute::form(t, x) - motzkin.evaluate(x)) <= 1e-12 * std::pow(1 + x.norm(), 6));
  }
}

TEST_CASE("MonomialForm validates and merges terms") {
  CHECK_THROWS_AS(MonomialForm(3, 2, {{1.0, {1, 1, 1}}}), InputError);
  CHECK_THROWS_AS(MonomialForm(3, 2, {{1.0, {4, -1}}}), InputError);
  CHECK_THROWS_AS(MonomialForm(3, 2, {{1.0, {2, 2}}}), InputError);
  const MonomialForm f(2, 2, {{1.0, {1, 1}}, {2.0, {1, 1}}, {1.0, {2, 0}}});
  CHECK(f.terms().size() == 2);
  const CVector x = (CVector(2) << 2.0, 3.0).finished();
  CHECK(f.evaluate(x) == Complex(3.0 * 6.0 + 4.0));
}

TEST_CASE("identity tensor contracts to elementwise powers") {
  const CVector x = random_vector(4, 3);
  for (int m = 2; m <= 5; ++m) {
    const CVector y = mode_k_apply(identity_tensor(m, 4), 1, x);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(y(i) - std::pow(x(i), m - 1)) < 1e-14);
  }
}

TEST_CASE("symmetry and reality predicates") {
  const DenseTensor a = testkit::random_tensor({3, 2, 3, 1, testkit::Field::real, true});
  CHECK(is_symmetric(a, 1e-15));
  CHECK(a.is_real());
  CHECK_FALSE(is_symmetric(example_2_1()));
  const DenseTensor c = testkit::random_tensor({3, 2, 3, 1, testkit::Field::complex, false});
  CHECK_FALSE(c.is_real());
}
