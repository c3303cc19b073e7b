#include "teneig/testkit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "teneig/random.hpp"

namespace teneig::testkit {

namespace {

void symmetrize(DenseTensor& t) {
  const int m = t.order();
  const int n = t.dim();
  std::vector<int> idx(m, 0);
  // Visit each sorted multiset once and average over its orbit.
  while (true) {
    std::vector<int> perm = idx;
    Complex sum = 0.0;
    int count = 0;
    do {
      sum += t(perm);
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const Complex mean = sum / static_cast<double>(count);
    perm = idx;
    do {
      t(perm) = mean;
    } while (std::next_permutation(perm.begin(), perm.end()));

    int j = m - 1;
    while (j >= 0 && idx[j] == n - 1) --j;
    if (j < 0) break;
    ++idx[j];
    for (int r = j + 1; r < m; ++r) idx[r] = idx[j];
  }
}

DenseTensor draw(int order, int n, std::uint64_t seed, Field field, bool symmetric) {
  Rng rng(seed);
  DenseTensor t(order, n);
  for (auto& e : t.entries()) {
    const double re = rng.normal();
    const double im = field == Field::complex ? rng.normal() : 0.0;
    e = Complex(re, im);
  }
  if (symmetric) symmetrize(t);
  return t;
}

using Poly = std::vector<Complex>;  // coefficient of z^p at index p

Poly multiply(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

/// Coefficients in z of component `row` of T^(slot) x^(order-1) at x = (1, z).
std::vector<Poly> contraction_polys(const DenseTensor& t, int slot) {
  const int m = t.order();
  std::vector<Poly> out(2, Poly(m, 0.0));
  for (int i1 = 0; i1 < (1 << m); ++i1) {
    std::vector<int> idx(m);
    int zdeg = 0;
    for (int j = 0; j < m; ++j) {
      idx[j] = (i1 >> (m - 1 - j)) & 1;
      if (j != slot && idx[j] == 1) ++zdeg;
    }
    out[idx[slot]][zdeg] += t(idx);
  }
  return out;
}

Complex horner(const Poly& p, Complex z) {
  Complex v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * z + *it;
  return v;
}

/// Value of the same contraction at x = (0, 1): only the all-ones tuples survive.
Complex at_second_axis(const DenseTensor& t, int slot, int row) {
  std::vector<int> idx(t.order(), 1);
  idx[slot] = row;
  return t(idx);
}

}  // namespace

DenseTensor random_tensor(const RandomSpec& spec) {
  return draw(spec.m, spec.n, spec.seed, spec.field, spec.symmetric);
}

DenseTensor random_b_tensor(const RandomSpec& spec) {
  return draw(spec.mprime, spec.n, derive_seed(spec.seed, 7), spec.field, spec.symmetric);
}

CVector random_vector(int n, std::uint64_t seed) {
  Rng rng(seed);
  CVector v(n);
  for (auto& z : v) {
    const double re = rng.normal();
    z = Complex(re, rng.normal());
  }
  return v;
}

std::vector<Complex> matrix_eig_oracle(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw InputError("pencil matrices must be square and of equal size");
  }
  Eigen::FullPivLU<CMatrix> lu(b);
  if (!lu.isInvertible()) throw InputError("B is singular");
  Eigen::ComplexEigenSolver<CMatrix> es(lu.solve(a));
  const CVector ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<OraclePair> two_var_oracle(const DenseTensor& a, const DenseTensor& b, int k) {
  if (a.dim() != 2 || b.dim() != 2) throw InputError("two_var_oracle needs n = 2");
  if (k < 1 || k > a.order()) throw InputError("mode out of range");
  const auto pa = contraction_polys(a, k - 1);
  const auto pb = contraction_polys(b, 0);
  Poly p = multiply(pa[0], pb[1]);
  const Poly p2 = multiply(pa[1], pb[0]);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] -= p2[i];

  const int full = a.order() + b.order() - 2;
  double scale = 0.0;
  for (const auto& c : p) scale = std::max(scale, std::abs(c));
  int deg = static_cast<int>(p.size()) - 1;
  while (deg > 0 && std::abs(p[deg]) <= 1e-13 * scale) --deg;

  std::vector<OraclePair> out;
  auto finish = [&](CVector x, Complex b0, Complex b1, Complex a0, Complex a1) {
    const Complex lambda = std::abs(b0) >= std::abs(b1) ? a0 / b0 : a1 / b1;
    out.push_back({lambda, std::move(x)});
  };

  if (deg > 0) {
    CMatrix companion = CMatrix::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -p[i] / p[deg];
    Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
    for (int r = 0; r < deg; ++r) {
      const Complex z = es.eigenvalues()(r);
      CVector x(2);
      x << 1.0, z;
      finish(x, horner(pb[0], z), horner(pb[1], z), horner(pa[0], z), horner(pa[1], z));
    }
  }
  // Degree drop: the missing roots sit at x = (0, 1).
  for (int r = deg; r < full; ++r) {
    CVector x(2);
    x << 0.0, 1.0;
    finish(x, at_second_axis(b, 0, 0), at_second_axis(b, 0, 1), at_second_axis(a, k - 1, 0),
           at_second_axis(a, k - 1, 1));
  }
  return out;
}

double residual_check(const DenseTensor& a, const DenseTensor& b, int k, Complex lambda, const CVector& x) {
  return inf_norm(mode_k_apply(a, k, x) - lambda * mode_k_apply(b, 1, x));
}

}  // namespace teneig::testkit
