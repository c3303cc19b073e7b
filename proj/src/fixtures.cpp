#include "teneig/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "teneig/random.hpp"

namespace teneig {

namespace {

using Term = MonomialForm::Term;

std::vector<int> alpha(std::initializer_list<int> e) { return e; }

/// Every index tuple of a dense tensor, in storage order.
template <typename F>
void for_each_index(int order, int dim, F&& f) {
  std::vector<int> idx(order, 0);
  for (;;) {
    f(idx);
    int slot = order - 1;
    while (slot >= 0 && ++idx[slot] == dim) idx[slot--] = 0;
    if (slot < 0) return;
  }
}

/// weight * (c . x)^order added entrywise as the rank-one symmetric tensor.
void add_linear_power(DenseTensor& t, const RVector& c, double weight) {
  for_each_index(t.order(), t.dim(), [&](const std::vector<int>& idx) {
    double v = weight;
    for (int i : idx) v *= c(i);
    t(idx) += v;
  });
}

DenseTensor from_entry_rule(int order, int dim, double (*rule)(const std::vector<int>&)) {
  DenseTensor t(order, dim);
  for_each_index(order, dim, [&](const std::vector<int>& idx) { t(idx) = rule(idx); });
  return t;
}

/// Symmetric tensor from values on sorted (1-based) index tuples.
DenseTensor symmetric_from_sorted(int order, int dim, const std::vector<std::pair<std::vector<int>, double>>& values) {
  DenseTensor t(order, dim);
  for (const auto& [sorted, v] : values) {
    std::vector<int> idx = sorted;
    for (int& i : idx) --i;
    std::sort(idx.begin(), idx.end());
    do {
      t(idx) = v;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return t;
}

TensorSource example_2_1() {
  DenseTensor t(3, 2);
  t.at({1, 1, 1}) = 1;
  t.at({1, 2, 1}) = 2;
  t.at({2, 1, 1}) = 3;
  t.at({2, 2, 1}) = 4;
  t.at({1, 1, 2}) = 5;
  t.at({1, 2, 2}) = 6;
  t.at({2, 1, 2}) = 7;
  t.at({2, 2, 2}) = 0;
  return {t};
}

TensorSource motzkin() {
  return {MonomialForm(6, 3, {{1.0, alpha({0, 0, 6})}, {1.0, alpha({4, 2, 0})}, {1.0, alpha({2, 4, 0})},
                              {-3.0, alpha({2, 2, 2})}})};
}

/// D(Qx)^5 with D = diag(1, 2, -3, -4) and Q a product of three Householder
/// reflections drawn from a fixed seed.
TensorSource householder_diagonal() {
  constexpr std::uint64_t kSeed = 20140802;
  Rng rng(kSeed);
  RMatrix q = RMatrix::Identity(4, 4);
  for (int r = 0; r < 3; ++r) {
    RVector w(4);
    for (int i = 0; i < 4; ++i) w(i) = rng.normal();
    w.normalize();
    q = q * (RMatrix::Identity(4, 4) - 2.0 * w * w.transpose());
  }
  const double d[4] = {1.0, 2.0, -3.0, -4.0};
  DenseTensor t(5, 4);
  for (int j = 0; j < 4; ++j) add_linear_power(t, q.row(j).transpose(), d[j]);
  return {t};
}

TensorSource pairwise_differences(int n) {
  DenseTensor t(4, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      RVector c = RVector::Zero(n);
      c(i) = 1.0;
      c(j) = -1.0;
      add_linear_power(t, c, -1.0);
    }
  }
  return {t};
}

TensorSource two_sums() {
  DenseTensor t(4, 5);
  RVector u(5), v(5);
  u << 1, 1, 1, 1, 0;
  v << 0, 1, 1, 1, 1;
  add_linear_power(t, u, 1.0);
  add_linear_power(t, v, 1.0);
  return {t};
}

double index_sum(const std::vector<int>& idx) {
  return std::accumulate(idx.begin(), idx.end(), 0.0) + static_cast<double>(idx.size());
}

const std::vector<FixtureInfo> kCatalog = {
    {"example-2.1", "3x2x2 nonsymmetric tensor with distinct mode-1/2/3 spectra", false, false, 0},
    {"motzkin", "Motzkin form x3^6 + x1^4 x2^2 + x1^2 x2^4 - 3 x1^2 x2^2 x3^2", false, false, 0},
    {"appendix-01", "x1^4 + 2 x2^4 + 3 x3^4", false, false, 0},
    {"appendix-02", "D(Qx)^5, D = diag(1, 2, -3, -4), Q from three seeded Householder reflections", false, false, 0},
    {"appendix-03", "2 x1^4 + 3 x2^4 + 5 x3^4 + 4a x1^2 x2 x3", true, false, 0},
    {"appendix-04", "3 x1^4 + x2^4 + 6a x1^2 x2^2", true, false, 0},
    {"appendix-05", "symmetric order-4 dimension-3 tensor with tabulated entries", false, false, 0},
    {"appendix-06", "order-3 dimension-6 symmetric, A_iii = i and A_i,i,i+1 = 10", false, false, 0},
    {"appendix-07", "-sum over i < j of (x_i - x_j)^4", false, true, 6},
    {"appendix-08", "(x1 + x2 + x3 + x4)^4 + (x2 + x3 + x4 + x5)^4", false, false, 0},
    {"appendix-09", "2 x1^3 + 3 x1 x2^2 + 3 x1 x3^2", false, false, 0},
    {"appendix-10", "A_i1..i4 = sin(i1 + i2 + i3 + i4)", false, true, 5},
    {"appendix-11", "A_i1..i4 = tan(i1) + tan(i2) + tan(i3) + tan(i4)", false, true, 6},
    {"appendix-12", "A_i1..i5 = ln(i1) + ... + ln(i5)", false, true, 4},
};

}  // namespace

const std::vector<FixtureInfo>& fixture_catalog() { return kCatalog; }

TensorSource make_fixture(const std::string& name, std::optional<double> a, std::optional<int> n) {
  const auto it = std::find_if(kCatalog.begin(), kCatalog.end(), [&](const FixtureInfo& f) { return f.name == name; });
  if (it == kCatalog.end()) throw InputError("unknown fixture '" + name + "'");
  if (a && !it->takes_a) throw InputError("fixture " + name + " takes no --a");
  if (n && !it->takes_n) throw InputError("fixture " + name + " takes no --n");
  if (n && *n < 2) throw InputError("--n must be at least 2");
  const double av = a.value_or(0.0);
  const int nv = n.value_or(it->default_n);

  if (name == "example-2.1") return example_2_1();
  if (name == "motzkin") return motzkin();
  if (name == "appendix-01") {
    return {MonomialForm(4, 3, {{1.0, alpha({4, 0, 0})}, {2.0, alpha({0, 4, 0})}, {3.0, alpha({0, 0, 4})}})};
  }
  if (name == "appendix-02") return householder_diagonal();
  if (name == "appendix-03") {
    return {MonomialForm(4, 3,
                         {{2.0, alpha({4, 0, 0})}, {3.0, alpha({0, 4, 0})}, {5.0, alpha({0, 0, 4})},
                          {4.0 * av, alpha({2, 1, 1})}})};
  }
  if (name == "appendix-04") {
    return {MonomialForm(4, 2, {{3.0, alpha({4, 0})}, {1.0, alpha({0, 4})}, {6.0 * av, alpha({2, 2})}})};
  }
  if (name == "appendix-05") {
    return {symmetric_from_sorted(4, 3,
                                  {{{1, 1, 1, 1}, 0.2883},  {{1, 1, 1, 2}, -0.0031}, {{1, 1, 1, 3}, 0.1973},
                                   {{1, 1, 2, 2}, -0.2485}, {{1, 1, 2, 3}, -0.2939}, {{1, 1, 3, 3}, 0.3847},
                                   {{1, 2, 2, 2}, 0.2972},  {{1, 2, 2, 3}, 0.1862},  {{1, 2, 3, 3}, 0.0919},
                                   {{1, 3, 3, 3}, -0.3619}, {{2, 2, 2, 2}, 0.1241},  {{2, 2, 2, 3}, -0.3420},
                                   {{2, 2, 3, 3}, 0.2127},  {{2, 3, 3, 3}, 0.2727},  {{3, 3, 3, 3}, -0.3054}})};
  }
  if (name == "appendix-06") {
    std::vector<std::pair<std::vector<int>, double>> values;
    for (int i = 1; i <= 6; ++i) values.push_back({{i, i, i}, static_cast<double>(i)});
    for (int i = 1; i <= 5; ++i) values.push_back({{i, i, i + 1}, 10.0});
    return {symmetric_from_sorted(3, 6, values)};
  }
  if (name == "appendix-07") return pairwise_differences(nv);
  if (name == "appendix-08") return two_sums();
  if (name == "appendix-09") {
    return {MonomialForm(3, 3, {{2.0, alpha({3, 0, 0})}, {3.0, alpha({1, 2, 0})}, {3.0, alpha({1, 0, 2})}})};
  }
  if (name == "appendix-10") {
    return {from_entry_rule(4, nv, [](const std::vector<int>& idx) { return std::sin(index_sum(idx)); })};
  }
  if (name == "appendix-11") {
    return {from_entry_rule(4, nv, [](const std::vector<int>& idx) {
      double s = 0.0;
      for (int i : idx) s += std::tan(i + 1.0);
      return s;
    })};
  }
  return {from_entry_rule(5, nv, [](const std::vector<int>& idx) {
    double s = 0.0;
    for (int i : idx) s += std::log(i + 1.0);
    return s;
  })};
}

}  // namespace teneig
