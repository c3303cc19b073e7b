#include "teneig/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace teneig {

namespace {

constexpr double kMaxEntries = 1.0e8;

std::size_t checked_size(int order, int dim) {
  if (order < 2) throw InputError("tensor order must be at least 2, got " + std::to_string(order));
  if (dim < 1) throw InputError("tensor dimension must be positive, got " + std::to_string(dim));
  if (std::pow(static_cast<double>(dim), order) > kMaxEntries) {
    throw InputError("tensor with dim^order = " + std::to_string(dim) + "^" + std::to_string(order) +
                     " entries exceeds the dense storage envelope");
  }
  std::size_t n = 1;
  for (int i = 0; i < order; ++i) n *= static_cast<std::size_t>(dim);
  return n;
}

/// Advances a row-major multi-index; returns false after the last tuple.
bool next_index(std::vector<int>& idx, int dim) {
  for (int j = static_cast<int>(idx.size()) - 1; j >= 0; --j) {
    if (++idx[j] < dim) return true;
    idx[j] = 0;
  }
  return false;
}

void check_mode(const DenseTensor& a, int k) {
  if (k < 1 || k > a.order()) {
    throw InputError("mode " + std::to_string(k) + " out of range 1.." + std::to_string(a.order()));
  }
}

void check_vector(const DenseTensor& a, const CVector& x) {
  if (x.size() != a.dim()) {
    throw InputError("vector length " + std::to_string(x.size()) + " does not match tensor dimension " +
                     std::to_string(a.dim()));
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

DenseTensor::DenseTensor(int order, int dim)
    : order_(order), dim_(dim), entries_(checked_size(order, dim), Complex(0.0, 0.0)) {}

DenseTensor::DenseTensor(int order, int dim, std::vector<Complex> entries)
    : order_(order), dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != checked_size(order, dim)) {
    throw InputError("expected " + std::to_string(checked_size(order, dim)) + " entries, got " +
                     std::to_string(entries_.size()));
  }
}

std::size_t DenseTensor::linear_index(std::span<const int> index) const {
  if (static_cast<int>(index.size()) != order_) throw InputError("index arity does not match tensor order");
  std::size_t lin = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw InputError("tensor index out of range");
    lin = lin * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return lin;
}

Complex DenseTensor::at(std::initializer_list<int> one_based) const {
  std::vector<int> idx(one_based);
  for (int& i : idx) --i;
  return (*this)(idx);
}

Complex& DenseTensor::at(std::initializer_list<int> one_based) {
  std::vector<int> idx(one_based);
  for (int& i : idx) --i;
  return (*this)(idx);
}

bool DenseTensor::is_real(double tol) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [tol](const Complex& c) { return std::abs(c.imag()) <= tol; });
}

MonomialForm::MonomialForm(int degree, int dim, std::vector<Term> terms) : degree_(degree), dim_(dim) {
  if (degree < 1) throw InputError("monomial form degree must be positive");
  if (dim < 1) throw InputError("monomial form dimension must be positive");
  std::map<std::vector<int>, Complex> merged;
  for (auto& t : terms) {
    if (static_cast<int>(t.alpha.size()) != dim) {
      throw InputError("exponent vector length " + std::to_string(t.alpha.size()) + " != dimension " +
                       std::to_string(dim));
    }
    int sum = 0;
    for (int e : t.alpha) {
      if (e < 0) throw InputError("negative exponent in monomial");
      sum += e;
    }
    if (sum != degree) {
      throw InputError("monomial exponents sum to " + std::to_string(sum) + ", expected " +
                       std::to_string(degree));
    }
    merged[t.alpha] += t.coeff;
  }
  terms_.reserve(merged.size());
  for (auto& [alpha, c] : merged) terms_.push_back({c, alpha});
}

Complex MonomialForm::evaluate(const CVector& x) const {
  Complex sum = 0.0;
  for (const auto& t : terms_) {
    Complex p = t.coeff;
    for (int i = 0; i < dim_; ++i) p *= std::pow(x(i), t.alpha[i]);
    sum += p;
  }
  return sum;
}

Complex multilinear_form(const DenseTensor& a, const CVector& x) {
  check_vector(a, x);
  const int m = a.order();
  std::vector<int> idx(m, 0);
  Complex sum = 0.0;
  std::size_t lin = 0;
  do {
    Complex p = a.entries()[lin++];
    if (p != Complex(0.0, 0.0)) {
      for (int j = 0; j < m; ++j) p *= x(idx[j]);
      sum += p;
    }
  } while (next_index(idx, a.dim()));
  return sum;
}

CVector mode_k_apply(const DenseTensor& a, int k, const CVector& x) {
  check_mode(a, k);
  check_vector(a, x);
  const int m = a.order();
  const int slot = k - 1;
  CVector out = CVector::Zero(a.dim());
  std::vector<int> idx(m, 0);
  std::size_t lin = 0;
  do {
    Complex p = a.entries()[lin++];
    if (p != Complex(0.0, 0.0)) {
      for (int j = 0; j < m; ++j) {
        if (j != slot) p *= x(idx[j]);
      }
      out(idx[slot]) += p;
    }
  } while (next_index(idx, a.dim()));
  return out;
}

void mode_k_apply_with_jacobian(const DenseTensor& a, int k, const CVector& x, CVector& value,
                                CMatrix& jacobian) {
  check_mode(a, k);
  check_vector(a, x);
  const int m = a.order();
  const int n = a.dim();
  const int slot = k - 1;
  value = CVector::Zero(n);
  jacobian = CMatrix::Zero(n, n);

  // prefix[j] = product of x over slots < j (skipping the free slot); suffix likewise.
  std::vector<Complex> prefix(m + 1), suffix(m + 1);
  std::vector<int> idx(m, 0);
  std::size_t lin = 0;
  do {
    const Complex c = a.entries()[lin++];
    if (c == Complex(0.0, 0.0)) continue;
    prefix[0] = 1.0;
    for (int j = 0; j < m; ++j) prefix[j + 1] = (j == slot) ? prefix[j] : prefix[j] * x(idx[j]);
    suffix[m] = 1.0;
    for (int j = m - 1; j >= 0; --j) suffix[j] = (j == slot) ? suffix[j + 1] : suffix[j + 1] * x(idx[j]);
    const int row = idx[slot];
    value(row) += c * prefix[m];
    for (int j = 0; j < m; ++j) {
      if (j == slot) continue;
      jacobian(row, idx[j]) += c * prefix[j] * suffix[j + 1];
    }
  } while (next_index(idx, n));
}

CMatrix mode_k_jacobian(const DenseTensor& a, int k, const CVector& x) {
  CVector value;
  CMatrix jac;
  mode_k_apply_with_jacobian(a, k, x, value, jac);
  return jac;
}

DenseTensor transpose_kl(const DenseTensor& a, int k, int l) {
  if (k < 1 || l > a.order() || k >= l) {
    throw InputError("transpose requires 1 <= k < l <= order, got k=" + std::to_string(k) +
                     " l=" + std::to_string(l));
  }
  DenseTensor g(a.order(), a.dim());
  std::vector<int> idx(a.order(), 0);
  std::size_t lin = 0;
  do {
    std::vector<int> swapped = idx;
    std::swap(swapped[k - 1], swapped[l - 1]);
    g(swapped) = a.entries()[lin++];
  } while (next_index(idx, a.dim()));
  return g;
}

DenseTensor from_monomials(const MonomialForm& f) {
  const int m = f.degree();
  if (m < 2) throw InputError("symmetric tensor construction needs degree >= 2");
  DenseTensor a(m, f.dim());
  const double m_fact = factorial(m);
  for (const auto& t : f.terms()) {
    // Sorted multiset of indices; every distinct permutation gets an equal share.
    std::vector<int> idx;
    double alpha_fact = 1.0;
    for (int i = 0; i < f.dim(); ++i) {
      idx.insert(idx.end(), t.alpha[i], i);
      alpha_fact *= factorial(t.alpha[i]);
    }
    const Complex share = t.coeff * (alpha_fact / m_fact);
    do {
      a(idx) += share;
    } while (std::next_permutation(idx.begin(), idx.end()));
  }
  return a;
}

ModeContraction::ModeContraction(const DenseTensor& a, int k) : order_(a.order()), dim_(a.dim()) {
  check_mode(a, k);
  const int m = order_;
  const int n = dim_;
  data_.assign(a.size(), Complex(0.0, 0.0));
  // Slot k first, remaining slots in their original order.
  std::vector<int> idx(m, 0);
  std::size_t lin = 0;
  do {
    std::size_t target = static_cast<std::size_t>(idx[k - 1]);
    for (int j = 0; j < m; ++j)
      if (j != k - 1) target = target * n + static_cast<std::size_t>(idx[j]);
    data_[target] = a.entries()[lin++];
  } while (next_index(idx, n));
  if (m <= 2) return;

  // Average every orbit of the trailing m-1 slots.
  const std::size_t block = data_.size() / static_cast<std::size_t>(n);
  auto offset = [n](const std::vector<int>& t) {
    std::size_t o = 0;
    for (int v : t) o = o * n + static_cast<std::size_t>(v);
    return o;
  };
  std::vector<int> tail(m - 1, 0);
  while (true) {
    for (int row = 0; row < n; ++row) {
      Complex* base = data_.data() + static_cast<std::size_t>(row) * block;
      std::vector<int> perm = tail;
      Complex sum = 0.0;
      int count = 0;
      do {
        sum += base[offset(perm)];
        ++count;
      } while (std::next_permutation(perm.begin(), perm.end()));
      const Complex mean = sum / static_cast<double>(count);
      perm = tail;
      do {
        base[offset(perm)] = mean;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    int j = m - 2;
    while (j >= 0 && tail[j] == n - 1) --j;
    if (j < 0) break;
    ++tail[j];
    for (int r = j + 1; r < m - 1; ++r) tail[r] = tail[j];
  }
}

CMatrix ModeContraction::reduce(const CVector& x) const {
  if (x.size() != dim_) throw InputError("vector length does not match tensor dimension");
  const int n = dim_;
  std::vector<Complex> cur(data_);
  std::size_t len = cur.size();
  for (int slot = order_; slot > 2; --slot) {
    const std::size_t out_len = len / static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < out_len; ++i) {
      const Complex* src = cur.data() + i * n;
      Complex acc = 0.0;
      for (int j = 0; j < n; ++j) acc += src[j] * x(j);
      cur[i] = acc;
    }
    len = out_len;
  }
  CMatrix mtx(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) mtx(r, c) = cur[static_cast<std::size_t>(r) * n + c];
  return mtx;
}

CVector ModeContraction::apply(const CVector& x) const { return reduce(x) * x; }

void ModeContraction::apply(const CVector& x, CVector& value, CMatrix& jacobian) const {
  const CMatrix mtx = reduce(x);
  value = mtx * x;
  jacobian = static_cast<double>(order_ - 1) * mtx;
}

DenseTensor identity_tensor(int m, int n) {
  DenseTensor t(m, n);
  std::vector<int> idx(m);
  for (int i = 0; i < n; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    t(idx) = 1.0;
  }
  return t;
}

bool is_symmetric(const DenseTensor& a, double tol) {
  for (int k = 1; k < a.order(); ++k) {
    const DenseTensor t = transpose_kl(a, k, k + 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(t.entries()[i] - a.entries()[i]) > tol) return false;
    }
  }
  return true;
}

}  // namespace teneig
