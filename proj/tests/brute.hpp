#pragma once

#include <vector>

#include "teneig/tensor.hpp"

namespace brute {

using teneig::Complex;
using teneig::CVector;
using teneig::DenseTensor;

/// Visits every index tuple with its flat offset, slot 0 slowest.
template <typename F>
void each_index(int order, int dim, F&& f) {
  std::vector<int> idx(order, 0);
  for (std::size_t flat = 0;; ++flat) {
    f(idx, flat);
    int s = order - 1;
    while (s >= 0 && ++idx[s] == dim) idx[s--] = 0;
    if (s < 0) return;
  }
}

/// Mode-k contraction summed entry by entry, k 1-based.
inline CVector apply(const DenseTensor& a, int k, const CVector& x) {
  CVector out = CVector::Zero(a.dim());
  const auto e = a.entries();
  each_index(a.order(), a.dim(), [&](const std::vector<int>& idx, std::size_t flat) {
    Complex term = e[flat];
    for (int s = 0; s < a.order(); ++s) {
      if (s != k - 1) term *= x(idx[s]);
    }
    out(idx[k - 1]) += term;
  });
  return out;
}

inline Complex form(const DenseTensor& a, const CVector& x) {
  Complex sum = 0.0;
  const auto e = a.entries();
  each_index(a.order(), a.dim(), [&](const std::vector<int>& idx, std::size_t flat) {
    Complex term = e[flat];
    for (int i : idx) term *= x(i);
    sum += term;
  });
  return sum;
}

}  // namespace brute
