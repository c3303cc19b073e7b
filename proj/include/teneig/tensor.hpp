#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "teneig/types.hpp"

namespace teneig {

/// Order-m, dimension-n dense complex tensor stored row-major over (i1, ..., im),
/// with i1 the slowest-varying index.
///
/// Element access through `operator()` takes 0-based indices; `at()` takes the
/// 1-based indices used at file and CLI boundaries.
class DenseTensor {
 public:
  DenseTensor(int order, int dim);
  DenseTensor(int order, int dim, std::vector<Complex> entries);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  std::size_t linear_index(std::span<const int> index) const;

  Complex operator()(std::span<const int> index) const { return entries_[linear_index(index)]; }
  Complex& operator()(std::span<const int> index) { return entries_[linear_index(index)]; }

  Complex at(std::initializer_list<int> one_based) const;
  Complex& at(std::initializer_list<int> one_based);

  bool is_real(double tol = 0.0) const;

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.order_ == b.order_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  int order_;
  int dim_;
  std::vector<Complex> entries_;
};

/// Homogeneous polynomial of fixed degree given as a list of monomials.
class MonomialForm {
 public:
  struct Term {
    Complex coeff;
    std::vector<int> alpha;
  };

  /// Merges duplicate exponent vectors; throws InputError if any exponent
  /// vector has the wrong length, a negative entry, or does not sum to `degree`.
  MonomialForm(int degree, int dim, std::vector<Term> terms);

  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  Complex evaluate(const CVector& x) const;

 private:
  int degree_;
  int dim_;
  std::vector<Term> terms_;
};

/// A x^m, summed over every index tuple.
Complex multilinear_form(const DenseTensor& a, const CVector& x);

/// A^(k) x^(m-1) with 1-based mode k: all slots except k contracted with x.
CVector mode_k_apply(const DenseTensor& a, int k, const CVector& x);

/// d/dx of mode_k_apply, computed analytically.
CMatrix mode_k_jacobian(const DenseTensor& a, int k, const CVector& x);

/// Value and Jacobian of mode_k_apply in a single pass over the entries.
void mode_k_apply_with_jacobian(const DenseTensor& a, int k, const CVector& x, CVector& value,
                                CMatrix& jacobian);

/// A^(k) x^(m-1) prepared for repeated evaluation. The free slot is moved first and
/// the other m-1 slots are symmetrized, which leaves the contraction unchanged; value
/// and Jacobian then come from successive last-slot contractions at about n^m work.
class ModeContraction {
 public:
  ModeContraction(const DenseTensor& a, int k);

  int order() const { return order_; }
  int dim() const { return dim_; }

  CVector apply(const CVector& x) const;
  void apply(const CVector& x, CVector& value, CMatrix& jacobian) const;

 private:
  /// n x n matrix of the tensor contracted with x in slots 3..m.
  CMatrix reduce(const CVector& x) const;

  int order_;
  int dim_;
  std::vector<Complex> data_;
};

/// <k,l> transpose (1-based, k < l): swaps index slots k and l.
DenseTensor transpose_kl(const DenseTensor& a, int k, int l);

/// Unique symmetric tensor whose multilinear form equals f.
DenseTensor from_monomials(const MonomialForm& f);

/// Ones at (i, ..., i) and zeros elsewhere, so that I x^(m-1) = x^[m-1].
DenseTensor identity_tensor(int m, int n);

/// True when the tensor equals every one of its <k,l> transposes within tol.
bool is_symmetric(const DenseTensor& a, double tol = 0.0);

}  // namespace teneig
