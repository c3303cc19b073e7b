#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "teneig/tensor.hpp"
#include "teneig/types.hpp"

namespace teneig::testkit {

enum class Field { real, complex };

struct RandomSpec {
  int m = 3;
  int mprime = 2;
  int n = 2;
  std::uint64_t seed = 0;
  Field field = Field::complex;
  bool symmetric = false;
};

/// Order-m tensor with standard normal entries (randn + i randn for complex).
DenseTensor random_tensor(const RandomSpec& spec);

/// Order-m' companion drawn from an independent sub-stream of the same seed.
DenseTensor random_b_tensor(const RandomSpec& spec);

/// Complex standard normal vector.
CVector random_vector(int n, std::uint64_t seed);

/// Eigenvalues of the pencil (A, B) via a dense eigensolver on B^-1 A.
std::vector<Complex> matrix_eig_oracle(const CMatrix& a, const CMatrix& b);

struct OraclePair {
  Complex lambda;
  CVector x;
};

/// All classes of mode-k pairs for n = 2 by eliminating lambda and solving the
/// resulting binary form in the charts (1, z) and (0, 1).
std::vector<OraclePair> two_var_oracle(const DenseTensor& a, const DenseTensor& b, int k);

/// ||A^(k) x^(m-1) - lambda B x^(m'-1)||inf.
double residual_check(const DenseTensor& a, const DenseTensor& b, int k, Complex lambda, const CVector& x);

}  // namespace teneig::testkit
