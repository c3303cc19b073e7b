#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "teneig/polysys.hpp"
#include "teneig/tensor.hpp"
#include "teneig/tracker.hpp"

namespace teneig {

struct EigenPair {
  Complex lambda;
  CVector x;
  int multiplicity = 1;
  double residual = 0.0;
  EndpointKind classification = EndpointKind::regular;
  bool is_real = false;
  /// Shared by every pair sampled from one positive-dimensional component; -1 otherwise.
  int component_id = -1;
  /// False when B x^m' vanished and the pair could not be normalized.
  bool normalized = true;
  /// Duplicate endpoints with large condition numbers survived a projective retrace.
  bool curve_jump = false;
};

/// One class representative plus the number m' of normalized members.
struct EquivalenceClass {
  EigenPair representative;
  int scaling_order = 1;
  int order_a = 2;

  /// (t^(m-m') lambda, t x) for every t with t^m' = 1.
  std::vector<EigenPair> members() const;
};

struct SolveReport {
  int m = 0;
  int mprime = 0;
  int n = 0;
  int k = 1;
  std::uint64_t seed = 0;
  long long path_count = 0;
  int paths_converged = 0;
  int paths_at_infinity = 0;
  int paths_failed = 0;
  std::vector<EigenPair> pairs;

  bool complete() const { return paths_failed == 0; }
  std::vector<EquivalenceClass> classes() const;
};

/// Optimal class count: n(m-1)^(n-1) if m = m', else ((m-1)^n - (m'-1)^n)/(m-m').
long long path_count(int m, int mprime, int n);

/// Paths actually tracked: n(max(m, m') - 1)^(n-1).
long long tracked_path_count(int m, int mprime, int n);

/// Worker count from hardware concurrency capped by TENEIG_THREADS.
int worker_count(long long jobs);

/// Full complex solve for any (m, m'): track, deduplicate, normalize, sort.
SolveReport solve_eigenpairs(const DenseTensor& a, const DenseTensor& b, int k, std::uint64_t seed,
                             const TrackerConfig& cfg = {});

/// m = m' pipeline with y = x / x_i0 normalization.
SolveReport teig(const DenseTensor& a, const DenseTensor& b, int k, std::uint64_t seed, const TrackerConfig& cfg = {});

/// m != m' pipeline with B x*^m' = 1 normalization.
SolveReport teneig(const DenseTensor& a, const DenseTensor& b, int k, std::uint64_t seed,
                   const TrackerConfig& cfg = {});

/// teneig with B the identity matrix.
SolveReport eeig(const DenseTensor& a, int k, std::uint64_t seed, const TrackerConfig& cfg = {});

/// Principal-root normalization of one pair; nullopt when B x^m' = 0.
std::optional<EigenPair> normalize_pair(const EigenPair& p, const DenseTensor& b, int order_a);

/// x / x_i0 with i0 = argmax |x_i|.
CVector max_abs_normalize(const CVector& x);

struct RealReport {
  SolveReport complex;
  std::vector<EigenPair> real;
};

/// Real pairs with |Im lambda| < imag_tol, plus the purely-imaginary rotations
/// when m'/(m-m') is a nonzero multiple of 4.
std::vector<EigenPair> real_candidates(const std::vector<EigenPair>& pairs, int m, int mprime, double imag_tol);

std::vector<double> real_eigenvalues(const std::vector<EigenPair>& pairs, int m, int mprime, double imag_tol);

/// Isolated-real shortcut, then the Re/Im heuristic for positive-dimensional
/// pairs, then a real Newton homotopy tracked by pseudo-arclength.
std::optional<EigenPair> extract_real_pair(const EigenPair& pair, const DenseTensor& a, const DenseTensor& b, int k,
                                           const TrackerConfig& cfg, std::uint64_t seed = 0);

/// Z-eigenpairs: x^T x = 1, first significant component positive.
RealReport zeig(const DenseTensor& a, std::uint64_t seed, const TrackerConfig& cfg = {});

/// H-eigenpairs: max-abs normalization.
RealReport heig(const DenseTensor& a, std::uint64_t seed, const TrackerConfig& cfg = {});

/// Every mode-k pair of A is a mode-l pair of transpose_kl(A, k, l) within tol.
bool mode_consistency_check(const DenseTensor& a, const DenseTensor& b, int k, int l,
                            const std::vector<EigenPair>& pairs_k, double tol = 1e-6);

/// Residual bound 1e-6 max(1, |lambda|, ||x||inf^(max(m,m')-1)).
double residual_bound(const EigenPair& p, int m, int mprime);

}  // namespace teneig
