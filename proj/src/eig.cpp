#include "teneig/eig.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "teneig/random.hpp"
#include "teneig/solution_store.hpp"

namespace teneig {

namespace {

long long ipow(long long base, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

template <typename Fn>
void parallel_for(long long count, Fn&& fn) {
  const int workers = worker_count(count);
  if (workers <= 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (long long i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

/// Union-find over path indices.
struct Clusters {
  std::vector<int> parent;
  explicit Clusters(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void join(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool lex_less(const EigenPair& p, const EigenPair& q) {
  if (p.lambda.real() != q.lambda.real()) return p.lambda.real() < q.lambda.real();
  if (p.lambda.imag() != q.lambda.imag()) return p.lambda.imag() < q.lambda.imag();
  for (int i = 0; i < p.x.size() && i < q.x.size(); ++i) {
    if (p.x(i).real() != q.x(i).real()) return p.x(i).real() < q.x(i).real();
    if (p.x(i).imag() != q.x(i).imag()) return p.x(i).imag() < q.x(i).imag();
  }
  return false;
}

Complex class_invariant(Complex lambda, int m, int mprime) {
  return m == mprime ? lambda : std::pow(lambda, mprime);
}

double pair_residual(const DenseTensor& a, const DenseTensor& b, int k, Complex lambda, const CVector& x) {
  return inf_norm(mode_k_apply(a, k, x) - lambda * mode_k_apply(b, 1, x));
}

}  // namespace

std::vector<EigenPair> EquivalenceClass::members() const {
  std::vector<EigenPair> out;
  const int mp = scaling_order;
  const int shift = order_a - mp;
  for (int j = 0; j < mp; ++j) {
    const Complex t = std::polar(1.0, 2.0 * std::numbers::pi * j / mp);
    EigenPair p = representative;
    p.lambda *= std::pow(t, shift);
    p.x *= t;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<EquivalenceClass> SolveReport::classes() const {
  std::vector<EquivalenceClass> out;
  for (const auto& p : pairs) out.push_back({p, m == mprime ? 1 : mprime, m});
  return out;
}

long long path_count(int m, int mprime, int n) {
  if (m < 2 || mprime < 2 || n < 1) throw InputError("path_count needs m, m' >= 2 and n >= 1");
  if (m == mprime) return n * ipow(m - 1, n - 1);
  return (ipow(m - 1, n) - ipow(mprime - 1, n)) / (m - mprime);
}

long long tracked_path_count(int m, int mprime, int n) { return start_solution_count(n, std::max(m, mprime)); }

int worker_count(long long jobs) {
  long long w = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TENEIG_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) w = std::min<long long>(w, v);
  }
  return static_cast<int>(std::max(1LL, std::min(w, jobs)));
}

CVector max_abs_normalize(const CVector& x) {
  Eigen::Index i0 = 0;
  x.cwiseAbs().maxCoeff(&i0);
  return x / x(i0);
}

std::optional<EigenPair> normalize_pair(const EigenPair& p, const DenseTensor& b, int order_a) {
  const int mp = b.order();
  const Complex bx = multilinear_form(b, p.x);
  if (std::abs(bx) <= 1e-14 * std::pow(std::max(1.0, inf_norm(p.x)), mp)) return std::nullopt;
  EigenPair q = p;
  const Complex root = std::pow(bx, 1.0 / mp);
  q.x = p.x / root;
  q.lambda = p.lambda / std::pow(bx, static_cast<double>(order_a - mp) / mp);
  return q;
}

SolveReport solve_eigenpairs(const DenseTensor& a, const DenseTensor& b, int k, std::uint64_t seed,
                             const TrackerConfig& cfg) {
  cfg.validate();
  const int m = a.order();
  const int mp = b.order();
  const int n = a.dim();
  const EigenSystem g = build_eigen_system(a, b, k, derive_seed(seed, 0));
  const int degree = std::max(m, mp);
  const StartSystem q = build_start_system(n, degree, derive_seed(seed, 2));
  const Complex gamma = Rng(derive_seed(seed, 3)).unit_complex();
  const LinearHomotopy h(q, g, gamma);
  const auto starts = enumerate_start_solutions(q);
  const long long count = static_cast<long long>(starts.size());

  std::vector<PathResult> results(starts.size());
  parallel_for(count, [&](long long i) { results[i] = solve_path(h, starts[i], cfg); });

  // Duplicate endpoints that are both ill-conditioned suggest a curve jump:
  // retrace both projectively before clustering.
  {
    SolutionStore store(cfg.duplicate_tol);
    std::vector<int> owner;
    std::vector<char> flagged(results.size(), 0);
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      if (r.status != PathStatus::converged) continue;
      const auto dup = check_duplicate(store, r.endpoint, r.cond_estimate, cfg);
      if (dup.curve_jump) {
        flagged[i] = 1;
        flagged[owner[dup.id]] = 1;
      }
      store.insert(r.endpoint, r.cond_estimate);
      owner.push_back(static_cast<int>(i));
    }
    std::vector<long long> redo;
    for (std::size_t i = 0; i < results.size(); ++i)
      if (flagged[i] && !results[i].retraced_projective) redo.push_back(static_cast<long long>(i));
    std::vector<PathResult> again(redo.size());
    parallel_for(static_cast<long long>(redo.size()),
                 [&](long long j) { again[j] = retrace_projective(h, starts[redo[j]], cfg); });
    for (std::size_t j = 0; j < redo.size(); ++j) {
      if (again[j].status == PathStatus::converged) results[redo[j]] = again[j];
      results[redo[j]].curve_jump = true;
      results[redo[j]].retraced_projective = true;
    }
  }

  SolveReport rep;
  rep.m = m;
  rep.mprime = mp;
  rep.n = n;
  rep.k = k;
  rep.seed = seed;
  rep.path_count = count;

  std::vector<int> conv;
  for (std::size_t i = 0; i < results.size(); ++i) {
    switch (results[i].status) {
      case PathStatus::converged: conv.push_back(static_cast<int>(i)); break;
      case PathStatus::at_infinity: ++rep.paths_at_infinity; break;
      case PathStatus::failed: ++rep.paths_failed; break;
    }
  }
  rep.paths_converged = static_cast<int>(conv.size());

  // Cluster endpoints. Ill-conditioned isolated endpoints are only accurate to a
  // fractional power of machine precision, so they cluster at a wider radius and
  // the cluster centroid stands in for the root.
  auto isolated_singular = [](const PathResult& r) { return r.kind == EndpointKind::singular_isolated; };
  Clusters cl(static_cast<int>(conv.size()));
  {
    const double wide = std::max(cfg.duplicate_tol, cfg.singular_cluster_tol);
    SolutionStore store(wide);
    for (std::size_t c = 0; c < conv.size(); ++c) {
      const auto& r = results[conv[c]];
      for (int id : store.near(r.endpoint)) {
        const auto& o = results[conv[id]];
        const double tol = isolated_singular(r) && isolated_singular(o) ? wide : cfg.duplicate_tol;
        if (inf_norm(r.endpoint - o.endpoint) <= tol) cl.join(id, static_cast<int>(c));
      }
      store.insert(r.endpoint, r.cond_estimate);
    }
  }

  std::vector<EigenPair> pairs;
  for (std::size_t c = 0; c < conv.size(); ++c) {
    if (cl.find(static_cast<int>(c)) != static_cast<int>(c)) continue;
    int mult = 0;
    bool jump = false;
    const PathResult* best = nullptr;
    CVector centroid = CVector::Zero(n + 1);
    EndpointKind kind = EndpointKind::regular;
    for (std::size_t d = 0; d < conv.size(); ++d) {
      if (cl.find(static_cast<int>(d)) != static_cast<int>(c)) continue;
      const auto& r = results[conv[d]];
      ++mult;
      jump = jump || r.curve_jump;
      centroid += r.endpoint;
      kind = std::max(kind, r.kind);
      if (!best || r.residual < best->residual) best = &r;
    }
    centroid /= static_cast<double>(mult);
    const CVector& rep_point = kind == EndpointKind::singular_isolated ? centroid : best->endpoint;
    EigenPair p;
    p.lambda = rep_point(0);
    p.x = rep_point.tail(n);
    p.multiplicity = mult;
    p.classification = kind;
    p.curve_jump = jump && mult > 1;
    if (m == mp) {
      p.x = max_abs_normalize(p.x);
    } else if (auto z = normalize_pair(p, b, m)) {
      p = *z;
    } else {
      p.normalized = false;
    }
    p.residual = pair_residual(a, b, k, p.lambda, p.x);
    p.is_real = std::abs(p.lambda.imag()) <= cfg.imag_tol && p.x.imag().cwiseAbs().maxCoeff() <= cfg.imag_tol;
    pairs.push_back(std::move(p));
  }

  // Positive-dimensional samples sharing an eigenvalue belong to one component.
  int next_component = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].classification != EndpointKind::positive_dimensional || pairs[i].component_id >= 0) continue;
    const Complex key = class_invariant(pairs[i].lambda, m, mp);
    pairs[i].component_id = next_component;
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      if (pairs[j].classification == EndpointKind::positive_dimensional && pairs[j].component_id < 0 &&
          std::abs(class_invariant(pairs[j].lambda, m, mp) - key) <= 1e-6 * std::max(1.0, std::abs(key))) {
        pairs[j].component_id = next_component;
      }
    }
    ++next_component;
  }

  std::sort(pairs.begin(), pairs.end(), lex_less);
  rep.pairs = std::move(pairs);
  return rep;
}

SolveReport teig(const DenseTensor& a, const DenseTensor& b, int k, std::uint64_t seed, const TrackerConfig& cfg) {
  if (a.order() != b.order()) throw InputError("teig requires A and B of equal order");
  return solve_eigenpairs(a, b, k, seed, cfg);
}

SolveReport teneig(const DenseTensor& a, const DenseTensor& b, int k, std::uint64_t seed, const TrackerConfig& cfg) {
  if (a.order() == b.order()) throw InputError("teneig requires A and B of different order");
  return solve_eigenpairs(a, b, k, seed, cfg);
}

SolveReport eeig(const DenseTensor& a, int k, std::uint64_t seed, const TrackerConfig& cfg) {
  if (a.dim() == 1 && a.order() == 2) {
    throw InputError("eeig needs order >= 3 (order 2 is an ordinary matrix problem)");
  }
  if (a.order() == 2) return teig(a, identity_tensor(2, a.dim()), k, seed, cfg);
  return teneig(a, identity_tensor(2, a.dim()), k, seed, cfg);
}

double residual_bound(const EigenPair& p, int m, int mprime) {
  const int e = std::max(m, mprime) - 1;
  return 1e-6 * std::max({1.0, std::abs(p.lambda), std::pow(inf_norm(p.x), e)});
}

bool mode_consistency_check(const DenseTensor& a, const DenseTensor& b, int k, int l,
                            const std::vector<EigenPair>& pairs_k, double tol) {
  const DenseTensor t = transpose_kl(a, std::min(k, l), std::max(k, l));
  for (const auto& p : pairs_k) {
    const double r = pair_residual(t, b, l, p.lambda, p.x);
    if (r > tol * std::max({1.0, std::abs(p.lambda), inf_norm(p.x)})) return false;
  }
  return true;
}

}  // namespace teneig
