#include "teneig/solution_store.hpp"

#include <algorithm>

namespace teneig {

int SolutionStore::insert(CVector point, double cond) {
  const int id = size();
  index_.emplace(point(0).real(), id);
  entries_.push_back({std::move(point), cond});
  return id;
}

std::vector<int> SolutionStore::near(const CVector& q) const {
  std::vector<int> hits;
  const double key = q(0).real();
  for (auto it = index_.lower_bound(key - tol_); it != index_.end() && it->first <= key + tol_; ++it) {
    const CVector& p = entries_[it->second].point;
    if (p.size() == q.size() && inf_norm(p - q) <= tol_) hits.push_back(it->second);
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

DuplicateCheck check_duplicate(const SolutionStore& store, const CVector& point, double cond,
                               const TrackerConfig& cfg) {
  DuplicateCheck out;
  const auto hits = store.near(point);
  if (hits.empty()) return out;
  out.duplicate = true;
  out.id = hits.front();
  out.curve_jump = cond > cfg.cond_threshold && store.at(out.id).cond > cfg.cond_threshold;
  return out;
}

}  // namespace teneig
