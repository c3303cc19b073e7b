#pragma once

#include <map>
#include <vector>

#include "teneig/tracker.hpp"
#include "teneig/types.hpp"

namespace teneig {

/// Endpoints ordered by Re(lambda) for windowed near-duplicate lookup.
class SolutionStore {
 public:
  struct Entry {
    CVector point;
    double cond;
  };

  explicit SolutionStore(double tol) : tol_(tol) {}

  double tol() const { return tol_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const Entry& at(int id) const { return entries_.at(id); }

  int insert(CVector point, double cond);

  /// Ids of every stored point within tol of q in inf-norm, in insertion order.
  std::vector<int> near(const CVector& q) const;

 private:
  double tol_;
  std::multimap<double, int> index_;
  std::vector<Entry> entries_;
};

struct DuplicateCheck {
  bool duplicate = false;
  int id = -1;
  bool curve_jump = false;
};

/// First stored point within duplicate_tol; a curve jump is suspected when both
/// condition estimates exceed cond_threshold.
DuplicateCheck check_duplicate(const SolutionStore& store, const CVector& point, double cond,
                               const TrackerConfig& cfg);

}  // namespace teneig
