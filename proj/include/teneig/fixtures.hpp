#pragma once

#include <optional>
#include <string>
#include <vector>

#include "teneig/io.hpp"

namespace teneig {

struct FixtureInfo {
  std::string name;
  std::string description;
  /// Accepts --a (appendix-03, appendix-04) or --n (families indexed by dimension).
  bool takes_a = false;
  bool takes_n = false;
  int default_n = 0;
};

const std::vector<FixtureInfo>& fixture_catalog();

/// Regenerates a bundled problem. Polynomial-form problems come back as monomial
/// lists, entry-defined ones as dense tensors. Throws InputError for an unknown name
/// or a parameter the fixture does not take.
TensorSource make_fixture(const std::string& name, std::optional<double> a = std::nullopt,
                          std::optional<int> n = std::nullopt);

}  // namespace teneig
