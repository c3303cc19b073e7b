#pragma once

#include <filesystem>
#include <variant>

#include "json.hpp"
#include "teneig/eig.hpp"
#include "teneig/tensor.hpp"

namespace teneig {

/// Contents of a tensor file: either dense entries or a monomial list.
struct TensorSource {
  std::variant<DenseTensor, MonomialForm> form;

  int order() const;
  int dim() const;
  DenseTensor tensor() const;
};

nlohmann::json to_json(const TensorSource& src);

/// Throws InputError on any missing key, wrong type or shape mismatch.
TensorSource tensor_from_json(const nlohmann::json& doc);

TensorSource read_tensor_file(const std::filesystem::path& path);
void write_tensor_file(const std::filesystem::path& path, const TensorSource& src);

nlohmann::json to_json(const EigenPair& p);
nlohmann::json to_json(const SolveReport& report);

/// Real pairs under "eigenpairs"; with include_complex the source pairs go under
/// "complex_eigenpairs".
nlohmann::json to_json(const RealReport& report, bool include_complex);

/// Writes to stdout when path is empty.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace teneig
