#include "teneig/io.hpp"

#include <fstream>
#include <iostream>

namespace teneig {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InputError("expected a [re, im] pair, got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json vector_json(const CVector& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_json(z));
  return out;
}

const json& require(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing key '") + key + "'");
  return doc.at(key);
}

int require_int(const json& doc, const char* key, int min) {
  const json& v = require(doc, key);
  if (!v.is_number_integer()) throw InputError(std::string("'") + key + "' must be an integer");
  const auto value = v.get<long long>();
  if (value < min || value > 64) throw InputError(std::string("'") + key + "' out of range");
  return static_cast<int>(value);
}

}  // namespace

int TensorSource::order() const {
  return std::visit([](const auto& f) {
    if constexpr (std::is_same_v<std::decay_t<decltype(f)>, DenseTensor>) {
      return f.order();
    } else {
      return f.degree();
    }
  }, form);
}

int TensorSource::dim() const {
  return std::visit([](const auto& f) { return f.dim(); }, form);
}

DenseTensor TensorSource::tensor() const {
  if (const auto* dense = std::get_if<DenseTensor>(&form)) return *dense;
  return from_monomials(std::get<MonomialForm>(form));
}

json to_json(const TensorSource& src) {
  json doc{{"order", src.order()}, {"dim", src.dim()}};
  if (const auto* dense = std::get_if<DenseTensor>(&src.form)) {
    doc["format"] = "dense";
    json entries = json::array();
    for (const auto& z : dense->entries()) entries.push_back(complex_json(z));
    doc["entries"] = std::move(entries);
  } else {
    doc["format"] = "monomials";
    json entries = json::array();
    for (const auto& t : std::get<MonomialForm>(src.form).terms()) {
      entries.push_back({{"coeff", complex_json(t.coeff)}, {"alpha", t.alpha}});
    }
    doc["entries"] = std::move(entries);
  }
  return doc;
}

TensorSource tensor_from_json(const json& doc) {
  const int order = require_int(doc, "order", 1);
  const int dim = require_int(doc, "dim", 1);
  const json& format = require(doc, "format");
  const json& entries = require(doc, "entries");
  if (!entries.is_array()) throw InputError("'entries' must be a list");
  if (format == "dense") {
    const double expected = std::pow(static_cast<double>(dim), order);
    if (expected > 1e8) throw InputError("tensor too large");
    if (static_cast<double>(entries.size()) != expected) {
      throw InputError("dense tensor needs dim^order = " + std::to_string(static_cast<long long>(expected)) +
                       " entries, got " + std::to_string(entries.size()));
    }
    std::vector<Complex> values;
    values.reserve(entries.size());
    for (const auto& e : entries) values.push_back(complex_from(e));
    return {DenseTensor(order, dim, std::move(values))};
  }
  if (format == "monomials") {
    std::vector<MonomialForm::Term> terms;
    for (const auto& e : entries) {
      const json& alpha = require(e, "alpha");
      if (!alpha.is_array()) throw InputError("'alpha' must be a list of integers");
      std::vector<int> exps;
      for (const auto& a : alpha) {
        if (!a.is_number_integer()) throw InputError("'alpha' must be a list of integers");
        exps.push_back(a.get<int>());
      }
      terms.push_back({complex_from(require(e, "coeff")), std::move(exps)});
    }
    return {MonomialForm(order, dim, std::move(terms))};
  }
  throw InputError("'format' must be \"dense\" or \"monomials\"");
}

TensorSource read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return tensor_from_json(doc);
}

void write_tensor_file(const std::filesystem::path& path, const TensorSource& src) {
  write_json(path, to_json(src));
}

json to_json(const EigenPair& p) {
  return {{"lambda", complex_json(p.lambda)},
          {"x", vector_json(p.x)},
          {"multiplicity", p.multiplicity},
          {"residual", p.residual},
          {"classification", std::string(to_string(p.classification))},
          {"is_real", p.is_real},
          {"component_id", p.component_id},
          {"normalized", p.normalized},
          {"curve_jump", p.curve_jump}};
}

json to_json(const SolveReport& report) {
  json pairs = json::array();
  for (const auto& p : report.pairs) pairs.push_back(to_json(p));
  return {{"metadata",
           {{"m", report.m},
            {"mprime", report.mprime},
            {"n", report.n},
            {"k", report.k},
            {"seed", report.seed},
            {"path_count", report.path_count},
            {"paths_converged", report.paths_converged},
            {"paths_at_infinity", report.paths_at_infinity},
            {"paths_failed", report.paths_failed}}},
          {"eigenpairs", std::move(pairs)}};
}

json to_json(const RealReport& report, bool include_complex) {
  json doc = to_json(report.complex);
  if (include_complex) doc["complex_eigenpairs"] = std::move(doc["eigenpairs"]);
  json pairs = json::array();
  for (const auto& p : report.real) pairs.push_back(to_json(p));
  doc["eigenpairs"] = std::move(pairs);
  return doc;
}

void write_json(const std::filesystem::path& path, const json& doc) {
  if (path.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace teneig
