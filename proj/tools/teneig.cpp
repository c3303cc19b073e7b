#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "teneig/eig.hpp"
#include "teneig/fixtures.hpp"
#include "teneig/io.hpp"

using namespace teneig;

namespace {

struct SolveOptions {
  std::string input;
  std::string b_file;
  int mode = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::optional<double> tol;
  bool all = false;
};

void add_common(CLI::App* cmd, SolveOptions& o) {
  cmd->add_option("--input", o.input, "tensor file A")->required();
  cmd->add_option("--seed", o.seed, "random seed for hyperplane, start system and gamma");
  cmd->add_option("--out", o.out, "result file (stdout if omitted)");
  cmd->add_option("--tol", o.tol, "Newton residual tolerance (relative to term magnitude)");
}

TrackerConfig config_for(const SolveOptions& o) {
  TrackerConfig cfg;
  if (o.tol) cfg.newton_tol = *o.tol;
  cfg.validate();
  return cfg;
}

int finish(const SolveReport& report, const nlohmann::json& doc, const std::string& out) {
  write_json(out, doc);
  if (!report.complete()) {
    std::fprintf(stderr, "warning: %d of %lld paths failed\n", report.paths_failed, report.path_count);
    return 2;
  }
  return 0;
}

int run_complex(const std::string& which, const SolveOptions& o) {
  const DenseTensor a = read_tensor_file(o.input).tensor();
  const TrackerConfig cfg = config_for(o);
  SolveReport r;
  if (which == "eeig") {
    r = eeig(a, o.mode, o.seed, cfg);
  } else {
    const DenseTensor b = o.b_file.empty() ? identity_tensor(a.order(), a.dim()) : read_tensor_file(o.b_file).tensor();
    r = which == "teig" ? teig(a, b, o.mode, o.seed, cfg) : teneig::teneig(a, b, o.mode, o.seed, cfg);
  }
  return finish(r, to_json(r), o.out);
}

int run_real(const std::string& which, const SolveOptions& o) {
  const DenseTensor a = read_tensor_file(o.input).tensor();
  const TrackerConfig cfg = config_for(o);
  const RealReport r = which == "zeig" ? zeig(a, o.seed, cfg) : heig(a, o.seed, cfg);
  return finish(r.complex, to_json(r, o.all), o.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"All mode-k generalized tensor eigenpairs by homotopy continuation"};
  app.require_subcommand(1);

  SolveOptions o;
  std::string which;
  for (const char* name : {"teig", "teneig", "eeig"}) {
    auto* cmd = app.add_subcommand(name, name == std::string("teig")    ? "pairs for A and B of equal order"
                                         : name == std::string("teneig") ? "pairs for A and B of different order"
                                                                          : "pairs with B the identity matrix");
    add_common(cmd, o);
    cmd->add_option("--mode", o.mode, "contraction mode k (1-based)");
    if (name != std::string("eeig")) {
      auto* b = cmd->add_option("--B", o.b_file, "tensor file B");
      if (name == std::string("teneig")) b->required();
    }
    cmd->callback([&which, name] { which = name; });
  }
  for (const char* name : {"zeig", "heig"}) {
    auto* cmd = app.add_subcommand(name, name == std::string("zeig") ? "real Z-eigenpairs" : "real H-eigenpairs");
    add_common(cmd, o);
    cmd->add_flag("--all", o.all, "also emit the complex pairs");
    cmd->callback([&which, name] { which = name; });
  }

  std::string fixture;
  std::optional<double> fa;
  std::optional<int> fn;
  auto* fix = app.add_subcommand("fixtures", "list bundled problems or write one as a tensor file");
  fix->add_option("name", fixture, "fixture to materialize");
  fix->add_option("--a", fa, "parameter of appendix-03 / appendix-04");
  fix->add_option("--n", fn, "dimension of appendix-07 / -10 / -11 / -12");
  fix->add_option("--out", o.out, "tensor file (stdout if omitted)");
  fix->callback([&which] { which = "fixtures"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (which == "fixtures") {
      if (fixture.empty()) {
        for (const auto& f : fixture_catalog()) std::cout << f.name << "  " << f.description << '\n';
        return 0;
      }
      write_tensor_file(o.out, make_fixture(fixture, fa, fn));
      return 0;
    }
    if (which == "zeig" || which == "heig") return run_real(which, o);
    return run_complex(which, o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
