// Batch front end: verification suites, dualization, admissibility,
// reconstruction and mesh export, driven by a JSON config.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>

#include "horo/runner.hpp"

namespace {

int run_verb(const std::string& verb, horo::RunConfig& cfg) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  horo::Report rep;
  if (verb == "verify") {
    rep = horo::run_verify(cfg);
  } else if (verb == "dualize") {
    rep = horo::run_dualize(cfg);
  } else if (verb == "admissible") {
    rep = horo::run_admissible(cfg);
  } else if (verb == "reconstruct") {
    rep = horo::run_reconstruct(cfg);
  } else if (verb == "export") {
    horo::export_mesh(cfg.build_surface(), cfg.mesh_off.empty() ? "mesh.off" : cfg.mesh_off,
                      cfg.mesh_model, cfg.mesh_rows, cfg.mesh_cols);
    rep.overall_pass = true;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  rep.write(cfg, ms);
  std::cout << rep.to_json(cfg, ms).dump(2) << '\n';
  for (const auto& c : rep.checks)
    std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << "  max_dev=" << c.max_deviation
              << "  tol=" << c.tolerance << '\n';
  return rep.overall_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horoctl - horospherical duality verification tool"};
  app.require_subcommand(1);

  std::string config_path, out_dir, verb_found;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tol = 0.0;
  bool tol_set = false;
  int grid = 0;

  for (const std::string verb : {"verify", "dualize", "admissible", "reconstruct", "export"}) {
    auto* sub = app.add_subcommand(verb);
    sub->add_option("--config", config_path, "configuration JSON")->required();
    sub->add_option("--out", out_dir, "output directory prefix");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s; seed_set = true; }, "seed override");
    sub->add_option_function<double>(
        "--tol", [&](double t) { tol = t; tol_set = true; }, "tolerance override");
    sub->add_option("--grid", grid, "samples per check override");
    sub->callback([&, verb] { verb_found = verb; });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    horo::RunConfig cfg = horo::RunConfig::from_file(config_path);
    if (seed_set) cfg.seed = seed;
    if (tol_set) cfg.tol_override = tol;
    if (grid > 0) cfg.grid = grid;
    if (!out_dir.empty()) {
      auto prefix = [&](std::string& p) {
        if (!p.empty()) p = out_dir + "/" + p;
      };
      prefix(cfg.report_json);
      prefix(cfg.report_csv);
      prefix(cfg.mesh_off);
    }
    return run_verb(verb_found, cfg);
  } catch (const horo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const horo::NotAdmissible& e) {
    std::cerr << "not admissible: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
