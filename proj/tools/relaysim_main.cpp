// Command-line experiment runner. Subcommands sweep the operating point and
// write '#'-headed CSV curve files; see README for the config key reference.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "relaysim/experiment.hpp"
#include "relaysim/version.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scheme;
  std::optional<double> quad_inner_tol;
  std::optional<double> quad_outer_tol;
  std::string out_path;
};

void add_common_options(CLI::App* sub, CliOverrides& o,
                        const std::string& default_out) {
  sub->add_option("--config", o.config_path, "Config file (key = value)");
  sub->add_option("--trials", o.trials, "Monte Carlo trials per point");
  sub->add_option("--seed", o.seed, "Master seed");
  sub->add_option("--scheme", o.scheme, "lbrs|cors|cpors|all")
      ->check(CLI::IsMember({"lbrs", "cors", "cpors", "all"}));
  sub->add_option("--quad-inner-tol", o.quad_inner_tol,
                  "Absolute tolerance of inner integrals");
  sub->add_option("--quad-outer-tol", o.quad_outer_tol,
                  "Absolute tolerance of tail integrals");
  o.out_path = default_out;
  sub->add_option("--out", o.out_path, "Output file ('-' for stdout)");
}

relaysim::ExperimentConfig build_config(const CliOverrides& o) {
  relaysim::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = relaysim::load_config_file(o.config_path);
  if (o.trials) cfg.trials = *o.trials;
  if (o.seed) cfg.seed = *o.seed;
  if (o.scheme) relaysim::apply_config_line(cfg, "scheme = " + *o.scheme);
  if (o.quad_inner_tol) cfg.quad_inner_tol = *o.quad_inner_tol;
  if (o.quad_outer_tol) cfg.quad_outer_tol = *o.quad_outer_tol;
  return cfg;
}

int run(const CliOverrides& o,
        void (*runner)(const relaysim::ExperimentConfig&, std::ostream&)) {
  const relaysim::ExperimentConfig cfg = build_config(o);
  if (o.out_path == "-") {
    runner(cfg, std::cout);
    return 0;
  }
  std::ofstream file(o.out_path);
  if (!file) {
    std::cerr << "error: cannot open output file: " << o.out_path << "\n";
    return 1;
  }
  runner(cfg, file);
  file.close();
  if (!file) {
    std::cerr << "error: write failure: " << o.out_path << "\n";
    return 1;
  }
  std::cerr << "wrote " << o.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relay-selection delay outage simulator"};
  app.set_version_flag("--version", relaysim::kVersion);
  app.require_subcommand(1);

  CliOverrides fig2, fig3, diversity, point;
  CLI::App* sub_fig2 = app.add_subcommand(
      "fig2", "Outage vs relay power sweep, Monte Carlo + analytic");
  add_common_options(sub_fig2, fig2, "fig2.csv");
  CLI::App* sub_fig3 = app.add_subcommand(
      "fig3", "Outage vs relay count for two CPU populations");
  add_common_options(sub_fig3, fig3, "fig3.csv");
  CLI::App* sub_div = app.add_subcommand(
      "diversity", "High-SNR slope fits per selection policy");
  add_common_options(sub_div, diversity, "diversity.csv");
  CLI::App* sub_point =
      app.add_subcommand("point", "Single operating point, all methods");
  add_common_options(sub_point, point, "-");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sub_fig2->parsed()) return run(fig2, relaysim::run_fig2);
    if (sub_fig3->parsed()) return run(fig3, relaysim::run_fig3);
    if (sub_div->parsed()) return run(diversity, relaysim::run_diversity);
    if (sub_point->parsed()) return run(point, relaysim::run_point);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
