#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "horobm/experiments.hpp"
#include "horobm/report.hpp"

namespace {

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"verify-bm", "root-area inequality for horocyclic combinations of plane regions"},
    {"verify-bbl", "mass inequality for sup-convolutions of densities"},
    {"scaling", "area scaling of chord dilations about a marked origin"},
    {"bottleneck", "geodesic midpoint collapse against the horocyclic bound"},
    {"needles", "dual potentials, strain chains and chain mass balance"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical checks for horocyclic combinations in the hyperbolic disc"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  bool svg = false;

  for (const auto& [name, desc] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "experiment config JSON")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out_dir, "override the output directory");
    sub->add_flag("--svg", svg, "emit SVG figures");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    std::string selected = app.get_subcommands().at(0)->get_name();
    horobm::ExperimentConfig cfg = horobm::load_config(horobm::read_text_file(config_path));
    if (cfg.experiment != selected) {
      std::fprintf(stderr, "error: config declares experiment \"%s\" but subcommand is \"%s\"\n",
                   cfg.experiment.c_str(), selected.c_str());
      return 2;
    }
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (svg) cfg.svg = true;

    auto t0 = std::chrono::steady_clock::now();
    horobm::ExperimentOutput res = horobm::run_experiment(cfg);
    res.report.wall_clock_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int passed = 0;
    for (const auto& c : res.report.checks) {
      std::printf("[%s] %s: value=%.6g bound=%.6g tol=%.6g%s%s\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.value, c.bound, c.tolerance, c.note.empty() ? "" : "  # ",
                  c.note.c_str());
      if (c.pass) ++passed;
    }

    std::filesystem::create_directories(cfg.out_dir);
    std::filesystem::path base(cfg.out_dir);
    horobm::write_text_file((base / "report.json").string(),
                            horobm::report_to_json(res.report, false));
    horobm::write_text_file((base / "report.csv").string(), horobm::report_to_csv(res.report));
    for (const auto& art : res.artifacts) {
      horobm::write_text_file((base / art.filename).string(), art.content);
    }

    std::printf("%d/%zu checks passed in %.1fs, report in %s\n", passed,
                res.report.checks.size(), res.report.wall_clock_sec, cfg.out_dir.c_str());
    return res.report.all_pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
