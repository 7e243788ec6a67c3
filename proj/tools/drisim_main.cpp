#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "drisim/common.hpp"
#include "drisim/config.hpp"
#include "drisim/props.hpp"
#include "drisim/report_io.hpp"
#include "drisim/simulate.hpp"

namespace {

using namespace drisim;

struct RunOptions {
  std::string config_path;
  std::string preset;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string name;
  bool csv = false;
  bool plot_data = false;
  int threads = 0;
};

void print_summary(const SweepReport& report) {
  std::printf("axis: %s | trials: %d | seed: %llu | wall: %.1fs\n",
              axis_name(report.config.axis), report.config.trials,
              static_cast<unsigned long long>(report.config.seed),
              report.wall_seconds);
  for (const Curve& curve : report.curves) {
    std::printf("%s\n", curve.label.c_str());
    for (const CurvePoint& pt : curve.points) {
      std::string hist;
      for (const auto& [label, count] : pt.bottlenecks)
        hist += " " + label + ":" + std::to_string(count);
      std::printf("  %10.4g  rate %.4f +/- %.4f bps/Hz  iters %.1f  bottleneck%s\n",
                  pt.axis_value, pt.mean_rate, pt.std_err, pt.mean_opt_iters,
                  hist.c_str());
    }
  }
}

int run_props(const PropsConfig& config) {
  const PropsReport r = run_mm_property_suite(config);
  std::printf("%s objective trace monotone: %d/%d instances (worst increase %.3g)\n",
              r.trace_violations == 0 ? "PASS" : "FAIL",
              r.instances - r.trace_violations, r.instances, r.worst_trace_increase);
  std::printf("%s upper bound dominates objective: worst gap %.3g\n",
              r.bound_violations == 0 ? "PASS" : "FAIL", r.worst_bound_gap);
  std::printf("%s bound touches at expansion point: worst |gap| %.3g\n",
              r.touch_violations == 0 ? "PASS" : "FAIL", r.worst_touch_gap);
  return r.pass() ? 0 : 1;
}

int run_command(const RunOptions& opt) {
  std::string source, text, default_name;
  if (!opt.preset.empty()) {
    const auto preset = find_preset(opt.preset);
    if (!preset) {
      std::string known;
      for (const auto& n : preset_names()) known += " " + n;
      throw ConfigError("unknown preset '" + opt.preset + "'; available:" + known);
    }
    source = "preset:" + opt.preset;
    text = preset->config_text;
    default_name = opt.preset;

    if (preset->kind == PresetKind::Props) {
      PropsConfig config = parse_props_text(text, source);
      if (opt.trials) config.instances = *opt.trials;
      if (opt.seed) config.seed = *opt.seed;
      return run_props(config);
    }
  } else {
    source = "file:" + opt.config_path;
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("cannot open config file '" + opt.config_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    default_name = std::filesystem::path(opt.config_path).stem().string();
  }

  SweepConfig config = parse_config_text(text, source);
  if (opt.trials) config.trials = *opt.trials;
  if (opt.seed) config.seed = *opt.seed;
  validate(config);

  const SweepReport report = run_sweep(config, opt.threads);
  print_summary(report);

  if (opt.csv || opt.plot_data) {
    const std::string name = opt.name.empty() ? default_name : opt.name;
    const auto outputs =
        write_run_outputs(report, opt.out_dir, name, opt.csv, opt.plot_data, source);
    for (const auto& path : outputs) std::printf("wrote %s\n", path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo simulator for relay-aided double-RIS links"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  RunOptions opt;
  CLI::App* run = app.add_subcommand("run", "run a sweep and emit reports");
  auto* config_opt = run->add_option("--config", opt.config_path, "run configuration file");
  auto* preset_opt =
      run->add_option("--preset", opt.preset, "built-in preset: fig2, fig3, appendix-props");
  config_opt->excludes(preset_opt);
  preset_opt->excludes(config_opt);
  run->add_option("--trials", opt.trials, "override the trial count");
  run->add_option("--seed", opt.seed, "override the master seed");
  run->add_option("--out", opt.out_dir, "output directory")->capture_default_str();
  run->add_option("--name", opt.name, "output basename (defaults to preset/config name)");
  run->add_flag("--csv", opt.csv, "write <name>.csv");
  run->add_flag("--plot-data", opt.plot_data, "write <name>.plot.txt");
  run->add_option("--threads", opt.threads, "worker threads (0 = hardware)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (opt.config_path.empty() && opt.preset.empty())
      throw ConfigError("one of --config or --preset is required");
    return run_command(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
