#pragma once

#include <string>
#include <vector>

#include "drisim/simulate.hpp"

namespace drisim {

/// CSV with one row per (curve, axis point):
///   curve,axis,axis_value,mean_rate_bps_hz,std_err,trials
/// Doubles are printed with %.17g so the values round-trip exactly.
void emit_csv(const SweepReport& report, const std::string& path);

/// Plot-ready text: one block per curve with commented metadata and
/// whitespace-separated (axis_value, mean_rate, std_err) rows; blocks are
/// separated by blank lines.
void emit_plot_data(const SweepReport& report, const std::string& path);

/// Replay record written alongside every output set. config_text is the
/// canonical serialization of the resolved SweepConfig, so
///   drisim run --config <saved file>
/// reproduces the run exactly.
struct RunManifest {
  std::string tool;
  std::string version;
  std::string created_utc;
  std::string source;  // preset name or config file the run came from
  std::string config_text;
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  double wall_seconds = 0.0;
};

void write_manifest(const RunManifest& manifest, const std::string& path);
RunManifest read_manifest(const std::string& path);

/// Writes <name>.csv / <name>.plot.txt (as requested) plus <name>.config and
/// <name>.manifest.json into out_dir, creating it if needed. Returns the
/// paths of everything written.
std::vector<std::string> write_run_outputs(const SweepReport& report,
                                           const std::string& out_dir,
                                           const std::string& name,
                                           bool with_csv, bool with_plot,
                                           const std::string& source);

}  // namespace drisim
