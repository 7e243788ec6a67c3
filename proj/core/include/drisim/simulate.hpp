#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drisim/geometry.hpp"
#include "drisim/phaseopt.hpp"
#include "drisim/schemes.hpp"

namespace drisim {

enum class SweepAxis { TransmitSnrDb, ElementsPerRis, InrDb };

const char* axis_name(SweepAxis axis);

/// One Monte Carlo experiment: which schemes to compare, what to sweep, and
/// everything needed to reproduce the run bit-exactly. SNR/INR values are in
/// dB (they are converted to linear ratios when the sweep runs); the Rician
/// factor is in dB as well.
struct SweepConfig {
  std::vector<SchemeId> schemes = {SchemeId::RisOnly, SchemeId::SingleRelay,
                                   SchemeId::TwoRelay, SchemeId::Enhanced};
  SweepAxis axis = SweepAxis::TransmitSnrDb;
  std::vector<double> points;

  struct Fixed {
    int m = 128;
    double snr_db = 50.0;
    double inr_db = 0.0;
  } fixed;

  /// Interference levels for the concurrent scheme: one curve per level
  /// (ignored when the sweep axis is the INR itself).
  std::vector<double> enhanced_inr_db = {0.0};

  int trials = 500;
  std::uint64_t seed = 1;
  double p1_fraction = 0.5;

  double rician_k_db = 10.0;
  double los_exponent = 2.3;
  double nlos_exponent = 3.5;
  double noise_power = 1.0;

  NodeLayout nodes = paper_layout();
  AoSettings optimizer{};
};

/// Throws ConfigError on an invalid or inconsistent configuration (bad axis
/// list, missing relay nodes for a requested scheme, degenerate distances).
void validate(const SweepConfig& config);

struct CurvePoint {
  double axis_value = 0.0;
  double mean_rate = 0.0;
  double std_err = 0.0;
  double mean_opt_iters = 0.0;
  std::map<std::string, int> bottlenecks;  // hop label -> drops it limited
};

struct Curve {
  std::string label;
  SchemeId scheme{};
  double inr_db = 0.0;  // resolved level for the concurrent scheme
  std::vector<CurvePoint> points;
};

struct SweepReport {
  SweepConfig config;
  std::vector<Curve> curves;
  double wall_seconds = 0.0;
};

/// Curve labels a config will produce, in report order.
std::vector<std::string> curve_labels(const SweepConfig& config);

/// Runs the sweep: `trials` paired drops per axis point, every scheme
/// evaluated on the same drops. Deterministic for a given config, whatever
/// `threads` is (0 = hardware concurrency).
SweepReport run_sweep(const SweepConfig& config, int threads = 0);

/// Axis value where the curve first reaches target_rate, linearly
/// interpolated; empty if the curve never reaches it.
std::optional<double> threshold_crossing(const SweepReport& report,
                                         std::string_view curve_label,
                                         double target_rate);

}  // namespace drisim
