#pragma once

#include <string>
#include <vector>

#include "drisim/channels.hpp"
#include "drisim/phaseopt.hpp"

namespace drisim {

enum class SchemeId { RisOnly, SingleRelay, TwoRelay, Enhanced };

const char* scheme_name(SchemeId id);

/// Total budget p split between the source (p1) and the far relay (p2).
struct PowerSplit {
  double p_total = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  static PowerSplit half(double p) { return {p, 0.5 * p, 0.5 * p}; }
  static PowerSplit split(double p, double p1_fraction);
};

/// Residual relay-to-relay interference after cancellation, expressed as the
/// interference-to-noise ratio rho_e = sigma_e^2 / sigma^2.
struct InterferenceParams {
  double inr = 0.0;  // linear
};

struct HopSinr {
  std::string label;
  double sinr = 0.0;
};

struct SchemeResult {
  SchemeId scheme_id{};
  std::vector<HopSinr> hop_snrs;
  std::string bottleneck;
  double rate_bps_hz = 0.0;
  std::vector<int> optimizer_iters;
  double prelog = 1.0;
};

/// Double-reflection only: rate = log2(1 + rho |phi^T F theta|^2) with both
/// surface configurations from the alternating optimizer.
SchemeResult eval_ris_only(const ChannelRealization& drop, double rho,
                           const AoSettings& settings);

/// One mid relay, two time slots; both hops use the coherent closed form.
SchemeResult eval_single_relay(const ChannelRealization& drop, double rho,
                               const AoSettings& settings);

/// Relay pair, three time slots; the middle hop runs the two-surface
/// alternating optimizer.
SchemeResult eval_two_relay(const ChannelRealization& drop, double rho,
                            const AoSettings& settings);

/// Concurrent retransmission: source and far relay transmit together, which
/// costs residual interference at the near relay and a fractional-program
/// phase design at the destination, but restores a 1/2 pre-log.
SchemeResult eval_enhanced(const ChannelRealization& drop,
                           const PowerSplit& power, double sigma2,
                           const InterferenceParams& interference,
                           const AoSettings& settings);

}  // namespace drisim
