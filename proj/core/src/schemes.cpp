#include "drisim/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "drisim/common.hpp"

namespace drisim {

namespace {

double rate_from_hops(double prelog, const std::vector<HopSinr>& hops,
                      std::string* bottleneck) {
  double min_sinr = hops.front().sinr;
  *bottleneck = hops.front().label;
  for (const auto& h : hops) {
    if (h.sinr < min_sinr) {
      min_sinr = h.sinr;
      *bottleneck = h.label;
    }
  }
  return prelog * std::log2(1.0 + min_sinr);
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

Eigen::VectorXcd ew(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return a.cwiseProduct(b);
}

/// Everything the relay-pair middle hop needs, shared by the sequential and
/// concurrent schemes.
CascadeOperators pair_cascades(const ChannelRealization& drop) {
  CascadeOperators ops;
  ops.q_mat = cascade_f(*drop.h_i2r2, drop.g, *drop.h_i1r1);
  ops.u1 = ew(*drop.h_i1r2, *drop.h_i1r1);
  ops.u2 = ew(*drop.h_i2r2, *drop.h_i2r1);
  ops.h_r1r2 = *drop.h_r1r2;
  ops.h_r2d = *drop.h_r2d;
  return ops;
}

}  // namespace

const char* scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::RisOnly: return "ris_only";
    case SchemeId::SingleRelay: return "single_relay";
    case SchemeId::TwoRelay: return "two_relay";
    case SchemeId::Enhanced: return "enhanced";
  }
  return "unknown";
}

PowerSplit PowerSplit::split(double p, double p1_fraction) {
  if (p < 0.0 || p1_fraction < 0.0 || p1_fraction > 1.0)
    throw std::domain_error("PowerSplit: need p >= 0 and p1_fraction in [0,1]");
  return {p, p1_fraction * p, (1.0 - p1_fraction) * p};
}

SchemeResult eval_ris_only(const ChannelRealization& drop, double rho,
                           const AoSettings& settings) {
  const Eigen::MatrixXcd f = cascade_f(drop.h_i2d, drop.g, drop.h_i1s);
  const AoDoubleRisResult ao = ao_double_ris(f, rho, settings);

  SchemeResult res;
  res.scheme_id = SchemeId::RisOnly;
  res.prelog = 1.0;
  res.hop_snrs = {{"D", ao.snr}};
  res.optimizer_iters = {ao.iters};
  res.rate_bps_hz = rate_from_hops(res.prelog, res.hop_snrs, &res.bottleneck);
  return res;
}

SchemeResult eval_single_relay(const ChannelRealization& drop, double rho,
                               const AoSettings& /*settings*/) {
  require(drop.h_sr && drop.h_rd && drop.h_i1r && drop.h_i2r,
          "eval_single_relay: drop lacks mid-relay channels");

  const double snr_r = coherent_snr(rho, *drop.h_sr, ew(*drop.h_i1r, drop.h_i1s));
  const double snr_d = coherent_snr(rho, *drop.h_rd, ew(drop.h_i2d, *drop.h_i2r));

  SchemeResult res;
  res.scheme_id = SchemeId::SingleRelay;
  res.prelog = 0.5;
  res.hop_snrs = {{"R", snr_r}, {"D", snr_d}};
  res.rate_bps_hz = rate_from_hops(res.prelog, res.hop_snrs, &res.bottleneck);
  return res;
}

SchemeResult eval_two_relay(const ChannelRealization& drop, double rho,
                            const AoSettings& settings) {
  require(drop.h_sr1 && drop.h_r1r2 && drop.h_r2d && drop.h_i1r1 &&
              drop.h_i1r2 && drop.h_i2r1 && drop.h_i2r2,
          "eval_two_relay: drop lacks relay-pair channels");

  const double snr_r1 = coherent_snr(rho, *drop.h_sr1, ew(*drop.h_i1r1, drop.h_i1s));

  const CascadeOperators ops = pair_cascades(drop);
  const AoSecondHopResult hop2 =
      ao_second_hop_two_ris(ops.q_mat, ops.u1, ops.u2, ops.h_r1r2, rho, settings);

  const double snr_d = coherent_snr(rho, *drop.h_r2d, ew(drop.h_i2d, *drop.h_i2r2));

  SchemeResult res;
  res.scheme_id = SchemeId::TwoRelay;
  res.prelog = 1.0 / 3.0;
  res.hop_snrs = {{"R1", snr_r1}, {"R2", hop2.snr}, {"D", snr_d}};
  res.optimizer_iters = {hop2.iters};
  res.rate_bps_hz = rate_from_hops(res.prelog, res.hop_snrs, &res.bottleneck);
  return res;
}

SchemeResult eval_enhanced(const ChannelRealization& drop,
                           const PowerSplit& power, double sigma2,
                           const InterferenceParams& interference,
                           const AoSettings& settings) {
  require(drop.h_sr1 && drop.h_r1r2 && drop.h_r2d && drop.h_i1r1 &&
              drop.h_i1r2 && drop.h_i2r1 && drop.h_i2r2,
          "eval_enhanced: drop lacks relay-pair channels");
  if (!(sigma2 > 0.0)) throw std::domain_error("eval_enhanced: sigma2 must be > 0");
  if (interference.inr < 0.0)
    throw std::domain_error("eval_enhanced: inr must be >= 0");

  const double sigma_e2 = interference.inr * sigma2;

  // Source hop: coherent surface gain, corrupted by residual cancellation error.
  const Eigen::VectorXcd first_hop = ew(*drop.h_i1r1, drop.h_i1s);
  const double amp_r1 = std::abs(*drop.h_sr1) + first_hop.cwiseAbs().sum();
  const double sinr_r1 = power.p1 * amp_r1 * amp_r1 / (sigma_e2 + sigma2);

  // Relay-to-relay hop is unchanged: the near relay transmits alone with the
  // full budget while the source stays silent.
  CascadeOperators ops = pair_cascades(drop);
  const double rho_full = power.p_total / sigma2;
  const AoSecondHopResult hop2 =
      ao_second_hop_two_ris(ops.q_mat, ops.u1, ops.u2, ops.h_r1r2, rho_full, settings);

  // Destination hop: the source transmission leaks through the double
  // reflection. The first surface keeps the configuration that maximizes the
  // source hop; the second surface solves the fractional program.
  const PhaseVector theta = align_to_reference(*drop.h_sr1, first_hop);
  ops.q_vec = drop.g * ew(theta.v, drop.h_i1s);
  ops.b_vec = ew(drop.h_i2d, ops.q_vec);
  ops.a_vec = ew(drop.h_i2d, *drop.h_i2r2);

  const MmResult mm = mm_fractional_phase(ops.a_vec, ops.b_vec, ops.h_r2d,
                                          power.p1, power.p2, sigma2, settings);

  SchemeResult res;
  res.scheme_id = SchemeId::Enhanced;
  res.prelog = 0.5;
  res.hop_snrs = {{"R1", sinr_r1}, {"R2", hop2.snr}, {"D", mm.sinr}};
  res.optimizer_iters = {hop2.iters, mm.iters};
  res.rate_bps_hz = rate_from_hops(res.prelog, res.hop_snrs, &res.bottleneck);
  return res;
}

}  // namespace drisim
