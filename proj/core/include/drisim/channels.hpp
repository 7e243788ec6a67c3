#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>

#include "drisim/geometry.hpp"
#include "drisim/rng.hpp"

namespace drisim {

struct ChannelParams {
  double rician_k = 10.0;    // linear K factor (+inf = pure LoS)
  PathLossParams path{};
  double noise_power = 1.0;  // sigma^2
};

/// (master_seed, drop_index) fully determines one network realization.
struct DropSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t drop_index = 0;
};

/// Stable per-link substream ids. Values are part of the reproducibility
/// contract: a link draws the same realization in every architecture.
enum class Link : std::uint64_t {
  I1S = 1,
  I2D = 2,
  I1I2 = 3,
  SR = 4,
  RD = 5,
  I1R = 6,
  I2R = 7,
  SR1 = 8,
  R1R2 = 9,
  R2D = 10,
  I1R1 = 11,
  I1R2 = 12,
  I2R1 = 13,
  I2R2 = 14,
};

/// One random drop of every channel in the network. Surface-side channels
/// are always present; relay-side channels are populated only when the
/// topology contains the relay nodes.
struct ChannelRealization {
  int m = 0;
  Eigen::VectorXcd h_i1s, h_i2d;
  Eigen::MatrixXcd g;

  // single mid relay
  std::optional<Eigen::VectorXcd> h_i1r, h_i2r;
  std::optional<std::complex<double>> h_sr, h_rd;

  // relay pair
  std::optional<Eigen::VectorXcd> h_i1r1, h_i1r2, h_i2r1, h_i2r2;
  std::optional<std::complex<double>> h_sr1, h_r1r2, h_r2d;
};

/// Rician fading vector: per element, a fixed-magnitude d^{-los_exp/2} LoS
/// term with an i.i.d. uniform phase plus a CN(0, d^{-nlos_exp}) NLoS term,
/// weighted by sqrt(K/(K+1)) and sqrt(1/(K+1)).
Eigen::VectorXcd draw_rician_vector(double distance_m, int m,
                                    const ChannelParams& params,
                                    SplitMix64& rng);

/// Element-wise Rician fading over an m-by-m matrix (inter-surface channel).
Eigen::MatrixXcd draw_rician_matrix(double distance_m, int m,
                                    const ChannelParams& params,
                                    SplitMix64& rng);

/// Pure Rayleigh scalar: CN(0, d^{-nlos_exp}).
std::complex<double> draw_rayleigh_scalar(double distance_m,
                                          const ChannelParams& params,
                                          SplitMix64& rng);

/// Draws every channel whose endpoints exist in the topology. Pure function
/// of its arguments; identical seeds give bit-identical realizations.
ChannelRealization realize_drop(const Topology& topology, int m,
                                const ChannelParams& params,
                                const DropSeed& seed);

/// Union over relay families in one pass. Each link uses the same substream
/// key as in realize_drop, so shared links (and every family-specific link)
/// come out bit-identical with the per-family realizations.
ChannelRealization realize_drop_multi(const NodeLayout& nodes, bool with_mid,
                                      bool with_pair, int m,
                                      const ChannelParams& params,
                                      const DropSeed& seed);

}  // namespace drisim
