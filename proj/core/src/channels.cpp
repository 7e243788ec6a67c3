#include "drisim/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "drisim/common.hpp"

namespace drisim {

namespace {

struct RicianWeights {
  double los;
  double nlos;
};

RicianWeights rician_weights(double k) {
  if (std::isinf(k)) return {1.0, 0.0};
  return {std::sqrt(k / (k + 1.0)), std::sqrt(1.0 / (1.0 + k))};
}

std::complex<double> rician_element(double los_amp, double nlos_var,
                                    const RicianWeights& w, SplitMix64& rng) {
  const std::complex<double> los = std::polar(los_amp, rng.next_angle());
  const std::complex<double> nlos = rng.next_circular_gaussian(nlos_var);
  return w.los * los + w.nlos * nlos;
}

SplitMix64 link_stream(const DropSeed& seed, Link link) {
  return SplitMix64(derive_stream_key(seed.master_seed, seed.drop_index,
                                      static_cast<std::uint64_t>(link)));
}

void check_draw_args(double distance_m, int m) {
  if (!(distance_m > 0.0))
    throw std::domain_error("channel draw: distance must be positive");
  if (m < 1) throw std::domain_error("channel draw: element count must be >= 1");
}

}  // namespace

Eigen::VectorXcd draw_rician_vector(double distance_m, int m,
                                    const ChannelParams& params,
                                    SplitMix64& rng) {
  check_draw_args(distance_m, m);
  const double los_amp = std::sqrt(path_gain(distance_m, params.path.los_exponent));
  const double nlos_var = path_gain(distance_m, params.path.nlos_exponent);
  const RicianWeights w = rician_weights(params.rician_k);
  Eigen::VectorXcd h(m);
  for (int i = 0; i < m; ++i) h(i) = rician_element(los_amp, nlos_var, w, rng);
  return h;
}

Eigen::MatrixXcd draw_rician_matrix(double distance_m, int m,
                                    const ChannelParams& params,
                                    SplitMix64& rng) {
  check_draw_args(distance_m, m);
  const double los_amp = std::sqrt(path_gain(distance_m, params.path.los_exponent));
  const double nlos_var = path_gain(distance_m, params.path.nlos_exponent);
  const RicianWeights w = rician_weights(params.rician_k);
  Eigen::MatrixXcd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = rician_element(los_amp, nlos_var, w, rng);
  return g;
}

std::complex<double> draw_rayleigh_scalar(double distance_m,
                                          const ChannelParams& params,
                                          SplitMix64& rng) {
  if (!(distance_m > 0.0))
    throw std::domain_error("channel draw: distance must be positive");
  return rng.next_circular_gaussian(path_gain(distance_m, params.path.nlos_exponent));
}

ChannelRealization realize_drop_multi(const NodeLayout& nodes, bool with_mid,
                                      bool with_pair, int m,
                                      const ChannelParams& params,
                                      const DropSeed& seed) {
  if (m < 1) throw std::domain_error("realize_drop: element count must be >= 1");
  if (with_mid && !nodes.r)
    throw ConfigError("realize_drop: mid-relay architecture requires node 'r'");
  if (with_pair && (!nodes.r1 || !nodes.r2))
    throw ConfigError("realize_drop: relay-pair architecture requires nodes 'r1' and 'r2'");

  auto rician_vec = [&](Link link, const Point2D& a, const Point2D& b) {
    SplitMix64 rng = link_stream(seed, link);
    return draw_rician_vector(distance(a, b), m, params, rng);
  };
  auto rayleigh = [&](Link link, const Point2D& a, const Point2D& b) {
    SplitMix64 rng = link_stream(seed, link);
    return draw_rayleigh_scalar(distance(a, b), params, rng);
  };

  ChannelRealization drop;
  drop.m = m;
  drop.h_i1s = rician_vec(Link::I1S, nodes.i1, nodes.s);
  drop.h_i2d = rician_vec(Link::I2D, nodes.i2, nodes.d);
  {
    SplitMix64 rng = link_stream(seed, Link::I1I2);
    drop.g = draw_rician_matrix(distance(nodes.i1, nodes.i2), m, params, rng);
  }

  if (with_mid) {
    const Point2D r = *nodes.r;
    drop.h_sr = rayleigh(Link::SR, nodes.s, r);
    drop.h_rd = rayleigh(Link::RD, r, nodes.d);
    drop.h_i1r = rician_vec(Link::I1R, nodes.i1, r);
    drop.h_i2r = rician_vec(Link::I2R, nodes.i2, r);
  }

  if (with_pair) {
    const Point2D r1 = *nodes.r1;
    const Point2D r2 = *nodes.r2;
    drop.h_sr1 = rayleigh(Link::SR1, nodes.s, r1);
    drop.h_r1r2 = rayleigh(Link::R1R2, r1, r2);
    drop.h_r2d = rayleigh(Link::R2D, r2, nodes.d);
    drop.h_i1r1 = rician_vec(Link::I1R1, nodes.i1, r1);
    drop.h_i1r2 = rician_vec(Link::I1R2, nodes.i1, r2);
    drop.h_i2r1 = rician_vec(Link::I2R1, nodes.i2, r1);
    drop.h_i2r2 = rician_vec(Link::I2R2, nodes.i2, r2);
  }

  return drop;
}

ChannelRealization realize_drop(const Topology& topology, int m,
                                const ChannelParams& params,
                                const DropSeed& seed) {
  NodeLayout nodes;
  nodes.s = topology.s;
  nodes.i1 = topology.i1;
  nodes.i2 = topology.i2;
  nodes.d = topology.d;
  if (const auto* mid = std::get_if<MidRelay>(&topology.relays)) nodes.r = mid->r;
  if (const auto* pair = std::get_if<PairRelay>(&topology.relays)) {
    nodes.r1 = pair->r1;
    nodes.r2 = pair->r2;
  }
  const RelayKind kind = relay_kind(topology);
  return realize_drop_multi(nodes, kind == RelayKind::Mid, kind == RelayKind::Pair,
                            m, params, seed);
}

}  // namespace drisim
