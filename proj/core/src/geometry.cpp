#include "drisim/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "drisim/common.hpp"

namespace drisim {

double distance(const Point2D& a, const Point2D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double path_gain(double distance_m, double exponent) {
  if (!(distance_m > 0.0)) {
    throw std::domain_error("path_gain: distance must be positive, got " +
                            std::to_string(distance_m));
  }
  return std::pow(distance_m, -exponent);
}

RelayKind relay_kind(const Topology& t) {
  if (std::holds_alternative<MidRelay>(t.relays)) return RelayKind::Mid;
  if (std::holds_alternative<PairRelay>(t.relays)) return RelayKind::Pair;
  return RelayKind::None;
}

NodeLayout paper_layout() {
  NodeLayout n;
  n.s = {0.0, 0.0};
  n.i1 = {60.0, 20.0};
  n.i2 = {240.0, 20.0};
  n.d = {300.0, 0.0};
  n.r = Point2D{150.0, 0.0};
  n.r1 = Point2D{60.0, 0.0};
  n.r2 = Point2D{240.0, 0.0};
  return n;
}

Topology make_topology(const NodeLayout& nodes, RelayKind kind) {
  Topology t;
  t.s = nodes.s;
  t.i1 = nodes.i1;
  t.i2 = nodes.i2;
  t.d = nodes.d;
  switch (kind) {
    case RelayKind::None:
      t.relays = NoRelay{};
      break;
    case RelayKind::Mid:
      if (!nodes.r) throw ConfigError("topology: mid relay node 'r' is required but not set");
      t.relays = MidRelay{*nodes.r};
      break;
    case RelayKind::Pair:
      if (!nodes.r1 || !nodes.r2)
        throw ConfigError("topology: relay pair nodes 'r1'/'r2' are required but not set");
      t.relays = PairRelay{*nodes.r1, *nodes.r2};
      break;
  }
  return t;
}

}  // namespace drisim
