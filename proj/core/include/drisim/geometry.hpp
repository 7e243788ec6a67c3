#pragma once

#include <optional>
#include <variant>

namespace drisim {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

/// Euclidean distance in meters.
double distance(const Point2D& a, const Point2D& b);

/// Linear power gain d^{-exponent}. Unit gain at d = 1 m.
/// Throws std::domain_error for non-positive distances.
double path_gain(double distance_m, double exponent);

struct PathLossParams {
  double los_exponent = 2.3;
  double nlos_exponent = 3.5;
};

struct NoRelay {};
struct MidRelay {
  Point2D r;
};
struct PairRelay {
  Point2D r1;
  Point2D r2;
};
using RelayLayout = std::variant<NoRelay, MidRelay, PairRelay>;

enum class RelayKind { None, Mid, Pair };

/// Node placement for one transmission architecture: source, two
/// reflecting surfaces, destination, and the relays the architecture uses.
struct Topology {
  Point2D s, i1, i2, d;
  RelayLayout relays;
};

RelayKind relay_kind(const Topology& t);

/// Full node set a run can instantiate topologies from; relay nodes are
/// optional so a layout can serve any subset of architectures.
struct NodeLayout {
  Point2D s, i1, i2, d;
  std::optional<Point2D> r, r1, r2;
};

/// Default desk-scale layout: S at the origin, surfaces elevated 20 m at
/// x = 60 and x = 240, relays below them, destination at (300, 0).
NodeLayout paper_layout();

/// Builds the architecture topology for `kind`, taking the relay nodes it
/// needs from `nodes`. Throws ConfigError if a required node is missing.
Topology make_topology(const NodeLayout& nodes, RelayKind kind);

}  // namespace drisim
