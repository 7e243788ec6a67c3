#include "drisim/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "drisim/channels.hpp"
#include "drisim/common.hpp"

namespace drisim {

namespace {

struct CurveSpec {
  SchemeId scheme;
  double inr_db;
  std::string label;
};

std::string enhanced_label(double inr_db) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "enhanced_inr%gdb", inr_db);
  return buf;
}

std::vector<CurveSpec> resolve_curves(const SweepConfig& config) {
  std::vector<CurveSpec> curves;
  for (SchemeId id : config.schemes) {
    if (id == SchemeId::Enhanced && config.axis != SweepAxis::InrDb) {
      for (double level : config.enhanced_inr_db)
        curves.push_back({id, level, enhanced_label(level)});
    } else if (id == SchemeId::Enhanced) {
      curves.push_back({id, config.fixed.inr_db, "enhanced"});
    } else {
      curves.push_back({id, 0.0, scheme_name(id)});
    }
  }
  return curves;
}

const std::vector<std::string>& hop_labels(SchemeId id) {
  static const std::vector<std::string> kOne = {"D"};
  static const std::vector<std::string> kTwo = {"R", "D"};
  static const std::vector<std::string> kThree = {"R1", "R2", "D"};
  switch (id) {
    case SchemeId::RisOnly: return kOne;
    case SchemeId::SingleRelay: return kTwo;
    default: return kThree;
  }
}

struct Cell {
  double rate = 0.0;
  int hop = 0;  // index of the bottleneck in hop_labels(scheme)
  int iters = 0;
};

Cell to_cell(const SchemeResult& r) {
  Cell c;
  c.rate = r.rate_bps_hz;
  const auto& labels = hop_labels(r.scheme_id);
  c.hop = static_cast<int>(std::find(labels.begin(), labels.end(), r.bottleneck) -
                           labels.begin());
  for (int it : r.optimizer_iters) c.iters += it;
  return c;
}

Cell eval_curve(const CurveSpec& curve, const ChannelRealization& drop,
                double snr_db, double inr_db, const SweepConfig& config) {
  const double sigma2 = config.noise_power;
  const double rho = db_to_linear(snr_db);
  switch (curve.scheme) {
    case SchemeId::RisOnly:
      return to_cell(eval_ris_only(drop, rho, config.optimizer));
    case SchemeId::SingleRelay:
      return to_cell(eval_single_relay(drop, rho, config.optimizer));
    case SchemeId::TwoRelay:
      return to_cell(eval_two_relay(drop, rho, config.optimizer));
    case SchemeId::Enhanced: {
      const PowerSplit power = PowerSplit::split(rho * sigma2, config.p1_fraction);
      const InterferenceParams interf{db_to_linear(inr_db)};
      return to_cell(eval_enhanced(drop, power, sigma2, interf, config.optimizer));
    }
  }
  throw std::logic_error("eval_curve: unknown scheme");
}

/// Order-independent deterministic parallel map over [0, n).
void parallel_tasks(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min<int>(nthreads, static_cast<int>(n)));
  if (nthreads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

/// Neumaier-compensated sum; the inputs are always consumed in drop order so
/// aggregation does not depend on the thread count.
double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

CurvePoint aggregate(double axis_value, SchemeId scheme,
                     const std::vector<Cell>& cells) {
  CurvePoint pt;
  pt.axis_value = axis_value;
  const std::size_t n = cells.size();

  std::vector<double> rates(n);
  for (std::size_t i = 0; i < n; ++i) rates[i] = cells[i].rate;
  pt.mean_rate = compensated_sum(rates) / static_cast<double>(n);

  if (n > 1) {
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = rates[i] - pt.mean_rate;
      sq[i] = d * d;
    }
    const double var = compensated_sum(sq) / static_cast<double>(n - 1);
    pt.std_err = std::sqrt(var / static_cast<double>(n));
  }

  const auto& labels = hop_labels(scheme);
  double iter_sum = 0.0;
  for (const Cell& c : cells) {
    ++pt.bottlenecks[labels[static_cast<std::size_t>(c.hop)]];
    iter_sum += c.iters;
  }
  pt.mean_opt_iters = iter_sum / static_cast<double>(n);
  return pt;
}

bool needs_mid(const SweepConfig& c) {
  return std::find(c.schemes.begin(), c.schemes.end(), SchemeId::SingleRelay) !=
         c.schemes.end();
}

bool needs_pair(const SweepConfig& c) {
  return std::any_of(c.schemes.begin(), c.schemes.end(), [](SchemeId id) {
    return id == SchemeId::TwoRelay || id == SchemeId::Enhanced;
  });
}

ChannelParams channel_params(const SweepConfig& c) {
  ChannelParams p;
  p.rician_k = db_to_linear(c.rician_k_db);
  p.path = {c.los_exponent, c.nlos_exponent};
  p.noise_power = c.noise_power;
  return p;
}

void check_positive_distances(const SweepConfig& c) {
  const NodeLayout& n = c.nodes;
  auto check = [](const Point2D& a, const Point2D& b, const char* link) {
    if (!(distance(a, b) > 0.0))
      throw ConfigError(std::string("config: zero-length link ") + link);
  };
  check(n.i1, n.s, "i1-s");
  check(n.i2, n.d, "i2-d");
  check(n.i1, n.i2, "i1-i2");
  if (needs_mid(c)) {
    check(n.s, *n.r, "s-r");
    check(*n.r, n.d, "r-d");
    check(n.i1, *n.r, "i1-r");
    check(n.i2, *n.r, "i2-r");
  }
  if (needs_pair(c)) {
    check(n.s, *n.r1, "s-r1");
    check(*n.r1, *n.r2, "r1-r2");
    check(*n.r2, n.d, "r2-d");
    check(n.i1, *n.r1, "i1-r1");
    check(n.i1, *n.r2, "i1-r2");
    check(n.i2, *n.r1, "i2-r1");
    check(n.i2, *n.r2, "i2-r2");
  }
}

}  // namespace

const char* axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::TransmitSnrDb: return "snr_db";
    case SweepAxis::ElementsPerRis: return "elements";
    case SweepAxis::InrDb: return "inr_db";
  }
  return "unknown";
}

void validate(const SweepConfig& config) {
  if (config.trials < 1) throw ConfigError("config: trials must be >= 1");
  if (config.points.empty()) throw ConfigError("config: sweep points must be non-empty");
  for (std::size_t i = 1; i < config.points.size(); ++i)
    if (!(config.points[i] > config.points[i - 1]))
      throw ConfigError("config: sweep points must be strictly increasing");
  if (config.axis == SweepAxis::ElementsPerRis) {
    for (double p : config.points)
      if (!(p >= 1.0) || p != std::floor(p))
        throw ConfigError("config: element counts must be integers >= 1");
  } else if (config.fixed.m < 1) {
    throw ConfigError("config: fixed.m must be >= 1");
  }
  if (!(config.p1_fraction >= 0.0 && config.p1_fraction <= 1.0))
    throw ConfigError("config: power.p1_fraction must be in [0, 1]");
  if (!(config.noise_power > 0.0))
    throw ConfigError("config: channel.noise_power must be > 0");
  if (!(config.los_exponent > 0.0) || !(config.nlos_exponent > 0.0))
    throw ConfigError("config: path-loss exponents must be > 0");
  if (config.optimizer.max_iters < 1)
    throw ConfigError("config: optimizer.max_iters must be >= 1");
  if (!(config.optimizer.rel_tol > 0.0))
    throw ConfigError("config: optimizer.rel_tol must be > 0");
  if (config.optimizer.warmup_iters < 0)
    throw ConfigError("config: optimizer.warmup_iters must be >= 0");
  if (config.optimizer.restarts < 1)
    throw ConfigError("config: optimizer.restarts must be >= 1");
  if (config.fixed.inr_db < -300.0 || config.fixed.inr_db > 300.0)
    throw ConfigError("config: fixed.inr_db out of range");

  const bool has_enhanced =
      std::find(config.schemes.begin(), config.schemes.end(), SchemeId::Enhanced) !=
      config.schemes.end();
  if (has_enhanced && config.axis != SweepAxis::InrDb && config.enhanced_inr_db.empty())
    throw ConfigError("config: enhanced scheme requires at least one enhanced.inr_db level");

  if (needs_mid(config) && !config.nodes.r)
    throw ConfigError("config: single_relay scheme requires topology node 'r'");
  if (needs_pair(config) && (!config.nodes.r1 || !config.nodes.r2))
    throw ConfigError("config: relay-pair schemes require topology nodes 'r1' and 'r2'");
  check_positive_distances(config);
}

std::vector<std::string> curve_labels(const SweepConfig& config) {
  std::vector<std::string> labels;
  for (const CurveSpec& c : resolve_curves(config)) labels.push_back(c.label);
  return labels;
}

SweepReport run_sweep(const SweepConfig& config, int threads) {
  validate(config);
  const auto t0 = std::chrono::steady_clock::now();

  const std::vector<CurveSpec> curves = resolve_curves(config);
  const ChannelParams params = channel_params(config);
  const bool with_mid = needs_mid(config);
  const bool with_pair = needs_pair(config);
  const std::size_t npoints = config.points.size();
  const std::size_t ncurves = curves.size();
  const std::size_t trials = static_cast<std::size_t>(config.trials);

  // results[curve][point][drop]
  std::vector<std::vector<std::vector<Cell>>> results(
      ncurves, std::vector<std::vector<Cell>>(npoints, std::vector<Cell>(trials)));

  auto realize = [&](int m, std::size_t drop_index) {
    return realize_drop_multi(config.nodes, with_mid, with_pair, m, params,
                              DropSeed{config.seed, drop_index});
  };

  if (config.axis == SweepAxis::ElementsPerRis) {
    // Channels are redrawn per element count; one task per (point, drop).
    parallel_tasks(npoints * trials, threads, [&](std::size_t task) {
      const std::size_t p = task / trials;
      const std::size_t d = task % trials;
      const ChannelRealization drop = realize(static_cast<int>(config.points[p]), d);
      for (std::size_t c = 0; c < ncurves; ++c)
        results[c][p][d] = eval_curve(curves[c], drop, config.fixed.snr_db,
                                      curves[c].inr_db, config);
    });
  } else {
    // Channels do not depend on SNR or INR: realize once per drop and reuse
    // across axis points.
    parallel_tasks(trials, threads, [&](std::size_t d) {
      const ChannelRealization drop = realize(config.fixed.m, d);
      for (std::size_t c = 0; c < ncurves; ++c) {
        const bool point_invariant =
            config.axis == SweepAxis::InrDb && curves[c].scheme != SchemeId::Enhanced;
        for (std::size_t p = 0; p < npoints; ++p) {
          if (point_invariant && p > 0) {
            results[c][p][d] = results[c][0][d];
            continue;
          }
          const double snr_db = config.axis == SweepAxis::TransmitSnrDb
                                    ? config.points[p]
                                    : config.fixed.snr_db;
          const double inr_db = config.axis == SweepAxis::InrDb ? config.points[p]
                                                                : curves[c].inr_db;
          results[c][p][d] = eval_curve(curves[c], drop, snr_db, inr_db, config);
        }
      }
    });
  }

  SweepReport report;
  report.config = config;
  for (std::size_t c = 0; c < ncurves; ++c) {
    Curve curve;
    curve.label = curves[c].label;
    curve.scheme = curves[c].scheme;
    curve.inr_db = curves[c].inr_db;
    for (std::size_t p = 0; p < npoints; ++p)
      curve.points.push_back(aggregate(config.points[p], curves[c].scheme, results[c][p]));
    report.curves.push_back(std::move(curve));
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

std::optional<double> threshold_crossing(const SweepReport& report,
                                         std::string_view curve_label,
                                         double target_rate) {
  const Curve* curve = nullptr;
  for (const Curve& c : report.curves)
    if (c.label == curve_label) curve = &c;
  if (!curve) throw std::invalid_argument("threshold_crossing: unknown curve label");

  for (std::size_t i = 0; i < curve->points.size(); ++i) {
    const CurvePoint& pt = curve->points[i];
    if (pt.mean_rate >= target_rate) {
      if (i == 0) return pt.axis_value;
      const CurvePoint& prev = curve->points[i - 1];
      const double t = (target_rate - prev.mean_rate) / (pt.mean_rate - prev.mean_rate);
      return prev.axis_value + t * (pt.axis_value - prev.axis_value);
    }
  }
  return std::nullopt;
}

}  // namespace drisim
