#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "drisim/common.hpp"
#include "drisim/report_io.hpp"
#include "drisim/simulate.hpp"

using namespace drisim;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.axis = SweepAxis::TransmitSnrDb;
  cfg.points = {20.0, 40.0};
  cfg.fixed.m = 6;
  cfg.trials = 8;
  cfg.seed = 11;
  return cfg;
}

std::string file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("validation rejects bad configs before running") {
  SweepConfig cfg = small_config();
  cfg.trials = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);

  cfg = small_config();
  cfg.points = {10.0, 10.0};
  CHECK_THROWS_AS(validate(cfg), ConfigError);

  cfg = small_config();
  cfg.points.clear();
  CHECK_THROWS_AS(validate(cfg), ConfigError);

  cfg = small_config();
  cfg.axis = SweepAxis::ElementsPerRis;
  cfg.points = {4.0, 6.5};
  CHECK_THROWS_AS(validate(cfg), ConfigError);

  cfg = small_config();
  cfg.nodes.r.reset();  // single_relay still requested
  CHECK_THROWS_AS(validate(cfg), ConfigError);

  cfg = small_config();
  cfg.schemes = {SchemeId::RisOnly};
  cfg.nodes.r.reset();  // fine: no scheme needs it
  CHECK_NOTHROW(validate(cfg));

  cfg = small_config();
  cfg.nodes.i1 = cfg.nodes.s;  // zero-length link
  CHECK_THROWS_AS(validate(cfg), ConfigError);

  cfg = small_config();
  cfg.enhanced_inr_db.clear();
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("curve labels: one enhanced curve per interference level") {
  SweepConfig cfg = small_config();
  cfg.enhanced_inr_db = {0.0, 10.0, 20.0};
  const auto labels = curve_labels(cfg);
  REQUIRE(labels.size() == 6);
  CHECK(labels[0] == "ris_only");
  CHECK(labels[1] == "single_relay");
  CHECK(labels[2] == "two_relay");
  CHECK(labels[3] == "enhanced_inr0db");
  CHECK(labels[4] == "enhanced_inr10db");
  CHECK(labels[5] == "enhanced_inr20db");

  cfg.axis = SweepAxis::InrDb;
  cfg.points = {0.0, 10.0};
  const auto labels2 = curve_labels(cfg);
  REQUIRE(labels2.size() == 4);
  CHECK(labels2[3] == "enhanced");
}

TEST_CASE("reports are identical for any thread count") {
  const SweepConfig cfg = small_config();
  const SweepReport r1 = run_sweep(cfg, 1);
  const SweepReport r4 = run_sweep(cfg, 4);
  REQUIRE(r1.curves.size() == r4.curves.size());
  for (std::size_t c = 0; c < r1.curves.size(); ++c) {
    for (std::size_t p = 0; p < r1.curves[c].points.size(); ++p) {
      CHECK(r1.curves[c].points[p].mean_rate == r4.curves[c].points[p].mean_rate);
      CHECK(r1.curves[c].points[p].std_err == r4.curves[c].points[p].std_err);
      CHECK(r1.curves[c].points[p].bottlenecks == r4.curves[c].points[p].bottlenecks);
    }
  }

  emit_csv(r1, "det_a.csv");
  emit_csv(r4, "det_b.csv");
  CHECK(file_bytes("det_a.csv") == file_bytes("det_b.csv"));

  const SweepReport r1b = run_sweep(cfg, 1);
  emit_csv(r1b, "det_c.csv");
  CHECK(file_bytes("det_a.csv") == file_bytes("det_c.csv"));
}

TEST_CASE("quadrupling trials roughly halves the standard error") {
  SweepConfig cfg = small_config();
  cfg.schemes = {SchemeId::SingleRelay};
  cfg.points = {30.0};
  cfg.trials = 64;
  const double se1 = run_sweep(cfg).curves[0].points[0].std_err;
  cfg.trials = 256;
  const double se2 = run_sweep(cfg).curves[0].points[0].std_err;
  CHECK(se1 / se2 == doctest::Approx(2.0).epsilon(0.25));
}

TEST_CASE("mean rate grows along the SNR and element axes") {
  SweepConfig cfg = small_config();
  cfg.schemes = {SchemeId::RisOnly, SchemeId::SingleRelay, SchemeId::TwoRelay};
  cfg.points = {0.0, 20.0, 40.0, 60.0};
  cfg.trials = 16;
  const SweepReport by_snr = run_sweep(cfg);
  for (const Curve& curve : by_snr.curves) {
    for (std::size_t p = 1; p < curve.points.size(); ++p) {
      const auto& a = curve.points[p - 1];
      const auto& b = curve.points[p];
      CHECK(b.mean_rate >= a.mean_rate - 2.0 * std::hypot(a.std_err, b.std_err));
    }
  }

  cfg.axis = SweepAxis::ElementsPerRis;
  cfg.points = {4, 8, 16};
  const SweepReport by_m = run_sweep(cfg);
  for (const Curve& curve : by_m.curves) {
    for (std::size_t p = 1; p < curve.points.size(); ++p) {
      const auto& a = curve.points[p - 1];
      const auto& b = curve.points[p];
      CHECK(b.mean_rate >= a.mean_rate - 2.0 * std::hypot(a.std_err, b.std_err));
    }
  }
}

TEST_CASE("inr sweep: only the concurrent scheme varies") {
  SweepConfig cfg = small_config();
  cfg.axis = SweepAxis::InrDb;
  cfg.points = {0.0, 10.0, 20.0};
  cfg.trials = 6;
  const SweepReport rep = run_sweep(cfg);
  for (const Curve& curve : rep.curves) {
    if (curve.scheme == SchemeId::Enhanced) {
      CHECK(curve.points[0].mean_rate >= curve.points[2].mean_rate);
    } else {
      CHECK(curve.points[0].mean_rate == curve.points[1].mean_rate);
      CHECK(curve.points[0].mean_rate == curve.points[2].mean_rate);
    }
  }
}

TEST_CASE("per-point diagnostics are recorded") {
  const SweepReport rep = run_sweep(small_config());
  for (const Curve& curve : rep.curves) {
    for (const CurvePoint& pt : curve.points) {
      int total = 0;
      for (const auto& [label, count] : pt.bottlenecks) total += count;
      CHECK(total == rep.config.trials);
      CHECK(pt.std_err >= 0.0);
      CHECK(pt.mean_rate >= 0.0);
      if (curve.scheme != SchemeId::SingleRelay) CHECK(pt.mean_opt_iters >= 1.0);
    }
  }
}

TEST_CASE("threshold_crossing") {
  SweepReport rep;
  rep.config = small_config();
  Curve c;
  c.label = "x";
  c.scheme = SchemeId::SingleRelay;

  SUBCASE("flat zero never crosses") {
    c.points = {{100.0, 0.0, 0, 0, {}}, {300.0, 0.0, 0, 0, {}}};
    rep.curves = {c};
    CHECK(!threshold_crossing(rep, "x", 1.0));
  }

  SUBCASE("linear interpolation between bracketing points") {
    c.points = {{100.0, 2.0, 0, 0, {}}, {300.0, 4.0, 0, 0, {}}};
    rep.curves = {c};
    const auto hit = threshold_crossing(rep, "x", 3.0);
    REQUIRE(hit);
    CHECK(*hit == doctest::Approx(200.0));
  }

  SUBCASE("already above at the first point") {
    c.points = {{100.0, 5.0, 0, 0, {}}, {300.0, 6.0, 0, 0, {}}};
    rep.curves = {c};
    const auto hit = threshold_crossing(rep, "x", 3.0);
    REQUIRE(hit);
    CHECK(*hit == 100.0);
  }

  SUBCASE("unknown curve label") {
    rep.curves = {c};
    CHECK_THROWS_AS(threshold_crossing(rep, "nope", 1.0), std::invalid_argument);
  }
}
