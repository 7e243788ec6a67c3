#include "drisim/props.hpp"

#include <algorithm>
#include <cmath>

#include "drisim/phaseopt.hpp"
#include "drisim/rng.hpp"

namespace drisim {

namespace {

Eigen::VectorXcd random_cn_vector(int m, SplitMix64& rng) {
  Eigen::VectorXcd v(m);
  for (int i = 0; i < m; ++i) v(i) = rng.next_circular_gaussian(1.0);
  return v;
}

}  // namespace

PropsReport run_mm_property_suite(const PropsConfig& config) {
  PropsReport report;
  report.instances = config.instances;
  report.slack = config.slack;

  AoSettings settings;
  settings.max_iters = 50;
  settings.rel_tol = 1e-6;  // longer traces stress more iterations

  for (int i = 0; i < config.instances; ++i) {
    SplitMix64 rng(derive_stream_key(config.seed, static_cast<std::uint64_t>(i)));
    const int m = config.m_list[static_cast<std::size_t>(i) % config.m_list.size()];

    const Eigen::VectorXcd a = random_cn_vector(m, rng);
    const Eigen::VectorXcd b = random_cn_vector(m, rng);
    const std::complex<double> h = rng.next_circular_gaussian(1.0);
    const double p1 = 2.0 * rng.next_unit();
    const double p2 = 2.0 * rng.next_unit();
    const double sigma2 = 0.5 + rng.next_unit();

    const MmResult mm = mm_fractional_phase(a, b, h, p1, p2, sigma2, settings);

    const auto& trace = mm.state.objective_trace;
    for (std::size_t k = 1; k < trace.size(); ++k) {
      const double increase = trace[k] - trace[k - 1];
      const double allowed = config.slack * std::max(1.0, std::abs(trace[k - 1]));
      if (increase > allowed) ++report.trace_violations;
      report.worst_trace_increase = std::max(report.worst_trace_increase, increase);
    }

    const PhaseVector probe = PhaseVector::random(m, rng);
    const double gap = majorizer_gap(probe, mm.state, p1, p2, h, sigma2);
    if (gap < -config.slack) ++report.bound_violations;
    report.worst_bound_gap = std::min(report.worst_bound_gap, gap);

    const double touch =
        std::abs(majorizer_gap(mm.state.phi_prev, mm.state, p1, p2, h, sigma2));
    if (touch > config.slack) ++report.touch_violations;
    report.worst_touch_gap = std::max(report.worst_touch_gap, touch);
  }

  return report;
}

}  // namespace drisim
