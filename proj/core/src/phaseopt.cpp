#include "drisim/phaseopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace drisim {

namespace {

constexpr double kTiny = std::numeric_limits<double>::min();
constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXcd conj_phase_of(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd p(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) p(i) = std::polar(1.0, -std::arg(x(i)));
  return p;
}

double stop_metric_value(AoSettings::StopMetric metric, double snr) {
  return metric == AoSettings::StopMetric::Rate ? std::log2(1.0 + snr) : snr;
}

bool converged(double prev, double next, double rel_tol) {
  return (next - prev) <= rel_tol * std::max(prev, kTiny);
}

PhaseVector initial_phases(Eigen::Index m, const AoSettings& settings) {
  if (settings.init == AoSettings::Init::Seeded) {
    SplitMix64 rng(settings.init_seed);
    return PhaseVector::random(m, rng);
  }
  return PhaseVector::all_ones(m);
}

constexpr std::uint64_t kRestartStream = 0x616F5F726573ULL;

/// Start r = 0 is the configured init; later starts draw fixed-key phases.
PhaseVector restart_phases(Eigen::Index m, const AoSettings& settings, int restart) {
  if (restart == 0) return initial_phases(m, settings);
  SplitMix64 rng(derive_stream_key(kRestartStream, static_cast<std::uint64_t>(restart),
                                   settings.init_seed));
  return PhaseVector::random(m, rng);
}

Eigen::VectorXcd project_phases(const Eigen::VectorXcd& x) {
  Eigen::VectorXcd p(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) p(i) = std::polar(1.0, std::arg(x(i)));
  return p;
}

std::complex<double> unconj_dot(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  return (x.array() * y.array()).sum();
}

}  // namespace

PhaseVector PhaseVector::all_ones(Eigen::Index m) {
  return PhaseVector{Eigen::VectorXcd::Ones(m)};
}

PhaseVector PhaseVector::random(Eigen::Index m, SplitMix64& rng) {
  Eigen::VectorXcd v(m);
  for (Eigen::Index i = 0; i < m; ++i) v(i) = std::polar(1.0, rng.next_angle());
  return PhaseVector{v};
}

bool PhaseVector::unit_modulus(double tol) const {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(std::abs(v(i)) - 1.0) > tol) return false;
  return true;
}

Eigen::MatrixXcd cascade_f(const Eigen::VectorXcd& h_i2d,
                           const Eigen::MatrixXcd& g,
                           const Eigen::VectorXcd& h_i1s) {
  if (g.rows() != h_i2d.size() || g.cols() != h_i1s.size())
    throw std::invalid_argument("cascade_f: dimension mismatch");
  return h_i2d.asDiagonal() * g * h_i1s.asDiagonal();
}

PhaseVector align_to_reference(std::complex<double> ref,
                               const Eigen::VectorXcd& cascade) {
  const double ref_angle = std::arg(ref);
  Eigen::VectorXcd v(cascade.size());
  for (Eigen::Index i = 0; i < cascade.size(); ++i)
    v(i) = std::polar(1.0, ref_angle - std::arg(cascade(i)));
  return PhaseVector{v};
}

double coherent_snr(double rho, std::complex<double> ref,
                    const Eigen::VectorXcd& cascade) {
  const double amp = std::abs(ref) + cascade.cwiseAbs().sum();
  return rho * amp * amp;
}

namespace {

AoDoubleRisResult ao_double_ris_start(const Eigen::MatrixXcd& f, double rho,
                                      const AoSettings& settings,
                                      const PhaseVector& start) {
  AoDoubleRisResult res;
  res.theta = PhaseVector::all_ones(f.cols());
  res.phi = start;

  const double sqrt_m = std::sqrt(static_cast<double>(f.rows()));
  Eigen::VectorXcd r(f.cols()), v(f.rows());
  Eigen::VectorXcd phi_relaxed = res.phi.v;
  for (int w = 0; w < settings.warmup_iters; ++w) {
    // matched filters under a norm budget instead of per-element phases
    r.noalias() = f.transpose() * phi_relaxed;
    const double rn = r.norm();
    if (rn == 0.0) break;
    const Eigen::VectorXcd theta_relaxed = (sqrt_m / rn) * r.conjugate();
    v.noalias() = f * theta_relaxed;
    const double vn = v.norm();
    if (vn == 0.0) break;
    phi_relaxed = (sqrt_m / vn) * v.conjugate();
  }
  res.phi.v = project_phases(phi_relaxed);

  v.noalias() = f * res.theta.v;
  res.snr = rho * std::norm(unconj_dot(res.phi.v, v));
  double metric = stop_metric_value(settings.stop_metric, res.snr);

  for (int k = 1; k <= settings.max_iters; ++k) {
    r.noalias() = f.transpose() * res.phi.v;
    res.theta.v = conj_phase_of(r);
    v.noalias() = f * res.theta.v;
    res.phi.v = conj_phase_of(v);

    const double amp = v.cwiseAbs().sum();  // |phi^T F theta| after both blocks
    res.snr = rho * amp * amp;
    res.iters = k;

    const double next = stop_metric_value(settings.stop_metric, res.snr);
    if (converged(metric, next, settings.rel_tol)) break;
    metric = next;
  }
  return res;
}

}  // namespace

AoDoubleRisResult ao_double_ris(const Eigen::MatrixXcd& f, double rho,
                                const AoSettings& settings) {
  AoDoubleRisResult best;
  for (int s = 0; s < std::max(1, settings.restarts); ++s) {
    AoDoubleRisResult res =
        ao_double_ris_start(f, rho, settings, restart_phases(f.rows(), settings, s));
    if (s == 0 || res.snr > best.snr) best = std::move(res);
  }
  return best;
}

namespace {

AoSecondHopResult ao_second_hop_start(const Eigen::MatrixXcd& q_mat,
                                      const Eigen::VectorXcd& u1,
                                      const Eigen::VectorXcd& u2,
                                      std::complex<double> h_r1r2, double rho,
                                      const AoSettings& settings,
                                      const PhaseVector& start) {
  AoSecondHopResult res;
  res.psi1 = PhaseVector::all_ones(u1.size());
  res.psi2 = start;

  const double sqrt_m = std::sqrt(static_cast<double>(u1.size()));
  Eigen::VectorXcd z(u1.size()), v(u2.size());
  {
    Eigen::VectorXcd p1 = res.psi1.v, p2 = res.psi2.v;
    for (int w = 0; w < settings.warmup_iters; ++w) {
      z.noalias() = q_mat.transpose() * p2;
      z += u1;
      const std::complex<double> c = h_r1r2 + unconj_dot(p2, u2);
      const double zn = z.norm();
      if (zn > 0.0) p1 = (sqrt_m / zn) * std::polar(1.0, std::arg(c)) * z.conjugate();
      v.noalias() = q_mat * p1;
      v += u2;
      const std::complex<double> r = h_r1r2 + unconj_dot(p1, u1);
      const double vn = v.norm();
      if (vn > 0.0) p2 = (sqrt_m / vn) * std::polar(1.0, std::arg(r)) * v.conjugate();
    }
    res.psi1.v = project_phases(p1);
    res.psi2.v = project_phases(p2);
  }

  auto objective = [&] {
    const std::complex<double> total = h_r1r2 + unconj_dot(res.psi1.v, u1) +
                                       unconj_dot(res.psi2.v, u2) +
                                       unconj_dot(res.psi2.v, q_mat * res.psi1.v);
    return rho * std::norm(total);
  };

  res.snr = objective();
  double metric = stop_metric_value(settings.stop_metric, res.snr);

  for (int k = 1; k <= settings.max_iters; ++k) {
    // psi1 block: gamma = rho |z^T psi1 + c|^2
    z.noalias() = q_mat.transpose() * res.psi2.v;
    z += u1;
    const std::complex<double> c = h_r1r2 + unconj_dot(res.psi2.v, u2);
    const double c_angle = std::arg(c);
    for (Eigen::Index i = 0; i < z.size(); ++i)
      res.psi1.v(i) = std::polar(1.0, c_angle - std::arg(z(i)));

    // psi2 block: gamma = rho |v^T psi2 + r|^2
    v.noalias() = q_mat * res.psi1.v;
    v += u2;
    const std::complex<double> r = h_r1r2 + unconj_dot(res.psi1.v, u1);
    const double r_angle = std::arg(r);
    for (Eigen::Index i = 0; i < v.size(); ++i)
      res.psi2.v(i) = std::polar(1.0, r_angle - std::arg(v(i)));

    const double amp = std::abs(r) + v.cwiseAbs().sum();
    res.snr = rho * amp * amp;
    res.iters = k;

    const double next = stop_metric_value(settings.stop_metric, res.snr);
    if (converged(metric, next, settings.rel_tol)) break;
    metric = next;
  }
  return res;
}

}  // namespace

AoSecondHopResult ao_second_hop_two_ris(const Eigen::MatrixXcd& q_mat,
                                        const Eigen::VectorXcd& u1,
                                        const Eigen::VectorXcd& u2,
                                        std::complex<double> h_r1r2, double rho,
                                        const AoSettings& settings) {
  if (q_mat.rows() != u2.size() || q_mat.cols() != u1.size())
    throw std::invalid_argument("ao_second_hop_two_ris: dimension mismatch");

  AoSecondHopResult best;
  for (int s = 0; s < std::max(1, settings.restarts); ++s) {
    AoSecondHopResult res = ao_second_hop_start(
        q_mat, u1, u2, h_r1r2, rho, settings, restart_phases(u2.size(), settings, s));
    if (s == 0 || res.snr > best.snr) best = std::move(res);
  }
  return best;
}

double lambda_max_span2(const Eigen::VectorXcd& b_vec,
                        const Eigen::VectorXcd& a_vec, double w_b, double w_a) {
  const double nb2 = b_vec.squaredNorm();
  const double na2 = a_vec.squaredNorm();
  const double cross2 = std::norm(b_vec.dot(a_vec));  // |b^H a|^2

  const double x = w_b * nb2;
  const double y = w_a * na2;
  const double tr = x + y;
  if (b_vec.size() == 1) return tr;  // 1x1: the single eigenvalue, any sign

  // Nonzero eigenvalues of the span compression solve
  //   lambda^2 - tr*lambda + det = 0.
  const double gram_det = std::max(nb2 * na2 - cross2, 0.0);
  const double det = w_b * w_a * gram_det;
  const double disc = std::max((x - y) * (x - y) + 4.0 * w_b * w_a * cross2, 0.0);
  const double s = std::sqrt(disc);
  // With w_b >= 0 the larger root also dominates the zero eigenvalues the
  // full matrix has outside the span.
  if (tr >= 0.0) return 0.5 * (tr + s);
  return 2.0 * det / (tr - s);
}

namespace {

double fractional_objective(const Eigen::VectorXcd& a_vec,
                            const Eigen::VectorXcd& b_vec,
                            std::complex<double> h_r2d, double p1, double p2,
                            double sigma2, const Eigen::VectorXcd& phi) {
  const double fb = p1 * std::norm(unconj_dot(phi, b_vec)) + sigma2;
  const double fa = p2 * std::norm(h_r2d + unconj_dot(phi, a_vec));
  return fa > 0.0 ? fb / fa : kInf;
}

}  // namespace

MmState make_mm_state(const Eigen::VectorXcd& a_vec,
                      const Eigen::VectorXcd& b_vec,
                      std::complex<double> h_r2d, double p1, double p2,
                      double sigma2, const PhaseVector& phi_tilde, double mu) {
  MmState st;
  st.mu = mu;
  st.phi_prev = phi_tilde;
  st.a_vec = a_vec;
  st.b_vec = b_vec;
  st.lambda_max = lambda_max_span2(b_vec, a_vec, p1, -mu * p2);

  const Eigen::VectorXcd pc = phi_tilde.v.conjugate();
  const std::complex<double> tb = b_vec.dot(pc);  // b^H conj(phi)
  const std::complex<double> ta = a_vec.dot(pc);
  const Eigen::VectorXcd x_pc = p1 * tb * b_vec - mu * p2 * ta * a_vec;

  st.alpha = st.lambda_max * pc - x_pc + mu * p2 * std::conj(h_r2d) * a_vec;

  const double quad = std::real(unconj_dot(phi_tilde.v, x_pc));  // phi^T X phi*
  st.beta = st.lambda_max * phi_tilde.v.squaredNorm() - quad -
            mu * p2 * std::norm(h_r2d) + sigma2;
  return st;
}

MmResult mm_fractional_phase(const Eigen::VectorXcd& a_vec,
                             const Eigen::VectorXcd& b_vec,
                             std::complex<double> h_r2d, double p1, double p2,
                             double sigma2, const AoSettings& settings) {
  if (a_vec.size() != b_vec.size())
    throw std::invalid_argument("mm_fractional_phase: dimension mismatch");
  if (p1 < 0.0 || p2 < 0.0)
    throw std::domain_error("mm_fractional_phase: powers must be non-negative");
  if (!(sigma2 > 0.0))
    throw std::domain_error("mm_fractional_phase: sigma2 must be positive");

  const Eigen::Index m = a_vec.size();
  MmResult res;
  res.phi = initial_phases(m, settings);

  const bool degenerate = p2 == 0.0 || (a_vec.isZero(0.0) && h_r2d == 0.0);
  if (degenerate) {
    res.sinr = 0.0;
    res.state.mu = kInf;
    res.state.phi_prev = res.phi;
    res.state.alpha = Eigen::VectorXcd::Zero(m);
    res.state.a_vec = a_vec;
    res.state.b_vec = b_vec;
    res.state.objective_trace = {kInf};
    return res;
  }

  auto u_of = [&](const Eigen::VectorXcd& phi) {
    return fractional_objective(a_vec, b_vec, h_r2d, p1, p2, sigma2, phi);
  };

  // A zero denominator at the starting point would stall the ratio update;
  // fall back to the aligned feasible point, which makes it strictly positive.
  if (!std::isfinite(u_of(res.phi.v))) res.phi = align_to_reference(h_r2d, a_vec);

  double u_prev = u_of(res.phi.v);
  double mu = u_prev;
  std::vector<double> trace{u_prev};

  MmState last_state = make_mm_state(a_vec, b_vec, h_r2d, p1, p2, sigma2, res.phi, mu);
  for (int k = 1; k <= settings.max_iters; ++k) {
    if (k > 1) last_state = make_mm_state(a_vec, b_vec, h_r2d, p1, p2, sigma2, res.phi, mu);

    PhaseVector phi_next{conj_phase_of(last_state.alpha)};
    const double u_next = u_of(phi_next.v);
    if (!std::isfinite(u_next)) break;

    res.phi = phi_next;
    res.iters = k;
    trace.push_back(u_next);
    mu = u_next;

    if (std::abs(u_prev - u_next) <= settings.rel_tol * std::max(u_prev, kTiny)) {
      u_prev = u_next;
      break;
    }
    u_prev = u_next;
  }

  res.sinr = 1.0 / trace.back();
  res.state = last_state;
  res.state.objective_trace = std::move(trace);
  return res;
}

double majorizer_gap(const PhaseVector& phi, const MmState& state, double p1,
                     double p2, std::complex<double> h_r2d, double sigma2) {
  const double g = state.lambda_max * phi.v.squaredNorm() -
                   2.0 * std::real(unconj_dot(phi.v, state.alpha)) + state.beta;
  const double fb = p1 * std::norm(unconj_dot(phi.v, state.b_vec)) + sigma2;
  const double fa = p2 * std::norm(h_r2d + unconj_dot(phi.v, state.a_vec));
  const double f = fb - state.mu * fa;
  return g - f;
}

}  // namespace drisim
