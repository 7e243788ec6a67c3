#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "drisim/rng.hpp"

namespace drisim {

/// Unit-modulus reflection configuration for one surface.
struct PhaseVector {
  Eigen::VectorXcd v;

  static PhaseVector all_ones(Eigen::Index m);
  static PhaseVector random(Eigen::Index m, SplitMix64& rng);

  Eigen::Index size() const { return v.size(); }
  bool unit_modulus(double tol = 1e-12) const;
};

struct AoSettings {
  int max_iters = 50;
  double rel_tol = 1e-3;

  enum class Init { AllOnes, Seeded };
  Init init = Init::AllOnes;
  std::uint64_t init_seed = 0;

  /// Convergence is tracked on the rate by default; the SNR variant is a
  /// config knob for sensitivity studies.
  enum class StopMetric { Rate, Snr };
  StopMetric stop_metric = StopMetric::Rate;

  /// Magnitude-preserving (matched-filter) alternations run before the
  /// unit-modulus projection. The plain phase alternation has attracting
  /// suboptimal fixed points at small element counts; the warm start steers
  /// it into the dominant-cascade basin. 0 disables.
  int warmup_iters = 6;

  /// Alternating optimizers keep the best of this many deterministic
  /// starts: the configured init plus (restarts - 1) fixed-key random phase
  /// starts. 1 : single-start behavior.
  int restarts = 4;
};

/// Precomputed channel cascades feeding the optimizers. Only the members a
/// given architecture needs are filled in by its evaluation routine.
struct CascadeOperators {
  Eigen::MatrixXcd f;             // diag(h_i2d) * G * diag(h_i1s)
  Eigen::MatrixXcd q_mat;         // diag(h_i2r2) * G * diag(h_i1r1)
  Eigen::VectorXcd u1, u2;        // single-reflection hops of the relay link
  Eigen::VectorXcd a_vec, b_vec;  // destination signal / interference cascades
  Eigen::VectorXcd q_vec;         // G * diag(theta) * h_i1s
  std::complex<double> h_sr{}, h_r1r2{}, h_r2d{};
};

/// F[i,j] = h_i2d[i] * g[i,j] * h_i1s[j]. Throws std::invalid_argument on a
/// dimension mismatch.
Eigen::MatrixXcd cascade_f(const Eigen::VectorXcd& h_i2d,
                           const Eigen::MatrixXcd& g,
                           const Eigen::VectorXcd& h_i1s);

/// Per-element closed form: entry m gets phase angle(ref) - angle(cascade[m])
/// so every term adds coherently with the reference. angle(0) is taken as 0.
PhaseVector align_to_reference(std::complex<double> ref,
                               const Eigen::VectorXcd& cascade);

/// rho * (|ref| + sum_m |cascade[m]|)^2 — the SNR a coherently aligned
/// surface achieves.
double coherent_snr(double rho, std::complex<double> ref,
                    const Eigen::VectorXcd& cascade);

struct AoDoubleRisResult {
  PhaseVector theta;
  PhaseVector phi;
  double snr = 0.0;
  int iters = 0;
};

/// Alternating per-block closed forms maximizing rho * |phi^T F theta|^2.
/// The objective is non-decreasing across iterations.
AoDoubleRisResult ao_double_ris(const Eigen::MatrixXcd& f, double rho,
                                const AoSettings& settings);

struct AoSecondHopResult {
  PhaseVector psi1;
  PhaseVector psi2;
  double snr = 0.0;
  int iters = 0;
};

/// Alternating closed forms maximizing
///   rho * |h_r1r2 + psi1^T u1 + psi2^T u2 + psi2^T Q psi1|^2
/// (relay-to-relay hop reflected by both surfaces at once).
AoSecondHopResult ao_second_hop_two_ris(const Eigen::MatrixXcd& q_mat,
                                        const Eigen::VectorXcd& u1,
                                        const Eigen::VectorXcd& u2,
                                        std::complex<double> h_r1r2, double rho,
                                        const AoSettings& settings);

/// Exact largest eigenvalue of the Hermitian rank-<=2 matrix
///   w_b * b b^H + w_a * a a^H
/// computed on span{a, b} (closed-form 2x2 reduction, no iteration).
/// Requires w_b >= 0; w_a may be negative (indefinite case).
double lambda_max_span2(const Eigen::VectorXcd& b_vec,
                        const Eigen::VectorXcd& a_vec, double w_b, double w_a);

/// Majorize-minimize iteration state for the fractional program
///   minimize u(phi) = (p1 |phi^T b|^2 + sigma2) / (p2 |h_r2d + phi^T a|^2).
/// alpha/beta/lambda_max correspond to the expansion point phi_prev and
/// ratio parameter mu; objective_trace records u after each iteration and
/// is non-increasing.
struct MmState {
  double mu = 0.0;
  PhaseVector phi_prev;
  double lambda_max = 0.0;
  Eigen::VectorXcd alpha;
  double beta = 0.0;
  std::vector<double> objective_trace;
  Eigen::VectorXcd a_vec, b_vec;
};

struct MmResult {
  PhaseVector phi;
  double sinr = 0.0;  // 1 / u(phi); 0 for the degenerate infinite-u case
  int iters = 0;
  MmState state;
};

/// Builds a consistent MmState (lambda_max, alpha, beta) for an expansion
/// point and ratio parameter. Exposed for majorizer diagnostics.
MmState make_mm_state(const Eigen::VectorXcd& a_vec,
                      const Eigen::VectorXcd& b_vec,
                      std::complex<double> h_r2d, double p1, double p2,
                      double sigma2, const PhaseVector& phi_tilde, double mu);

/// Fractional phase optimization via the parametric reformulation with a
/// per-iteration ratio update and a rank-2 eigenvalue majorizer. A
/// structurally-zero denominator (p2 = 0, or a = 0 with h_r2d = 0) yields a
/// degenerate result with sinr = 0 and an infinite objective, not a throw.
MmResult mm_fractional_phase(const Eigen::VectorXcd& a_vec,
                             const Eigen::VectorXcd& b_vec,
                             std::complex<double> h_r2d, double p1, double p2,
                             double sigma2, const AoSettings& settings);

/// g(phi | phi_prev, mu) - f(phi, mu): slack of the quadratic upper bound at
/// phi. Non-negative for every unit-modulus phi, zero at phi = phi_prev.
double majorizer_gap(const PhaseVector& phi, const MmState& state, double p1,
                     double p2, std::complex<double> h_r2d, double sigma2);

}  // namespace drisim
