#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "drisim/phaseopt.hpp"
#include "oracles.hpp"

using namespace drisim;
using Cx = std::complex<double>;

namespace {

Eigen::VectorXcd cn_vector(int m, SplitMix64& rng, double var = 1.0) {
  Eigen::VectorXcd v(m);
  for (int i = 0; i < m; ++i) v(i) = rng.next_circular_gaussian(var);
  return v;
}

Eigen::MatrixXcd cn_matrix(int rows, int cols, SplitMix64& rng, double var = 1.0) {
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = rng.next_circular_gaussian(var);
  return g;
}

Cx unconj_dot(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) {
  return (x.array() * y.array()).sum();
}

AoSettings tight_settings(int iters) {
  AoSettings s;
  s.max_iters = iters;
  s.rel_tol = 1e-300;  // run every iteration
  return s;
}

double u_of(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, Cx h, double p1,
            double p2, double s2, const Eigen::VectorXcd& phi) {
  const double den = p2 * std::norm(h + unconj_dot(phi, a));
  return (p1 * std::norm(unconj_dot(phi, b)) + s2) / den;
}

}  // namespace

TEST_CASE("cascade_f structure") {
  SplitMix64 rng(1);

  SUBCASE("scalar collapse") {
    const Eigen::VectorXcd h2 = cn_vector(1, rng), h1 = cn_vector(1, rng);
    const Eigen::MatrixXcd g = cn_matrix(1, 1, rng);
    const Eigen::MatrixXcd f = cascade_f(h2, g, h1);
    CHECK(f(0, 0) == h2(0) * g(0, 0) * h1(0));
  }

  SUBCASE("annihilation") {
    const Eigen::VectorXcd h2 = cn_vector(3, rng), h1 = cn_vector(3, rng);
    const Eigen::MatrixXcd f = cascade_f(h2, Eigen::MatrixXcd::Zero(3, 3), h1);
    CHECK(f.norm() == 0.0);
  }

  SUBCASE("matches the direct triple product") {
    const int m = 3;
    const Eigen::VectorXcd h2 = cn_vector(m, rng), h1 = cn_vector(m, rng);
    const Eigen::MatrixXcd g = cn_matrix(m, m, rng);
    const Eigen::MatrixXcd f = cascade_f(h2, g, h1);
    const PhaseVector phi = PhaseVector::random(m, rng);
    const PhaseVector theta = PhaseVector::random(m, rng);
    const Cx via_f = unconj_dot(phi.v, f * theta.v);
    const Cx direct = (h2.transpose() * phi.v.asDiagonal() * g * theta.v.asDiagonal() * h1)(0);
    CHECK(std::abs(via_f - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(cascade_f(cn_vector(2, rng), cn_matrix(3, 3, rng), cn_vector(3, rng)),
                    std::invalid_argument);
  }
}

TEST_CASE("align_to_reference examples") {
  SUBCASE("already aligned") {
    Eigen::VectorXcd c(2);
    c << Cx(1, 0), Cx(1, 0);
    const PhaseVector p = align_to_reference(Cx(1, 0), c);
    CHECK(std::abs(p.v(0) - Cx(1, 0)) < 1e-15);
    CHECK(std::abs(p.v(1) - Cx(1, 0)) < 1e-15);
    CHECK(std::abs(Cx(1, 0) + unconj_dot(p.v, c)) == doctest::Approx(3.0));
  }

  SUBCASE("two-term alignment") {
    Eigen::VectorXcd c(1);
    c << Cx(-1, 0);
    const PhaseVector p = align_to_reference(Cx(0, 1), c);
    CHECK(std::abs(Cx(0, 1) + unconj_dot(p.v, c)) == doctest::Approx(2.0));
    CHECK(std::abs(p.v(0) - Cx(0, -1)) < 1e-15);  // e^{j(pi/2 - pi)}
  }

  SUBCASE("zero entries use angle 0") {
    Eigen::VectorXcd c(2);
    c << Cx(0, 0), Cx(2, 0);
    const PhaseVector p = align_to_reference(Cx(1, 0), c);
    CHECK(p.unit_modulus());
    CHECK(std::abs(Cx(1, 0) + unconj_dot(p.v, c)) == doctest::Approx(3.0));
  }

  SUBCASE("magnitude-sum identity on random inputs") {
    SplitMix64 rng(2);
    for (int t = 0; t < 200; ++t) {
      const Eigen::VectorXcd c = cn_vector(8, rng);
      const Cx ref = rng.next_circular_gaussian(1.0);
      const PhaseVector p = align_to_reference(ref, c);
      CHECK(p.unit_modulus());
      const double combined = std::abs(ref + unconj_dot(p.v, c));
      const double target = std::abs(ref) + c.cwiseAbs().sum();
      CHECK(std::abs(combined - target) <= 1e-12 * target);
    }
  }
}

TEST_CASE("coherent_snr") {
  Eigen::VectorXcd c(3);
  c << Cx(1, 0), Cx(1, 0), Cx(1, 0);
  CHECK(coherent_snr(0.0, Cx(1, 0), c) == 0.0);
  CHECK(coherent_snr(1.0, Cx(0, 0), c) == doctest::Approx(9.0));

  SUBCASE("scale covariance") {
    SplitMix64 rng(3);
    const Eigen::VectorXcd cc = cn_vector(5, rng);
    const Cx ref = rng.next_circular_gaussian(1.0);
    const double base = coherent_snr(1.0, ref, cc);
    for (double scale : {0.5, 2.0, 1e6})
      CHECK(coherent_snr(scale, ref, cc) == doctest::Approx(scale * base).epsilon(1e-14));
  }

  SUBCASE("two-sided quantized check at M = 2") {
    SplitMix64 rng(4);
    const int levels = 64;
    const double factor = oracle::quantization_snr_factor(levels, 1);
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXcd cc = cn_vector(2, rng);
      const Cx ref = rng.next_circular_gaussian(1.0);
      const double closed = coherent_snr(1.0, ref, cc);
      const double quant = oracle::quantized_best_coherent(ref, cc, 1.0, levels);
      CHECK(quant <= closed * (1.0 + 1e-12));
      CHECK(quant >= closed * factor);
    }
  }
}

TEST_CASE("ao_double_ris") {
  SUBCASE("null channel terminates immediately") {
    const AoSettings s;
    const auto res = ao_double_ris(Eigen::MatrixXcd::Zero(4, 4), 2.0, s);
    CHECK(res.snr == 0.0);
    CHECK(res.iters == 1);
    CHECK(res.theta.unit_modulus());
    CHECK(res.phi.unit_modulus());
  }

  SUBCASE("rank-one separable optimum") {
    SplitMix64 rng(5);
    const int m = 6;
    const Eigen::VectorXcd b = cn_vector(m, rng), a = cn_vector(m, rng);
    const Eigen::MatrixXcd f = b * a.transpose();
    const AoSettings s;
    const auto res = ao_double_ris(f, 1.5, s);
    CHECK(res.iters <= 2);
    const double expected = 1.5 * std::pow(b.cwiseAbs().sum() * a.cwiseAbs().sum(), 2);
    CHECK(res.snr == doctest::Approx(expected).epsilon(1e-10));
  }

  SUBCASE("meets the exhaustive quantized optimum at M = 2") {
    SplitMix64 rng(6);
    const int levels = 64;
    const double factor = oracle::quantization_snr_factor(levels, 2);
    for (int t = 0; t < 10; ++t) {
      const Eigen::MatrixXcd f = cn_matrix(2, 2, rng);
      const auto res = ao_double_ris(f, 1.0, AoSettings{});
      const double quant = oracle::quantized_best_double_ris(f, 1.0, levels);
      CHECK(res.snr >= quant * factor);
    }
  }

  SUBCASE("objective is non-decreasing across iterations") {
    SplitMix64 rng(7);
    const Eigen::MatrixXcd f = cn_matrix(8, 8, rng);
    double prev = -1.0;
    for (int k = 1; k <= 12; ++k) {
      const auto res = ao_double_ris(f, 1.0, tight_settings(k));
      CHECK(res.snr >= prev - 1e-9 * std::max(1.0, prev));
      prev = res.snr;
    }
  }

  SUBCASE("single-entry perturbations cannot improve a converged block") {
    SplitMix64 rng(8);
    const Eigen::MatrixXcd f = cn_matrix(5, 5, rng);
    const auto res = ao_double_ris(f, 1.0, tight_settings(50));
    const double base = std::norm(unconj_dot(res.phi.v, f * res.theta.v));
    for (int i = 0; i < 5; ++i) {
      for (double delta : {+0.01, -0.01}) {
        PhaseVector theta = res.theta;
        theta.v(i) *= std::polar(1.0, delta);
        CHECK(std::norm(unconj_dot(res.phi.v, f * theta.v)) <= base * (1.0 + 1e-9));
        PhaseVector phi = res.phi;
        phi.v(i) *= std::polar(1.0, delta);
        CHECK(std::norm(unconj_dot(phi.v, f * res.theta.v)) <= base * (1.0 + 1e-9));
      }
    }
  }

  SUBCASE("seeded initialization stays unit-modulus and feasible") {
    SplitMix64 rng(9);
    const Eigen::MatrixXcd f = cn_matrix(4, 4, rng);
    AoSettings s;
    s.init = AoSettings::Init::Seeded;
    s.init_seed = 99;
    const auto res = ao_double_ris(f, 1.0, s);
    CHECK(res.theta.unit_modulus());
    CHECK(res.phi.unit_modulus());
    CHECK(res.snr > 0.0);
  }
}

TEST_CASE("ao_second_hop_two_ris") {
  SUBCASE("decoupled single-surface case reduces to alignment") {
    SplitMix64 rng(10);
    const int m = 5;
    const Eigen::VectorXcd u1 = cn_vector(m, rng);
    const Eigen::VectorXcd u2 = Eigen::VectorXcd::Zero(m);
    const Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(m, m);
    const Cx h = rng.next_circular_gaussian(1.0);
    const auto res = ao_second_hop_two_ris(q, u1, u2, h, 2.0, AoSettings{});
    CHECK(res.snr == doctest::Approx(coherent_snr(2.0, h, u1)).epsilon(1e-10));
  }

  SUBCASE("null channel") {
    const int m = 3;
    const auto res = ao_second_hop_two_ris(Eigen::MatrixXcd::Zero(m, m),
                                           Eigen::VectorXcd::Zero(m),
                                           Eigen::VectorXcd::Zero(m), Cx(0, 0), 1.0,
                                           AoSettings{});
    CHECK(res.snr == 0.0);
    CHECK(res.psi1.unit_modulus());
    CHECK(res.psi2.unit_modulus());
  }

  SUBCASE("meets the exhaustive quantized optimum at M = 2") {
    SplitMix64 rng(11);
    const int levels = 64;
    const double factor = oracle::quantization_snr_factor(levels, 2);
    for (int t = 0; t < 6; ++t) {
      const Eigen::MatrixXcd q = cn_matrix(2, 2, rng);
      const Eigen::VectorXcd u1 = cn_vector(2, rng), u2 = cn_vector(2, rng);
      const Cx h = rng.next_circular_gaussian(1.0);
      const auto res = ao_second_hop_two_ris(q, u1, u2, h, 1.0, AoSettings{});
      const double quant = oracle::quantized_best_second_hop(q, u1, u2, h, 1.0, levels);
      CHECK(res.snr >= quant * factor);
    }
  }

  SUBCASE("objective is non-decreasing across iterations") {
    SplitMix64 rng(12);
    const Eigen::MatrixXcd q = cn_matrix(6, 6, rng);
    const Eigen::VectorXcd u1 = cn_vector(6, rng), u2 = cn_vector(6, rng);
    const Cx h = rng.next_circular_gaussian(1.0);
    double prev = -1.0;
    for (int k = 1; k <= 12; ++k) {
      const auto res = ao_second_hop_two_ris(q, u1, u2, h, 1.0, tight_settings(k));
      CHECK(res.snr >= prev - 1e-9 * std::max(1.0, prev));
      prev = res.snr;
    }
  }

  SUBCASE("single-entry perturbations cannot improve a converged block") {
    SplitMix64 rng(13);
    const int m = 4;
    const Eigen::MatrixXcd q = cn_matrix(m, m, rng);
    const Eigen::VectorXcd u1 = cn_vector(m, rng), u2 = cn_vector(m, rng);
    const Cx h = rng.next_circular_gaussian(1.0);
    const auto res = ao_second_hop_two_ris(q, u1, u2, h, 1.0, tight_settings(50));
    auto objective = [&](const Eigen::VectorXcd& p1v, const Eigen::VectorXcd& p2v) {
      return std::norm(h + unconj_dot(p1v, u1) + unconj_dot(p2v, u2) +
                       unconj_dot(p2v, q * p1v));
    };
    const double base = objective(res.psi1.v, res.psi2.v);
    for (int i = 0; i < m; ++i) {
      for (double delta : {+0.01, -0.01}) {
        Eigen::VectorXcd p1v = res.psi1.v;
        p1v(i) *= std::polar(1.0, delta);
        CHECK(objective(p1v, res.psi2.v) <= base * (1.0 + 1e-9));
        Eigen::VectorXcd p2v = res.psi2.v;
        p2v(i) *= std::polar(1.0, delta);
        CHECK(objective(res.psi1.v, p2v) <= base * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("lambda_max_span2") {
  SplitMix64 rng(14);

  SUBCASE("rank-one when a vanishes") {
    const Eigen::VectorXcd b = cn_vector(4, rng);
    const Eigen::VectorXcd a = Eigen::VectorXcd::Zero(4);
    CHECK(lambda_max_span2(b, a, 2.5, -3.0) ==
          doctest::Approx(2.5 * b.squaredNorm()).epsilon(1e-13));
  }

  SUBCASE("orthogonal vectors decouple") {
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(4), a = Eigen::VectorXcd::Zero(4);
    b(0) = Cx(2, 1);
    a(2) = Cx(0, 3);
    const double nb2 = b.squaredNorm(), na2 = a.squaredNorm();
    CHECK(lambda_max_span2(b, a, 1.5, 0.5) ==
          doctest::Approx(std::max(1.5 * nb2, 0.5 * na2)).epsilon(1e-13));
    CHECK(lambda_max_span2(b, a, 1.5, -0.5) ==
          doctest::Approx(std::max(1.5 * nb2, -0.5 * na2)).epsilon(1e-13));
  }

  SUBCASE("scalar case keeps its sign") {
    Eigen::VectorXcd b(1), a(1);
    b(0) = Cx(0, 0);
    a(0) = Cx(1, 0);
    CHECK(lambda_max_span2(b, a, 1.0, -2.0) == doctest::Approx(-2.0));
    CHECK(lambda_max_span2(b, a, 1.0, -2.0) ==
          doctest::Approx(oracle::dense_lambda_max(b, a, 1.0, -2.0)));
  }

  SUBCASE("matches a dense eigensolver, indefinite cases included") {
    for (int t = 0; t < 100; ++t) {
      const int m = 2 + static_cast<int>(rng.next_u64() % 7);
      const Eigen::VectorXcd b = cn_vector(m, rng), a = cn_vector(m, rng);
      const double w_b = 3.0 * rng.next_unit();
      const double w_a = 6.0 * rng.next_unit() - 3.0;
      const double mine = lambda_max_span2(b, a, w_b, w_a);
      const double dense = oracle::dense_lambda_max(b, a, w_b, w_a);
      CHECK(std::abs(mine - dense) <= 1e-10 * std::max(1.0, std::abs(dense)));
    }
  }
}

TEST_CASE("mm_fractional_phase") {
  SUBCASE("no-interference limit reduces to alignment") {
    SplitMix64 rng(15);
    const int m = 6;
    const Eigen::VectorXcd a = cn_vector(m, rng), b = cn_vector(m, rng);
    const Cx h = rng.next_circular_gaussian(1.0);
    const double p2 = 1.7, s2 = 0.8;
    const auto res = mm_fractional_phase(a, b, h, 0.0, p2, s2, AoSettings{});
    const double amp = std::abs(h) + a.cwiseAbs().sum();
    const double closed = p2 * amp * amp / s2;
    CHECK(res.sinr >= closed * (1.0 - 1e-2));
    CHECK(res.sinr <= closed * (1.0 + 1e-12));
    CHECK(res.phi.unit_modulus());
  }

  SUBCASE("fully conflicting cascades still yield a monotone trace") {
    SplitMix64 rng(16);
    const Eigen::VectorXcd a = cn_vector(4, rng);
    const Cx h = rng.next_circular_gaussian(1.0);
    const auto res = mm_fractional_phase(a, a, h, 1.2, 0.9, 1.0, AoSettings{});
    const auto& tr = res.state.objective_trace;
    REQUIRE(tr.size() >= 2);
    for (std::size_t k = 1; k < tr.size(); ++k)
      CHECK(tr[k] <= tr[k - 1] + 1e-9 * std::max(1.0, tr[k - 1]));
  }

  SUBCASE("meets the quantized exhaustive minimum at M = 2") {
    SplitMix64 rng(17);
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXcd a = cn_vector(2, rng), b = cn_vector(2, rng);
      const Cx h = rng.next_circular_gaussian(1.0);
      const double p1 = 0.5 + rng.next_unit(), p2 = 0.5 + rng.next_unit();
      const auto res = mm_fractional_phase(a, b, h, p1, p2, 1.0, AoSettings{});
      const double u_mm = res.state.objective_trace.back();
      const double u_quant = oracle::quantized_best_fractional(a, b, h, p1, p2, 1.0, 64);
      CHECK(u_mm <= u_quant * (1.0 + 1e-2));
    }
  }

  SUBCASE("degenerate denominators report infinite objective, no throw") {
    SplitMix64 rng(18);
    const Eigen::VectorXcd a = cn_vector(3, rng), b = cn_vector(3, rng);
    const auto res = mm_fractional_phase(a, b, Cx(1, 0), 1.0, 0.0, 1.0, AoSettings{});
    CHECK(res.sinr == 0.0);
    CHECK(std::isinf(res.state.objective_trace.back()));

    const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(3);
    const auto res2 = mm_fractional_phase(zero, b, Cx(0, 0), 1.0, 1.0, 1.0, AoSettings{});
    CHECK(res2.sinr == 0.0);
    CHECK(std::isinf(res2.state.objective_trace.back()));
  }

  SUBCASE("rejects invalid parameters") {
    const Eigen::VectorXcd v = Eigen::VectorXcd::Ones(2);
    CHECK_THROWS_AS(mm_fractional_phase(v, v, Cx(1, 0), -1.0, 1.0, 1.0, AoSettings{}),
                    std::domain_error);
    CHECK_THROWS_AS(mm_fractional_phase(v, v, Cx(1, 0), 1.0, 1.0, 0.0, AoSettings{}),
                    std::domain_error);
  }

  SUBCASE("sinr equals the inverse of the final objective") {
    SplitMix64 rng(19);
    const Eigen::VectorXcd a = cn_vector(4, rng), b = cn_vector(4, rng);
    const Cx h = rng.next_circular_gaussian(1.0);
    const auto res = mm_fractional_phase(a, b, h, 0.7, 1.1, 1.3, AoSettings{});
    CHECK(res.sinr == doctest::Approx(1.0 / u_of(a, b, h, 0.7, 1.1, 1.3, res.phi.v))
                          .epsilon(1e-12));
  }
}

TEST_CASE("majorizer_gap") {
  SplitMix64 rng(20);

  SUBCASE("zero at the expansion point, non-negative elsewhere") {
    for (int t = 0; t < 10; ++t) {
      const int m = 1 + static_cast<int>(rng.next_u64() % 8);
      const Eigen::VectorXcd a = cn_vector(m, rng), b = cn_vector(m, rng);
      const Cx h = rng.next_circular_gaussian(1.0);
      const double p1 = 2.0 * rng.next_unit(), p2 = 0.2 + rng.next_unit();
      const double s2 = 0.5 + rng.next_unit();
      const auto res = mm_fractional_phase(a, b, h, p1, p2, s2, AoSettings{});

      CHECK(std::abs(majorizer_gap(res.state.phi_prev, res.state, p1, p2, h, s2)) <= 1e-9);
      for (int probe = 0; probe < 100; ++probe) {
        const PhaseVector phi = PhaseVector::random(m, rng);
        CHECK(majorizer_gap(phi, res.state, p1, p2, h, s2) >= -1e-9);
      }
    }
  }

  SUBCASE("scalar instance stays non-negative") {
    Eigen::VectorXcd a(1), b(1);
    a(0) = Cx(0.8, -0.3);
    b(0) = Cx(-0.2, 0.9);
    const Cx h(0.4, 0.1);
    const PhaseVector tilde = PhaseVector::all_ones(1);
    const MmState st = make_mm_state(a, b, h, 1.1, 0.9, 1.0, tilde, 0.7);
    CHECK(std::abs(majorizer_gap(tilde, st, 1.1, 0.9, h, 1.0)) <= 1e-12);
    for (int k = 0; k < 64; ++k) {
      PhaseVector phi{Eigen::VectorXcd(1)};
      phi.v(0) = std::polar(1.0, 2.0 * std::numbers::pi * k / 64);
      CHECK(majorizer_gap(phi, st, 1.1, 0.9, h, 1.0) >= -1e-12);
    }
  }
}
