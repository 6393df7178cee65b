#include <cmath>
#include <vector>

#include "doctest.h"

#include "elastica/dynamics.hpp"
#include "elastica/hasimoto.hpp"
#include "elastica/scenarios.hpp"
#include "elastica/verify.hpp"

using namespace elastica;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPsi = 1.0471975511965977;  // pi/3

double matrix_gap(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double pair_gap(const YPair& a, const YPair& b) {
  return y_norm(a.P - b.P, a.Q - b.Q, 0.0);
}

YPair circle_pair(int N) {
  YPair y{PeriodicField::zero(N, 1, false), PeriodicField::zero(N, 1, false)};
  y.Q.set_mode(0, 0, 1.0);
  return y;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("mode propagator: frozen quarter-period and identity cases") {
  // n = 1, beta = 0, dt = pi/2: z = pi/2, so V = [[0, i], [i, 0]].
  Eigen::Matrix2cd quarter;
  quarter << 0.0, cplx(0.0, 1.0), cplx(0.0, 1.0), 0.0;
  CHECK(matrix_gap(propagator(1, 0.0, 0.5 * kPi).matrix, quarter) <= 1e-14);

  // w = 0 is the removable limit: the matrix is exactly the identity.
  CHECK(matrix_gap(propagator(0, 0.0, 0.3).matrix, Eigen::Matrix2cd::Identity()) <= 1e-15);
  // dt = 0 is the identity for every mode.
  CHECK(matrix_gap(propagator_matrix(3.0, 0.0), Eigen::Matrix2cd::Identity()) <= 1e-15);
}

TEST_CASE("mode propagator equals the exponential of its generator") {
  const double cases[][3] = {
      {1.0, 0.0, 0.01}, {3.0, 0.2, 0.005}, {-5.0, -0.37, 0.02}, {8.0, 0.5, 0.001}};
  for (const auto& c : cases) {
    const double w = c[0] + c[1];
    const double dt = c[2];
    Eigen::Matrix2cd L;
    L << 0.0, cplx(0.0, w * w * w), cplx(0.0, w), 0.0;
    CHECK(matrix_gap(propagator_matrix(w, dt), expm_2x2(dt * L)) <= 1e-13);
  }
}

TEST_CASE("mode propagator: semigroup law and weighted norm bound") {
  for (int n : {0, 1, -4, 9}) {
    for (double beta : {0.0, 0.31}) {
      const Eigen::Matrix2cd half = propagator(n, beta, 0.005).matrix;
      const Eigen::Matrix2cd full = propagator(n, beta, 0.01).matrix;
      CHECK(matrix_gap(half * half, full) <= 1e-14);

      const ModePropagator prop = propagator(n, beta, 0.01);
      const double w = n + beta;
      const double norm = propagator_weighted_norm(prop);
      if (std::abs(w) > 0.0) {
        const double rho = std::sqrt(1.0 + static_cast<double>(n) * n) / std::abs(w);
        CHECK(norm <= std::max(rho, 1.0 / rho) * (1.0 + 1e-12));
      } else {
        CHECK(std::abs(norm - 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("whole-field propagator acts per mode like the 2x2 matrix") {
  const int N = 32;
  const double beta = 0.2, dt = 0.01;
  YPair y{PeriodicField::zero(N, 1, false), PeriodicField::zero(N, 1, false)};
  y.P.set_mode(0, 3, cplx(0.4, -0.1));
  y.Q.set_mode(0, 3, cplx(0.2, 0.7));
  y.P.set_mode(0, -2, cplx(0.0, 0.3));
  y.Q.set_mode(0, -2, cplx(0.5, 0.0));

  const YPair out = apply_propagator(y, beta, dt);
  for (int n : {3, -2}) {
    const Eigen::Matrix2cd V = propagator_matrix(n + beta, dt);
    const Eigen::Vector2cd in(y.P.mode(0, n), y.Q.mode(0, n));
    const Eigen::Vector2cd expect = V * in;
    CHECK(std::abs(out.P.mode(0, n) - expect(0)) <= 1e-14);
    CHECK(std::abs(out.Q.mode(0, n) - expect(1)) <= 1e-14);
  }
  CHECK(std::abs(out.P.mode(0, 5)) <= 1e-15);
}

TEST_CASE("nonlinear forcing vanishes on the circle state") {
  const int N = 32;
  const NonlinearTerms f = nonlinearity_F(circle_pair(N), 0.0);
  CHECK(pair_gap(f.total, YPair{PeriodicField::zero(N, 1, false),
                                PeriodicField::zero(N, 1, false)}) <= 1e-12);
  // The auxiliary potential of the unit circle is the constant 1.
  PeriodicField one = PeriodicField::zero(N, 1, true);
  one.set_mode(0, 0, 1.0);
  CHECK(sup_distance(f.mu, one) <= 1e-12);
  CHECK(sup_norm(f.alpha) <= 1e-13);
}

TEST_CASE("cubic term: third-order homogeneity and the sign-flip hook") {
  const int N = 32;
  YPair y{PeriodicField::zero(N, 1, false), PeriodicField::zero(N, 1, false)};
  y.Q.set_mode(0, 0, 1.0);
  y.Q.set_mode(0, 1, cplx(0.2, 0.1));
  y.Q.set_mode(0, -2, cplx(0.0, 0.15));

  YPair y2 = y;
  y2.Q *= cplx(2.0);
  const double beta = 0.3;

  const NonlinearTerms f1 = nonlinearity_F(y, beta);
  const NonlinearTerms f2 = nonlinearity_F(y2, beta);
  PeriodicField scaled = f1.F3.P;
  scaled *= cplx(8.0);
  CHECK(sup_distance(f2.F3.P, scaled) <= 1e-11);

  // The fault-injection hook flips F3 alone.
  const NonlinearTerms fm = nonlinearity_F(y, beta, /*mutate_f3_sign=*/true);
  PeriodicField negated = f1.F3.P;
  negated *= cplx(-1.0);
  CHECK(sup_distance(fm.F3.P, negated) <= 1e-14);
  CHECK(sup_distance(fm.F1.P, f1.F1.P) <= 1e-14);
  CHECK(sup_distance(fm.F2.P, f1.F2.P) <= 1e-14);
  CHECK(sup_distance(fm.F1.Q, f1.F1.Q) <= 1e-14);
}

TEST_CASE("monodromy drift rate: frozen harmonic cases") {
  const int N = 32;
  YPair y = circle_pair(N);
  y.P.set_mode(0, 0, cplx(0.0, 0.25));
  // B = mean Im{conj(Q) P} = 0.25 for Q = 1, P = 0.25 i.
  CHECK(std::abs(monodromy_drift_B(y) - 0.25) <= 1e-15);

  // Orthogonal harmonics average to zero.
  YPair z = circle_pair(N);
  z.P.set_mode(0, 1, 1.0);
  CHECK(std::abs(monodromy_drift_B(z)) <= 1e-15);
  CHECK(std::abs(monodromy_drift_B(circle_pair(N))) <= 1e-15);
}

TEST_CASE("exponential step holds the circle fixed") {
  const int N = 32;
  YPair y = circle_pair(N);
  double beta = 0.0;
  int iters = 0;
  for (int k = 0; k < 100; ++k) {
    const StepResult r = step_hasimoto(y, beta, 1e-3);
    y = r.Y;
    beta = r.beta;
    iters = r.iterations;
    CHECK(r.contraction < 1.0);
  }
  CHECK(pair_gap(y, circle_pair(N)) <= 1e-12);
  CHECK(std::abs(beta) <= 1e-13);
  CHECK(iters >= 1);
}

TEST_CASE("step error decays at least cubically in the step size") {
  const int N = 32;
  const CurveState st = make_perturbed_circle(N, 0.05, 3, false);
  const ForwardResult fw = forward_transform(st.u, st.v);
  auto march = [&](double dt, int n) {
    YPair y{fw.state.P, fw.state.Q};
    double beta = fw.state.beta;
    for (int k = 0; k < n; ++k) {
      const StepResult r = step_hasimoto(y, beta, dt);
      y = r.Y;
      beta = r.beta;
    }
    return y;
  };
  const YPair ref = march(2.5e-4, 64);
  const double e1 = pair_gap(march(4e-3, 4), ref);
  const double e2 = pair_gap(march(2e-3, 8), ref);
  const double e3 = pair_gap(march(1e-3, 16), ref);
  CHECK(e1 > e2);
  CHECK(e2 > e3);
  CHECK(e1 / e2 >= 6.0);
  CHECK(e1 / e2 <= 16.0);
  CHECK(e2 / e3 >= 6.0);
  CHECK(e2 / e3 <= 16.0);
}

TEST_CASE("planar stepper matches the general path on real data and rejects the rest") {
  const int N = 32;
  const CurveState st = make_perturbed_circle(N, 0.01, 3, true);
  const ForwardResult fw = forward_transform(st.u, st.v);

  YPair general{fw.state.P, fw.state.Q};
  YPair planar{real_part(fw.state.P), real_part(fw.state.Q)};
  const StepResult rg = step_hasimoto(general, fw.state.beta, 1e-3);
  const StepResult rp = step_planar(planar, 1e-3);
  CHECK(sup_distance(rg.Y.P, rp.Y.P) <= 1e-12);
  CHECK(sup_distance(rg.Y.Q, rp.Y.Q) <= 1e-12);
  CHECK(std::abs(rp.beta) <= 1e-15);

  YPair complex_state = planar;
  complex_state.Q.set_mode(0, 1, complex_state.Q.mode(0, 1) + cplx(0.0, 0.1));
  CHECK_THROWS_AS(step_planar(complex_state, 1e-3), IncompatibleState);
}

TEST_CASE("direct path: circle right-hand side vanishes, latitude stays put") {
  const int N = 32;
  const CurveState circle = make_circle(N);
  const DirectRhs rhs = rhs_direct(circle);
  PeriodicField minus_one = PeriodicField::zero(N, 1, true);
  minus_one.set_mode(0, 0, -1.0);
  CHECK(sup_distance(rhs.lambda, minus_one) <= 1e-10);
  CHECK(sup_norm(rhs.dv_dt) <= 1e-9);
  CHECK(sup_norm(rhs.du_dt) <= 1e-15);

  const Trajectory traj = evolve_direct(make_latitude(N, kPsi), 0.01, 1e-3);
  CHECK(traj.completed);
  CHECK(traj.times.back() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(sup_distance(traj.curve_states.back().u, traj.curve_states.front().u) <= 1e-12);
  CHECK(traj.renormalization_drift.back() <= 1e-12);
  CHECK(traj.diagnostics.size() == 11);
  CHECK(traj.hasimoto_states.empty());
}

TEST_CASE("transformed evolution reproduces the latitude fixed point") {
  const int N = 32;
  const CurveState st = make_latitude(N, kPsi);
  const ForwardResult fw = forward_transform(st.u, st.v);
  const Trajectory traj = evolve_hasimoto(fw.state, fw.frame0, st.momentum, 0.01, 1e-3);
  CHECK(traj.completed);
  // The state is a fixed point: the recorded curve does not move. (Each
  // sample carries the same small reconstruction bias of the transport grid,
  // so the start itself sits within that bias of the exact field.)
  CHECK(sup_distance(traj.curve_states.back().u, traj.curve_states.front().u) <= 1e-12);
  CHECK(sup_distance(traj.curve_states.front().u, st.u) <= 1e-8);
  CHECK(traj.hasimoto_states.size() == traj.times.size());
  CHECK(std::abs(traj.diagnostics.back().beta - fw.state.beta) <= 1e-10);
}

TEST_CASE("step arithmetic: counts, strides, and rejections") {
  CHECK(step_count(0.1, 1e-3) == 100);
  CHECK(step_count(1.0, 0.1) == 10);
  CHECK(step_count(0.0, 1e-3) == 0);
  CHECK_THROWS_AS(step_count(0.1, 0.03), ConfigError);
  CHECK_THROWS_AS(step_count(0.1, 0.0), ConfigError);
  CHECK_THROWS_AS(step_count(0.1, -1e-3), ConfigError);

  // The explicit path enforces its stability bound dt (N/2)^2 <= 2.5.
  CHECK_THROWS_AS(evolve_direct(make_circle(64), 0.1, 1e-2), ConfigError);

  // Sampling strides shape the recorded trajectory: t = 0 plus every k-th
  // step plus the final one.
  DirectOptions opts;
  opts.sample_stride = 3;
  const Trajectory traj = evolve_direct(make_circle(16), 1e-4, 1e-5, opts);
  REQUIRE(traj.times.size() == 5);  // t/dt = 0, 3, 6, 9, 10
  CHECK(traj.times[1] == doctest::Approx(3e-5).epsilon(1e-12));
  CHECK(traj.times.back() == doctest::Approx(1e-4).epsilon(1e-12));
}

TEST_CASE("transformed evolution rejects states that close no loop") {
  const int N = 32;
  const CurveState st = make_latitude(N, kPsi);
  const ForwardResult fw = forward_transform(st.u, st.v);
  HasimotoState broken = fw.state;
  broken.beta += 0.2;
  CHECK_THROWS_AS(evolve_hasimoto(broken, fw.frame0, st.momentum, 0.01, 1e-3),
                  IncompatibleState);
}

}  // TEST_SUITE
