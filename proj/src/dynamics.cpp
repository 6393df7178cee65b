#include "elastica/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "elastica/tension.hpp"

namespace elastica {

namespace {

// sin(z)/z with a series fallback near z = 0.
double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

int wave_number_at(int j, int N) { return j < N / 2 ? j : j - N; }

std::vector<Eigen::Matrix2cd> propagator_bank(int N, double beta, double dt) {
  std::vector<Eigen::Matrix2cd> bank(static_cast<size_t>(N));
  for (int j = 0; j < N; ++j) {
    bank[static_cast<size_t>(j)] = propagator_matrix(wave_number_at(j, N) + beta, dt);
  }
  return bank;
}

YPair apply_bank(const std::vector<Eigen::Matrix2cd>& bank, const YPair& Y) {
  const int N = Y.P.grid();
  std::vector<cplx> pm(static_cast<size_t>(N)), qm(static_cast<size_t>(N));
  const auto& praw = Y.P.raw_modes();
  const auto& qraw = Y.Q.raw_modes();
  for (int j = 0; j < N; ++j) {
    const Eigen::Matrix2cd& V = bank[static_cast<size_t>(j)];
    const size_t k = static_cast<size_t>(j);
    pm[k] = V(0, 0) * praw[k] + V(0, 1) * qraw[k];
    qm[k] = V(1, 0) * praw[k] + V(1, 1) * qraw[k];
  }
  YPair out;
  out.P = PeriodicField::from_modes(std::move(pm), N, 1, false);
  out.Q = PeriodicField::from_modes(std::move(qm), N, 1, false);
  return out;
}

void check_pair(const YPair& Y, const char* where) {
  if (Y.P.empty() || Y.Q.empty() || Y.P.grid() != Y.Q.grid() || Y.P.components() != 1 ||
      Y.Q.components() != 1) {
    throw ConfigError(std::string(where) + ": P and Q must be scalar fields on one grid");
  }
}

// Shared Picard core for the exponential step. In planar mode beta is pinned
// to zero and imaginary round-off is stripped after every sweep.
StepResult step_core(const YPair& Y0, double beta0, double dt, const StepOptions& opts,
                     bool planar) {
  check_pair(Y0, "step");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("step: dt must be positive");
  const int N = Y0.P.grid();
  const double scale = std::max(1.0, y_norm(Y0.P, Y0.Q, 0.0));

  auto pin = [&](YPair& Y) {
    if (!planar) return;
    Y.P = real_part(Y.P);
    Y.Q = real_part(Y.Q);
  };

  const double B0 = planar ? 0.0 : monodromy_drift_B(Y0);
  double beta_mid = beta0 + 0.5 * dt * B0;
  double beta_end = beta0 + dt * B0;

  const YPair F0 = nonlinearity_F(Y0, beta0, opts.mutate_f3_sign).total;

  YPair Yh = apply_bank(propagator_bank(N, beta_mid, 0.5 * dt), Y0);
  YPair Yf = apply_bank(propagator_bank(N, beta_mid, dt), Y0);
  pin(Yh);
  pin(Yf);

  double prev_delta = -1.0;
  double contraction = 0.0;
  int iterations = 0;
  bool converged = false;

  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    iterations = iter;
    const auto bank_h = propagator_bank(N, beta_mid, 0.5 * dt);
    const auto bank_f = propagator_bank(N, beta_mid, dt);

    const YPair Fh = nonlinearity_F(Yh, beta_mid, opts.mutate_f3_sign).total;
    const YPair Ff = nonlinearity_F(Yf, beta_end, opts.mutate_f3_sign).total;

    const YPair Vh_Y0 = apply_bank(bank_h, Y0);
    const YPair Vf_Y0 = apply_bank(bank_f, Y0);
    const YPair Vh_F0 = apply_bank(bank_h, F0);
    const YPair Vf_F0 = apply_bank(bank_f, F0);
    const YPair Vh_Fh = apply_bank(bank_h, Fh);

    YPair Yh_new;
    Yh_new.P = Vh_Y0.P + cplx(0.25 * dt) * (Vh_F0.P + Fh.P);
    Yh_new.Q = Vh_Y0.Q + cplx(0.25 * dt) * (Vh_F0.Q + Fh.Q);

    YPair Yf_new;
    switch (opts.quadrature) {
      case DuhamelQuadrature::midpoint:
        Yf_new.P = Vf_Y0.P + cplx(dt) * Vh_Fh.P;
        Yf_new.Q = Vf_Y0.Q + cplx(dt) * Vh_Fh.Q;
        break;
      case DuhamelQuadrature::trapezoid:
        Yf_new.P = Vf_Y0.P + cplx(0.5 * dt) * (Vf_F0.P + Ff.P);
        Yf_new.Q = Vf_Y0.Q + cplx(0.5 * dt) * (Vf_F0.Q + Ff.Q);
        break;
      case DuhamelQuadrature::simpson:
        Yf_new.P = Vf_Y0.P + cplx(dt / 6.0) * (Vf_F0.P + cplx(4.0) * Vh_Fh.P + Ff.P);
        Yf_new.Q = Vf_Y0.Q + cplx(dt / 6.0) * (Vf_F0.Q + cplx(4.0) * Vh_Fh.Q + Ff.Q);
        break;
    }
    pin(Yh_new);
    pin(Yf_new);

    double beta_mid_new = beta_mid;
    double beta_end_new = beta_end;
    if (!planar) {
      const double Bh = monodromy_drift_B(Yh_new);
      const double Bf = monodromy_drift_B(Yf_new);
      beta_mid_new = beta0 + 0.25 * dt * (B0 + Bh);
      beta_end_new = beta0 + dt / 6.0 * (B0 + 4.0 * Bh + Bf);
    }

    const double delta = y_norm(Yh_new.P - Yh.P, Yh_new.Q - Yh.Q, 0.0) +
                         y_norm(Yf_new.P - Yf.P, Yf_new.Q - Yf.Q, 0.0) +
                         std::abs(beta_mid_new - beta_mid) +
                         std::abs(beta_end_new - beta_end);

    Yh = std::move(Yh_new);
    Yf = std::move(Yf_new);
    beta_mid = beta_mid_new;
    beta_end = beta_end_new;

    if (!std::isfinite(delta) || y_norm(Yf.P, Yf.Q, 0.0) > 1e6 * scale) {
      throw Instability("exponential step produced a non-finite or blown-up state");
    }

    if (prev_delta > 1e-300) contraction = delta / prev_delta;
    prev_delta = delta;

    if (delta <= opts.picard_tol * scale) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    throw NonConvergence("exponential step: fixed point not reached in " +
                         std::to_string(opts.max_iter) + " sweeps");
  }

  StepResult res;
  res.Y = std::move(Yf);
  res.beta = planar ? beta0 : beta_end;
  res.Y_half = std::move(Yh);
  res.beta_half = planar ? beta0 : beta_mid;
  res.iterations = iterations;
  res.contraction = contraction;
  return res;
}

// Value of a field at s = 0 (sum of all mode coefficients).
cplx value_at_zero(const PeriodicField& f) {
  cplx s = 0.0;
  const int N = f.grid();
  for (int n = -N / 2; n < N / 2; ++n) s += f.mode(0, n);
  return s;
}

// Coefficients of the s = 0 frame equation at one time level.
struct StageData {
  cplx P0;
  double alpha0 = 0.0;
};

StageData stage_data(const YPair& Y) {
  StageData out;
  out.P0 = value_at_zero(Y.P);
  out.alpha0 = value_at_zero(compute_alpha(Y.P, Y.Q)).real();
  return out;
}

struct FrameDeriv {
  Eigen::Vector3d dt_v = Eigen::Vector3d::Zero();
  Eigen::Vector3d de1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d de2 = Eigen::Vector3d::Zero();
};

// du/dt = Re{conj(P(0)) v}, dv/dt = -P(0) u + i alpha(0) v with v = e1 + i e2.
FrameDeriv frame_rhs(const FrameTriple& f, const StageData& sd) {
  const Eigen::Vector3cd v = f.vtilde();
  const cplx i(0.0, 1.0);
  const Eigen::Vector3cd dv = -sd.P0 * f.t.cast<cplx>() + i * sd.alpha0 * v;
  FrameDeriv out;
  for (int c = 0; c < 3; ++c) {
    out.dt_v(c) = (std::conj(sd.P0) * v(c)).real();
    out.de1(c) = dv(c).real();
    out.de2(c) = dv(c).imag();
  }
  return out;
}

// One classical 4th-order step of the nonautonomous linear frame equation,
// with stage coefficients taken from the converged begin / mid / end states;
// the triple is re-orthonormalized afterwards.
FrameTriple frame_step(const FrameTriple& f0, double h, const StageData& s_begin,
                       const StageData& s_mid, const StageData& s_end) {
  auto advanced = [](const FrameTriple& f, double w, const FrameDeriv& d) {
    FrameTriple g;
    g.t = f.t + w * d.dt_v;
    g.e1 = f.e1 + w * d.de1;
    g.e2 = f.e2 + w * d.de2;
    return g;
  };
  const FrameDeriv k1 = frame_rhs(f0, s_begin);
  const FrameDeriv k2 = frame_rhs(advanced(f0, 0.5 * h, k1), s_mid);
  const FrameDeriv k3 = frame_rhs(advanced(f0, 0.5 * h, k2), s_mid);
  const FrameDeriv k4 = frame_rhs(advanced(f0, h, k3), s_end);

  FrameTriple out;
  out.t = f0.t + (h / 6.0) * (k1.dt_v + 2.0 * k2.dt_v + 2.0 * k3.dt_v + k4.dt_v);
  out.e1 = f0.e1 + (h / 6.0) * (k1.de1 + 2.0 * k2.de1 + 2.0 * k3.de1 + k4.de1);
  out.e2 = f0.e2 + (h / 6.0) * (k1.de2 + 2.0 * k2.de2 + 2.0 * k3.de2 + k4.de2);

  out.t.normalize();
  out.e1 -= out.e1.dot(out.t) * out.t;
  out.e1.normalize();
  out.e2 = out.t.cross(out.e1);
  return out;
}

}  // namespace

// ---- per-mode linear propagator --------------------------------------------

Eigen::Matrix2cd propagator_matrix(double n_plus_beta, double dt) {
  const double w = n_plus_beta;
  const double z = w * w * dt;
  const cplx i(0.0, 1.0);
  Eigen::Matrix2cd V;
  const double c = std::cos(z);
  V(0, 0) = c;
  V(0, 1) = i * (w * std::sin(z));
  V(1, 0) = i * (w * dt * sinc(z));
  V(1, 1) = c;
  return V;
}

ModePropagator propagator(int n, double beta, double dt) {
  ModePropagator out;
  out.n = n;
  out.beta = beta;
  out.dt = dt;
  out.matrix = propagator_matrix(n + beta, dt);
  return out;
}

double propagator_weighted_norm(const ModePropagator& prop) {
  const double wn = std::sqrt(1.0 + static_cast<double>(prop.n) * prop.n);
  Eigen::Matrix2cd M;
  M(0, 0) = prop.matrix(0, 0);
  M(0, 1) = prop.matrix(0, 1) / wn;
  M(1, 0) = prop.matrix(1, 0) * wn;
  M(1, 1) = prop.matrix(1, 1);
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(M);
  return svd.singularValues()(0);
}

YPair apply_propagator(const YPair& Y, double beta, double dt) {
  check_pair(Y, "apply_propagator");
  return apply_bank(propagator_bank(Y.P.grid(), beta, dt), Y);
}

YPair linear_part(const YPair& Y, double beta) {
  check_pair(Y, "linear_part");
  YPair out;
  out.P = cplx(-1.0) * differentiate(Y.Q, 3, beta);
  out.Q = differentiate(Y.P, 1, beta);
  return out;
}

// ---- nonlinearity ------------------------------------------------------------

NonlinearTerms nonlinearity_F(const YPair& Y, double beta, bool mutate_f3_sign) {
  check_pair(Y, "nonlinearity_F");
  const PeriodicField& P = Y.P;
  const PeriodicField& Q = Y.Q;
  const cplx i(0.0, 1.0);
  const int N = Q.grid();

  NonlinearTerms out;
  out.alpha = compute_alpha(P, Q);
  out.mu = solve_mu(P, Q, beta);

  out.F1.P = i * multiply(out.alpha, P);
  out.F1.Q = i * multiply(out.alpha, Q);

  const PeriodicField dQ = differentiate(Q, 1);
  const PeriodicField DQ = differentiate(Q, 1, beta);
  const PeriodicField dmu = differentiate(out.mu, 1);
  out.F2.P = cplx(2.0) * multiply(dmu, Q) + multiply(out.mu, DQ);
  out.F2.Q = PeriodicField::zero(N, 1, false);

  const PeriodicField qbar_dq = multiply(conj_field(Q), dQ);
  const PeriodicField qsq = abs_squared(Q);
  out.F3.P = cplx(-4.0) * multiply(real_part(qbar_dq), Q) +
             (-i) * multiply(imag_part(qbar_dq), Q) +
             (-i * beta) * multiply(qsq, Q);
  out.F3.Q = PeriodicField::zero(N, 1, false);
  if (mutate_f3_sign) out.F3.P *= cplx(-1.0);

  out.total.P = out.F1.P + out.F2.P + out.F3.P;
  out.total.Q = out.F1.Q + out.F2.Q + out.F3.Q;
  return out;
}

double monodromy_drift_B(const YPair& Y) {
  check_pair(Y, "monodromy_drift_B");
  const int N = Y.P.grid();
  cplx sum = 0.0;
  for (int n = -N / 2; n < N / 2; ++n) {
    sum += std::conj(Y.Q.mode(0, n)) * Y.P.mode(0, n);
  }
  return sum.imag();
}

// ---- steps --------------------------------------------------------------------

StepResult step_hasimoto(const YPair& Y0, double beta0, double dt, const StepOptions& opts) {
  return step_core(Y0, beta0, dt, opts, /*planar=*/false);
}

StepResult step_planar(const YPair& Y0, double dt, const StepOptions& opts) {
  check_pair(Y0, "step_planar");
  const double imag_size =
      std::max(sup_norm(imag_part(Y0.P)), sup_norm(imag_part(Y0.Q)));
  if (imag_size > 1e-10) {
    throw IncompatibleState("planar step requires a real transformed state");
  }
  YPair Yr;
  Yr.P = real_part(Y0.P);
  Yr.Q = real_part(Y0.Q);
  return step_core(Yr, 0.0, dt, opts, /*planar=*/true);
}

// ---- trajectories ---------------------------------------------------------------

int step_count(double T, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive and finite");
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("T must be non-negative and finite");
  const long long n = std::llround(T / dt);
  if (n > 1000000000LL) throw ConfigError("T/dt asks for more than 1e9 steps");
  if (std::abs(static_cast<double>(n) * dt - T) > 1e-9 * std::max(1.0, std::abs(T))) {
    throw ConfigError("T must be an integer multiple of dt");
  }
  return static_cast<int>(n);
}

Trajectory evolve_hasimoto(const HasimotoState& initial, const FrameTriple& frame0,
                           const Eigen::Vector3d& momentum, double T, double dt,
                           const EvolveOptions& opts) {
  YPair Y{initial.P, initial.Q};
  check_pair(Y, "evolve_hasimoto");
  const int steps = step_count(T, dt);
  if (opts.sample_stride < 1) throw ConfigError("sample_stride must be >= 1");

  {
    InverseResult probe = inverse_transform(initial, frame0, opts.refine);
    if (!(probe.periodicity_defect <= 1e-6)) {
      throw IncompatibleState("initial transformed state does not describe a closed loop");
    }
  }

  Trajectory out;
  double beta = initial.beta;
  FrameTriple frame = frame0;
  double t = 0.0;
  int last_iters = 0;
  double last_contraction = 0.0;

  auto record = [&](double time) {
    HasimotoState hs;
    hs.P = Y.P;
    hs.Q = Y.Q;
    hs.beta = beta;
    InverseResult inv = inverse_transform(hs, frame, opts.refine);
    CurveState cs;
    cs.u = std::move(inv.u0);
    cs.v = std::move(inv.u1);
    cs.momentum = momentum;

    DiagnosticsRow row;
    row.t = time;
    EnergyBreakdown eb;
    try {
      eb = energies(cs);
    } catch (const OpenLoop&) {
      eb = energies_periodic_part(cs);
    }
    row.kinetic = eb.kinetic;
    row.potential = eb.potential;
    row.total = eb.total;
    row.closure_defect = mean_vector(cs.u).norm();
    row.beta = beta;
    if (opts.diagnostics_e0) row.e0 = lowest_eigenvalue(curvature_from_state(Y.Q));
    row.picard_iters = last_iters;
    row.contraction = last_contraction;

    out.times.push_back(time);
    out.curve_states.push_back(std::move(cs));
    out.hasimoto_states.push_back(std::move(hs));
    out.diagnostics.push_back(row);
    out.renormalization_drift.push_back(0.0);
  };

  record(0.0);

  // One step of size h; when the fixed point fails to converge the interval
  // is split in half, a bounded number of times.
  std::function<void(double, int)> advance = [&](double h, int depth) {
    StepResult res;
    bool halve = false;
    try {
      res = step_hasimoto(Y, beta, h, opts.step);
    } catch (const NonConvergence&) {
      halve = true;
    } catch (const Instability&) {
      halve = true;
    }
    if (halve) {
      if (depth >= opts.max_halvings) {
        throw NonConvergence("exponential step failed at the minimum admissible dt");
      }
      advance(0.5 * h, depth + 1);
      advance(0.5 * h, depth + 1);
      return;
    }
    const StageData s_begin = stage_data(Y);
    const StageData s_mid = stage_data(res.Y_half);
    const StageData s_end = stage_data(res.Y);
    frame = frame_step(frame, h, s_begin, s_mid, s_end);
    Y = std::move(res.Y);
    beta = res.beta;
    last_iters = res.iterations;
    last_contraction = res.contraction;
  };

  for (int k = 1; k <= steps; ++k) {
    try {
      advance(dt, 0);
    } catch (const ElasticaError& err) {
      out.completed = false;
      out.failure_time = t;
      out.failure_reason = err.what();
      break;
    }
    t = dt * k;
    if (k % opts.sample_stride == 0 || k == steps) record(t);
  }
  return out;
}

// ---- direct integration -----------------------------------------------------

DirectRhs rhs_direct(const CurveState& state) {
  if (state.u.empty() || state.v.empty() || state.u.grid() != state.v.grid()) {
    throw ConfigError("rhs_direct: u and v must share a grid");
  }
  DirectRhs out;
  out.lambda = solve_tension(state);
  out.du_dt = state.v;
  out.dv_dt = cplx(-1.0) * differentiate(state.u, 4) +
              differentiate(multiply(out.lambda, state.u), 2);
  return out;
}

Trajectory evolve_direct(const CurveState& initial, double T, double dt,
                         const DirectOptions& opts) {
  if (initial.u.empty() || initial.v.empty() || initial.u.grid() != initial.v.grid()) {
    throw ConfigError("evolve_direct: u and v must share a grid");
  }
  const int N = initial.u.grid();
  const double top_freq = 0.5 * N;
  if (dt * top_freq * top_freq > opts.stability_limit) {
    throw ConfigError("evolve_direct: dt violates the explicit stability bound dt*(N/2)^2 <= " +
                      std::to_string(opts.stability_limit));
  }
  const int steps = step_count(T, dt);
  if (opts.sample_stride < 1) throw ConfigError("sample_stride must be >= 1");

  Trajectory out;
  CurveState state = initial;
  double t = 0.0;
  double drift = 0.0;
  const double vsup0 = sup_norm(initial.v);

  auto record = [&](double time) {
    DiagnosticsRow row;
    row.t = time;
    EnergyBreakdown eb;
    try {
      eb = energies(state);
    } catch (const OpenLoop&) {
      eb = energies_periodic_part(state);
    }
    row.kinetic = eb.kinetic;
    row.potential = eb.potential;
    row.total = eb.total;
    row.closure_defect = mean_vector(state.u).norm();
    row.beta = 0.0;
    if (opts.diagnostics_e0) row.e0 = lowest_eigenvalue(curvature(state.u));

    out.times.push_back(time);
    out.curve_states.push_back(state);
    out.diagnostics.push_back(row);
    out.renormalization_drift.push_back(drift);
  };

  record(0.0);

  const int M = 2 * N;  // projection grid
  for (int k = 1; k <= steps; ++k) {
    try {
      auto advanced = [&](double w, const DirectRhs& d) {
        CurveState s;
        s.u = state.u + cplx(w) * d.du_dt;
        s.v = state.v + cplx(w) * d.dv_dt;
        s.momentum = state.momentum;
        return s;
      };
      const DirectRhs k1 = rhs_direct(state);
      const DirectRhs k2 = rhs_direct(advanced(0.5 * dt, k1));
      const DirectRhs k3 = rhs_direct(advanced(0.5 * dt, k2));
      const DirectRhs k4 = rhs_direct(advanced(dt, k3));
      const cplx w(dt / 6.0);
      PeriodicField u_new =
          state.u + w * (k1.du_dt + cplx(2.0) * k2.du_dt + cplx(2.0) * k3.du_dt + k4.du_dt);
      PeriodicField v_new =
          state.v + w * (k1.dv_dt + cplx(2.0) * k2.dv_dt + cplx(2.0) * k3.dv_dt + k4.dv_dt);

      const CompatibilityReport pre = check_compatibility(u_new, v_new);
      drift = std::max(pre.unit_defect, pre.tangency_defect);
      if (!std::isfinite(drift)) throw Instability("direct step produced non-finite state");

      // Project back onto the constraint set: |u| = 1 pointwise on a fine
      // grid, then remove the tangential part of v against the new u.
      std::vector<Eigen::Vector3d> us = eval_vec3_real(u_new, M);
      std::vector<cplx> buf(static_cast<size_t>(3) * M);
      for (int j = 0; j < M; ++j) {
        const double r = us[static_cast<size_t>(j)].norm();
        if (!(r > 0.5)) throw Instability("tangent magnitude collapsed; state left the sphere");
        us[static_cast<size_t>(j)] /= r;
      }
      for (int c = 0; c < 3; ++c) {
        for (int j = 0; j < M; ++j) {
          buf[static_cast<size_t>(c) * M + j] = us[static_cast<size_t>(j)](c);
        }
      }
      PeriodicField u_p = truncate_from_samples(buf, M, N, 3, true);
      const PeriodicField tang = dot_field(u_p, v_new);
      PeriodicField v_p = v_new - multiply(tang, u_p);

      if (sup_norm(v_p) > opts.blowup_factor * std::max(1.0, vsup0)) {
        throw Instability("direct step velocity blow-up");
      }

      state.u = std::move(u_p);
      state.v = std::move(v_p);
    } catch (const ElasticaError& err) {
      out.completed = false;
      out.failure_time = t;
      out.failure_reason = err.what();
      break;
    }
    t = dt * k;
    if (k % opts.sample_stride == 0 || k == steps) record(t);
  }
  return out;
}

}  // namespace elastica
