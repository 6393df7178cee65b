#include "elastica/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "elastica/dynamics.hpp"
#include "elastica/field.hpp"
#include "elastica/geometry.hpp"
#include "elastica/hasimoto.hpp"
#include "elastica/scenarios.hpp"
#include "elastica/tension.hpp"

namespace elastica {
namespace {

constexpr double kPi = kTwoPi / 2.0;

double sup_imag(const PeriodicField& f) { return sup_norm(imag_part(f)); }

// sup |lambda + 1| over the curve: the tension of every rest shape with unit
// curvature is the constant -1.
double tension_offset_sup(const CurveState& state) {
  PeriodicField lam = solve_tension(state);
  lam.set_mode(0, 0, lam.mode(0, 0) + 1.0);
  return sup_norm(lam);
}

double max_compat_defect(const Trajectory& traj) {
  double worst = 0.0;
  for (const CurveState& st : traj.curve_states) {
    const CompatibilityReport rep = check_compatibility(st.u, st.v);
    worst = std::max({worst, rep.unit_defect, rep.tangency_defect});
  }
  return worst;
}

double relative_energy_drift(const Trajectory& traj) {
  if (traj.diagnostics.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double e0 = traj.diagnostics.front().total;
  const double scale = std::max(1.0, std::abs(e0));
  double worst = 0.0;
  for (const DiagnosticsRow& row : traj.diagnostics)
    worst = std::max(worst, std::abs(row.total - e0) / scale);
  return worst;
}

double max_closure_defect(const Trajectory& traj) {
  double worst = 0.0;
  for (const DiagnosticsRow& row : traj.diagnostics)
    worst = std::max(worst, row.closure_defect);
  return worst;
}

void add_check(std::vector<CheckResult>& out, std::string name, double measured,
               double threshold, bool pass, std::string details) {
  out.push_back({std::move(name), pass, measured, threshold, std::move(details)});
}

// Pass iff measured <= threshold (and finite).
void add_upper(std::vector<CheckResult>& out, std::string name, double measured,
               double threshold, std::string details = "") {
  const bool pass = std::isfinite(measured) && measured <= threshold;
  add_check(out, std::move(name), measured, threshold, pass, std::move(details));
}

// Pass iff measured >= threshold (and finite).
void add_lower(std::vector<CheckResult>& out, std::string name, double measured,
               double threshold, std::string details = "") {
  const bool pass = std::isfinite(measured) && measured >= threshold;
  std::string info = details.empty() ? std::string("lower bound")
                                     : details + "; lower bound";
  add_check(out, std::move(name), measured, threshold, pass, std::move(info));
}

// Mark the most recent check failed when an evolution did not run to the end.
void require_completed(std::vector<CheckResult>& out, const Trajectory& traj) {
  if (traj.completed) return;
  out.back().pass = false;
  if (!out.back().details.empty()) out.back().details += "; ";
  out.back().details += "aborted at t=" + std::to_string(traj.failure_time) + ": " +
                        traj.failure_reason;
}

// ---- 1: the circle is stationary on both solver paths ------------------------

void check_circle_equilibrium(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const CurveState circle = make_circle(opts.N);

  const ForwardResult fw = forward_transform(circle.u, circle.v);
  EvolveOptions eh;
  eh.sample_stride = 5;
  eh.diagnostics_e0 = false;
  // The tension comparison differentiates the sampled states twice, which
  // amplifies reconstruction noise by n^2; transport on a finer grid keeps
  // that noise away from the tension tolerance.
  eh.refine = 32;
  const Trajectory th = evolve_hasimoto(fw.state, fw.frame0, circle.momentum, 1.0, 1e-3, eh);

  DirectOptions ed;
  ed.sample_stride = 5;
  ed.diagnostics_e0 = false;
  const Trajectory td = evolve_direct(circle, 0.01, 1e-5, ed);

  double sup_h = 0.0, sup_d = 0.0, lam = 0.0;
  for (const CurveState& st : th.curve_states) {
    sup_h = std::max(sup_h, sup_distance(st.u, circle.u));
    lam = std::max(lam, tension_offset_sup(st));
  }
  for (const CurveState& st : td.curve_states) {
    sup_d = std::max(sup_d, sup_distance(st.u, circle.u));
    lam = std::max(lam, tension_offset_sup(st));
  }

  add_upper(out, "01.circle_stationary_transformed", sup_h, 1e-6, "T=1, dt=1e-3");
  require_completed(out, th);
  add_upper(out, "01.circle_stationary_direct", sup_d, 1e-6, "T=0.01, dt=1e-5");
  require_completed(out, td);
  add_upper(out, "01.circle_tension", lam, 1e-8, "sup |lambda + 1| on both paths");
}

// ---- 2: spectral lower bound over a random ensemble --------------------------

std::vector<PeriodicField> build_ensemble(const VerifyOptions& opts) {
  std::vector<PeriodicField> curves;
  curves.reserve(static_cast<std::size_t>(opts.ensemble_size));
  for (int i = 0; i < opts.ensemble_size; ++i)
    curves.push_back(make_random_closed_curve(
        opts.N, static_cast<unsigned long long>(i), 0.25, i % 5 == 4));
  return curves;
}

void check_spectral_bound(const VerifyOptions& opts,
                          const std::vector<PeriodicField>& ensemble,
                          std::vector<CheckResult>& out) {
  double min_e0 = std::numeric_limits<double>::infinity();
  int worst_seed = -1;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const double e0 = lowest_eigenvalue(curvature(ensemble[i]));
    if (e0 < min_e0) {
      min_e0 = e0;
      worst_seed = static_cast<int>(i);
    }
  }
  add_lower(out, "02.spectral_lower_bound", min_e0, 0.25 - 1e-6,
            std::to_string(ensemble.size()) + " random curves, min at seed " +
                std::to_string(worst_seed));

  const double e0_circle = lowest_eigenvalue(curvature(make_circle(opts.N).u));
  add_upper(out, "02.spectral_circle", std::abs(e0_circle - 1.0), 1e-10,
            "|e0 - 1| on the unit circle");

  add_upper(out, "02.resolvent_bound", 1.0 / min_e0, 4.0 + 1e-6,
            "largest inverse-operator norm over the ensemble");
}

// ---- 3: transform round trip --------------------------------------------------

void check_round_trip(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  double worst = 0.0;
  std::string tag = "n/a";
  for (int i = 0; i < opts.roundtrip_count; ++i) {
    const bool planar = i < opts.roundtrip_count / 2;
    const unsigned long long seed = 1000 + static_cast<unsigned long long>(i);
    const CurveState st = make_random_compatible(opts.N, seed, planar);
    const ForwardResult fw = forward_transform(st.u, st.v, 128);
    const InverseResult inv = inverse_transform(fw.state, fw.frame0, 128);
    const double err = std::max(sup_distance(inv.u0, st.u), sup_distance(inv.u1, st.v));
    if (err > worst) {
      worst = err;
      tag = std::string(planar ? "planar" : "3d") + " seed " + std::to_string(seed);
    }
  }
  add_upper(out, "03.transform_round_trip", worst, 1e-8,
            std::to_string(opts.roundtrip_count) + " random pairs, worst: " + tag);
}

// ---- 4: frame holonomy vs torsion mean ----------------------------------------

struct NamedCurve {
  std::string name;
  PeriodicField u;
};

std::vector<NamedCurve> named_unit_fields(int N) {
  std::vector<NamedCurve> list;
  list.push_back({"circle", make_circle(N).u});
  list.push_back({"latitude(pi/3)", make_latitude(N, kPi / 3.0).u});
  list.push_back({"latitude(2.0)", make_latitude(N, 2.0).u});
  list.push_back({"perturbed-planar", make_perturbed_circle(N, 0.01, 3, true).u});
  list.push_back({"perturbed-3d", make_perturbed_circle(N, 0.01, 2, false).u});
  for (int i = 0; i < 10; ++i) {
    // Narrow-band, gently tilted curves: the torsion route divides by kappa^2
    // and lives at the curve band times the frame spectrum, so this list
    // keeps curvature away from zero and leaves spectral headroom at the
    // smaller grid sizes.
    const unsigned long long seed = 3000 + static_cast<unsigned long long>(i);
    list.push_back({"random seed " + std::to_string(seed),
                    make_random_closed_curve(N, seed, 0.1, false, true)});
  }
  return list;
}

void check_monodromy(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const double psi = kPi / 3.0;
  const PeriodicField lat = make_latitude(opts.N, psi).u;
  const double transport = parallel_frame(lat, canonical_frame(lat).vtilde(), 64).beta_raw;
  const double torsion_mean = torsion(lat).monodromy;
  const double lat_err = std::max(mod1_distance(transport, std::cos(psi)),
                                  mod1_distance(torsion_mean, std::cos(psi)));
  add_upper(out, "04.latitude_monodromy", lat_err, 1e-6,
            "transport and torsion routes vs cos(psi), psi=pi/3");

  double worst = 0.0;
  std::string tag = "n/a";
  int skipped = 0;
  for (const NamedCurve& sc : named_unit_fields(opts.N)) {
    const double beta_t =
        parallel_frame(sc.u, canonical_frame(sc.u).vtilde(), 64).beta_raw;
    double beta_k = 0.0;
    try {
      // The torsion route divides by kappa^2, so its spectral tail grows as
      // the curvature minimum shrinks; below ~0.4 the comparison is no longer
      // resolvable at the smaller grid sizes and the curve is treated as
      // degenerate for this check.
      beta_k = torsion(sc.u, 0.4).monodromy;
    } catch (const DegenerateCurvature&) {
      ++skipped;
      continue;
    }
    const double err = mod1_distance(beta_t, beta_k);
    if (err > worst) {
      worst = err;
      tag = sc.name;
    }
  }
  std::string info = "worst: " + tag;
  if (skipped > 0)
    info += " (" + std::to_string(skipped) + " curvature-degenerate skipped)";
  add_upper(out, "04.monodromy_route_agreement", worst, 1e-6, info);
}

// ---- 5: gauge invariance of the observables -----------------------------------

void check_gauge_invariance(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  std::vector<std::pair<std::string, HasimotoState>> states;
  {
    const CurveState p3 = make_perturbed_circle(opts.N, 0.01, 2, false);
    states.emplace_back("perturbed-3d", forward_transform(p3.u, p3.v).state);
    const CurveState lat = make_latitude(opts.N, kPi / 3.0);
    states.emplace_back("latitude(pi/3)", forward_transform(lat.u, lat.v).state);
  }
  const double s0s[] = {0.0, kPi / 3.0, kPi};
  double worst = 0.0;
  std::string tag = "n/a";
  for (const auto& [name, base] : states) {
    const PeriodicField kappa0 = curvature_from_state(base.Q);
    const PeriodicField theta0 = torsion_from_state(base.Q, base.beta).theta;
    const PeriodicField mu0 = solve_mu(base.P, base.Q, base.beta);
    for (int k = -2; k <= 2; ++k) {
      for (const double s0 : s0s) {
        const HasimotoState sh = gauge_shift(base, k, s0);
        const double err = std::max(
            {sup_distance(curvature_from_state(sh.Q), kappa0),
             sup_distance(torsion_from_state(sh.Q, sh.beta).theta, theta0),
             sup_distance(solve_mu(sh.P, sh.Q, sh.beta), mu0)});
        if (err > worst) {
          worst = err;
          tag = name + ", k=" + std::to_string(k) + ", s0=" + std::to_string(s0);
        }
      }
    }
  }
  add_upper(out, "05.gauge_invariance", worst, 1e-10,
            "curvature/torsion/tension shift, worst: " + tag);
}

// ---- 6: conservation on a perturbed circle -------------------------------------

void check_conservation(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const CurveState init = make_perturbed_circle(opts.N, 0.01, 3, true);
  const ForwardResult fw = forward_transform(init.u, init.v);
  EvolveOptions eo;
  eo.sample_stride = 1;
  eo.diagnostics_e0 = false;
  eo.step.mutate_f3_sign = opts.mutate_f3;
  const Trajectory tr = evolve_hasimoto(fw.state, fw.frame0, init.momentum, 0.1, 1e-3, eo);
  const std::string note = opts.mutate_f3 ? "cubic-term sign flipped" : "eps=0.01, m=3";

  add_upper(out, "06.energy_drift", relative_energy_drift(tr), 1e-4, note);
  require_completed(out, tr);
  add_upper(out, "06.compatibility_defects", max_compat_defect(tr), 1e-6, note);
  require_completed(out, tr);
  add_upper(out, "06.closure_defect", max_closure_defect(tr), 1e-6, note);
  require_completed(out, tr);
}

// ---- 7: the two solver paths agree and converge together ------------------------

void check_dual_solver(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const double T = 0.05;
  const CurveState init = make_perturbed_circle(opts.N, 0.01, 3, true);
  const ForwardResult fw = forward_transform(init.u, init.v, 32);

  const auto run_transformed = [&](double dt) {
    EvolveOptions eo;
    eo.refine = 32;
    eo.sample_stride = step_count(T, dt);
    eo.diagnostics_e0 = false;
    return evolve_hasimoto(fw.state, fw.frame0, init.momentum, T, dt, eo);
  };
  const auto run_direct = [&](double dt) {
    DirectOptions eo;
    eo.sample_stride = step_count(T, dt);
    eo.diagnostics_e0 = false;
    return evolve_direct(init, T, dt, eo);
  };

  const Trajectory h_coarse = run_transformed(0.0125);
  const Trajectory h_fine = run_transformed(0.00625);
  const Trajectory d_coarse = run_direct(1e-5);
  const Trajectory d_fine = run_direct(5e-6);
  const bool all_done = h_coarse.completed && h_fine.completed && d_coarse.completed &&
                        d_fine.completed;

  const double coarse =
      sup_distance(h_coarse.curve_states.back().u, d_coarse.curve_states.back().u);
  const double fine =
      sup_distance(h_fine.curve_states.back().u, d_fine.curve_states.back().u);

  add_upper(out, "07.dual_solver_agreement", coarse, 1e-3, "sup distance at T=0.05");
  out.back().pass = out.back().pass && all_done;
  add_lower(out, "07.dual_solver_refinement", coarse / std::max(fine, 1e-14), 4.0,
            "discrepancy shrink factor after halving both step sizes");
  out.back().pass = out.back().pass && all_done;
}

// ---- 8: mode propagator vs matrix-exponential oracle ----------------------------

void check_propagator(const VerifyOptions&, std::vector<CheckResult>& out) {
  const double betas[] = {0.0, 0.5, -0.5, 0.49, -0.49};
  const double dts[] = {1e-3, 1e-2};
  double worst_oracle = 0.0, worst_semi = 0.0, worst_ratio = 0.0;
  char tag_oracle[64] = "n/a";
  char tag_norm[64] = "n/a";
  for (int n = -32; n <= 32; ++n) {
    for (const double beta : betas) {
      const double w = n + beta;
      for (const double dt : dts) {
        Eigen::Matrix2cd gen;
        const cplx iw(0.0, w);
        gen << cplx(0.0, 0.0), iw * (w * w), iw, cplx(0.0, 0.0);
        const Eigen::Matrix2cd closed = propagator_matrix(w, dt);

        const double diff = (closed - expm_2x2(gen * dt)).cwiseAbs().maxCoeff();
        if (diff > worst_oracle) {
          worst_oracle = diff;
          std::snprintf(tag_oracle, sizeof(tag_oracle), "n=%d beta=%.2f dt=%g", n,
                        beta, dt);
        }

        const Eigen::Matrix2cd half = propagator_matrix(w, dt / 2.0);
        const double semi = std::max(
            (half * half - closed).cwiseAbs().maxCoeff(),
            (closed * closed - propagator_matrix(w, 2.0 * dt)).cwiseAbs().maxCoeff());
        worst_semi = std::max(worst_semi, semi);

        const double sigma = propagator_weighted_norm(propagator(n, beta, dt));
        double bound = 1.0;
        if (std::abs(w) > 1e-8) {
          const double rho = std::sqrt(1.0 + static_cast<double>(n) * n) / std::abs(w);
          bound = std::max(rho, 1.0 / rho);
        }
        if (sigma / bound > worst_ratio) {
          worst_ratio = sigma / bound;
          std::snprintf(tag_norm, sizeof(tag_norm), "n=%d beta=%.2f dt=%g", n, beta,
                        dt);
        }
      }
    }
  }
  add_upper(out, "08.propagator_oracle", worst_oracle, 1e-12,
            std::string("|n|<=32, worst: ") + tag_oracle);
  add_upper(out, "08.propagator_semigroup", worst_semi, 1e-12,
            "V(dt/2)^2 = V(dt) and V(dt)^2 = V(2 dt)");
  add_upper(out, "08.propagator_norm_bound", worst_ratio, 1.0 + 1e-9,
            std::string("weighted norm / max(rho, 1/rho), worst: ") + tag_norm);
}

// ---- 9: frame-compatibility identity over the ensemble --------------------------

void check_bianchi(const VerifyOptions& opts, const std::vector<PeriodicField>& ensemble,
                   std::vector<CheckResult>& out) {
  double worst = 0.0;
  std::string tag = "n/a";
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    const double r = bianchi_residual(ensemble[i]).sup;
    if (r > worst) {
      worst = r;
      tag = "random seed " + std::to_string(i);
    }
  }
  for (const NamedCurve& sc : named_unit_fields(opts.N)) {
    const double r = bianchi_residual(sc.u).sup;
    if (r > worst) {
      worst = r;
      tag = sc.name;
    }
  }
  add_upper(out, "09.bianchi_identity", worst, 1e-6, "worst: " + tag);
}

// ---- 10: the general stepper preserves planar (real) data -----------------------

void check_planar_consistency(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const CurveState init = make_perturbed_circle(opts.N, 0.01, 3, true);
  const ForwardResult fw = forward_transform(init.u, init.v);

  YPair y3{fw.state.P, fw.state.Q};
  double beta = fw.state.beta;
  YPair ypl{real_part(fw.state.P), real_part(fw.state.Q)};

  StepOptions so;
  so.picard_tol = 1e-13;  // keep both iterations on the same sweep schedule

  double worst_imag = std::max({sup_imag(y3.P), sup_imag(y3.Q), std::abs(beta)});
  double worst_match =
      std::max(sup_distance(y3.P, ypl.P), sup_distance(y3.Q, ypl.Q));
  for (int k = 0; k < 100; ++k) {
    const StepResult r3 = step_hasimoto(y3, beta, 1e-3, so);
    const StepResult rp = step_planar(ypl, 1e-3, so);
    y3 = r3.Y;
    beta = r3.beta;
    ypl = rp.Y;
    worst_imag = std::max({worst_imag, sup_imag(y3.P), sup_imag(y3.Q)});
    worst_match = std::max(
        {worst_match, sup_distance(y3.P, ypl.P), sup_distance(y3.Q, ypl.Q)});
  }
  add_upper(out, "10.planar_real_persistence", worst_imag, 1e-10,
            "imaginary residue over 100 steps of the general stepper");
  add_upper(out, "10.planar_stepper_match", worst_match, 1e-12,
            "general vs dedicated planar stepper over 100 steps");
}

// ---- 11: latitude end-to-end gap grows linearly ---------------------------------

void check_linear_growth(const VerifyOptions& opts, std::vector<CheckResult>& out) {
  const double psi = kPi / 3.0;
  const CurveState init = make_latitude_drift(opts.N, psi);
  DirectOptions eo;
  eo.sample_stride = 10;
  eo.diagnostics_e0 = false;
  const Trajectory tr = evolve_direct(init, 0.1, 1e-4, eo);

  const Eigen::Vector3d slope(0.0, 0.0, std::cos(psi));
  double worst = 0.0;
  for (std::size_t i = 0; i < tr.curve_states.size(); ++i) {
    const PositionData pos =
        reconstruct_position(tr.curve_states[i].u, Eigen::Vector3d::Zero());
    const Eigen::Vector3d gap = kTwoPi * pos.closure_defect;
    const Eigen::Vector3d predicted = kTwoPi * (1.0 + tr.times[i]) * slope;
    worst = std::max(worst, (gap - predicted).norm() / predicted.norm());
  }
  add_upper(out, "11.latitude_gap_growth", worst, 1e-4,
            "end-to-end displacement vs (0, 0, cos(psi)) * (1 + t)");
  require_completed(out, tr);
}

template <typename Fn>
void guarded(std::vector<CheckResult>& out, const char* label, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    add_check(out, label, std::numeric_limits<double>::quiet_NaN(), 0.0, false,
              std::string("exception: ") + e.what());
  }
}

}  // namespace

Eigen::Matrix2cd expm_2x2(const Eigen::Matrix2cd& A) {
  using C = std::complex<long double>;
  C m[4] = {C(A(0, 0)), C(A(0, 1)), C(A(1, 0)), C(A(1, 1))};

  const long double norm = std::max(std::abs(m[0]) + std::abs(m[1]),
                                    std::abs(m[2]) + std::abs(m[3]));
  int squarings = 0;
  for (long double n = norm; n > 0.25L; n *= 0.5L) ++squarings;
  const long double scale = std::ldexp(1.0L, -squarings);
  for (C& v : m) v *= scale;

  C term[4] = {C(1.0L), C(0.0L), C(0.0L), C(1.0L)};
  C sum[4] = {C(1.0L), C(0.0L), C(0.0L), C(1.0L)};
  for (int k = 1; k <= 32; ++k) {
    const C t0 = term[0] * m[0] + term[1] * m[2];
    const C t1 = term[0] * m[1] + term[1] * m[3];
    const C t2 = term[2] * m[0] + term[3] * m[2];
    const C t3 = term[2] * m[1] + term[3] * m[3];
    const long double inv = 1.0L / static_cast<long double>(k);
    term[0] = t0 * inv;
    term[1] = t1 * inv;
    term[2] = t2 * inv;
    term[3] = t3 * inv;
    sum[0] += term[0];
    sum[1] += term[1];
    sum[2] += term[2];
    sum[3] += term[3];
  }
  for (int k = 0; k < squarings; ++k) {
    const C s0 = sum[0] * sum[0] + sum[1] * sum[2];
    const C s1 = sum[0] * sum[1] + sum[1] * sum[3];
    const C s2 = sum[2] * sum[0] + sum[3] * sum[2];
    const C s3 = sum[2] * sum[1] + sum[3] * sum[3];
    sum[0] = s0;
    sum[1] = s1;
    sum[2] = s2;
    sum[3] = s3;
  }

  Eigen::Matrix2cd out;
  out << cplx(static_cast<double>(sum[0].real()), static_cast<double>(sum[0].imag())),
      cplx(static_cast<double>(sum[1].real()), static_cast<double>(sum[1].imag())),
      cplx(static_cast<double>(sum[2].real()), static_cast<double>(sum[2].imag())),
      cplx(static_cast<double>(sum[3].real()), static_cast<double>(sum[3].imag()));
  return out;
}

std::vector<CheckResult> verify_all(const VerifyOptions& opts) {
  if (opts.N < 8 || (opts.N & (opts.N - 1)) != 0)
    throw ConfigError("verify: N must be a power of two, at least 8");
  if (opts.only < 0 || opts.only > 11)
    throw ConfigError("verify: criterion selector must be 0 (all) or 1..11");
  if (opts.ensemble_size < 1 || opts.roundtrip_count < 1)
    throw ConfigError("verify: ensemble sizes must be positive");

  std::vector<CheckResult> out;
  const auto want = [&](int k) { return opts.only == 0 || opts.only == k; };

  std::vector<PeriodicField> ensemble;
  if (want(2) || want(9)) ensemble = build_ensemble(opts);

  if (want(1))
    guarded(out, "01.circle_equilibrium", [&] { check_circle_equilibrium(opts, out); });
  if (want(2))
    guarded(out, "02.spectral_bound", [&] { check_spectral_bound(opts, ensemble, out); });
  if (want(3))
    guarded(out, "03.transform_round_trip", [&] { check_round_trip(opts, out); });
  if (want(4)) guarded(out, "04.monodromy", [&] { check_monodromy(opts, out); });
  if (want(5))
    guarded(out, "05.gauge_invariance", [&] { check_gauge_invariance(opts, out); });
  if (want(6)) guarded(out, "06.conservation", [&] { check_conservation(opts, out); });
  if (want(7)) guarded(out, "07.dual_solver", [&] { check_dual_solver(opts, out); });
  if (want(8)) guarded(out, "08.propagator", [&] { check_propagator(opts, out); });
  if (want(9)) guarded(out, "09.bianchi", [&] { check_bianchi(opts, ensemble, out); });
  if (want(10))
    guarded(out, "10.planar_consistency", [&] { check_planar_consistency(opts, out); });
  if (want(11))
    guarded(out, "11.linear_growth", [&] { check_linear_growth(opts, out); });
  return out;
}

int verify_and_report(const VerifyOptions& opts, const std::string& out_dir) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<CheckResult> results = verify_all(opts);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int failures = 0;
  for (const CheckResult& r : results) {
    if (!r.pass) ++failures;
    std::printf("[%s] %-34s measured=%-13.5g threshold=%-10.4g %s\n",
                r.pass ? "PASS" : "FAIL", r.name.c_str(), r.measured, r.tolerance,
                r.details.c_str());
  }
  std::printf("%zu/%zu checks passed in %.1f s\n", results.size() - failures,
              results.size(), elapsed);

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    nlohmann::ordered_json doc;
    doc["N"] = opts.N;
    doc["mutate_f3"] = opts.mutate_f3;
    doc["elapsed_seconds"] = elapsed;
    doc["failures"] = failures;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const CheckResult& r : results)
      list.push_back({{"name", r.name},
                      {"pass", r.pass},
                      {"measured", r.measured},
                      {"threshold", r.tolerance},
                      {"details", r.details}});
    doc["checks"] = list;
    std::ofstream file(std::filesystem::path(out_dir) / "verify_report.json");
    file << doc.dump(1, '\t') << "\n";
  }
  return failures;
}

}  // namespace elastica
