#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "elastica/field.hpp"
#include "elastica/geometry.hpp"
#include "elastica/hasimoto.hpp"

namespace elastica {

// ---- per-mode linear propagator --------------------------------------------

// Closed-form exponential of the linear part on mode n with frozen shift beta:
// with w = n + beta and z = w^2 * dt,
//   V = [[cos z,          i w sin z],
//        [i w dt sinc z,  cos z    ]],
// which tends to the identity as w -> 0.
struct ModePropagator {
  int n = 0;
  double beta = 0.0;
  double dt = 0.0;
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
};

ModePropagator propagator(int n, double beta, double dt);
Eigen::Matrix2cd propagator_matrix(double n_plus_beta, double dt);

// Operator norm of the propagator in the weighted mode metric
// |(a,b)|_n^2 = |a|^2 + (1+n^2) |b|^2.
double propagator_weighted_norm(const ModePropagator& prop);

// ---- transformed evolution ---------------------------------------------------

struct YPair {
  PeriodicField P;
  PeriodicField Q;
};

YPair apply_propagator(const YPair& Y, double beta, double dt);

// Linear part G(Y) = (-(d/ds + i beta)^3 Q, (d/ds + i beta) P).
YPair linear_part(const YPair& Y, double beta);

// The three nonlinear forcing terms:
//   F1 = i alpha (P, Q)
//   F2 = (2 (d mu/ds) Q + mu (d/ds + i beta) Q, 0)
//   F3 = (-4 Re{conj(Q) dQ/ds} Q - i Im{conj(Q) dQ/ds} Q - i beta |Q|^2 Q, 0)
// mutate_f3_sign flips the sign of F3 (fault-injection hook used by the
// sensitivity checks; never enabled in normal runs).
struct NonlinearTerms {
  YPair F1, F2, F3, total;
  PeriodicField alpha;
  PeriodicField mu;
};

NonlinearTerms nonlinearity_F(const YPair& Y, double beta, bool mutate_f3_sign = false);

// Drift rate of the monodromy: the loop mean of Im{conj(Q) P}.
double monodromy_drift_B(const YPair& Y);

// ---- one exponential-integrator step ----------------------------------------

enum class DuhamelQuadrature { midpoint, trapezoid, simpson };

struct StepOptions {
  double picard_tol = 1e-10;  // fixed-point tolerance in the Y^0 norm
  int max_iter = 25;
  DuhamelQuadrature quadrature = DuhamelQuadrature::simpson;
  bool mutate_f3_sign = false;
};

struct StepResult {
  YPair Y;            // state at t + dt
  double beta = 0.0;  // monodromy at t + dt
  YPair Y_half;       // converged midpoint state (used by frame co-evolution)
  double beta_half = 0.0;
  int iterations = 0;
  double contraction = 0.0;  // last ratio of successive Picard differences
};

// Evolve (Y, beta) over [t, t + dt] as the fixed point of the discretized
// integral form: the propagator is frozen at the midpoint beta estimate,
// the forcing integral uses the selected quadrature (Simpson by default,
// with a trapezoid half-step stage), and beta is updated from the quadrature
// of B between sweeps. Throws NonConvergence past max_iter and Instability
// on non-finite values.
StepResult step_hasimoto(const YPair& Y0, double beta0, double dt,
                         const StepOptions& opts = {});

// Same step with beta = 0 and all imaginary parts pinned to zero; inputs must
// be real within 1e-10.
StepResult step_planar(const YPair& Y0, double dt, const StepOptions& opts = {});

// ---- trajectories ------------------------------------------------------------

struct DiagnosticsRow {
  double t = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
  double closure_defect = 0.0;  // |loop mean of u|
  double beta = 0.0;
  double e0 = 0.0;  // lowest eigenvalue of -d2/ds2 + kappa^2
  int picard_iters = 0;
  double contraction = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<CurveState> curve_states;        // always populated
  std::vector<HasimotoState> hasimoto_states;  // empty on the direct path
  std::vector<DiagnosticsRow> diagnostics;
  std::vector<double> renormalization_drift;  // direct path: pre-projection defect
  bool completed = true;
  double failure_time = 0.0;
  std::string failure_reason;
};

struct EvolveOptions {
  StepOptions step;
  int refine = kFrameRefine;  // fine-grid factor for frame transport
  int max_halvings = 4;       // local dt halvings before giving up on a step
  int sample_stride = 1;      // record every k-th step
  bool diagnostics_e0 = true;
};

// March the transformed state with the exponential stepper while co-evolving
// the s = 0 frame (du/dt = Re{conj(P) v}, dv/dt = -P u + i alpha v), and
// reconstruct the curve at every recorded sample. The initial state must
// invert with a periodicity defect below 1e-6.
Trajectory evolve_hasimoto(const HasimotoState& initial, const FrameTriple& frame0,
                           const Eigen::Vector3d& momentum, double T, double dt,
                           const EvolveOptions& opts = {});

// ---- direct integration of the tangent wave equation -------------------------

struct DirectRhs {
  PeriodicField du_dt;  // = v
  PeriodicField dv_dt;  // = -d4u/ds4 + d2(lambda u)/ds2
  PeriodicField lambda;
};

DirectRhs rhs_direct(const CurveState& state);

struct DirectOptions {
  double stability_limit = 2.5;  // require dt * (N/2)^2 <= this
  double blowup_factor = 10.0;   // abort when ||u|| grows past this multiple
  int sample_stride = 1;
  bool diagnostics_e0 = true;
};

// Classical 4th-order explicit integration of (du/dt, dv/dt) with per-step
// renormalization |u| = 1 and re-orthogonalization u.v = 0; the constraint
// drift before each projection is recorded per sample.
Trajectory evolve_direct(const CurveState& initial, double T, double dt,
                         const DirectOptions& opts = {});

// Number of uniform steps covering T; throws ConfigError unless dt divides T
// within round-off.
int step_count(double T, double dt);

}  // namespace elastica
