#pragma once

#include <Eigen/Dense>

#include "elastica/field.hpp"
#include "elastica/geometry.hpp"

namespace elastica {

// Transformed curve state: complex pair (P, Q) plus the monodromy angle beta
// (in units of full turns). Q plays the role of a complex curvature, P of its
// time-derivative partner; |Q| equals the curvature of the underlying curve.
struct HasimotoState {
  PeriodicField P;
  PeriodicField Q;
  double beta = 0.0;
};

// Orthonormal, positively oriented triple at a single point: t is the curve
// tangent, (e1, e2) span the normal plane.
struct FrameTriple {
  Eigen::Vector3d t = Eigen::Vector3d::UnitX();
  Eigen::Vector3d e1 = Eigen::Vector3d::UnitY();
  Eigen::Vector3d e2 = Eigen::Vector3d::UnitZ();

  Eigen::Vector3cd vtilde() const { return e1.cast<cplx>() + cplx(0.0, 1.0) * e2.cast<cplx>(); }
};

// Parallel-transported complex normal frame along the loop, sampled on the
// fine grid s_j = 2*pi*j/fine_grid. The frame does not close after one loop;
// vtilde(2*pi) = exp(2*pi*i*beta_raw) * vtilde(0) defines the holonomy angle.
struct TransportedFrame {
  std::vector<Eigen::Vector3cd> vtilde;
  int fine_grid = 0;
  double beta_raw = 0.0;           // branch [-1/2, 1/2)
  double orthonormality_drift = 0.0;  // worst per-step constraint defect seen
};

struct ForwardResult {
  HasimotoState state;
  FrameTriple frame0;  // frame used at s = 0 (needed to invert the transform)
};

struct InverseResult {
  PeriodicField u0;
  PeriodicField u1;
  // |frame(2*pi) - frame(0)| of the integrated spatial system; large values
  // flag (P, Q, beta) data that do not come from any closed frame.
  double periodicity_defect = 0.0;
};

// Default fine-grid factor for the transport / reconstruction integrators.
inline constexpr int kFrameRefine = 16;

// Deterministic orthonormal frame at s = 0: e1 along the normal component of
// du/ds when the curvature there is above kappa_min, otherwise along the
// first coordinate axis with a well-defined projection.
FrameTriple canonical_frame(const PeriodicField& u0, double kappa_min = kKappaMin);

// Integrate d(vtilde)/ds = -(vtilde . du/ds) u along one loop from the given
// seed (must be an orthonormal complement of u0(0)). Throws IncompatibleState
// for a bad seed.
TransportedFrame parallel_frame(const PeriodicField& u0, const Eigen::Vector3cd& seed,
                                int refine = kFrameRefine);

// (u0, u1) -> (P, Q, beta) using the canonical frame at s = 0:
//   Q(s) = e^{-i s beta} vtilde(s) . du0(s),  P(s) = e^{-i s beta} vtilde(s) . u1(s).
// Inputs must pass check_compatibility within compat_tol.
ForwardResult forward_transform(const PeriodicField& u0, const PeriodicField& u1,
                                int refine = kFrameRefine, double compat_tol = 1e-6);

// Integrate the spatial system du/ds = Re{conj(Q) v}, dv/ds = -Q u - i beta v
// from the given frame and read off u0 = u, u1 = Re{conj(P) v}. The
// periodicity defect is reported, not thrown; compatible states close to
// round-off.
InverseResult inverse_transform(const HasimotoState& state, const FrameTriple& frame0,
                                int refine = kFrameRefine);

// Zero-mean antiderivative of the mean-free part of Im{P conj(Q)}.
PeriodicField compute_alpha(const PeriodicField& P, const PeriodicField& Q);

// (P, Q, beta) -> (e^{i(s0 + k s)} P, e^{i(s0 + k s)} Q, beta - k). Physical
// observables (curvature, torsion, mu) are unchanged.
HasimotoState gauge_shift(const HasimotoState& state, int k, double s0);

// Curvature |Q| and torsion Im{conj(Q) dQ/ds}/|Q|^2 + beta read directly from
// the transformed variables.
PeriodicField curvature_from_state(const PeriodicField& Q);
TorsionData torsion_from_state(const PeriodicField& Q, double beta,
                               double kappa_min = kKappaMin);

// Distance between two angles in units of turns, measured on the circle R/Z.
double mod1_distance(double a, double b);

}  // namespace elastica
