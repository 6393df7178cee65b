#pragma once

#include <Eigen/Dense>

#include "elastica/field.hpp"

namespace elastica {

// State of an inextensible closed curve at tangent level: u is the unit
// tangent, v = du/dt, and momentum is the loop mean of the position velocity
// (the constant the tangent-level data cannot see).
struct CurveState {
  PeriodicField u;
  PeriodicField v;
  Eigen::Vector3d momentum = Eigen::Vector3d::Zero();
};

struct FrenetData {
  PeriodicField kappa;  // |du/ds|, scalar
  PeriodicField theta;  // torsion, scalar
  PeriodicField n;      // principal normal
  PeriodicField b;      // binormal u x n
  double frame_residual = 0.0;
};

struct TorsionData {
  PeriodicField theta;
  double monodromy = 0.0;  // mean of theta over the loop
};

struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double total = 0.0;
};

struct BianchiData {
  PeriodicField residual;
  double sup = 0.0;
};

// Position is x(s) = periodic_part(s) + defect * s: the secular term is
// carried separately so the periodic part stays representable in modes.
struct PositionData {
  PeriodicField periodic_part;
  Eigen::Vector3d closure_defect = Eigen::Vector3d::Zero();
};

struct CompatibilityReport {
  double unit_defect = 0.0;      // max | |u0| - 1 |
  double tangency_defect = 0.0;  // max | u0 . u1 |
};

inline constexpr double kKappaMin = 1e-6;

// kappa(s) = |du/ds|, evaluated pointwise on the padded grid and truncated.
PeriodicField curvature(const PeriodicField& u);

// theta = u . (du x d2u) / |du|^2 plus its loop mean (the monodromy).
// Throws DegenerateCurvature if min kappa < kappa_min.
TorsionData torsion(const PeriodicField& u, double kappa_min = kKappaMin);

// Serret-Frenet frame n = du/kappa, b = u x n; frame_residual is the sup-norm
// of d/ds(n+ib) + kappa*u + i*theta*(n+ib).
FrenetData frenet_frame(const PeriodicField& u, double kappa_min = kKappaMin);

// Kinetic + bending energy, both normalized by the loop measure ds/2pi.
// Kinetic energy integrates |dx/dt|^2 with dx/dt recovered as
// momentum + (zero-mean antiderivative of v); throws OpenLoop when v has a
// nonzero mean (dx/dt would not be periodic).
EnergyBreakdown energies(const CurveState& state, double closure_tol = 1e-8);

// Same breakdown but using only the zero-mean part of v, for logging along
// trajectories whose loops translate (nonzero mean v).
EnergyBreakdown energies_periodic_part(const CurveState& state);

// Residual of the pointwise identity 3|d2u|^2 + 4 du.d3u + u.d4u = 0,
// valid for any |u| = 1 field.
BianchiData bianchi_residual(const PeriodicField& u);

// Antiderivative of the tangent: x(s) = x0 + integral of u; the mean of u is
// returned as the closure defect (zero iff the loop closes).
PositionData reconstruct_position(const PeriodicField& u, const Eigen::Vector3d& x0);

// Max deviations of |u0| from 1 and of u0.u1 from 0 on the padded grid.
CompatibilityReport check_compatibility(const PeriodicField& u0, const PeriodicField& u1);

}  // namespace elastica
