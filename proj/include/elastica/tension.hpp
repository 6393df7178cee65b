#pragma once

#include <Eigen/Dense>

#include "elastica/field.hpp"
#include "elastica/geometry.hpp"

namespace elastica {

// Mode-basis matrix of -d^2/ds^2 + kappa^2. Rows/columns are indexed by wave
// number in ascending order, n = a - N/2 for a = 0..N-1.
Eigen::MatrixXcd assemble_operator(const PeriodicField& kappa_sq);

// Map a matrix row/column index to its wave number and back.
inline int operator_wave_number(int index, int N) { return index - N / 2; }
inline int operator_index(int n, int N) { return n + N / 2; }

// Solve (-d^2/ds^2 + kappa^2) w = f in the mode basis; returns w as a real
// scalar field. Throws SolverFailure when the factorization fails or the
// residual exceeds rel_tol * |f|.
PeriodicField solve_operator(const PeriodicField& kappa_sq, const PeriodicField& f,
                             double rel_tol = 1e-10);

// Tension of an inextensible curve: (-d^2/ds^2 + kappa^2)(lambda + 2 kappa^2)
// = |v|^2 + 2 kappa^4 - |d2u|^2 with kappa^2 = |du|^2.
PeriodicField solve_tension(const CurveState& state);

// Auxiliary potential for the transformed evolution:
// (-d^2/ds^2 + |Q|^2) mu = |P|^2 + |Q|^4 - |(d/ds + i beta) Q|^2.
// Throws SingularOperator when |Q| vanishes identically (mode-0 row of the
// operator would be zero).
PeriodicField solve_mu(const PeriodicField& P, const PeriodicField& Q, double beta);

// Smallest eigenvalue of -d^2/ds^2 + kappa^2 in the truncated mode basis.
double lowest_eigenvalue(const PeriodicField& kappa);

struct ResolventCheck {
  PeriodicField mu_direct;
  PeriodicField mu_iterative;
  double discrepancy = 0.0;
  int iterations = 0;
};

// Cross-check of the dense solve against the fixed-point iteration
// w_{k+1} = (-d^2/ds^2 + 1)^{-1} [ f - (kappa^2 - 1) w_k ],
// whose exact fixed point solves (-d^2/ds^2 + kappa^2) w = f. The shifted
// inverse is diagonal in modes. Throws NonConvergence when the iteration
// diverges (kappa^2 far from 1); callers then fall back to the dense solve.
ResolventCheck resolvent_crosscheck(const PeriodicField& kappa, const PeriodicField& f,
                                    double tol = 1e-12, int max_iter = 200);

}  // namespace elastica
