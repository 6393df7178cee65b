#pragma once

#include "elastica/field.hpp"
#include "elastica/geometry.hpp"

namespace elastica {

// Unit circle in the xy-plane at rest: u = (-sin s, cos s, 0), v = 0.
CurveState make_circle(int N);

// Latitude sweep u = (sin(psi) cos s, sin(psi) sin s, cos(psi)) at rest. The
// tangent mean is (0, 0, cos(psi)), so the underlying curve is a helix except
// at psi = pi/2 (great circle). Requires 0 < psi < pi.
CurveState make_latitude(int N, double psi);

// Latitude tangent with the axial drift velocity v = cot(psi) * binormal; the
// velocity mean (0, 0, cos(psi)) makes the helix pitch grow linearly in time.
CurveState make_latitude_drift(int N, double psi);

// Circle tangent perturbed by eps*cos(m s), bent in-plane (planar) or
// out-of-plane (3D), with velocity eps*sin(m s) along the matching normal
// direction. Closure and tangency are exact by construction. Requires
// 0 <= eps <= 0.1 and 2 <= m <= N/4.
CurveState make_perturbed_circle(int N, double eps, int m, bool planar);

// Random smooth closed unit-tangent field, deterministic in (N, seed, flags).
// 3D curves are products of z-rotations at integer rates interleaved with
// random tilts (scaled by pi*amplitude), which are exactly unit, exactly
// closed, and band-limited; planar curves bend the tangent angle by random
// low harmonics (scaled by amplitude) with a closure correction, exactly unit
// up to a far-below-round-off spectral tail. narrow_band restricts 3D curves
// to two rotation factors (band 3 instead of 7), for consumers that need
// spectral headroom above the curve band. Requires 0 <= amplitude <= 0.5.
PeriodicField make_random_closed_curve(int N, unsigned long long seed,
                                       double amplitude = 0.25, bool planar = false,
                                       bool narrow_band = false);

// Compatible random pair: u0 from the same constructions and u1 assembled in
// a pointwise orthonormal normal frame of u0 with random smooth coefficients,
// so tangency holds identically (u1 need not have zero mean; compatibility
// does not require it).
CurveState make_random_compatible(int N, unsigned long long seed, bool planar = false);

}  // namespace elastica
