#include "elastica/hasimoto.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {
namespace {

constexpr cplx kI(0.0, 1.0);

// Bilinear (unconjugated) dot of a complex 3-vector with a real 3-vector.
cplx bdot(const Eigen::Vector3cd& a, const Eigen::Vector3d& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Eigen::Vector3d eval_real_vec_at_zero(const PeriodicField& f) {
  Eigen::Vector3cd s = Eigen::Vector3cd::Zero();
  const int N = f.grid();
  for (int c = 0; c < 3; ++c)
    for (int n = -N / 2; n < N / 2; ++n) s[c] += f.mode(c, n);
  return s.real();
}

// Worst orthonormality defect of the triple (u, e1, e2).
double frame_defect(const Eigen::Vector3d& u, const Eigen::Vector3d& e1,
                    const Eigen::Vector3d& e2) {
  double d = std::abs(e1.norm() - 1.0);
  d = std::max(d, std::abs(e2.norm() - 1.0));
  d = std::max(d, std::abs(e1.dot(e2)));
  d = std::max(d, std::abs(u.dot(e1)));
  d = std::max(d, std::abs(u.dot(e2)));
  return d;
}

// Gram-Schmidt the pair (e1, e2) against the (normalized) tangent. The exact
// flows preserve orthonormality; projecting each step keeps the integrators
// on the constraint manifold without changing their order of accuracy.
void project_pair(const Eigen::Vector3d& u_raw, Eigen::Vector3d& e1, Eigen::Vector3d& e2) {
  Eigen::Vector3d u = u_raw.normalized();
  e1 -= e1.dot(u) * u;
  e1.normalize();
  e2 -= e2.dot(u) * u + e2.dot(e1) * e1;
  e2.normalize();
}

double wrap_to_half_open(double beta) {
  double b = beta - std::floor(beta + 0.5);  // nearest-integer reduction
  if (b >= 0.5) b -= 1.0;
  return b;
}

}  // namespace

double mod1_distance(double a, double b) {
  double d = std::abs(a - b);
  d -= std::floor(d);
  return std::min(d, 1.0 - d);
}

FrameTriple canonical_frame(const PeriodicField& u0, double kappa_min) {
  if (u0.components() != 3) throw ElasticaError("canonical_frame expects a 3-vector tangent");
  FrameTriple fr;
  fr.t = eval_real_vec_at_zero(u0).normalized();
  Eigen::Vector3d du0 = eval_real_vec_at_zero(differentiate(u0, 1));
  Eigen::Vector3d w = du0 - du0.dot(fr.t) * fr.t;
  if (w.norm() > kappa_min) {
    fr.e1 = w.normalized();
  } else {
    // Degenerate curvature at s = 0: fall back to the first coordinate axis
    // with a usable projection onto the normal plane.
    for (int axis = 0; axis < 3; ++axis) {
      Eigen::Vector3d cand = Eigen::Vector3d::Unit(axis);
      cand -= cand.dot(fr.t) * fr.t;
      if (cand.norm() > 0.5) {
        fr.e1 = cand.normalized();
        break;
      }
    }
  }
  fr.e2 = fr.t.cross(fr.e1);
  return fr;
}

TransportedFrame parallel_frame(const PeriodicField& u0, const Eigen::Vector3cd& seed,
                                int refine) {
  if (u0.components() != 3) throw ElasticaError("parallel_frame expects a 3-vector tangent");
  if (refine < 1) throw ConfigError("transport refinement factor must be positive");
  const int N = u0.grid();
  const int M = refine * N;

  Eigen::Vector3d t0 = eval_real_vec_at_zero(u0).normalized();
  {
    Eigen::Vector3d s1 = seed.real(), s2 = seed.imag();
    if (frame_defect(t0, s1, s2) > 1e-8 || t0.dot(s1.cross(s2)) < 0.5)
      throw IncompatibleState("transport seed is not an oriented orthonormal complement of u(0)");
  }

  // Tangent and its derivative at nodes and midpoints of the fine grid.
  std::vector<Eigen::Vector3d> u = eval_vec3_real(u0, 2 * M);
  std::vector<Eigen::Vector3d> du = eval_vec3_real(differentiate(u0, 1), 2 * M);
  auto slope = [&](const Eigen::Vector3cd& v, int half_index) {
    return (-bdot(v, du[half_index]) * u[half_index].cast<cplx>()).eval();
  };

  TransportedFrame out;
  out.fine_grid = M;
  out.vtilde.resize(M);
  const double h = kTwoPi / M;
  Eigen::Vector3cd v = seed;
  Eigen::Vector3cd v_end = seed;
  for (int j = 0; j < M; ++j) {
    out.vtilde[j] = v;
    Eigen::Vector3cd k1 = slope(v, 2 * j);
    Eigen::Vector3cd k2 = slope(v + 0.5 * h * k1, 2 * j + 1);
    Eigen::Vector3cd k3 = slope(v + 0.5 * h * k2, 2 * j + 1);
    Eigen::Vector3cd k4 = slope(v + h * k3, (2 * j + 2) % (2 * M));
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    Eigen::Vector3d e1 = v.real(), e2 = v.imag();
    const Eigen::Vector3d& un = u[(2 * j + 2) % (2 * M)];
    out.orthonormality_drift = std::max(out.orthonormality_drift, frame_defect(un, e1, e2));
    project_pair(un, e1, e2);
    v = e1.cast<cplx>() + kI * e2.cast<cplx>();
    if (j == M - 1) v_end = v;
  }

  // Holonomy: v(2*pi) = c * v(0) with |c| = 1; the overlap uses the Hermitian
  // inner product, under which <v0, v0> = 2.
  cplx c = seed.dot(v_end) / 2.0;
  out.beta_raw = wrap_to_half_open(std::arg(c) / kTwoPi);
  return out;
}

ForwardResult forward_transform(const PeriodicField& u0, const PeriodicField& u1,
                                int refine, double compat_tol) {
  CompatibilityReport rep = check_compatibility(u0, u1);
  if (rep.unit_defect > compat_tol || rep.tangency_defect > compat_tol)
    throw IncompatibleState("initial data fail the unit-tangent/orthogonality check");

  ForwardResult out;
  out.frame0 = canonical_frame(u0);
  TransportedFrame tf = parallel_frame(u0, out.frame0.vtilde(), refine);
  const int M = tf.fine_grid;
  const int N = u0.grid();

  std::vector<Eigen::Vector3d> du = eval_vec3_real(differentiate(u0, 1), M);
  std::vector<Eigen::Vector3d> u1s = eval_vec3_real(u1, M);
  std::vector<cplx> p(M), q(M);
  for (int j = 0; j < M; ++j) {
    const double s = kTwoPi * j / M;
    const cplx phase = std::exp(-kI * s * tf.beta_raw);
    p[j] = phase * bdot(tf.vtilde[j], u1s[j]);
    q[j] = phase * bdot(tf.vtilde[j], du[j]);
  }
  out.state.P = truncate_from_samples(p, M, N, 1, false);
  out.state.Q = truncate_from_samples(q, M, N, 1, false);
  out.state.beta = tf.beta_raw;
  return out;
}

InverseResult inverse_transform(const HasimotoState& state, const FrameTriple& frame0,
                                int refine) {
  if (frame_defect(frame0.t, frame0.e1, frame0.e2) > 1e-8 ||
      frame0.t.dot(frame0.e1.cross(frame0.e2)) < 0.5)
    throw IncompatibleState("reconstruction frame is not orthonormal and positively oriented");
  const int N = state.Q.grid();
  const int M = refine * N;
  const double beta = state.beta;

  std::vector<cplx> Qs = eval_on_grid(state.Q, 2 * M);
  std::vector<cplx> Ps = eval_on_grid(state.P, 2 * M);

  struct Pair {
    Eigen::Vector3d u;
    Eigen::Vector3cd v;
  };
  auto slope = [&](const Pair& y, int half_index) {
    Pair d;
    const cplx q = Qs[half_index];
    for (int c = 0; c < 3; ++c) d.u[c] = std::real(std::conj(q) * y.v[c]);
    d.v = -q * y.u.cast<cplx>() - kI * beta * y.v;
    return d;
  };

  Pair y{frame0.t, frame0.vtilde()};
  std::vector<Eigen::Vector3d> us(M), u1s(M);
  const double h = kTwoPi / M;
  for (int j = 0; j < M; ++j) {
    us[j] = y.u;
    const cplx pj = Ps[2 * j];
    for (int c = 0; c < 3; ++c) u1s[j][c] = std::real(std::conj(pj) * y.v[c]);

    Pair k1 = slope(y, 2 * j);
    Pair k2 = slope({y.u + 0.5 * h * k1.u, y.v + 0.5 * h * k1.v}, 2 * j + 1);
    Pair k3 = slope({y.u + 0.5 * h * k2.u, y.v + 0.5 * h * k2.v}, 2 * j + 1);
    Pair k4 = slope({y.u + h * k3.u, y.v + h * k3.v}, (2 * j + 2) % (2 * M));
    y.u += (h / 6.0) * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
    y.v += (h / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);

    Eigen::Vector3d e1 = y.v.real(), e2 = y.v.imag();
    y.u.normalize();
    project_pair(y.u, e1, e2);
    y.v = e1.cast<cplx>() + kI * e2.cast<cplx>();
  }

  InverseResult out;
  out.u0 = field_from_vec3_samples(us, N);
  out.u1 = field_from_vec3_samples(u1s, N);
  out.periodicity_defect =
      std::sqrt((y.u - frame0.t).squaredNorm() + (y.v - frame0.vtilde()).squaredNorm());
  return out;
}

PeriodicField compute_alpha(const PeriodicField& P, const PeriodicField& Q) {
  PeriodicField g = imag_part(multiply(P, conj_field(Q)));
  const int N = g.grid();
  PeriodicField alpha = PeriodicField::zero(N, 1, true);
  for (int n = -N / 2; n < N / 2; ++n) {
    if (n == 0) continue;
    alpha.set_mode(0, n, g.mode(0, n) / cplx(0.0, n));
  }
  return real_part(alpha);
}

HasimotoState gauge_shift(const HasimotoState& state, int k, double s0) {
  const int N = state.Q.grid();
  const cplx phase = std::exp(kI * s0);
  HasimotoState out;
  out.P = PeriodicField::zero(N, 1, false);
  out.Q = PeriodicField::zero(N, 1, false);
  for (int n = -N / 2; n < N / 2; ++n) {
    const int src = n - k;
    if (src < -N / 2 || src >= N / 2) continue;
    out.P.set_mode(0, n, phase * state.P.mode(0, src));
    out.Q.set_mode(0, n, phase * state.Q.mode(0, src));
  }
  out.beta = state.beta - k;
  return out;
}

PeriodicField curvature_from_state(const PeriodicField& Q) {
  const int M = padded_size(Q.grid());
  std::vector<cplx> q = eval_on_grid(Q, M);
  std::vector<double> k(M);
  for (int j = 0; j < M; ++j) k[j] = std::abs(q[j]);
  return field_from_scalar_samples(k, Q.grid());
}

TorsionData torsion_from_state(const PeriodicField& Q, double beta, double kappa_min) {
  const int M = padded_size(Q.grid());
  std::vector<cplx> q = eval_on_grid(Q, M);
  std::vector<cplx> dq = eval_on_grid(differentiate(Q, 1), M);
  std::vector<double> theta(M);
  for (int j = 0; j < M; ++j) {
    const double k2 = std::norm(q[j]);
    if (k2 < kappa_min * kappa_min)
      throw DegenerateCurvature("curvature below threshold; torsion undefined");
    theta[j] = std::imag(std::conj(q[j]) * dq[j]) / k2 + beta;
  }
  TorsionData out;
  out.theta = field_from_scalar_samples(theta, Q.grid());
  out.monodromy = std::real(mean(out.theta, 0));
  return out;
}

}  // namespace elastica
