#include "elastica/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {
namespace {

// Pointwise samples of a 3-vector field and its first two derivatives on the
// dealiasing grid.
struct PaddedCurveData {
  int M = 0;
  std::vector<Eigen::Vector3d> u, du, d2u;
};

PaddedCurveData padded_curve(const PeriodicField& u) {
  PaddedCurveData data;
  data.M = padded_size(u.grid());
  data.u = eval_vec3_real(u, data.M);
  data.du = eval_vec3_real(differentiate(u, 1), data.M);
  data.d2u = eval_vec3_real(differentiate(u, 2), data.M);
  return data;
}

}  // namespace

PeriodicField curvature(const PeriodicField& u) {
  if (u.components() != 3) throw ElasticaError("curvature expects a 3-vector tangent field");
  const int M = padded_size(u.grid());
  std::vector<Eigen::Vector3d> du = eval_vec3_real(differentiate(u, 1), M);
  std::vector<double> kappa(M);
  for (int j = 0; j < M; ++j) kappa[j] = du[j].norm();
  return field_from_scalar_samples(kappa, u.grid());
}

TorsionData torsion(const PeriodicField& u, double kappa_min) {
  if (u.components() != 3) throw ElasticaError("torsion expects a 3-vector tangent field");
  PaddedCurveData d = padded_curve(u);
  std::vector<double> theta(d.M);
  for (int j = 0; j < d.M; ++j) {
    const double k2 = d.du[j].squaredNorm();
    if (k2 < kappa_min * kappa_min)
      throw DegenerateCurvature("curvature below threshold; torsion undefined");
    theta[j] = d.u[j].dot(d.du[j].cross(d.d2u[j])) / k2;
  }
  TorsionData out;
  out.theta = field_from_scalar_samples(theta, u.grid());
  out.monodromy = std::real(mean(out.theta, 0));
  return out;
}

FrenetData frenet_frame(const PeriodicField& u, double kappa_min) {
  PaddedCurveData d = padded_curve(u);
  std::vector<double> kappa(d.M), theta(d.M);
  std::vector<Eigen::Vector3d> n(d.M), b(d.M);
  for (int j = 0; j < d.M; ++j) {
    const double k = d.du[j].norm();
    if (k < kappa_min)
      throw DegenerateCurvature("curvature below threshold; Frenet frame undefined");
    kappa[j] = k;
    n[j] = d.du[j] / k;
    b[j] = d.u[j].cross(n[j]);
    theta[j] = d.u[j].dot(d.du[j].cross(d.d2u[j])) / (k * k);
  }
  FrenetData out;
  const int N = u.grid();
  out.kappa = field_from_scalar_samples(kappa, N);
  out.theta = field_from_scalar_samples(theta, N);
  out.n = field_from_vec3_samples(n, N);
  out.b = field_from_vec3_samples(b, N);

  // Residual of d/ds(n+ib) = -kappa*u - i*theta*(n+ib), assembled spectrally
  // from the truncated frame fields.
  PeriodicField nb = out.n + cplx(0.0, 1.0) * out.b;
  PeriodicField residual = differentiate(nb, 1) + multiply(out.kappa, u) +
                           cplx(0.0, 1.0) * multiply(out.theta, nb);
  out.frame_residual = sup_norm(residual);
  return out;
}

EnergyBreakdown energies(const CurveState& state, double closure_tol) {
  const Eigen::Vector3cd vbar = mean_vector(state.v);
  if (vbar.norm() > closure_tol)
    throw OpenLoop("velocity field has a nonzero loop mean; dx/dt is not periodic");
  EnergyBreakdown e = energies_periodic_part(state);
  return e;
}

EnergyBreakdown energies_periodic_part(const CurveState& state) {
  const int N = state.u.grid();
  EnergyBreakdown e;
  // Bending: 1/2 * sum over modes of n^2 |u_hat|^2 (Parseval with ds/2pi).
  for (int c = 0; c < 3; ++c)
    for (int n = -N / 2; n < N / 2; ++n)
      e.potential += 0.5 * static_cast<double>(n) * n * std::norm(state.u.mode(c, n));
  // Kinetic: dx/dt has modes v_hat(n)/(i n) for n != 0 and the momentum
  // constant at mode 0; the mean of v (if any) is excluded here.
  e.kinetic = 0.5 * state.momentum.squaredNorm();
  for (int c = 0; c < 3; ++c)
    for (int n = -N / 2; n < N / 2; ++n) {
      if (n == 0) continue;
      e.kinetic += 0.5 * std::norm(state.v.mode(c, n)) / (static_cast<double>(n) * n);
    }
  e.total = e.kinetic + e.potential;
  return e;
}

BianchiData bianchi_residual(const PeriodicField& u) {
  PeriodicField d1 = differentiate(u, 1);
  PeriodicField d2 = differentiate(u, 2);
  PeriodicField d3 = differentiate(u, 3);
  PeriodicField d4 = differentiate(u, 4);
  BianchiData out;
  out.residual = 3.0 * dot_field(d2, d2) + 4.0 * dot_field(d1, d3) + dot_field(u, d4);
  out.sup = sup_norm(out.residual);
  return out;
}

PositionData reconstruct_position(const PeriodicField& u, const Eigen::Vector3d& x0) {
  if (u.components() != 3)
    throw ElasticaError("reconstruct_position expects a 3-vector tangent field");
  const int N = u.grid();
  PositionData out;
  out.periodic_part = PeriodicField::zero(N, 3, u.real_valued());
  for (int c = 0; c < 3; ++c) {
    cplx at_zero = 0.0;  // value of the zero-mean antiderivative at s = 0
    for (int n = -N / 2; n < N / 2; ++n) {
      if (n == 0) continue;
      cplx coeff = u.mode(c, n) / cplx(0.0, n);
      out.periodic_part.set_mode(c, n, coeff);
      at_zero += coeff;
    }
    out.periodic_part.set_mode(c, 0, cplx(x0[c], 0.0) - at_zero);
    out.closure_defect[c] = std::real(u.mode(c, 0));
  }
  return out;
}

CompatibilityReport check_compatibility(const PeriodicField& u0, const PeriodicField& u1) {
  const int M = padded_size(u0.grid());
  std::vector<Eigen::Vector3d> a = eval_vec3_real(u0, M);
  std::vector<Eigen::Vector3d> b = eval_vec3_real(u1, M);
  CompatibilityReport report;
  for (int j = 0; j < M; ++j) {
    report.unit_defect = std::max(report.unit_defect, std::abs(a[j].norm() - 1.0));
    report.tangency_defect = std::max(report.tangency_defect, std::abs(a[j].dot(b[j])));
  }
  return report;
}

}  // namespace elastica
