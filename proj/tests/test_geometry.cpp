#include <cmath>
#include <vector>

#include "doctest.h"

#include "elastica/geometry.hpp"
#include "elastica/scenarios.hpp"

using namespace elastica;

namespace {

constexpr double kPsi = 1.0471975511965977;  // pi/3

PeriodicField constant(int N, double value) {
  PeriodicField f = PeriodicField::zero(N, 1, true);
  f.set_mode(0, 0, value);
  return f;
}

// Planar unit tangent whose turning angle is chi(s) = s + sin(s); the
// curvature |chi'| = |1 + cos(s)| vanishes at s = pi.
PeriodicField flattening_tangent(int N) {
  std::vector<Eigen::Vector3d> us(N);
  for (int j = 0; j < N; ++j) {
    const double s = kTwoPi * j / N;
    const double chi = s + std::sin(s);
    us[j] = Eigen::Vector3d(std::cos(chi), std::sin(chi), 0.0);
  }
  return field_from_vec3_samples(us, N);
}

Eigen::Vector3d at_angle(const PeriodicField& f, double fraction) {
  const int M = 4 * f.grid();
  const std::vector<Eigen::Vector3d> vals = eval_vec3_real(f, M);
  return vals[static_cast<size_t>(fraction * M)];
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("circle: unit curvature, zero torsion, closed Frenet frame") {
  const int N = 32;
  const PeriodicField u = make_circle(N).u;

  CHECK(sup_distance(curvature(u), constant(N, 1.0)) <= 1e-13);

  const TorsionData tor = torsion(u);
  CHECK(sup_norm(tor.theta) <= 1e-13);
  CHECK(std::abs(tor.monodromy) <= 1e-14);

  const FrenetData fr = frenet_frame(u);
  CHECK(fr.frame_residual <= 1e-12);
  // u = (-sin s, cos s, 0) has normal -(cos s, sin s, 0) and binormal z-hat.
  CHECK((at_angle(fr.n, 0.0) - Eigen::Vector3d(-1.0, 0.0, 0.0)).norm() <= 1e-12);
  CHECK((at_angle(fr.b, 0.25) - Eigen::Vector3d(0.0, 0.0, 1.0)).norm() <= 1e-12);
  CHECK(sup_distance(fr.kappa, constant(N, 1.0)) <= 1e-12);
}

TEST_CASE("latitude sweep: curvature sin(psi) and torsion cos(psi)") {
  const int N = 32;
  for (double psi : {kPsi, 2.0}) {
    const PeriodicField u = make_latitude(N, psi).u;
    CHECK(sup_distance(curvature(u), constant(N, std::sin(psi))) <= 1e-13);
    const TorsionData tor = torsion(u);
    CHECK(sup_distance(tor.theta, constant(N, std::cos(psi))) <= 1e-12);
    CHECK(std::abs(tor.monodromy - std::cos(psi)) <= 1e-13);
    CHECK(frenet_frame(u).frame_residual <= 1e-12);
  }
}

TEST_CASE("pointwise unit-norm identity holds exactly for unit fields only") {
  const int N = 32;
  CHECK(bianchi_residual(make_circle(N).u).sup <= 1e-12);
  CHECK(bianchi_residual(make_perturbed_circle(N, 0.01, 3, false).u).sup <= 1e-8);
  CHECK(bianchi_residual(make_random_closed_curve(N, 11, 0.1, false, true)).sup <= 1e-6);

  // Scaling the tangent by 1 + 0.1 cos(s) leaves the sphere; the residual
  // must see it.
  PeriodicField scale = constant(N, 1.0);
  scale.set_mode(0, 1, 0.05);
  scale.set_mode(0, -1, 0.05);
  const PeriodicField off = multiply(scale, make_circle(N).u);
  CHECK(bianchi_residual(off).sup > 0.05);
}

TEST_CASE("position reconstruction: closed loops close, drifters report their mean") {
  const int N = 32;
  const Eigen::Vector3d x0(0.2, -0.1, 0.4);

  const PositionData circle = reconstruct_position(make_circle(N).u, x0);
  CHECK(circle.closure_defect.norm() <= 1e-15);
  // Integrating u = (-sin s, cos s, 0) gives x(s) = x0 + (cos s - 1, sin s, 0).
  CHECK((at_angle(circle.periodic_part, 0.0) - x0).norm() <= 1e-13);
  CHECK((at_angle(circle.periodic_part, 0.5) - x0 - Eigen::Vector3d(-2.0, 0.0, 0.0)).norm() <=
        1e-12);

  const PositionData lat = reconstruct_position(make_latitude(N, kPsi).u, x0);
  CHECK((lat.closure_defect - Eigen::Vector3d(0.0, 0.0, std::cos(kPsi))).norm() <= 1e-14);
}

TEST_CASE("compatibility report flags exactly the violating pair") {
  const int N = 32;
  const CurveState good = make_perturbed_circle(N, 0.05, 3, true);
  const CompatibilityReport ok = check_compatibility(good.u, good.v);
  // The report samples the padded grid, between the construction nodes, so
  // it sees the truncation tail of the bent field rather than exact zeros.
  CHECK(ok.unit_defect <= 1e-9);
  CHECK(ok.tangency_defect <= 1e-9);

  // Constant velocity (0, 1, 0) against the circle tangent: u . v = cos(s),
  // so the tangency defect is exactly 1.
  PeriodicField v = PeriodicField::zero(N, 3, true);
  v.set_mode(1, 0, 1.0);
  const CompatibilityReport bad = check_compatibility(make_circle(N).u, v);
  CHECK(bad.unit_defect <= 1e-14);
  CHECK(std::abs(bad.tangency_defect - 1.0) <= 1e-13);
}

TEST_CASE("energies: frozen circle and latitude values, open loops rejected") {
  const int N = 32;

  const EnergyBreakdown circle = energies(make_circle(N));
  CHECK(std::abs(circle.kinetic) <= 1e-15);
  CHECK(std::abs(circle.potential - 0.5) <= 1e-13);
  CHECK(std::abs(circle.total - 0.5) <= 1e-13);

  const EnergyBreakdown lat = energies(make_latitude(N, kPsi));
  CHECK(std::abs(lat.kinetic) <= 1e-15);
  CHECK(std::abs(lat.potential - 0.375) <= 1e-13);  // sin^2(pi/3) / 2

  // The axial drift velocity has loop mean (0, 0, cos(psi)): the position
  // velocity is not periodic, so the strict breakdown must refuse.
  const CurveState drift = make_latitude_drift(N, kPsi);
  CHECK_THROWS_AS(energies(drift), OpenLoop);
  const EnergyBreakdown part = energies_periodic_part(drift);
  // Zero-mean part of v = cot(psi) * binormal has kinetic energy
  // cos^2(psi) cot^2(psi) / 2 = 1/24 at psi = pi/3.
  CHECK(std::abs(part.kinetic - 1.0 / 24.0) <= 1e-12);
  CHECK(std::abs(part.potential - 0.375) <= 1e-13);
  CHECK(std::abs(part.total - part.kinetic - part.potential) <= 1e-15);
}

TEST_CASE("torsion and frame require curvature bounded away from zero") {
  const PeriodicField u = flattening_tangent(32);
  CHECK_THROWS_AS(torsion(u), DegenerateCurvature);
  CHECK_THROWS_AS(frenet_frame(u), DegenerateCurvature);
  // The curvature field itself stays well-defined.
  CHECK(sup_norm(curvature(u)) <= 2.0 + 1e-12);
}

TEST_CASE("frame residual is resolution-limited, not identity-limited") {
  // The Frenet identity holds pointwise; the reported residual comes from
  // truncating n = du/kappa to the working band, so it shrinks rapidly with N
  // and vanishes for constant-curvature curves.
  CHECK(frenet_frame(make_latitude(32, kPsi).u).frame_residual <= 1e-12);
  CHECK(frenet_frame(make_perturbed_circle(32, 0.01, 3, false).u).frame_residual <= 1e-7);
  const double coarse = frenet_frame(make_random_closed_curve(32, 7, 0.1, false, true)).frame_residual;
  const double fine = frenet_frame(make_random_closed_curve(64, 7, 0.1, false, true)).frame_residual;
  CHECK(fine <= 1e-4);
  CHECK(fine < coarse);
}

}  // TEST_SUITE
