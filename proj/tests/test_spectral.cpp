#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "elastica/fft.hpp"
#include "elastica/field.hpp"

using namespace elastica;

namespace {

// Real scalar field with a single pair of hand-set coefficients.
PeriodicField harmonic(int N, int n, cplx coeff_pos, cplx coeff_neg) {
  PeriodicField f = PeriodicField::zero(N, 1, true);
  f.set_mode(0, n, coeff_pos);
  f.set_mode(0, -n, coeff_neg);
  return f;
}

PeriodicField constant(int N, double value) {
  PeriodicField f = PeriodicField::zero(N, 1, true);
  f.set_mode(0, 0, value);
  return f;
}

double max_mode_error(const PeriodicField& f, const PeriodicField& g) {
  double worst = 0.0;
  const int N = f.grid();
  for (int c = 0; c < f.components(); ++c)
    for (int n = -N / 2; n < N / 2; ++n)
      worst = std::max(worst, std::abs(f.mode(c, n) - g.mode(c, n)));
  return worst;
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("raw FFT follows the documented unnormalized conventions") {
  const int n = 8;
  std::vector<cplx> in(n), out(n), back(n);

  // A delta at j = 0 transforms to the all-ones spectrum.
  in.assign(n, cplx(0.0));
  in[0] = 1.0;
  fft::forward(in.data(), out.data(), n);
  for (int k = 0; k < n; ++k) CHECK(std::abs(out[k] - cplx(1.0)) <= 1e-15);

  // Samples of e^{is} concentrate in bin 1 with weight n.
  for (int j = 0; j < n; ++j) in[j] = std::exp(cplx(0.0, kTwoPi * j / n));
  fft::forward(in.data(), out.data(), n);
  for (int k = 0; k < n; ++k) {
    const cplx expected = (k == 1) ? cplx(n) : cplx(0.0);
    CHECK(std::abs(out[k] - expected) <= 1e-13);
  }

  // backward(forward(x)) = n * x.
  fft::backward(out.data(), back.data(), n);
  for (int j = 0; j < n; ++j) CHECK(std::abs(back[j] - static_cast<double>(n) * in[j]) <= 1e-13);
}

TEST_CASE("sample transform reproduces hand-computed coefficients and round-trips") {
  const int N = 16;
  std::vector<double> samples(N);
  // f(s) = 3 + 2 cos(2s) + 4 sin(3s): coefficients 3 at n=0, 1 at n=+-2,
  // -2i at n=3 and +2i at n=-3.
  for (int j = 0; j < N; ++j) {
    const double s = kTwoPi * j / N;
    samples[j] = 3.0 + 2.0 * std::cos(2.0 * s) + 4.0 * std::sin(3.0 * s);
  }
  PeriodicField f = transform_to_modes(samples);
  CHECK(f.real_valued());
  CHECK(f.grid() == N);
  CHECK(std::abs(f.mode(0, 0) - cplx(3.0)) <= 1e-14);
  CHECK(std::abs(f.mode(0, 2) - cplx(1.0)) <= 1e-14);
  CHECK(std::abs(f.mode(0, -2) - cplx(1.0)) <= 1e-14);
  CHECK(std::abs(f.mode(0, 3) - cplx(0.0, -2.0)) <= 1e-14);
  CHECK(std::abs(f.mode(0, -3) - cplx(0.0, 2.0)) <= 1e-14);
  CHECK(std::abs(f.mode(0, 5)) <= 1e-14);

  const std::vector<cplx> back = transform_to_samples(f);
  for (int j = 0; j < N; ++j) {
    CHECK(std::abs(back[j].real() - samples[j]) <= 1e-13);
    CHECK(std::abs(back[j].imag()) <= 1e-14);
  }
}

TEST_CASE("differentiation is exact on trigonometric data") {
  const int N = 32;
  // d/ds cos(3s) = -3 sin(3s): coefficients 1.5i at n=3, -1.5i at n=-3.
  PeriodicField f = harmonic(N, 3, 0.5, 0.5);
  PeriodicField d1 = differentiate(f, 1);
  CHECK(std::abs(d1.mode(0, 3) - cplx(0.0, 1.5)) <= 1e-15);
  CHECK(std::abs(d1.mode(0, -3) - cplx(0.0, -1.5)) <= 1e-15);

  // Fourth derivative multiplies by n^4 = 81.
  PeriodicField d4 = differentiate(f, 4);
  CHECK(std::abs(d4.mode(0, 3) - cplx(40.5)) <= 1e-12);
  CHECK(std::abs(d4.mode(0, -3) - cplx(40.5)) <= 1e-12);

  // The wave-number shift acts as (i (n + shift))^k.
  PeriodicField g = PeriodicField::zero(N, 1, false);
  g.set_mode(0, 2, 1.0);
  PeriodicField dg = differentiate(g, 1, 0.5);
  CHECK(std::abs(dg.mode(0, 2) - cplx(0.0, 2.5)) <= 1e-15);
  PeriodicField dg3 = differentiate(g, 3, 0.5);
  // (i * 2.5)^3 = -15.625 i.
  CHECK(std::abs(dg3.mode(0, 2) - cplx(0.0, -15.625)) <= 1e-12);
}

TEST_CASE("pointwise products are dealiased rather than wrapped into the band") {
  const int N = 16;
  // cos(5s)^2 = 1/2 + 1/2 cos(10s). The 10-harmonic lies outside the band
  // and must be dropped; a product computed on the working grid would fold
  // it onto n = 10 - 16 = -6 with weight 1/4.
  PeriodicField f = harmonic(N, 5, 0.5, 0.5);
  PeriodicField p = multiply(f, f);
  CHECK(std::abs(p.mode(0, 0) - cplx(0.5)) <= 1e-15);
  CHECK(std::abs(p.mode(0, 6)) <= 1e-15);
  CHECK(std::abs(p.mode(0, -6)) <= 1e-15);

  // In-band product: cos(2s) cos(3s) = 1/2 cos(5s) + 1/2 cos(s).
  PeriodicField a = harmonic(N, 2, 0.5, 0.5);
  PeriodicField b = harmonic(N, 3, 0.5, 0.5);
  PeriodicField ab = multiply(a, b);
  CHECK(std::abs(ab.mode(0, 5) - cplx(0.25)) <= 1e-15);
  CHECK(std::abs(ab.mode(0, 1) - cplx(0.25)) <= 1e-15);
  CHECK(std::abs(ab.mode(0, 0)) <= 1e-15);

  // abs_squared of a unit harmonic is the constant 1.
  PeriodicField e = PeriodicField::zero(N, 1, false);
  e.set_mode(0, 5, 1.0);
  PeriodicField e2 = abs_squared(e);
  CHECK(std::abs(e2.mode(0, 0) - cplx(1.0)) <= 1e-15);
  for (int n = -N / 2; n < N / 2; ++n) {
    if (n != 0) CHECK(std::abs(e2.mode(0, n)) <= 1e-15);
  }
}

TEST_CASE("real fields truncate onto the symmetric band without an unpaired mode") {
  const int N = 16, M = 32;
  std::vector<cplx> samples(M);
  for (int j = 0; j < M; ++j) samples[j] = std::cos(8.0 * kTwoPi * j / M);

  // cos(8s) sits exactly on the edge pair n = +-8 of the fine grid. The
  // N = 16 band holds only n in [-8, 8), so a real-valued truncation must
  // drop the pair entirely: keeping the lone -8 coefficient would break the
  // conjugate symmetry that differentiation relies on.
  PeriodicField r = truncate_from_samples(samples, M, N, 1, true);
  for (int n = -N / 2; n < N / 2; ++n) CHECK(std::abs(r.mode(0, n)) <= 1e-15);
  CHECK(r.hermitian_defect() <= 1e-15);

  // A complex-valued truncation keeps the representable half of the pair.
  PeriodicField c = truncate_from_samples(samples, M, N, 1, false);
  CHECK(std::abs(c.mode(0, -8) - cplx(0.5)) <= 1e-14);

  // The defect measures exactly the broken symmetry.
  PeriodicField broken = PeriodicField::zero(N, 1, true);
  broken.set_mode(0, 3, cplx(0.0, 0.5));
  broken.set_mode(0, -3, cplx(0.0, 0.5));
  CHECK(std::abs(broken.hermitian_defect() - 1.0) <= 1e-15);
}

TEST_CASE("weighted norms follow the Parseval formula") {
  const int N = 16;
  PeriodicField f = PeriodicField::zero(N, 1, false);
  f.set_mode(0, 3, 2.0);
  // ||f||_{H^r}^2 = (1 + 9)^r * 4.
  CHECK(std::abs(sobolev_norm(f, 0.0) - 2.0) <= 1e-14);
  CHECK(std::abs(sobolev_norm(f, 1.0) - 2.0 * std::sqrt(10.0)) <= 1e-13);

  PeriodicField p = PeriodicField::zero(N, 1, false);
  p.set_mode(0, 2, 1.0);
  // ||(p, f/2)||_{Y^0}^2 = |p|^2 + (1 + 9) |q|^2 = 1 + 10.
  PeriodicField q = PeriodicField::zero(N, 1, false);
  q.set_mode(0, 3, 1.0);
  CHECK(std::abs(y_norm(p, q, 0.0) - std::sqrt(11.0)) <= 1e-13);
}

TEST_CASE("pointwise helpers: sup, mean, components, conjugation") {
  const int N = 16;
  PeriodicField f = constant(N, 3.0);
  f.set_mode(0, 1, 0.5);
  f.set_mode(0, -1, 0.5);
  // f = 3 + cos(s).
  CHECK(std::abs(sup_norm(f) - 4.0) <= 1e-13);
  CHECK(std::abs(mean(f) - cplx(3.0)) <= 1e-15);
  CHECK(std::abs(sup_distance(f, constant(N, 3.0)) - 1.0) <= 1e-13);

  PeriodicField g = PeriodicField::zero(N, 1, false);
  g.set_mode(0, 2, 1.0);
  PeriodicField gc = conj_field(g);
  CHECK(std::abs(gc.mode(0, -2) - cplx(1.0)) <= 1e-15);
  CHECK(std::abs(gc.mode(0, 2)) <= 1e-15);

  PeriodicField h = PeriodicField::zero(N, 1, false);
  h.set_mode(0, 0, cplx(1.0, 2.0));
  CHECK(std::abs(real_part(h).mode(0, 0) - cplx(1.0)) <= 1e-15);
  CHECK(std::abs(imag_part(h).mode(0, 0) - cplx(2.0)) <= 1e-15);

  // Unit tangent of the circle dotted with itself is the constant 1.
  PeriodicField ux = harmonic(N, 1, cplx(0.0, 0.5), cplx(0.0, -0.5));   // -sin s
  PeriodicField uy = harmonic(N, 1, 0.5, 0.5);                          // cos s
  PeriodicField u = assemble_vector(ux, uy, PeriodicField::zero(N, 1, true));
  PeriodicField uu = dot_field(u, u);
  CHECK(std::abs(uu.mode(0, 0) - cplx(1.0)) <= 1e-15);
  CHECK(std::abs(mean_vector(u).norm()) <= 1e-15);
  CHECK(std::abs(sup_norm(component(u, 1)) - 1.0) <= 1e-13);
}

TEST_CASE("zero-padded evaluation matches the analytic function between nodes") {
  const int N = 8, M = 32;
  PeriodicField f = harmonic(N, 2, 0.5, 0.5);  // cos(2s)
  const std::vector<cplx> vals = eval_on_grid(f, M);
  for (int j = 0; j < M; ++j) {
    const double s = kTwoPi * j / M;
    CHECK(std::abs(vals[j] - cplx(std::cos(2.0 * s))) <= 1e-14);
  }

  // Vector sample round trip.
  std::vector<Eigen::Vector3d> pts(N);
  for (int j = 0; j < N; ++j) {
    const double s = kTwoPi * j / N;
    pts[j] = Eigen::Vector3d(std::cos(s), std::sin(2.0 * s), 1.0);
  }
  PeriodicField v = field_from_vec3_samples(pts, N);
  const std::vector<Eigen::Vector3d> back = eval_vec3_real(v, N);
  for (int j = 0; j < N; ++j) CHECK((back[j] - pts[j]).norm() <= 1e-14);
}

}  // TEST_SUITE
