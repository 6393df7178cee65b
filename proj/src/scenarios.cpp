#include "elastica/scenarios.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

namespace elastica {

namespace {

constexpr double kPi = kTwoPi / 2.0;

void require_latitude_angle(double psi) {
  if (!(psi > 0.0 && psi < kPi)) {
    throw ConfigError("latitude angle must lie strictly inside (0, pi); the poles have "
                      "vanishing curvature");
  }
}

// Sets fhat(+-1) for a*cos(s) + b*sin(s).
void set_first_harmonic(PeriodicField& f, int component, double a, double b) {
  f.set_mode(component, 1, cplx(0.5 * a, -0.5 * b));
  f.set_mode(component, -1, cplx(0.5 * a, 0.5 * b));
}

Eigen::Matrix3d rot_z(double a) {
  Eigen::Matrix3d R;
  const double c = std::cos(a), s = std::sin(a);
  R << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return R;
}

Eigen::Matrix3d rot_y(double a) {
  Eigen::Matrix3d R;
  const double c = std::cos(a), s = std::sin(a);
  R << c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c;
  return R;
}

// Planar random curve: bend the tangent angle chi(s) = s + pi/2 + (random low
// harmonics), then nudge the harmonic coefficients -- Newton with minimum-norm
// steps on the two real equations -- until the loop mean of (cos chi, sin chi)
// vanishes. The samples are exactly unit for every chi, and the harmonics are
// small and few enough that the truncation tail sits far below round-off-scale
// defect budgets. (A non-circular planar trigonometric polynomial can never be
// exactly unit, so the tail is the best any planar construction can do.)
PeriodicField random_planar_curve(int N, std::mt19937_64& rng, double amplitude) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int B = std::max(1, N / 16);
  const double n0 = std::max(0.75, N / 32.0);
  Eigen::VectorXd coeff(2 * B);  // a_n cos(n s) + b_n sin(n s), n = 1..B
  for (int n = 1; n <= B; ++n) {
    const double scale =
        0.4 * amplitude * std::exp(-(n / n0) * (n / n0)) / std::sqrt(2.0);
    coeff(2 * n - 2) = scale * gauss(rng);
    coeff(2 * n - 1) = scale * gauss(rng);
  }

  const int M = 4 * N;
  std::vector<double> chi(static_cast<std::size_t>(M));
  const auto refresh_chi = [&] {
    for (int j = 0; j < M; ++j) {
      const double s = kTwoPi * j / M;
      double x = s + 0.5 * kPi;
      for (int n = 1; n <= B; ++n)
        x += coeff(2 * n - 2) * std::cos(n * s) + coeff(2 * n - 1) * std::sin(n * s);
      chi[static_cast<std::size_t>(j)] = x;
    }
  };

  bool closed = false;
  for (int iter = 0; iter < 40 && !closed; ++iter) {
    refresh_chi();
    cplx mean(0.0, 0.0);
    for (double x : chi) mean += cplx(std::cos(x), std::sin(x));
    mean /= static_cast<double>(M);
    if (std::abs(mean) <= 4e-15) {
      closed = true;
      break;
    }
    Eigen::MatrixXd grad(2, 2 * B);
    for (int n = 1; n <= B; ++n) {
      cplx da(0.0, 0.0), db(0.0, 0.0);
      for (int j = 0; j < M; ++j) {
        const double s = kTwoPi * j / M;
        const double x = chi[static_cast<std::size_t>(j)];
        const cplx ie(-std::sin(x), std::cos(x));  // i exp(i chi)
        da += ie * std::cos(n * s);
        db += ie * std::sin(n * s);
      }
      grad(0, 2 * n - 2) = da.real() / M;
      grad(1, 2 * n - 2) = da.imag() / M;
      grad(0, 2 * n - 1) = db.real() / M;
      grad(1, 2 * n - 1) = db.imag() / M;
    }
    const Eigen::Vector2d rhs(-mean.real(), -mean.imag());
    coeff += grad.completeOrthogonalDecomposition().solve(rhs);
  }
  if (!closed) {
    throw NonConvergence("planar random curve closure adjustment did not converge");
  }

  std::vector<Eigen::Vector3d> us(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double x = chi[static_cast<std::size_t>(j)];
    us[static_cast<std::size_t>(j)] = {std::cos(x), std::sin(x), 0.0};
  }
  PeriodicField u = field_from_vec3_samples(us, N);
  for (int c = 0; c < 3; ++c) u.set_mode(c, 0, cplx(0.0, 0.0));
  return u;
}

// 3D random curve: a product of z-rotations advancing at distinct integer
// rates, interleaved with fixed tilts,
//   R(s) = R0 Rz(f1 s + p1) Ry(t1) Rz(f2 s + p2) Ry(pi/2) Rz(f3 s + p3) Ry(t3),
// sampled as the orthonormal triple (R ex, R ey, R ez). Rotation products are
// exactly unit, and every entry is a trigonometric polynomial of band
// f1+f2+f3. With rates {1, 2, 4} no signed combination of the rates cancels,
// and the pi/2 tilt blocks the single frequency-free path, so each component
// of R ez has exactly zero loop mean. R ex and R ey are exact unit normal
// fields along the curve u = R ez, handy for building tangent velocities.
struct RotationFrameSamples {
  std::vector<Eigen::Vector3d> n1, n2, u;
  int band = 0;
};

RotationFrameSamples rotation_curve_samples(int N, std::mt19937_64& rng,
                                            double amplitude, int rate_budget) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int rate[3] = {1, 2, 4};
  for (int i = 2; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<unsigned long long>(i + 1));
    std::swap(rate[i], rate[j]);
  }
  const double tilt = kPi * amplitude;
  const double p1 = kTwoPi * uni(rng);
  const double p2 = kTwoPi * uni(rng);
  const double p3 = kTwoPi * uni(rng);
  const double t1 = tilt * (2.0 * uni(rng) - 1.0);
  const double t3 = tilt * (2.0 * uni(rng) - 1.0);
  const Eigen::Matrix3d orient =
      rot_z(kTwoPi * uni(rng)) * rot_y(kPi * uni(rng)) * rot_z(kTwoPi * uni(rng));

  const int M = 4 * N;
  RotationFrameSamples out;
  out.n1.resize(static_cast<std::size_t>(M));
  out.n2.resize(static_cast<std::size_t>(M));
  out.u.resize(static_cast<std::size_t>(M));
  const Eigen::Matrix3d mid = rot_y(0.5 * kPi);
  const Eigen::Matrix3d last = rot_y(t3);
  // Two factors with rates {1, 2} keep the same zero-mean structure inside a
  // narrower band, for small grids or when the caller needs spectral headroom.
  const bool three_factor = N >= 16 && rate_budget >= 7;
  out.band = three_factor ? rate[0] + rate[1] + rate[2] : 3;
  const Eigen::Matrix3d first = rot_y(t1);
  for (int j = 0; j < M; ++j) {
    const double s = kTwoPi * j / M;
    const Eigen::Matrix3d R =
        three_factor
            ? (orient * rot_z(rate[0] * s + p1) * first * rot_z(rate[1] * s + p2) *
               mid * rot_z(rate[2] * s + p3) * last)
                  .eval()
            : (orient * rot_z(s + p1) * mid * rot_z(2.0 * s + p2) * last).eval();
    const std::size_t k = static_cast<std::size_t>(j);
    out.n1[k] = R.col(0);
    out.n2[k] = R.col(1);
    out.u[k] = R.col(2);
  }
  return out;
}

PeriodicField random_rotation_curve(int N, std::mt19937_64& rng, double amplitude,
                                    int rate_budget) {
  const RotationFrameSamples frame = rotation_curve_samples(N, rng, amplitude, rate_budget);
  PeriodicField u = field_from_vec3_samples(frame.u, N);
  for (int c = 0; c < 3; ++c) u.set_mode(c, 0, cplx(0.0, 0.0));
  return u;
}

// Random real scalar a(s) = sum of modes 0..top with centered Gaussian
// coefficients and decay exp(-(n/n0)^2), n0 = N/16, evaluated on the M grid.
std::vector<double> random_scalar_samples(int N, std::mt19937_64& rng,
                                          double amplitude, int top, int M) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double n0 = N / 16.0;
  std::vector<double> coeff_a(static_cast<std::size_t>(top) + 1, 0.0);
  std::vector<double> coeff_b(static_cast<std::size_t>(top) + 1, 0.0);
  coeff_a[0] = amplitude * gauss(rng);
  for (int n = 1; n <= top; ++n) {
    const double scale = amplitude * std::exp(-(n / n0) * (n / n0)) / std::sqrt(2.0);
    coeff_a[static_cast<std::size_t>(n)] = scale * gauss(rng);
    coeff_b[static_cast<std::size_t>(n)] = scale * gauss(rng);
  }
  std::vector<double> samples(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double s = kTwoPi * j / M;
    double x = coeff_a[0];
    for (int n = 1; n <= top; ++n)
      x += coeff_a[static_cast<std::size_t>(n)] * std::cos(n * s) +
           coeff_b[static_cast<std::size_t>(n)] * std::sin(n * s);
    samples[static_cast<std::size_t>(j)] = x;
  }
  return samples;
}

}  // namespace

CurveState make_circle(int N) {
  CurveState st;
  st.u = PeriodicField::zero(N, 3, true);
  st.v = PeriodicField::zero(N, 3, true);
  set_first_harmonic(st.u, 0, 0.0, -1.0);  // -sin s
  set_first_harmonic(st.u, 1, 1.0, 0.0);   // cos s
  return st;
}

CurveState make_latitude(int N, double psi) {
  require_latitude_angle(psi);
  CurveState st;
  st.u = PeriodicField::zero(N, 3, true);
  st.v = PeriodicField::zero(N, 3, true);
  const double sp = std::sin(psi);
  set_first_harmonic(st.u, 0, sp, 0.0);  // sin(psi) cos s
  set_first_harmonic(st.u, 1, 0.0, sp);  // sin(psi) sin s
  st.u.set_mode(2, 0, std::cos(psi));
  return st;
}

CurveState make_latitude_drift(int N, double psi) {
  CurveState st = make_latitude(N, psi);
  // v = cot(psi) * binormal = (-A cos s, -A sin s, cos(psi)), A = cos(psi)^2/sin(psi).
  const double cp = std::cos(psi);
  const double amp = cp * cp / std::sin(psi);
  set_first_harmonic(st.v, 0, -amp, 0.0);
  set_first_harmonic(st.v, 1, 0.0, -amp);
  st.v.set_mode(2, 0, cp);
  return st;
}

CurveState make_perturbed_circle(int N, double eps, int m, bool planar) {
  if (!(eps >= 0.0 && eps <= 0.1)) {
    throw ConfigError("perturbation amplitude must lie in [0, 0.1]");
  }
  if (m < 2 || m > N / 4) {
    throw ConfigError("perturbation wave number must lie in [2, N/4]");
  }
  const int M = 4 * N;
  std::vector<Eigen::Vector3d> us(static_cast<size_t>(M));
  std::vector<Eigen::Vector3d> vs(static_cast<size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double s = kTwoPi * j / M;
    const size_t k = static_cast<size_t>(j);
    if (planar) {
      // Bend the tangent angle: every harmonic of u sits at wave number
      // 1 + k*m, so the loop mean stays exactly zero for m >= 2.
      const double phi = s + 0.5 * kPi + eps * std::cos(m * s);
      us[k] = {std::cos(phi), std::sin(phi), 0.0};
      vs[k] = eps * std::sin(m * s) * Eigen::Vector3d{-std::sin(phi), std::cos(phi), 0.0};
    } else {
      // Tilt out of plane and renormalize; the component parities in s keep
      // both the tangent and velocity means exactly zero.
      const double phi = s + 0.5 * kPi;
      const Eigen::Vector3d w{std::cos(phi), std::sin(phi), eps * std::cos(m * s)};
      const Eigen::Vector3d u = w.normalized();
      us[k] = u;
      vs[k] = eps * std::sin(m * s) * (Eigen::Vector3d::UnitZ() - u.z() * u);
    }
  }
  CurveState st;
  st.u = field_from_vec3_samples(us, N);
  st.v = field_from_vec3_samples(vs, N);
  return st;
}

PeriodicField make_random_closed_curve(int N, unsigned long long seed, double amplitude,
                                       bool planar, bool narrow_band) {
  if (!(amplitude >= 0.0 && amplitude <= 0.5)) {
    throw ConfigError("random curve amplitude must lie in [0, 0.5]");
  }
  std::mt19937_64 rng(seed);
  return planar ? random_planar_curve(N, rng, amplitude)
                : random_rotation_curve(N, rng, amplitude, narrow_band ? 3 : 7);
}

CurveState make_random_compatible(int N, unsigned long long seed, bool planar) {
  std::mt19937_64 rng(seed);
  const int M = 4 * N;
  CurveState st;
  // Velocity: random low-band coefficients on exact unit normal fields along
  // the curve, so tangency holds pointwise by construction and the product
  // stays well inside the working band (the velocity mean may be nonzero).
  std::vector<Eigen::Vector3d> vs(static_cast<std::size_t>(M));
  if (planar) {
    st.u = random_planar_curve(N, rng, 0.25);
    // The out-of-plane normal would break planarity, so the velocity bends
    // along the in-plane normal (-u_y, u_x, 0) alone.
    const std::vector<Eigen::Vector3d> us = eval_vec3_real(st.u, M);
    const std::vector<double> a = random_scalar_samples(N, rng, 0.25, N / 8, M);
    for (int j = 0; j < M; ++j) {
      const std::size_t k = static_cast<std::size_t>(j);
      vs[k] = a[k] * Eigen::Vector3d(-us[k].y(), us[k].x(), 0.0);
    }
  } else {
    // The transform convolves the velocity with the moving frame; a narrow
    // curve band and low coefficient band leave headroom for that spread.
    const RotationFrameSamples frame = rotation_curve_samples(N, rng, 0.25, 3);
    PeriodicField u = field_from_vec3_samples(frame.u, N);
    for (int c = 0; c < 3; ++c) u.set_mode(c, 0, cplx(0.0, 0.0));
    st.u = u;
    const int top = std::max(0, std::min(N / 8, N / 2 - 1 - frame.band));
    const std::vector<double> a = random_scalar_samples(N, rng, 0.25, top, M);
    const std::vector<double> b = random_scalar_samples(N, rng, 0.25, top, M);
    for (int j = 0; j < M; ++j) {
      const std::size_t k = static_cast<std::size_t>(j);
      vs[k] = a[k] * frame.n1[k] + b[k] * frame.n2[k];
    }
  }
  st.v = field_from_vec3_samples(vs, N);
  return st;
}

}  // namespace elastica
