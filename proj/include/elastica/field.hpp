#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

// Periodic Fourier representation on [0, 2*pi): mode storage, spectral
// differentiation with a real wave-number shift, dealiased products, and the
// Sobolev-type norms used by the solver.
//
// Normalization: coefficients are means, f(s) = sum_n fhat(n) e^{i n s} with
// fhat(0) = (1/2*pi) * integral of f. Wave numbers run over n in [-N/2, N/2).
namespace elastica {

using cplx = std::complex<double>;
inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

struct ElasticaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : ElasticaError {
  using ElasticaError::ElasticaError;
};
struct DegenerateCurvature : ElasticaError {
  using ElasticaError::ElasticaError;
};
struct OpenLoop : ElasticaError {
  using ElasticaError::ElasticaError;
};
struct SingularOperator : ElasticaError {
  using ElasticaError::ElasticaError;
};
struct SolverFailure : ElasticaError {
  using ElasticaError::ElasticaError;
};
struct IncompatibleState : ElasticaError {
  using ElasticaError::ElasticaError;
};
struct NonConvergence : ElasticaError {
  using ElasticaError::ElasticaError;
};
struct Instability : ElasticaError {
  using ElasticaError::ElasticaError;
};

// 2*pi-periodic function stored as Fourier modes; 1 (scalar) or 3 (vector)
// components. Mode storage is FFT order per component: index j in [0, N)
// holds wave number n = j for j < N/2 and n = j - N otherwise.
class PeriodicField {
 public:
  PeriodicField() = default;

  static PeriodicField zero(int grid, int components = 1, bool real_valued = true);
  static PeriodicField from_modes(std::vector<cplx> modes, int grid, int components,
                                  bool real_valued = false);

  int grid() const { return grid_; }
  int components() const { return components_; }
  bool real_valued() const { return real_valued_; }
  void set_real_valued(bool r) { real_valued_ = r; }

  bool empty() const { return grid_ == 0; }

  // Mode access by wave number n in [-N/2, N/2).
  cplx mode(int component, int n) const { return modes_[index(component, n)]; }
  void set_mode(int component, int n, cplx value) { modes_[index(component, n)] = value; }

  const std::vector<cplx>& raw_modes() const { return modes_; }
  std::vector<cplx>& raw_modes() { return modes_; }

  // Largest |fhat(n)| deviation from the real-field symmetry fhat(-n) = conj(fhat(n)).
  double hermitian_defect() const;

  PeriodicField& operator+=(const PeriodicField& other);
  PeriodicField& operator-=(const PeriodicField& other);
  PeriodicField& operator*=(cplx scale);

 private:
  int index(int component, int n) const;

  int grid_ = 0;
  int components_ = 1;
  bool real_valued_ = false;
  std::vector<cplx> modes_;  // component-major, FFT order
};

PeriodicField operator+(PeriodicField a, const PeriodicField& b);
PeriodicField operator-(PeriodicField a, const PeriodicField& b);
PeriodicField operator*(cplx scale, PeriodicField f);

// ---- transforms -----------------------------------------------------------

// Equispaced samples (component-major blocks of length N) -> modes.
// N must be a power of two; the complex overload clears the real flag.
PeriodicField transform_to_modes(const std::vector<cplx>& samples, int components = 1);
PeriodicField transform_to_modes(const std::vector<double>& samples, int components = 1);

// Modes -> samples on the field's own N-point grid (component-major).
std::vector<cplx> transform_to_samples(const PeriodicField& f);

// Zero-padded evaluation on an M-point equispaced grid, M >= N.
std::vector<cplx> eval_on_grid(const PeriodicField& f, int M);

// Forward transform at grid size M followed by truncation to N modes.
// Used to bring padded pointwise results back to the working band.
PeriodicField truncate_from_samples(const std::vector<cplx>& samples, int M, int N,
                                    int components, bool real_valued);

// Default dealiasing grid (3/2 rule).
inline int padded_size(int N) { return (3 * N) / 2; }

// ---- spectral calculus ----------------------------------------------------

// Output modes (i(n + shift))^k fhat(n); k in {0,...,4}.
PeriodicField differentiate(const PeriodicField& f, int order, double shift = 0.0);

// sqrt( sum_n (1+n^2)^r |fhat(n)|^2 ), summed over components.
double sobolev_norm(const PeriodicField& f, double r);

// sqrt( ||P||_{H^r}^2 + ||Q||_{H^{r+1}}^2 ).
double y_norm(const PeriodicField& P, const PeriodicField& Q, double r);

// Dealiased pointwise product (3/2-rule zero padding). Scalar*scalar,
// scalar*vector, or vector*scalar; vector*vector is rejected (use dot/cross).
PeriodicField multiply(const PeriodicField& f, const PeriodicField& g);

// ---- pointwise helpers ----------------------------------------------------

PeriodicField conj_field(const PeriodicField& f);
PeriodicField real_part(const PeriodicField& f);
PeriodicField imag_part(const PeriodicField& f);

// f * conj(f), dealiased; real by construction.
PeriodicField abs_squared(const PeriodicField& f);

// Componentwise sum of dealiased products (no conjugation): sum_c f_c g_c.
PeriodicField dot_field(const PeriodicField& f, const PeriodicField& g);

PeriodicField component(const PeriodicField& f, int c);
PeriodicField assemble_vector(const PeriodicField& x, const PeriodicField& y,
                              const PeriodicField& z);

// Mean over the period = mode 0 (per component for vectors).
cplx mean(const PeriodicField& f, int component = 0);
Eigen::Vector3cd mean_vector(const PeriodicField& f);

// max |f(s)| over a fine (4N) evaluation grid; vector fields use the
// Euclidean norm per point.
double sup_norm(const PeriodicField& f);

// max |f(s) - g(s)| over a fine grid.
double sup_distance(const PeriodicField& f, const PeriodicField& g);

// 3-vector field <-> per-point Eigen values on an M-grid.
std::vector<Eigen::Vector3cd> eval_vec3(const PeriodicField& f, int M);
std::vector<Eigen::Vector3d> eval_vec3_real(const PeriodicField& f, int M);
PeriodicField field_from_vec3_samples(const std::vector<Eigen::Vector3d>& values, int N);
PeriodicField field_from_scalar_samples(const std::vector<double>& values, int N);

}  // namespace elastica
