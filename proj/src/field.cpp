#include "elastica/field.hpp"

#include <algorithm>
#include <cmath>

#include "elastica/fft.hpp"

namespace elastica {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require(bool cond, const std::string& msg) {
  if (!cond) throw ElasticaError(msg);
}

}  // namespace

// ---- PeriodicField --------------------------------------------------------

int PeriodicField::index(int component, int n) const {
  int j = n >= 0 ? n : n + grid_;
  return component * grid_ + j;
}

PeriodicField PeriodicField::zero(int grid, int components, bool real_valued) {
  PeriodicField f;
  f.grid_ = grid;
  f.components_ = components;
  f.real_valued_ = real_valued;
  f.modes_.assign(static_cast<size_t>(grid) * components, cplx(0.0, 0.0));
  return f;
}

PeriodicField PeriodicField::from_modes(std::vector<cplx> modes, int grid, int components,
                                        bool real_valued) {
  require(is_power_of_two(grid), "grid size must be a power of two");
  require(components == 1 || components == 3, "fields have 1 or 3 components");
  require(static_cast<int>(modes.size()) == grid * components,
          "mode count does not match grid/components");
  PeriodicField f;
  f.grid_ = grid;
  f.components_ = components;
  f.real_valued_ = real_valued;
  f.modes_ = std::move(modes);
  return f;
}

double PeriodicField::hermitian_defect() const {
  double worst = 0.0;
  for (int c = 0; c < components_; ++c) {
    for (int n = 0; n < grid_ / 2; ++n) {
      cplx a = mode(c, n);
      cplx b = mode(c, n == 0 ? 0 : -n);
      worst = std::max(worst, std::abs(a - std::conj(b)));
    }
    // The unpaired -N/2 mode must be real for a real field.
    worst = std::max(worst, std::abs(std::imag(mode(c, -grid_ / 2))));
  }
  return worst;
}

PeriodicField& PeriodicField::operator+=(const PeriodicField& other) {
  require(grid_ == other.grid_ && components_ == other.components_,
          "field shape mismatch in addition");
  for (size_t i = 0; i < modes_.size(); ++i) modes_[i] += other.modes_[i];
  real_valued_ = real_valued_ && other.real_valued_;
  return *this;
}

PeriodicField& PeriodicField::operator-=(const PeriodicField& other) {
  require(grid_ == other.grid_ && components_ == other.components_,
          "field shape mismatch in subtraction");
  for (size_t i = 0; i < modes_.size(); ++i) modes_[i] -= other.modes_[i];
  real_valued_ = real_valued_ && other.real_valued_;
  return *this;
}

PeriodicField& PeriodicField::operator*=(cplx scale) {
  for (auto& m : modes_) m *= scale;
  real_valued_ = real_valued_ && std::imag(scale) == 0.0;
  return *this;
}

PeriodicField operator+(PeriodicField a, const PeriodicField& b) { return a += b; }
PeriodicField operator-(PeriodicField a, const PeriodicField& b) { return a -= b; }
PeriodicField operator*(cplx scale, PeriodicField f) { return f *= scale; }

// ---- transforms -----------------------------------------------------------

PeriodicField transform_to_modes(const std::vector<cplx>& samples, int components) {
  require(components == 1 || components == 3, "fields have 1 or 3 components");
  require(samples.size() % components == 0, "sample count not divisible by components");
  const int N = static_cast<int>(samples.size()) / components;
  require(is_power_of_two(N), "grid size must be a power of two");
  std::vector<cplx> modes(samples.size());
  for (int c = 0; c < components; ++c) {
    fft::forward(samples.data() + static_cast<size_t>(c) * N,
                 modes.data() + static_cast<size_t>(c) * N, N);
  }
  const double inv = 1.0 / N;
  for (auto& m : modes) m *= inv;
  return PeriodicField::from_modes(std::move(modes), N, components, false);
}

PeriodicField transform_to_modes(const std::vector<double>& samples, int components) {
  std::vector<cplx> cs(samples.begin(), samples.end());
  PeriodicField f = transform_to_modes(cs, components);
  f.set_real_valued(true);
  return f;
}

std::vector<cplx> transform_to_samples(const PeriodicField& f) {
  return eval_on_grid(f, f.grid());
}

std::vector<cplx> eval_on_grid(const PeriodicField& f, int M) {
  const int N = f.grid();
  require(N > 0, "cannot evaluate an empty field");
  require(M >= N, "evaluation grid must be at least the field grid");
  const int C = f.components();
  std::vector<cplx> out(static_cast<size_t>(M) * C);
  std::vector<cplx> padded(M);
  for (int c = 0; c < C; ++c) {
    std::fill(padded.begin(), padded.end(), cplx(0.0, 0.0));
    for (int n = -N / 2; n < N / 2; ++n) {
      int j = n >= 0 ? n : n + M;
      padded[j] = f.mode(c, n);
    }
    fft::backward(padded.data(), out.data() + static_cast<size_t>(c) * M, M);
  }
  return out;
}

PeriodicField truncate_from_samples(const std::vector<cplx>& samples, int M, int N,
                                    int components, bool real_valued) {
  require(static_cast<int>(samples.size()) == M * components,
          "sample count does not match padded grid");
  require(M >= N, "padded grid smaller than target grid");
  std::vector<cplx> modes(static_cast<size_t>(N) * components);
  std::vector<cplx> full(M);
  const double inv = 1.0 / M;
  // Real data truncates onto the symmetric band |n| <= N/2 - 1: keeping the
  // unpaired -N/2 coefficient would break the Hermitian mode symmetry that
  // differentiation and operator assembly rely on.
  const int low = real_valued ? -N / 2 + 1 : -N / 2;
  for (int c = 0; c < components; ++c) {
    fft::forward(samples.data() + static_cast<size_t>(c) * M, full.data(), M);
    for (int n = low; n < N / 2; ++n) {
      int jm = n >= 0 ? n : n + M;
      int jn = n >= 0 ? n : n + N;
      modes[static_cast<size_t>(c) * N + jn] = full[jm] * inv;
    }
  }
  return PeriodicField::from_modes(std::move(modes), N, components, real_valued);
}

// ---- spectral calculus ----------------------------------------------------

PeriodicField differentiate(const PeriodicField& f, int order, double shift) {
  require(order >= 0 && order <= 4, "derivative order must be in {0,...,4}");
  PeriodicField g = f;
  const int N = f.grid();
  for (int c = 0; c < f.components(); ++c) {
    for (int n = -N / 2; n < N / 2; ++n) {
      cplx factor = 1.0;
      const cplx iw(0.0, n + shift);
      for (int k = 0; k < order; ++k) factor *= iw;
      g.set_mode(c, n, factor * f.mode(c, n));
    }
  }
  g.set_real_valued(f.real_valued() && shift == 0.0);
  return g;
}

double sobolev_norm(const PeriodicField& f, double r) {
  const int N = f.grid();
  double sum = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    for (int n = -N / 2; n < N / 2; ++n) {
      const double w = std::pow(1.0 + static_cast<double>(n) * n, r);
      sum += w * std::norm(f.mode(c, n));
    }
  }
  return std::sqrt(sum);
}

double y_norm(const PeriodicField& P, const PeriodicField& Q, double r) {
  const double np = sobolev_norm(P, r);
  const double nq = sobolev_norm(Q, r + 1.0);
  return std::sqrt(np * np + nq * nq);
}

PeriodicField multiply(const PeriodicField& f, const PeriodicField& g) {
  require(f.grid() == g.grid(), "product factors live on different grids");
  require(f.components() == 1 || g.components() == 1,
          "vector*vector products are ambiguous; use dot/cross helpers");
  const int N = f.grid();
  const int M = padded_size(N);
  const int C = std::max(f.components(), g.components());
  std::vector<cplx> fv = eval_on_grid(f, M);
  std::vector<cplx> gv = eval_on_grid(g, M);
  std::vector<cplx> prod(static_cast<size_t>(M) * C);
  for (int c = 0; c < C; ++c) {
    const cplx* fp = fv.data() + static_cast<size_t>(f.components() == 1 ? 0 : c) * M;
    const cplx* gp = gv.data() + static_cast<size_t>(g.components() == 1 ? 0 : c) * M;
    for (int j = 0; j < M; ++j) prod[static_cast<size_t>(c) * M + j] = fp[j] * gp[j];
  }
  return truncate_from_samples(prod, M, N, C, f.real_valued() && g.real_valued());
}

// ---- pointwise helpers ----------------------------------------------------

PeriodicField conj_field(const PeriodicField& f) {
  const int N = f.grid();
  PeriodicField g = PeriodicField::zero(N, f.components(), f.real_valued());
  for (int c = 0; c < f.components(); ++c) {
    for (int n = -N / 2; n < N / 2; ++n) {
      // conj(f)^(n) = conj(fhat(-n)); wave number N/2 has no stored partner,
      // so the -N/2 coefficient maps onto itself.
      int m = n == -N / 2 ? n : -n;
      g.set_mode(c, n, std::conj(f.mode(c, m)));
    }
  }
  return g;
}

PeriodicField real_part(const PeriodicField& f) {
  PeriodicField g = 0.5 * (f + conj_field(f));
  g.set_real_valued(true);
  return g;
}

PeriodicField imag_part(const PeriodicField& f) {
  PeriodicField g = cplx(0.0, -0.5) * (f - conj_field(f));
  g.set_real_valued(true);
  return g;
}

PeriodicField abs_squared(const PeriodicField& f) {
  require(f.components() == 1, "abs_squared expects a scalar field");
  PeriodicField g = multiply(f, conj_field(f));
  g.set_real_valued(true);
  return g;
}

PeriodicField dot_field(const PeriodicField& f, const PeriodicField& g) {
  require(f.components() == g.components(), "dot product needs matching components");
  PeriodicField sum = multiply(component(f, 0), component(g, 0));
  for (int c = 1; c < f.components(); ++c) sum += multiply(component(f, c), component(g, c));
  return sum;
}

PeriodicField component(const PeriodicField& f, int c) {
  require(c >= 0 && c < f.components(), "component index out of range");
  const int N = f.grid();
  std::vector<cplx> modes(f.raw_modes().begin() + static_cast<size_t>(c) * N,
                          f.raw_modes().begin() + static_cast<size_t>(c + 1) * N);
  return PeriodicField::from_modes(std::move(modes), N, 1, f.real_valued());
}

PeriodicField assemble_vector(const PeriodicField& x, const PeriodicField& y,
                              const PeriodicField& z) {
  const int N = x.grid();
  require(y.grid() == N && z.grid() == N, "vector components on different grids");
  std::vector<cplx> modes;
  modes.reserve(static_cast<size_t>(3) * N);
  modes.insert(modes.end(), x.raw_modes().begin(), x.raw_modes().end());
  modes.insert(modes.end(), y.raw_modes().begin(), y.raw_modes().end());
  modes.insert(modes.end(), z.raw_modes().begin(), z.raw_modes().end());
  return PeriodicField::from_modes(std::move(modes), N, 3,
                                   x.real_valued() && y.real_valued() && z.real_valued());
}

cplx mean(const PeriodicField& f, int component) { return f.mode(component, 0); }

Eigen::Vector3cd mean_vector(const PeriodicField& f) {
  return {f.mode(0, 0), f.mode(1, 0), f.mode(2, 0)};
}

double sup_norm(const PeriodicField& f) {
  const int M = 4 * f.grid();
  std::vector<cplx> v = eval_on_grid(f, M);
  double worst = 0.0;
  for (int j = 0; j < M; ++j) {
    double a = 0.0;
    for (int c = 0; c < f.components(); ++c) a += std::norm(v[static_cast<size_t>(c) * M + j]);
    worst = std::max(worst, a);
  }
  return std::sqrt(worst);
}

double sup_distance(const PeriodicField& f, const PeriodicField& g) { return sup_norm(f - g); }

std::vector<Eigen::Vector3cd> eval_vec3(const PeriodicField& f, int M) {
  require(f.components() == 3, "eval_vec3 expects a 3-vector field");
  std::vector<cplx> v = eval_on_grid(f, M);
  std::vector<Eigen::Vector3cd> out(M);
  for (int j = 0; j < M; ++j)
    out[j] = Eigen::Vector3cd(v[j], v[static_cast<size_t>(M) + j],
                              v[static_cast<size_t>(2) * M + j]);
  return out;
}

std::vector<Eigen::Vector3d> eval_vec3_real(const PeriodicField& f, int M) {
  std::vector<Eigen::Vector3cd> v = eval_vec3(f, M);
  std::vector<Eigen::Vector3d> out(M);
  for (int j = 0; j < M; ++j) out[j] = v[j].real();
  return out;
}

PeriodicField field_from_vec3_samples(const std::vector<Eigen::Vector3d>& values, int N) {
  const int M = static_cast<int>(values.size());
  std::vector<cplx> samples(static_cast<size_t>(3) * M);
  for (int j = 0; j < M; ++j)
    for (int c = 0; c < 3; ++c) samples[static_cast<size_t>(c) * M + j] = values[j][c];
  return truncate_from_samples(samples, M, N, 3, true);
}

PeriodicField field_from_scalar_samples(const std::vector<double>& values, int N) {
  const int M = static_cast<int>(values.size());
  std::vector<cplx> samples(values.begin(), values.end());
  return truncate_from_samples(samples, M, N, 1, true);
}

}  // namespace elastica
