#include "elastica/tension.hpp"

#include <cmath>

namespace elastica {
namespace {

Eigen::VectorXcd field_to_vector(const PeriodicField& f) {
  const int N = f.grid();
  Eigen::VectorXcd x(N);
  for (int a = 0; a < N; ++a) x[a] = f.mode(0, operator_wave_number(a, N));
  return x;
}

PeriodicField vector_to_real_field(const Eigen::VectorXcd& x, int N) {
  PeriodicField f = PeriodicField::zero(N, 1, false);
  for (int a = 0; a < N; ++a) f.set_mode(0, operator_wave_number(a, N), x[a]);
  // The solutions of these problems are real; discard the round-off
  // skew-Hermitian part instead of carrying it into later products.
  f = real_part(f);
  return f;
}

}  // namespace

Eigen::MatrixXcd assemble_operator(const PeriodicField& kappa_sq) {
  if (kappa_sq.components() != 1)
    throw ElasticaError("operator potential must be a scalar field");
  const int N = kappa_sq.grid();
  Eigen::MatrixXcd A(N, N);
  for (int a = 0; a < N; ++a) {
    const int n = operator_wave_number(a, N);
    for (int b = 0; b < N; ++b) {
      const int m = operator_wave_number(b, N);
      const int diff = n - m;
      cplx pot = 0.0;
      // The unpaired -N/2 coefficient has no +N/2 partner in the truncated
      // band; including it one-sidedly would break Hermiticity, so the
      // potential uses the symmetric band only.
      if (diff > -N / 2 && diff < N / 2) pot = kappa_sq.mode(0, diff);
      A(a, b) = pot;
    }
    A(a, a) += static_cast<double>(n) * n;
  }
  return A;
}

PeriodicField solve_operator(const PeriodicField& kappa_sq, const PeriodicField& f,
                             double rel_tol) {
  const int N = f.grid();
  Eigen::MatrixXcd A = assemble_operator(kappa_sq);
  Eigen::VectorXcd rhs = field_to_vector(f);
  Eigen::LLT<Eigen::MatrixXcd> llt(A);
  Eigen::VectorXcd sol;
  if (llt.info() == Eigen::Success) {
    sol = llt.solve(rhs);
  } else {
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(A);
    if (ldlt.info() != Eigen::Success)
      throw SolverFailure("factorization of -d2/ds2 + kappa^2 failed");
    sol = ldlt.solve(rhs);
  }
  const double scale = std::max(rhs.norm(), 1e-300);
  const double residual = (A * sol - rhs).norm() / scale;
  if (residual > rel_tol)
    throw SolverFailure("elliptic solve residual " + std::to_string(residual) +
                        " exceeds tolerance");
  return vector_to_real_field(sol, N);
}

PeriodicField solve_tension(const CurveState& state) {
  PeriodicField du = differentiate(state.u, 1);
  PeriodicField d2u = differentiate(state.u, 2);
  PeriodicField kappa_sq = dot_field(du, du);
  PeriodicField rhs = dot_field(state.v, state.v) + 2.0 * multiply(kappa_sq, kappa_sq) -
                      dot_field(d2u, d2u);
  PeriodicField w = solve_operator(kappa_sq, rhs);
  PeriodicField lambda = w - 2.0 * kappa_sq;
  lambda.set_real_valued(true);
  return lambda;
}

PeriodicField solve_mu(const PeriodicField& P, const PeriodicField& Q, double beta) {
  PeriodicField q_sq = abs_squared(Q);
  if (std::abs(mean(q_sq, 0)) < 1e-12)
    throw SingularOperator("|Q| vanishes identically; mode-0 row of the operator is zero");
  PeriodicField dQ = differentiate(Q, 1, beta);
  PeriodicField rhs = abs_squared(P) + multiply(q_sq, q_sq) - abs_squared(dQ);
  return solve_operator(q_sq, rhs);
}

double lowest_eigenvalue(const PeriodicField& kappa) {
  PeriodicField kappa_sq = multiply(kappa, kappa);
  Eigen::MatrixXcd A = assemble_operator(kappa_sq);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(A, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw SolverFailure("eigenvalue iteration failed");
  return eig.eigenvalues()[0];
}

ResolventCheck resolvent_crosscheck(const PeriodicField& kappa, const PeriodicField& f,
                                    double tol, int max_iter) {
  const int N = f.grid();
  PeriodicField kappa_sq = multiply(kappa, kappa);
  ResolventCheck out;
  out.mu_direct = solve_operator(kappa_sq, f);

  // (-d^2/ds^2 + 1)^{-1} is diagonal: divide mode n by n^2 + 1.
  auto shifted_inverse = [N](const PeriodicField& g) {
    PeriodicField h = g;
    for (int n = -N / 2; n < N / 2; ++n)
      h.set_mode(0, n, g.mode(0, n) / (1.0 + static_cast<double>(n) * n));
    return h;
  };

  PeriodicField potential = kappa_sq;
  potential.set_mode(0, 0, potential.mode(0, 0) - 1.0);  // kappa^2 - 1
  PeriodicField w = shifted_inverse(f);
  double prev_delta = -1.0;
  int grew = 0;
  for (int k = 1; k <= max_iter; ++k) {
    PeriodicField w_next = shifted_inverse(f - multiply(potential, w));
    const double delta = sobolev_norm(w_next - w, 0.0);
    w = w_next;
    out.iterations = k;
    if (delta < tol * std::max(1.0, sobolev_norm(w, 0.0))) {
      out.mu_iterative = w;
      out.discrepancy = sobolev_norm(out.mu_iterative - out.mu_direct, 0.0);
      return out;
    }
    if (prev_delta >= 0.0 && delta > prev_delta) {
      if (++grew >= 3) throw NonConvergence("resolvent iteration diverges; use the dense solve");
    } else {
      grew = 0;
    }
    prev_delta = delta;
  }
  throw NonConvergence("resolvent iteration did not converge within the iteration budget");
}

}  // namespace elastica
