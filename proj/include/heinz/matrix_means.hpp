#pragma once

#include <cmath>
#include <utility>

#include "heinz/errors.hpp"
#include "heinz/linalg.hpp"

namespace heinz {

// Construction tolerance for the PSD check on mean-triple inputs.
inline constexpr double kMeanPsdTol = 1e-10;

struct MeanTriple {
  la::HermitianMatrix A;
  la::HermitianMatrix B;
  la::ComplexMatrix X;

  MeanTriple(la::HermitianMatrix A_, la::HermitianMatrix B_,
             la::ComplexMatrix X_)
      : A(std::move(A_)), B(std::move(B_)), X(std::move(X_)) {
    if (A.n() != B.n() || X.n_rows() != A.n() || X.n_cols() != A.n())
      throw usage_error("MeanTriple: dimensions must agree");
    if (!la::is_psd(A, kMeanPsdTol) || !la::is_psd(B, kMeanPsdTol))
      throw precondition_error("MeanTriple: A and B must be PSD");
  }
};

// A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.  The range [0,2]
// covers the doubled parameters of the squared-parameter ordering theorem;
// nothing in scope needs more.
inline la::HermitianMatrix geo_mean_t(const la::HermitianMatrix& A,
                                      const la::HermitianMatrix& B, double t) {
  if (!(t >= 0.0 && t <= 2.0))
    throw domain_error("geo_mean_t: t must lie in [0,2]");
  if (A.n() != B.n()) throw usage_error("geo_mean_t: dimensions must agree");
  la::HermitianMatrix root = la::matrix_power(A, 0.5);
  la::HermitianMatrix inv_root = la::matrix_power(A, -0.5);
  la::HermitianMatrix inner(inv_root.matrix() * B.matrix() * inv_root.matrix());
  la::HermitianMatrix powered = la::matrix_power(inner, t);
  return la::HermitianMatrix(root.matrix() * powered.matrix() * root.matrix());
}

inline la::HermitianMatrix arith_mean_t(const la::HermitianMatrix& A,
                                        const la::HermitianMatrix& B,
                                        double t) {
  if (A.n() != B.n()) throw usage_error("arith_mean_t: dimensions must agree");
  return la::HermitianMatrix((1.0 - t) * A.matrix() + t * B.matrix());
}

// H_t(A,B) = (A #_t B + A #_{1-t} B)/2.
inline la::HermitianMatrix matrix_heinz(const la::HermitianMatrix& A,
                                        const la::HermitianMatrix& B,
                                        double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("matrix_heinz: t must lie in [0,1]");
  la::HermitianMatrix lo = geo_mean_t(A, B, t);
  la::HermitianMatrix hi = geo_mean_t(A, B, 1.0 - t);
  return la::HermitianMatrix(0.5 * (lo.matrix() + hi.matrix()));
}

// A^t X B^{1-t} + A^{1-t} X B^t.
inline la::ComplexMatrix heinz_sandwich(const MeanTriple& T, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("heinz_sandwich: t must lie in [0,1]");
  la::HermitianMatrix at = la::matrix_power(T.A, t);
  la::HermitianMatrix a1t = la::matrix_power(T.A, 1.0 - t);
  la::HermitianMatrix bt = la::matrix_power(T.B, t);
  la::HermitianMatrix b1t = la::matrix_power(T.B, 1.0 - t);
  return at.matrix() * T.X * b1t.matrix() + a1t.matrix() * T.X * bt.matrix();
}

// tr(A^t B^{1-t}).  The exact value is real; imaginary dust beyond
// 1e-10 |trace| indicates a numerics problem and is rejected.
inline double trace_power_product(const la::HermitianMatrix& A,
                                  const la::HermitianMatrix& B, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("trace_power_product: t must lie in [0,1]");
  if (A.n() != B.n())
    throw usage_error("trace_power_product: dimensions must agree");
  la::HermitianMatrix at = la::matrix_power(A, t);
  la::HermitianMatrix b1t = la::matrix_power(B, 1.0 - t);
  la::cplx tr = 0.0;
  int n = A.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) tr += at(i, j) * b1t(j, i);
  if (std::fabs(tr.imag()) > 1e-10 * std::abs(tr) + 1e-300)
    throw numerical_error("trace_power_product: non-real trace");
  return tr.real();
}

struct SpectralBounds {
  double m;            // smallest eigenvalue over both spectra
  double M;            // largest eigenvalue over both spectra
  double kantorovich;  // ((M+m)/(2 sqrt(mM)))^2
};

inline SpectralBounds spectral_bounds(const la::HermitianMatrix& A,
                                      const la::HermitianMatrix& B) {
  la::EigenDecomposition ea = la::eigh(A);
  la::EigenDecomposition eb = la::eigh(B);
  double m = std::min(ea.lambda.back(), eb.lambda.back());
  double M = std::max(ea.lambda.front(), eb.lambda.front());
  if (!(m > 0.0))
    throw precondition_error("spectral_bounds: A and B must be PD");
  double base = (M + m) / (2.0 * std::sqrt(m) * std::sqrt(M));
  return {m, M, base * base};
}

}  // namespace heinz
