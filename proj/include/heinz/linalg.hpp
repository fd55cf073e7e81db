#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "heinz/errors.hpp"
#include "heinz/rng.hpp"

namespace heinz::la {

using cplx = std::complex<double>;

// Dense row-major complex matrix with value semantics.  Sizes stay small
// (n <= 16), so clarity wins over blocking or views.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows <= 0 || cols <= 0)
      throw domain_error("ComplexMatrix: dimensions must be positive");
    data_.assign(static_cast<size_t>(rows) * cols, cplx(0.0, 0.0));
  }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int n_rows() const { return rows_; }
  int n_cols() const { return cols_; }

  cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
  }

  cplx trace() const {
    if (rows_ != cols_) throw usage_error("trace: matrix must be square");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

inline ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.n_rows() != y.n_rows() || x.n_cols() != y.n_cols())
    throw usage_error("matrix add: dimension mismatch");
  ComplexMatrix r(x.n_rows(), x.n_cols());
  for (int i = 0; i < x.n_rows(); ++i)
    for (int j = 0; j < x.n_cols(); ++j) r(i, j) = x(i, j) + y(i, j);
  return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.n_rows() != y.n_rows() || x.n_cols() != y.n_cols())
    throw usage_error("matrix subtract: dimension mismatch");
  ComplexMatrix r(x.n_rows(), x.n_cols());
  for (int i = 0; i < x.n_rows(); ++i)
    for (int j = 0; j < x.n_cols(); ++j) r(i, j) = x(i, j) - y(i, j);
  return r;
}

inline ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
  if (x.n_cols() != y.n_rows())
    throw usage_error("matrix multiply: dimension mismatch");
  ComplexMatrix r(x.n_rows(), y.n_cols());
  for (int i = 0; i < x.n_rows(); ++i)
    for (int k = 0; k < x.n_cols(); ++k) {
      cplx xik = x(i, k);
      if (xik == cplx(0.0, 0.0)) continue;
      for (int j = 0; j < y.n_cols(); ++j) r(i, j) += xik * y(k, j);
    }
  return r;
}

inline ComplexMatrix operator*(double s, const ComplexMatrix& x) {
  ComplexMatrix r(x.n_rows(), x.n_cols());
  for (int i = 0; i < x.n_rows(); ++i)
    for (int j = 0; j < x.n_cols(); ++j) r(i, j) = s * x(i, j);
  return r;
}

// Hermitian wrapper: stores (M + M*)/2 and rejects inputs whose deviation
// from Hermitian symmetry exceeds 1e-12 (1 + ||M||_F).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m) {
    if (m.n_rows() != m.n_cols())
      throw usage_error("HermitianMatrix: matrix must be square");
    int n = m.n_rows();
    double dev = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dev += std::norm(m(i, j) - std::conj(m(j, i)));
    dev = std::sqrt(dev);
    if (dev > 1e-12 * (1.0 + m.frobenius()))
      throw precondition_error("HermitianMatrix: input is not Hermitian");
    mat_ = ComplexMatrix(n, n);
    for (int i = 0; i < n; ++i) {
      mat_(i, i) = cplx(m(i, i).real(), 0.0);
      for (int j = i + 1; j < n; ++j) {
        cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
        mat_(i, j) = v;
        mat_(j, i) = std::conj(v);
      }
    }
  }

  int n() const { return mat_.n_rows(); }
  const ComplexMatrix& matrix() const { return mat_; }
  const cplx& operator()(int i, int j) const { return mat_(i, j); }

 private:
  ComplexMatrix mat_;
};

struct EigenDecomposition {
  ComplexMatrix U;            // unitary, columns are eigenvectors
  std::vector<double> lambda; // descending
  double source_norm;         // Frobenius norm of the input
};

// Cyclic complex Jacobi.  Each rotation zeroes one off-diagonal pair with a
// unitary 2x2 block; sweeps stop once the off-diagonal Frobenius mass drops
// below tol * ||A||_F.
inline EigenDecomposition eigh(const HermitianMatrix& A, double tol = 1e-13) {
  if (!(tol > 0.0)) throw domain_error("eigh: tol must be > 0");
  int n = A.n();
  ComplexMatrix M = A.matrix();
  ComplexMatrix U = ComplexMatrix::identity(n);
  double anorm = M.frobenius();

  auto off_mass = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * std::norm(M(i, j));
    return std::sqrt(s);
  };

  double target = tol * anorm;
  if (n > 1 && anorm > 0.0) {
    int sweeps = 0;
    double off = off_mass();
    while (off > target) {
      if (++sweeps > 50)
        throw numerical_error("eigh: not converged after 50 sweeps, residual " +
                              std::to_string(off));
      double skip = target / (4.0 * n);
      for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
          double r = std::abs(M(p, q));
          if (r <= skip) continue;
          cplx unit = M(p, q) / r;
          double app = M(p, p).real();
          double aqq = M(q, q).real();
          double zeta = (aqq - app) / (2.0 * r);
          double t = 1.0;
          if (zeta != 0.0)
            t = -std::copysign(1.0, zeta) /
                (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
          double c = 1.0 / std::sqrt(1.0 + t * t);
          double s = t * c;
          cplx gpq = -s * unit;             // G(p,q)
          cplx gqp = s * std::conj(unit);   // G(q,p)
          for (int i = 0; i < n; ++i) {     // M <- M G, U <- U G
            cplx mp = M(i, p), mq = M(i, q);
            M(i, p) = mp * c + mq * gqp;
            M(i, q) = mp * gpq + mq * c;
            cplx up = U(i, p), uq = U(i, q);
            U(i, p) = up * c + uq * gqp;
            U(i, q) = up * gpq + uq * c;
          }
          for (int j = 0; j < n; ++j) {     // M <- G* M
            cplx mp = M(p, j), mq = M(q, j);
            M(p, j) = c * mp + std::conj(gqp) * mq;
            M(q, j) = std::conj(gpq) * mp + c * mq;
          }
          M(p, q) = 0.0;
          M(q, p) = 0.0;
          M(p, p) = cplx(M(p, p).real(), 0.0);
          M(q, q) = cplx(M(q, q).real(), 0.0);
        }
      }
      off = off_mass();
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (int i = 0; i < n; ++i) diag[i] = M(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return diag[i] > diag[j]; });

  EigenDecomposition out;
  out.U = ComplexMatrix(n, n);
  out.lambda.resize(n);
  out.source_norm = anorm;
  for (int j = 0; j < n; ++j) {
    out.lambda[j] = diag[order[j]];
    for (int i = 0; i < n; ++i) out.U(i, j) = U(i, order[j]);
  }
  return out;
}

// U diag(f(lambda)) U* for a real function given as powered eigenvalues.
inline ComplexMatrix assemble_from_eigen(const EigenDecomposition& e,
                                         const std::vector<double>& values) {
  int n = e.U.n_rows();
  ComplexMatrix r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += e.U(i, k) * values[k] * std::conj(e.U(j, k));
      r(i, j) = acc;
      if (i != j) r(j, i) = std::conj(acc);
    }
  for (int i = 0; i < n; ++i) r(i, i) = cplx(r(i, i).real(), 0.0);
  return r;
}

// A^t through the spectral decomposition.  Negative dust down to
// -1e-10 max|lambda| is clamped to zero; anything lower is rejected.
inline HermitianMatrix matrix_power(const HermitianMatrix& A, double t) {
  if (t == 1.0) return A;
  if (t == 0.0) return HermitianMatrix(ComplexMatrix::identity(A.n()));
  EigenDecomposition e = eigh(A);
  double lmax = 0.0;
  for (double l : e.lambda) lmax = std::max(lmax, std::fabs(l));
  double clamp = 1e-10 * lmax;
  std::vector<double> powered(e.lambda.size());
  for (size_t i = 0; i < e.lambda.size(); ++i) {
    double l = e.lambda[i];
    if (l < -clamp)
      throw precondition_error(
          "matrix_power: eigenvalue below the PSD dust threshold");
    if (l < 0.0) l = 0.0;
    if (l == 0.0 && t < 0.0)
      throw singular_error("matrix_power: negative power of a singular matrix");
    powered[i] = std::pow(l, t);
  }
  return HermitianMatrix(assemble_from_eigen(e, powered));
}

inline std::vector<double> singular_values(const ComplexMatrix& X) {
  HermitianMatrix gram(X.adjoint() * X);
  EigenDecomposition e = eigh(gram);
  int count = std::min(X.n_rows(), X.n_cols());
  std::vector<double> sigma(count);
  for (int i = 0; i < count; ++i) sigma[i] = std::sqrt(std::max(e.lambda[i], 0.0));
  return sigma;
}

struct NormKind {
  enum class Tag { Spectral, TraceNorm, HilbertSchmidt, Schatten, KyFan };
  Tag tag;
  double p = 0.0;  // Schatten exponent
  int k = 0;       // Ky Fan order

  static NormKind spectral() { return {Tag::Spectral}; }
  static NormKind trace_norm() { return {Tag::TraceNorm}; }
  static NormKind hilbert_schmidt() { return {Tag::HilbertSchmidt}; }
  static NormKind schatten(double p) { return {Tag::Schatten, p, 0}; }
  static NormKind ky_fan(int k) { return {Tag::KyFan, 0.0, k}; }

  std::string name() const {
    switch (tag) {
      case Tag::Spectral: return "SPECTRAL";
      case Tag::TraceNorm: return "TRACE_NORM";
      case Tag::HilbertSchmidt: return "HILBERT_SCHMIDT";
      case Tag::Schatten: {
        char buf[48];
        std::snprintf(buf, sizeof buf, "SCHATTEN(%g)", p);
        return buf;
      }
      default: {
        char buf[48];
        std::snprintf(buf, sizeof buf, "KY_FAN(%d)", k);
        return buf;
      }
    }
  }
};

inline double ui_norm(const ComplexMatrix& X, const NormKind& kind) {
  std::vector<double> sigma = singular_values(X);
  switch (kind.tag) {
    case NormKind::Tag::Spectral:
      return sigma.front();
    case NormKind::Tag::TraceNorm:
      return std::accumulate(sigma.begin(), sigma.end(), 0.0);
    case NormKind::Tag::HilbertSchmidt: {
      double s = 0.0;
      for (double v : sigma) s += v * v;
      double from_sigma = std::sqrt(s);
      double entrywise = X.frobenius();
      if (std::fabs(from_sigma - entrywise) > 1e-10 * (1.0 + entrywise))
        throw numerical_error(
            "ui_norm: Hilbert-Schmidt cross-check against the entrywise "
            "formula failed");
      return from_sigma;
    }
    case NormKind::Tag::Schatten: {
      if (!(kind.p >= 1.0))
        throw usage_error("ui_norm: Schatten exponent must be >= 1");
      if (std::isinf(kind.p)) return sigma.front();
      double s = 0.0;
      for (double v : sigma) s += std::pow(v, kind.p);
      return std::pow(s, 1.0 / kind.p);
    }
    default: {
      if (kind.k < 1 || kind.k > static_cast<int>(sigma.size()))
        throw usage_error("ui_norm: Ky Fan order out of range");
      double s = 0.0;
      for (int i = 0; i < kind.k; ++i) s += sigma[i];
      return s;
    }
  }
}

inline bool is_psd(const HermitianMatrix& A, double tol) {
  if (!(tol >= 0.0)) throw domain_error("is_psd: tol must be >= 0");
  EigenDecomposition e = eigh(A);
  return e.lambda.back() >= -tol * (1.0 + e.source_norm);
}

inline ComplexMatrix random_gaussian(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cplx(rng.gaussian(), rng.gaussian());
  return g;
}

// G G* + eps I with eps lifting the spectrum floor until the condition
// number sits just under cond_cap (a hair of headroom keeps the measured
// condition below the cap despite eigensolver dust).
inline HermitianMatrix random_pd(int n, Rng& rng, double cond_cap) {
  if (n < 1 || n > 16) throw domain_error("random_pd: n must lie in [1,16]");
  if (!(cond_cap > 1.0)) throw domain_error("random_pd: cond_cap must be > 1");
  ComplexMatrix g = random_gaussian(n, n, rng);
  ComplexMatrix w = g * g.adjoint();
  HermitianMatrix gram(w);
  EigenDecomposition e = eigh(gram);
  double lmax = e.lambda.front();
  double lmin = std::max(e.lambda.back(), 0.0);
  double cap = 0.999 * cond_cap;
  double eps = 0.0;
  if (lmax > cap * lmin) eps = (lmax - cap * lmin) / (cap - 1.0);
  ComplexMatrix shifted = gram.matrix();
  for (int i = 0; i < n; ++i) shifted(i, i) += eps;
  return HermitianMatrix(shifted);
}

inline HermitianMatrix random_pd(int n, std::uint64_t seed, double cond_cap) {
  Rng rng(seed);
  return random_pd(n, rng, cond_cap);
}

}  // namespace heinz::la
