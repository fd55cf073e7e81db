#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "heinz/linalg.hpp"
#include "heinz/rng.hpp"

using namespace heinz;
using la::ComplexMatrix;
using la::HermitianMatrix;
using la::cplx;

namespace {

ComplexMatrix diag2(double x, double y) {
  ComplexMatrix m(2, 2);
  m(0, 0) = x;
  m(1, 1) = y;
  return m;
}

double rel_fro(const ComplexMatrix& x, const ComplexMatrix& y) {
  return (x - y).frobenius() / (1.0 + y.frobenius());
}

HermitianMatrix random_hermitian(int n, Rng& rng) {
  ComplexMatrix g = la::random_gaussian(n, n, rng);
  return HermitianMatrix(0.5 * (g + g.adjoint()));
}

}  // namespace

TEST_CASE("matrix shell enforces shapes") {
  CHECK_THROWS_AS(ComplexMatrix(0, 3), domain_error);
  ComplexMatrix r(2, 3);
  r(1, 2) = cplx(1.0, -2.0);
  ComplexMatrix rt = r.adjoint();
  CHECK(rt.n_rows() == 3);
  CHECK(rt(2, 1) == cplx(1.0, 2.0));
  CHECK_THROWS_AS(r.trace(), usage_error);
  CHECK_THROWS_AS(r + rt, usage_error);
  CHECK_THROWS_AS(rt * rt, usage_error);
  ComplexMatrix prod = r * rt;  // 2x3 times 3x2
  CHECK(prod.n_rows() == 2);
  CHECK(prod.n_cols() == 2);
}

TEST_CASE("hermitian wrapper rejects asymmetric input") {
  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = cplx(0.0, 1.0);
  m(1, 0) = cplx(0.0, 1.0);  // conjugate would be -i
  m(1, 1) = 2.0;
  CHECK_THROWS_AS(HermitianMatrix(m), precondition_error);
  m(1, 0) = cplx(0.0, -1.0);
  HermitianMatrix h(m);
  CHECK(h(0, 1) == cplx(0.0, 1.0));
  CHECK(h(1, 1).imag() == 0.0);
}

TEST_CASE("eigendecomposition matches hand-solved spectra") {
  ComplexMatrix m(2, 2);
  m(0, 0) = 2.0;
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  m(1, 1) = 2.0;
  la::EigenDecomposition e = la::eigh(HermitianMatrix(m));
  CHECK(e.lambda[0] == Catch::Approx(3.0).margin(1e-13));
  CHECK(e.lambda[1] == Catch::Approx(1.0).margin(1e-13));

  ComplexMatrix c(2, 2);
  c(0, 0) = 2.0;
  c(0, 1) = cplx(0.0, 1.0);
  c(1, 0) = cplx(0.0, -1.0);
  c(1, 1) = 2.0;
  la::EigenDecomposition ec = la::eigh(HermitianMatrix(c));
  CHECK(ec.lambda[0] == Catch::Approx(3.0).margin(1e-13));
  CHECK(ec.lambda[1] == Catch::Approx(1.0).margin(1e-13));

  la::EigenDecomposition e1 =
      la::eigh(HermitianMatrix(diag2(5.0, 5.0)));
  CHECK(e1.lambda[0] == 5.0);
  CHECK(e1.lambda[1] == 5.0);
}

TEST_CASE("eigendecomposition properties hold on seeded batches") {
  for (int i = 0; i < 200; ++i) {
    Rng rng(derive_stream(42, 7, static_cast<std::uint64_t>(i)));
    int n = rng.uniform_int(1, 6);
    HermitianMatrix h = random_hermitian(n, rng);
    la::EigenDecomposition e = la::eigh(h);

    // unitarity
    ComplexMatrix gram = e.U.adjoint() * e.U;
    CHECK(rel_fro(gram, ComplexMatrix::identity(n)) <= 1e-11);

    // reconstruction
    ComplexMatrix rebuilt = la::assemble_from_eigen(e, e.lambda);
    CHECK(rel_fro(rebuilt, h.matrix()) <= 1e-11);

    // descending order and trace consistency
    double trace_sum = 0.0;
    for (size_t k = 0; k + 1 < e.lambda.size(); ++k)
      CHECK(e.lambda[k] >= e.lambda[k + 1]);
    for (double l : e.lambda) trace_sum += l;
    CHECK(trace_sum ==
          Catch::Approx(h.matrix().trace().real()).margin(1e-11 * (1.0 + e.source_norm)));
  }
}

TEST_CASE("matrix powers agree with scalar powers on diagonals") {
  HermitianMatrix a(diag2(4.0, 1.0));
  CHECK(rel_fro(la::matrix_power(a, 0.5).matrix(), diag2(2.0, 1.0)) <= 1e-13);
  CHECK(rel_fro(la::matrix_power(a, -0.5).matrix(), diag2(0.5, 1.0)) <= 1e-13);
  CHECK(rel_fro(la::matrix_power(a, 0.0).matrix(),
                ComplexMatrix::identity(2)) == 0.0);
  // t = 1 returns the input unchanged
  CHECK(rel_fro(la::matrix_power(a, 1.0).matrix(), a.matrix()) == 0.0);
}

TEST_CASE("matrix power laws hold on random positive definite input") {
  for (int i = 0; i < 20; ++i) {
    Rng rng(derive_stream(43, 11, static_cast<std::uint64_t>(i)));
    int n = rng.uniform_int(2, 6);
    HermitianMatrix a = la::random_pd(n, rng, 1e3);
    ComplexMatrix half = la::matrix_power(a, 0.5).matrix();
    CHECK(rel_fro(half * half, a.matrix()) <= 1e-10);
    ComplexMatrix p3 = la::matrix_power(a, 0.3).matrix();
    ComplexMatrix p7 = la::matrix_power(a, 0.7).matrix();
    CHECK(rel_fro(p3 * p7, a.matrix()) <= 1e-10);
    ComplexMatrix inv = la::matrix_power(a, -1.0).matrix();
    CHECK(rel_fro(inv * a.matrix(), ComplexMatrix::identity(n)) <= 1e-10);
  }
}

TEST_CASE("matrix power guards the spectrum") {
  HermitianMatrix singular(diag2(1.0, 0.0));
  CHECK_THROWS_AS(la::matrix_power(singular, -0.5), singular_error);
  CHECK(la::matrix_power(singular, 0.5).matrix()(1, 1).real() == 0.0);
  HermitianMatrix indefinite(diag2(1.0, -1.0));
  CHECK_THROWS_AS(la::matrix_power(indefinite, 0.5), precondition_error);
}

TEST_CASE("singular values match hand-solved cases") {
  std::vector<double> s1 = la::singular_values(diag2(3.0, -4.0));
  CHECK(s1[0] == Catch::Approx(4.0).margin(1e-12));
  CHECK(s1[1] == Catch::Approx(3.0).margin(1e-12));

  ComplexMatrix ones(2, 2);
  ones(0, 0) = ones(0, 1) = ones(1, 0) = ones(1, 1) = 1.0;
  std::vector<double> s2 = la::singular_values(ones);
  CHECK(s2[0] == Catch::Approx(2.0).margin(1e-12));
  CHECK(s2[1] == Catch::Approx(0.0).margin(1e-8));

  // rectangular input yields min(rows, cols) values
  ComplexMatrix rect(2, 3);
  rect(0, 0) = 1.0;
  rect(1, 2) = 2.0;
  CHECK(la::singular_values(rect).size() == 2);
}

TEST_CASE("singular values square-sum to the entrywise norm") {
  for (int i = 0; i < 20; ++i) {
    Rng rng(derive_stream(44, 3, static_cast<std::uint64_t>(i)));
    ComplexMatrix x = la::random_gaussian(rng.uniform_int(1, 6),
                                          rng.uniform_int(1, 6), rng);
    double s = 0.0;
    for (double v : la::singular_values(x)) s += v * v;
    double f = x.frobenius();
    CHECK(std::sqrt(s) == Catch::Approx(f).margin(1e-10 * (1.0 + f)));
  }
}

TEST_CASE("norms agree with closed forms on diagonal input") {
  ComplexMatrix d = diag2(3.0, 4.0);
  CHECK(la::ui_norm(d, la::NormKind::spectral()) == Catch::Approx(4.0));
  CHECK(la::ui_norm(d, la::NormKind::trace_norm()) == Catch::Approx(7.0));
  CHECK(la::ui_norm(d, la::NormKind::hilbert_schmidt()) == Catch::Approx(5.0));
  CHECK(la::ui_norm(d, la::NormKind::schatten(1.0)) == Catch::Approx(7.0));
  CHECK(la::ui_norm(d, la::NormKind::schatten(2.0)) == Catch::Approx(5.0));
  CHECK(la::ui_norm(d, la::NormKind::schatten(INFINITY)) == Catch::Approx(4.0));
  CHECK(la::ui_norm(d, la::NormKind::ky_fan(1)) == Catch::Approx(4.0));
  CHECK(la::ui_norm(d, la::NormKind::ky_fan(2)) == Catch::Approx(7.0));
  CHECK(la::ui_norm(diag2(1.0, 1.5), la::NormKind::spectral()) ==
        Catch::Approx(1.5));
  CHECK_THROWS_AS(la::ui_norm(d, la::NormKind::ky_fan(3)), usage_error);
  CHECK_THROWS_AS(la::ui_norm(d, la::NormKind::ky_fan(0)), usage_error);
  CHECK_THROWS_AS(la::ui_norm(d, la::NormKind::schatten(0.5)), usage_error);
}

TEST_CASE("norm labels are stable") {
  CHECK(la::NormKind::spectral().name() == "SPECTRAL");
  CHECK(la::NormKind::trace_norm().name() == "TRACE_NORM");
  CHECK(la::NormKind::hilbert_schmidt().name() == "HILBERT_SCHMIDT");
  CHECK(la::NormKind::schatten(3.0).name() == "SCHATTEN(3)");
  CHECK(la::NormKind::ky_fan(2).name() == "KY_FAN(2)");
}

TEST_CASE("norm axioms hold for every kind") {
  std::vector<la::NormKind> kinds = {
      la::NormKind::spectral(), la::NormKind::trace_norm(),
      la::NormKind::hilbert_schmidt(), la::NormKind::schatten(3.0),
      la::NormKind::ky_fan(2)};
  for (int i = 0; i < 10; ++i) {
    Rng rng(derive_stream(45, 5, static_cast<std::uint64_t>(i)));
    int n = rng.uniform_int(2, 5);
    ComplexMatrix x = la::random_gaussian(n, n, rng);
    ComplexMatrix y = la::random_gaussian(n, n, rng);
    // unitary factors from the eigenbasis of a random Hermitian matrix
    ComplexMatrix u = la::eigh(la::random_pd(n, rng, 1e3)).U;
    ComplexMatrix v = la::eigh(la::random_pd(n, rng, 1e3)).U;
    for (const la::NormKind& k : kinds) {
      double nx = la::ui_norm(x, k);
      double ny = la::ui_norm(y, k);
      double nxy = la::ui_norm(x + y, k);
      CHECK(nxy <= (nx + ny) * (1.0 + 1e-9));
      CHECK(la::ui_norm(2.0 * x, k) == Catch::Approx(2.0 * nx).epsilon(1e-9));
      CHECK(la::ui_norm(u * x * v, k) == Catch::Approx(nx).epsilon(1e-9));
    }
  }
}

TEST_CASE("positive semidefinite test uses a relative threshold") {
  CHECK(la::is_psd(HermitianMatrix(diag2(1.0, 0.0)), 0.0));
  CHECK_FALSE(la::is_psd(HermitianMatrix(diag2(1.0, -0.1)), 1e-10));
  CHECK(la::is_psd(HermitianMatrix(diag2(1.0, -1e-14)), 1e-10));
  CHECK_THROWS_AS(la::is_psd(HermitianMatrix(diag2(1.0, 1.0)), -1.0),
                  domain_error);
}

TEST_CASE("random positive definite matrices respect the condition cap") {
  for (int i = 0; i < 20; ++i) {
    Rng rng(derive_stream(46, 13, static_cast<std::uint64_t>(i)));
    int n = rng.uniform_int(2, 8);
    HermitianMatrix a = la::random_pd(n, rng, 1e4);
    la::EigenDecomposition e = la::eigh(a);
    CHECK(e.lambda.back() > 0.0);
    CHECK(e.lambda.front() / e.lambda.back() <= 1e4 * (1.0 + 1e-6));
  }
  Rng rng(9);
  CHECK_THROWS_AS(la::random_pd(0, rng, 1e4), domain_error);
  CHECK_THROWS_AS(la::random_pd(17, rng, 1e4), domain_error);
  CHECK_THROWS_AS(la::random_pd(3, rng, 1.0), domain_error);
}

TEST_CASE("seeded generation is reproducible") {
  HermitianMatrix a = la::random_pd(4, std::uint64_t{1234}, 1e4);
  HermitianMatrix b = la::random_pd(4, std::uint64_t{1234}, 1e4);
  CHECK((a.matrix() - b.matrix()).frobenius() == 0.0);
  HermitianMatrix c = la::random_pd(4, std::uint64_t{1235}, 1e4);
  CHECK((a.matrix() - c.matrix()).frobenius() > 0.0);

  Rng r1(77), r2(77);
  ComplexMatrix g1 = la::random_gaussian(3, 5, r1);
  ComplexMatrix g2 = la::random_gaussian(3, 5, r2);
  CHECK((g1 - g2).frobenius() == 0.0);
}

TEST_CASE("stream generator has sane statistics and derivation") {
  Rng rng(2024);
  double acc = 0.0, acc2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double g = rng.gaussian();
    acc += g;
    acc2 += g * g;
  }
  CHECK(std::fabs(acc / n) < 0.05);
  CHECK(acc2 / n == Catch::Approx(1.0).margin(0.1));

  for (int i = 0; i < 1000; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double lu = rng.log_uniform(1e-4, 1e4);
    CHECK(lu >= 1e-4);
    CHECK(lu <= 1e4);
    int k = rng.uniform_int(2, 6);
    CHECK(k >= 2);
    CHECK(k <= 6);
  }

  CHECK(derive_stream(1, 2, 3) != derive_stream(1, 2, 4));
  CHECK(derive_stream(1, 2, 3) != derive_stream(1, 3, 3));
  CHECK(derive_stream(1, 2, 3) != derive_stream(2, 2, 3));
  CHECK(derive_stream(1, 2, 3) == derive_stream(1, 2, 3));
}
