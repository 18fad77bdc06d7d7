#include <doctest.h>

#include "kreinlab/gradekit.hpp"
#include "oracles.hpp"

using namespace kreinlab;
namespace o = oracle;

TEST_SUITE("numkit") {

TEST_CASE("herm_eig on diagonal and Pauli matrices") {
  HermEig<cplx> e = herm_eig<cplx>(appendix_b_eta());
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));

  ComplexMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  e = herm_eig<cplx>(sx);
  CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  // eigenvectors (1, ∓1)/√2 up to phase
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(e.eigenvectors(0, 0)) - r) < 1e-12);
  CHECK(std::abs(e.eigenvectors(0, 0) + e.eigenvectors(1, 0)) < 1e-12);
  CHECK(std::abs(e.eigenvectors(0, 1) - e.eigenvectors(1, 1)) < 1e-12);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(1);
  for (int n : {1, 5, 16}) {
    ComplexMatrix h = o::random_hermitian(rng, n);
    HermEig<cplx> e = herm_eig<cplx>(h);
    ComplexMatrix rec = e.eigenvectors * e.eigenvalues.cast<cplx>().asDiagonal() * e.eigenvectors.adjoint();
    CHECK((rec - h).norm() < 1e-10);
    CHECK((e.eigenvectors.adjoint() * e.eigenvectors - eye(n)).norm() < 1e-12);
    for (int k = 1; k < n; ++k) CHECK(e.eigenvalues(k - 1) <= e.eigenvalues(k));
  }
}

TEST_CASE("herm_eig real scalar path and clustered spectra") {
  RealMatrix m(3, 3);
  m << 2, 1, 0, 1, 2, 0, 0, 0, 5;
  HermEig<double> e = herm_eig<double>(m);
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(3.0));
  CHECK(e.eigenvalues(2) == doctest::Approx(5.0));

  // a four-fold eigenvalue, conjugated by a random unitary
  std::mt19937_64 rng(2);
  ComplexMatrix u = o::random_unitary(rng, 6);
  Eigen::VectorXd d(6);
  d << 0.2, 1, 1, 1, 1, 5;
  ComplexMatrix h = u * d.cast<cplx>().asDiagonal() * u.adjoint();
  h = 0.5 * (h + h.adjoint());
  HermEig<cplx> ec = herm_eig<cplx>(h);
  ComplexMatrix rec = ec.eigenvectors * ec.eigenvalues.cast<cplx>().asDiagonal() * ec.eigenvectors.adjoint();
  CHECK((rec - h).norm() < 1e-12);
}

TEST_CASE("herm_eig rejects bad input") {
  ComplexMatrix m(2, 2);
  m << 1.0, 2.0, 0.0, 1.0;
  CHECK_THROWS_AS(herm_eig<cplx>(m), NotHermitian);
  CHECK_THROWS_AS(herm_eig<cplx>(ComplexMatrix(2, 3)), DimensionMismatch);
  ComplexMatrix nan = eye(2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(herm_eig<cplx>(nan), DomainError);
}

TEST_CASE("complex_schur examples") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 3;
  d(1, 1) = 2;
  d(2, 2) = 1;
  SchurForm s = complex_schur(d);
  CHECK(std::abs(s.eigenvalues(0) - 1.0) < 1e-14);
  CHECK(std::abs(s.eigenvalues(1) - 2.0) < 1e-14);
  CHECK(std::abs(s.eigenvalues(2) - 3.0) < 1e-14);
  CHECK(s.t.isUpperTriangular(1e-14));
  CHECK((s.q * s.t * s.q.adjoint() - d).norm() < 1e-13);

  ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
  nil(0, 1) = 1.0;
  s = complex_schur(nil);
  CHECK(s.eigenvalues.norm() < 1e-14);

  KreinMetric eta = KreinMetric::from(appendix_b_eta());
  ComplexMatrix h = eye(2) + 2.0 * appendix_b_Xi(1.0, 0.4);
  s = complex_schur(h);
  CHECK(o::match(o::to_vec(s.eigenvalues), {-1.0, 3.0}) < 1e-12);
}

TEST_CASE("complex_schur of a random matrix") {
  std::mt19937_64 rng(3);
  ComplexMatrix a = o::random_matrix(rng, 12, 12);
  SchurForm s = complex_schur(a);
  CHECK((s.q.adjoint() * s.q - eye(12)).norm() < 1e-12);
  CHECK((s.q * s.t * s.q.adjoint() - a).norm() < 1e-11);
  CHECK(o::match(o::to_vec(s.eigenvalues), o::eigenvalues(a)) < 1e-10);
  for (int k = 1; k < 12; ++k) CHECK(s.eigenvalues(k - 1).real() <= s.eigenvalues(k).real());
}

TEST_CASE("matfun_hermitian examples") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = -2;
  CHECK((matfun_hermitian<cplx>(d, HermFn::Sign) - appendix_b_eta()).norm() < 1e-14);

  ComplexMatrix eta = appendix_b_eta();
  CHECK(matfun_hermitian<cplx>(eta * eta, HermFn::Log).norm() < 1e-14);

  ComplexMatrix p = eta * appendix_b_Xi(1.0, 0.0);
  ComplexMatrix r = matfun_hermitian<cplx>(p, HermFn::Sqrt);
  CHECK((r * r - p).norm() < 1e-10);

  std::mt19937_64 rng(4);
  ComplexMatrix h = 0.3 * o::random_hermitian(rng, 7);
  CHECK((matfun_hermitian<cplx>(h, HermFn::Exp) - o::expm(h)).norm() < 1e-12);
  ComplexMatrix ab = matfun_hermitian<cplx>(h, HermFn::Abs);
  CHECK((ab * ab - h * h).norm() < 1e-12);
  ComplexMatrix custom = matfun_hermitian<cplx>(h, [](double x) { return x * x; });
  CHECK((custom - h * h).norm() < 1e-12);

  CHECK_THROWS_AS(matfun_hermitian<cplx>(d, HermFn::Log), DomainError);
  CHECK_THROWS_AS(matfun_hermitian<cplx>(d, HermFn::Sqrt), DomainError);
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  CHECK_THROWS_AS(matfun_hermitian<cplx>(z, HermFn::Sign), DomainError);
}

TEST_CASE("matfun_hermitian_c gives the unitary group") {
  std::mt19937_64 rng(5);
  ComplexMatrix h = o::random_hermitian(rng, 5);
  ComplexMatrix u = matfun_hermitian_c(h, [](double x) { return std::exp(cplx(0, 0.7 * x)); });
  CHECK((u - o::expm(cplx(0, 0.7) * h)).norm() < 1e-11);
}

TEST_CASE("matsign_newton examples") {
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 5;
  d(1, 1) = -0.1;
  CHECK((matsign_newton(d) - appendix_b_eta()).norm() < 1e-12);

  ComplexMatrix xi = appendix_b_Xi(2.0, 1.1);
  CHECK((matsign_newton(xi) - xi).norm() < 1e-10);

  // stable η-self-adjoint 32×32 against the Schur route
  std::mt19937_64 rng(6);
  ComplexMatrix q = o::random_q(rng, 16, 16, 0.1);
  ComplexMatrix g = o::expm(0.5 * q), gi = o::expm(-0.5 * q);
  ComplexMatrix ht = o::random_block_hermitian(rng, 16, 16, 0.2, 3.0);
  ComplexMatrix h = gi * ht * g;
  CHECK((matsign_newton(h) - matsign_schur(h)).norm() < 1e-8);
}

TEST_CASE("matsign rejects imaginary-axis eigenvalues") {
  ComplexMatrix rot(2, 2);
  rot << 0.0, -1.0, 1.0, 0.0;
  CHECK_THROWS(matsign_newton(rot));
  CHECK_THROWS(matsign_schur(rot));
}

TEST_CASE("null_space, condition_number and multiset_distance") {
  ComplexMatrix m(2, 3);
  m << 1, 0, 0, 0, 1, 0;
  ComplexMatrix k = null_space(m, 1e-12);
  REQUIRE(k.cols() == 1);
  CHECK(std::abs(std::abs(k(2, 0)) - 1.0) < 1e-14);
  CHECK(null_space(ComplexMatrix::Zero(2, 2), 1e-12).cols() == 2);

  std::mt19937_64 rng(7);
  ComplexMatrix a = o::random_matrix(rng, 20, 12);
  a.col(3) = a.col(1) + a.col(2);
  ComplexMatrix ka = null_space(a, 1e-10);
  CHECK(ka.cols() == 1);
  CHECK((a * ka).norm() < 1e-12);
  CHECK((ka.adjoint() * ka - eye(ka.cols())).norm() < 1e-12);

  CHECK(condition_number(eye(4)) == doctest::Approx(1.0));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 10;
  d(1, 1) = 0.5;
  CHECK(condition_number(d) == doctest::Approx(20.0));

  ComplexVector x(3), y(3);
  x << 1.0, 2.0, 3.0;
  y << 3.0, 1.0, 2.0 + 1e-3;
  CHECK(multiset_distance(x, y) == doctest::Approx(1e-3));
}

TEST_CASE("oracle QR eigenvalues agree with the library Schur form") {
  std::mt19937_64 rng(8);
  for (int n : {2, 3, 9, 20}) {
    ComplexMatrix a = o::random_matrix(rng, n, n);
    CHECK(o::match(o::eigenvalues(a), o::to_vec(complex_schur(a).eigenvalues)) < 1e-9);
  }
}

}  // TEST_SUITE
