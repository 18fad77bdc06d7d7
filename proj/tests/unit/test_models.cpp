#include <doctest.h>

#include "kreinlab/models.hpp"
#include "oracles.hpp"

using namespace kreinlab;
namespace o = oracle;

TEST_SUITE("models") {

TEST_CASE("Grid1D") {
  Grid1D g = Grid1D::make(8, 2.0);
  CHECK(g.h == doctest::Approx(0.5));
  CHECK(g.points(0) == doctest::Approx(-1.75));
  for (int j = 0; j < 8; ++j) {
    CHECK(g.points(j) != 0.0);
    CHECK(g.points(j) == -g.points(7 - j));
  }
  CHECK_THROWS_AS(Grid1D::make(7, 1.0), InvalidInput);
  CHECK_THROWS_AS(Grid1D::make(8, 0.0), InvalidInput);
  CHECK_THROWS_AS(Grid1D::make(0, 1.0), InvalidInput);
}

TEST_CASE("i_power") {
  CHECK(std::abs(i_power(2.0, 2.0) - cplx(-4.0, 0.0)) < 1e-14);
  CHECK(std::abs(i_power(-2.0, 1.0) - cplx(0.0, -2.0)) < 1e-14);
  CHECK(std::abs(i_power(3.0, 0.0) - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("discretize_heps examples") {
  Grid1D g = Grid1D::make(16, 3.0);
  auto id = [](double x) { return x; };
  for (double eps : {2.0, 3.0, 1.5}) {
    auto [h, m] = discretize_heps(g, eps, id);
    ComplexMatrix php = m.eta * h * m.eta;
    CHECK((php - ComplexMatrix(h.adjoint())).norm() == 0.0);
    CHECK(is_eta_selfadjoint(h, m).ok);
  }
  auto [h0, m0] = discretize_heps(g, 0.0, id);
  CHECK((h0 - h0.adjoint()).norm() == 0.0);
  CHECK((h0 + second_difference(g) + eye(16)).norm() < 1e-12);
  CHECK(m0.kappa_plus == 8);
  CHECK_THROWS_AS(discretize_heps(g, 2.0, [](double x) { return x * x; }), NotOdd);
}

TEST_CASE("discretize_mw examples") {
  Grid1D g = Grid1D::make(64, 1.0);
  auto [m1, e1] = discretize_mw(g, [](double) { return 1.0; });
  CHECK((m1 - second_difference(g)).norm() == 0.0);
  CHECK(e1.kappa_minus == 0);
  auto [ms, es] = discretize_mw(g, [](double x) { return x > 0 ? 1.0 : -1.0; });
  CHECK(es.kappa_plus == 32);
  CHECK(es.kappa_minus == 32);
  CHECK(is_eta_selfadjoint(ms, es).ok);
  CHECK_THROWS_AS(discretize_mw(g, [](double) { return 2.0; }), NotUnimodular);
}

TEST_CASE("split_weight") {
  ComplexMatrix w = ComplexMatrix::Zero(3, 3);
  w(0, 0) = 2.0;
  w(1, 1) = -0.5;
  w(2, 2) = 4.0;
  WeightSplit s = split_weight(w);
  CHECK(s.a_plus == doctest::Approx(4.0));
  CHECK(s.b_plus == doctest::Approx(2.0));
  CHECK(s.a_minus == doctest::Approx(0.5));
  CHECK((s.w_plus + s.w_minus - w).norm() < 1e-14);
  w(1, 1) = 0.0;
  CHECK_THROWS_AS(split_weight(w), Singular);
}

TEST_CASE("build_maxwell examples") {
  ComplexMatrix m0 = shifted_laplacian(8, 1.0);
  MaxwellModel mm = build_maxwell(m0, eye(8));
  REQUIRE(mm.xi.has_value());
  CHECK((mm.xi->xi - eye(8)).norm() < 1e-10);
  CHECK(mm.max_imag_spectrum < 1e-10);

  ComplexMatrix w = eye(8);
  for (int j = 4; j < 8; ++j) w(j, j) = -1.0;
  mm = build_maxwell(m0, w);
  REQUIRE(mm.xi.has_value());
  CHECK((mm.xi->xi * mm.xi->xi - eye(8)).norm() < 1e-9);
  CHECK(mm.selfadjoint_residual < 1e-10);
  CHECK((mm.m - w * m0).norm() == 0.0);

  CHECK_THROWS_AS(build_maxwell(-eye(2), eye(2)), NotPositive);
  CHECK_THROWS_AS(build_maxwell(eye(2), eye(3)), DimensionMismatch);
  ComplexMatrix sing = eye(2);
  sing(1, 1) = 0.0;
  CHECK_THROWS_AS(build_maxwell(eye(2), sing), Singular);
}

TEST_CASE("parity_check examples") {
  const RealLinearOp c4 = RealLinearOp::conjugation(4);
  ParityReport r = parity_check(shifted_laplacian(4, 0.5), c4);
  CHECK(r.parity == Parity::Even);
  CHECK_FALSE(r.spectrum_symmetric.has_value());

  RealMatrix s(2, 2);
  s << 2.0, 0.5, 0.5, 1.0;
  ComplexMatrix curl = curl_block_surrogate(s);
  CHECK((curl - curl.adjoint()).norm() == 0.0);
  r = parity_check(curl, c4);
  CHECK(r.parity == Parity::Odd);
  REQUIRE(r.spectrum_symmetric.has_value());
  CHECK(*r.spectrum_symmetric);
  CHECK(to_string(r.parity) == "odd");

  ComplexMatrix mixed = shifted_laplacian(4, 0.5) + curl;
  CHECK(parity_check(mixed, c4).parity == Parity::Neither);
  CHECK_THROWS_AS(parity_check(eye(4), RealLinearOp::identity(4)), PreconditionViolated);
  CHECK_THROWS_AS(parity_check(eye(3), c4), DimensionMismatch);
  RealMatrix ns(2, 2);
  ns << 0, 1, 0, 0;
  CHECK_THROWS_AS(curl_block_surrogate(ns), InvalidInput);
}

}  // TEST_SUITE
