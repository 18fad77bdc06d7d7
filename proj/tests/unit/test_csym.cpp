#include <doctest.h>

#include "kreinlab/gradekit.hpp"
#include "oracles.hpp"

using namespace kreinlab;
namespace o = oracle;

TEST_SUITE("csym") {

TEST_CASE("is_csymmetry examples") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  CHECK(is_csymmetry(m.eta, m).ok);
  for (double r : {0.0, 0.5, 3.0}) {
    CSymVerdict v = is_csymmetry(appendix_b_Xi(r, 0.7), m);
    CHECK(v.ok);
    CHECK(v.min_eig == doctest::Approx(std::sqrt(1 + r * r) - r).epsilon(1e-10));
  }
  CHECK_FALSE(is_csymmetry(-m.eta, m).ok);
  CHECK_THROWS_AS(CSymmetry::make(-m.eta, m), NotACSymmetry);
  // an involution with ηΞ indefinite
  CHECK_FALSE(is_csymmetry(appendix_b_R(), m).ok);
}

TEST_CASE("q_from_xi and xi_from_q examples") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  CHECK((xi_from_q(ComplexMatrix::Zero(2, 2), m).xi - m.eta).norm() < 1e-15);
  for (double r : {0.2, 1.0, 2.5}) {
    CSymmetry x = xi_from_q(appendix_b_Q(r, -0.4), m);
    CHECK((x.xi - appendix_b_Xi(std::sinh(r), -0.4)).norm() < 1e-12);
    CHECK((q_from_xi(x) - appendix_b_Q(r, -0.4)).norm() < 1e-12);
  }
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const int p = 1 + int(rng() % 8), q = 1 + int(rng() % 8);
    KreinMetric km = KreinMetric::from(o::diag_eta(p, q));
    ComplexMatrix qm = o::random_q(rng, p, q, 0.4);
    CHECK((q_from_xi(xi_from_q(qm, km)) - qm).norm() < 1e-9);
  }
  CHECK_THROWS_AS(xi_from_q(eye(2), m), NotInRSpace);
  ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(xi_from_q(nh, m), NotInRSpace);
}

TEST_CASE("g_from_xi examples") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  CHECK((g_from_xi(CSymmetry::trivial(m)) - eye(2)).norm() < 1e-14);
  CSymmetry x = CSymmetry::make(appendix_b_Xi(1.0, 0.0), m);
  ComplexMatrix g = g_from_xi(x);
  CHECK((g * g - m.eta * x.xi).norm() < 1e-10);
  GPair gp = g_pair(x);
  CHECK((gp.g * gp.g_inv - eye(2)).norm() < 1e-12);
  CHECK((gp.g_inv - m.eta * gp.g * m.eta).norm() < 1e-12);
}

TEST_CASE("reduce_hamiltonian examples") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  const double u = 0.5, v = 2.0;
  CSymmetry x = CSymmetry::make(appendix_b_Xi(1.3, 2.0), m);
  StabilityCertificate c = reduce_hamiltonian(u * eye(2) + v * x.xi, x);
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = u + v;
  expect(1, 1) = u - v;
  CHECK((c.h_tilde - expect).norm() < 1e-10);

  std::mt19937_64 rng(22);
  ComplexMatrix h = o::random_block_hermitian(rng, 1, 1, 0.5, 2.0);
  c = reduce_hamiltonian(h, CSymmetry::trivial(m));
  CHECK((c.h_tilde - h).norm() < 1e-14);

  // 8×8 commuting pair from xi_from_q and a polynomial in Ξ plus η-block data
  KreinMetric m8 = KreinMetric::from(o::diag_eta(4, 4));
  ComplexMatrix q = o::random_q(rng, 4, 4, 0.3);
  CSymmetry x8 = xi_from_q(q, m8);
  ComplexMatrix g = o::expm(0.5 * q), gi = o::expm(-0.5 * q);
  ComplexMatrix h8 = gi * o::random_block_hermitian(rng, 4, 4, 0.1, 2.0) * g + 0.7 * x8.xi;
  c = reduce_hamiltonian(h8, x8);
  CHECK(c.hermitian_residual < 1e-9);
  CHECK(c.eta_commutator < 1e-9);
  CHECK(c.spectrum_residual < 1e-9);

  CHECK_THROWS_AS(reduce_hamiltonian(appendix_b_R(), CSymmetry::trivial(m)), NotEtaSelfAdjoint);
  ComplexMatrix nc = appendix_b_H(1, 2, 0.3, 0.1);
  CHECK_THROWS_AS(reduce_hamiltonian(nc, x), DoesNotCommuteWithXi);
}

TEST_CASE("find_csymmetry examples") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  for (double r : {0.3, 1.0, 4.0}) {
    ComplexMatrix xi = appendix_b_Xi(r, 0.9);
    CSymmetry got = find_csymmetry(1.5 * eye(2) + 0.8 * xi, m);
    CHECK((got.xi - xi).norm() < 1e-9);
  }
  try {
    find_csymmetry(appendix_b_H(1, -1, 1, 0), m);
    FAIL("exceptional point accepted");
  } catch (const NotDynamicallyStable& e) {
    CHECK(e.obstruction() == "defective");
  }
  try {
    find_csymmetry(appendix_b_H(0, 0, 1, 0), m);  // eigenvalues ±i
    FAIL("complex pair accepted");
  } catch (const NotDynamicallyStable& e) {
    CHECK(e.obstruction() == "non-real");
  }
  std::mt19937_64 rng(23);
  KreinMetric m5 = KreinMetric::from(o::diag_eta(3, 2));
  ComplexMatrix h = o::random_block_hermitian(rng, 3, 2, 0.2, 2.0);
  CSymmetry x = find_csymmetry(h, m5);
  CHECK(is_csymmetry(x.xi, m5).ok);
  CHECK((reduce_hamiltonian(h, x).h_tilde - h).norm() < 1e-9);
  // a shared eigenvalue across both signature blocks is still stable
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = d(1, 1) = 1.5;
  CHECK(is_csymmetry(find_csymmetry(d, m).xi, m).ok);
}

TEST_CASE("stable functional calculus and propagator") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  CSymmetry x = CSymmetry::make(appendix_b_Xi(0.8, 0.2), m);
  ComplexMatrix h = 0.4 * eye(2) + 1.1 * x.xi;
  CHECK((stable_functional_calculus(h, x, [](double t) { return t; }) - h).norm() < 1e-10);
  CHECK((stable_propagator(h, x, 0.0) - eye(2)).norm() < 1e-12);
  ComplexMatrix vt = stable_propagator(h, x, 0.9);
  CHECK((vt - o::expm(cplx(0, -0.9) * h)).norm() < 1e-10);
  // η-unitary
  CHECK((vt.adjoint() * m.eta * vt - m.eta).norm() < 1e-10);
}

}  // TEST_SUITE
