#include <doctest.h>

#include "kreinlab/symclass.hpp"
#include <set>

#include "oracles.hpp"

using namespace kreinlab;
namespace o = oracle;

TEST_SUITE("symclass") {

TEST_CASE("classify_isometry_type examples") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  IsometryType it = classify_isometry_type(RealLinearOp::identity(2), m);
  CHECK(it.wp == 1);
  CHECK(it.varpi == 1);
  it = classify_isometry_type(RealLinearOp::linear(appendix_b_R()), m);
  CHECK(it.wp == -1);
  CHECK(it.varpi == 1);
  it = classify_isometry_type(RealLinearOp::conjugation(2) * RealLinearOp::linear(appendix_b_R()), m);
  CHECK(it.wp == -1);
  CHECK(it.varpi == -1);
  // η-unitary U(r, α, β, δ)
  it = classify_isometry_type(RealLinearOp::linear(appendix_b_U(1.5, 0.3, -1.0, 2.0)), m);
  CHECK(it.wp == 1);
  ComplexMatrix bad = eye(2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(classify_isometry_type(RealLinearOp::linear(bad), m), NotAnEtaSymmetry);
  CHECK_THROWS_AS(classify_isometry_type(RealLinearOp::identity(3), m), DimensionMismatch);
}

TEST_CASE("classify_involutive_symmetry examples") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  const RealLinearOp c = RealLinearOp::conjugation(2);
  const RealLinearOp r = RealLinearOp::linear(appendix_b_R());

  CHECK(classify_involutive_symmetry(c, m, appendix_b_eta()).name == "Even Time Reversal T(+)");
  CHECK(classify_involutive_symmetry(RealLinearOp::identity(2), m, appendix_b_eta()).name ==
        "Proper Linear");
  CHECK(classify_involutive_symmetry(r, m, appendix_b_H(1, 1, 0, 0.5)).name == "Pure Reflecting R");
  CHECK(classify_involutive_symmetry(r, m, appendix_b_eta()).name == "Reflecting Chiral χ_R");
  SymmetryClassification pr = classify_involutive_symmetry(r * c, m, appendix_b_eta());
  CHECK(pr.name == "Even Reflecting Particle-Hole P_R(+)");
  CHECK(*pr.signature.epsilon == 1);
  CHECK(*pr.signature.c == -1);

  // anti-linear with U² = -1: i σ_y K on η = 1 ⊕ 1 is an ordinary isometry
  ComplexMatrix jy(2, 2);
  jy << 0, 1, -1, 0;
  SymmetryClassification odd =
      classify_involutive_symmetry(RealLinearOp::antilinear(jy), KreinMetric::from(eye(2)), {});
  CHECK(*odd.signature.epsilon == -1);
  CHECK_FALSE(odd.signature.c.has_value());
  CHECK(odd.name == "Odd Time Reversal T(−) | Odd Particle-Hole P(−)");

  // H = 0 commutes and anticommutes
  SymmetryClassification deg =
      classify_involutive_symmetry(RealLinearOp::identity(2), m, ComplexMatrix::Zero(2, 2));
  CHECK(deg.signature.degenerate);

  CHECK_THROWS_AS(classify_involutive_symmetry(RealLinearOp::linear(cplx(0, 1) * eye(2)), m, {}),
                  NotInvolutive);
  CHECK_THROWS_AS(classify_involutive_symmetry(c, m, appendix_b_H(1, 2, 0.5, 0.5)),
                  NeitherCommutesNorAnticommutes);
}

TEST_CASE("table row names") {
  const auto& names = table_row_names();
  CHECK(names.size() == 12);
  std::set<std::string> uniq(names.begin(), names.end());
  CHECK(uniq.size() == 12);
  SymmetrySignature s;
  s.varpi = -1;
  CHECK_THROWS_AS(table_row_name(s), InvalidInput);
}

TEST_CASE("transform_symmetry examples") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  const RealLinearOp r = RealLinearOp::linear(appendix_b_R());
  TransformedSymmetry ts = transform_symmetry(r, CSymmetry::trivial(m));
  CHECK(ts.compatible);
  CHECK((ts.u_tilde.mat - r.mat).norm() < 1e-14);
  CHECK(ts.wp == -1);

  // C with Ξ(r, 0): Ξ is real so C commutes with it
  CSymmetry x = CSymmetry::make(appendix_b_Xi(0.7, 0.0), m);
  ts = transform_symmetry(RealLinearOp::conjugation(2), x);
  CHECK(ts.compatible);
  CHECK(ts.varpi == -1);
  CHECK(ts.wp == 1);
  CHECK(ts.unitarity_residual < 1e-12);
  CHECK(ts.eta_relation_residual < 1e-12);

  // incompatible pair: R against a nontrivial Ξ
  bool incompatible = false;
  try {
    incompatible = !transform_symmetry(r, CSymmetry::make(appendix_b_Xi(0.7, 0.4), m)).compatible;
  } catch (const NotAnEtaSymmetry&) {
    incompatible = true;  // Ũ is not an η-symmetry at all
  }
  CHECK(incompatible);
}

}  // TEST_SUITE
