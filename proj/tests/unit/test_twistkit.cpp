#include <doctest.h>

#include "kreinlab/twistkit.hpp"
#include "oracles.hpp"

using namespace kreinlab;
namespace o = oracle;

namespace {

TwistData z2_twist(int wp, int c) {
  TwistData t = TwistData::trivial_on(FiniteGroupData::z2());
  t.wp[1] = wp;
  t.c[1] = c;
  return t;
}

}  // namespace

TEST_SUITE("twistkit") {

TEST_CASE("Phase arithmetic stays exact") {
  Phase i = Phase::power_of_i(1);
  CHECK((i * i).identical(Phase::sign(-1)));
  CHECK(i.conj().quarter == 3);
  CHECK(Phase::from_complex(cplx(0, -1)).quarter == 3);
  Phase f = Phase::from_complex(std::polar(1.0, 0.3));
  CHECK_FALSE(f.exact());
  CHECK((f * f.conj()) == Phase::sign(1));
}

TEST_CASE("FiniteGroupData") {
  FiniteGroupData k = FiniteGroupData::times_z2(FiniteGroupData::z2());
  CHECK(k.order == 4);
  CHECK_NOTHROW(k.validate());
  CHECK(k.generators().size() == 2);
  CHECK(k.inverse(3) == 3);
  CHECK_THROWS_AS(FiniteGroupData::from_table({"e", "a"}, {{0, 1}, {1, 1}}), InvalidInput);
}

TEST_CASE("validate_twist examples") {
  CHECK(validate_twist(TwistData::trivial_on(FiniteGroupData::trivial())).ok);
  CHECK(validate_twist(TwistData::trivial_on(FiniteGroupData::z2())).ok);
  KScenario sc;
  sc.group = GroupChoice::Z2;
  sc.wp_id = true;
  CHECK(validate_twist(reduce_data(scenario_twist(sc))).ok);

  TwistData bad = TwistData::trivial_on(FiniteGroupData::z2());
  bad.tau[0][1] = Phase::sign(-1);
  TwistVerdict v = validate_twist(bad);
  CHECK_FALSE(v.ok);
  CHECK(v.witness[0] >= 0);

  TwistData anti = TwistData::trivial_on(FiniteGroupData::z2());
  anti.varpi[1] = -1;
  anti.tau[1][1] = Phase::power_of_i(1);
  v = validate_twist(anti);
  CHECK_FALSE(v.ok);
  CHECK(v.failure == "2-cocycle identity fails");
  CHECK(v.witness == std::array<int, 3>{1, 1, 1});

  TwistData hom = TwistData::trivial_on(FiniteGroupData::z2());
  hom.c[0] = -1;
  CHECK_FALSE(validate_twist(hom).ok);
}

TEST_CASE("reduce_data examples") {
  const int table[4][4] = {{1, 1, 1, 1}, {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, 1, -1}};
  TwistData red = reduce_data(z2_twist(-1, 1));
  CHECK(red.group.order == 4);
  for (int a = 0; a < 4; ++a) {
    CHECK(red.wp[a] == 1);
    for (int b = 0; b < 4; ++b) CHECK(red.tau[a][b].identical(Phase::sign(table[a][b])));
  }
  // ℘ ≡ +1: the extra factor is a plain Z2
  red = reduce_data(z2_twist(1, 1));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) CHECK(red.tau[a][b].identical(Phase::sign(1)));
}

TEST_CASE("clifford_absorb and tau_hat") {
  CliffordTwist ct{TwistData::trivial_on(FiniteGroupData::trivial()), 0, 1};
  CliffordTwist out = clifford_absorb(ct);
  CHECK(out.r == 0);
  CHECK(out.s == 0);
  CHECK(out.twist.group.order == 2);
  CHECK(out.twist.c[1] == -1);
  CHECK(out.twist.tau[1][1].identical(Phase::sign(-1)));
  CHECK(validate_twist(out.twist).ok);

  out = clifford_absorb({TwistData::trivial_on(FiniteGroupData::trivial()), 1, 0});
  CHECK(out.twist.tau[1][1].identical(Phase::sign(1)));
  CHECK_THROWS_AS(clifford_absorb({TwistData::trivial_on(FiniteGroupData::trivial()), 0, 0}),
                  NoGenerators);

  TwistData h = tau_hat(z2_twist(1, -1));
  CHECK(h.tau[1][1].identical(Phase::sign(-1)));
  CHECK(h.tau[0][1].identical(Phase::sign(1)));
  TwistData hh = tau_hat(h);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) CHECK(hh.tau[a][b].identical(Phase::sign(1)));
}

TEST_CASE("verify_pua and the Krein-Hilbert correspondence") {
  KreinMetric m = KreinMetric::from(appendix_b_eta());
  PUARep rep{z2_twist(-1, 1), {RealLinearOp::identity(2), RealLinearOp::linear(appendix_b_R())}};
  CHECK(verify_pua(rep, m).ok);
  PUARep wrong{z2_twist(1, 1), rep.images};
  CHECK_FALSE(verify_pua(wrong, m).ok);

  PUARep ext = krein_hilbert_correspondence(rep, m);
  CHECK(ext.images.size() == 4);
  CHECK(verify_pua(ext).ok);
  KreinHilbertInverse inv = krein_hilbert_inverse(ext, FiniteGroupData::z2());
  CHECK((inv.metric.eta - m.eta).norm() < 1e-14);
  CHECK(inv.rep.twist.wp[1] == -1);
  CHECK((inv.rep.images[1].mat - appendix_b_R()).norm() < 1e-14);

  KreinMetric unbal = KreinMetric::diagonal({1, 1, -1});
  PUARep triv{TwistData::trivial_on(FiniteGroupData::trivial()), {RealLinearOp::identity(3)}};
  PUARep ext3 = krein_hilbert_correspondence(triv, unbal);
  CHECK_THROWS_AS(krein_hilbert_inverse(ext3, FiniteGroupData::trivial()), Unbalanced);

  PUARep id{TwistData::trivial_on(FiniteGroupData::trivial()), {RealLinearOp::identity(2)}};
  CHECK_THROWS_AS(krein_hilbert_inverse(krein_hilbert_correspondence(id, KreinMetric::from(eye(2))),
                                        FiniteGroupData::trivial()),
                  Reducible);

  std::vector<GradedOp> ops = graded_ops(rep);
  CHECK(ops.size() == 2);
  CHECK(ops[1].sign == 1);
}

TEST_CASE("Clifford modules and the extension test") {
  CliffordAction a = clifford_generators(1, 0);
  REQUIRE(a.generators.size() == 1);
  CHECK((a.generators[0] * a.generators[0] - eye(2)).norm() == 0.0);
  CHECK((a.generators[0] * a.grading.gamma + a.grading.gamma * a.generators[0]).norm() == 0.0);

  a = clifford_generators(1, 1);
  REQUIRE(a.generators.size() == 2);
  CHECK((a.generators[1] * a.generators[1] + eye(2)).norm() == 0.0);
  CHECK((a.generators[0] * a.generators[1] + a.generators[1] * a.generators[0]).norm() == 0.0);

  a = clifford_generators(0, 0);
  CHECK(a.generators.empty());
  CHECK(a.grading.gamma.rows() == 1);

  ExtensionResult e = graded_extension_test(clifford_generators(1, 0));
  CHECK(e.extendable);
  CHECK(e.chirality_checked);
  CHECK((e.j * e.j + eye(2)).norm() < 1e-10);
  CHECK_FALSE(graded_extension_test(clifford_generators(2, 0)).extendable);
  CHECK_FALSE(graded_extension_test(clifford_generators(0, 0)).extendable);
  CHECK(graded_extension_test(clifford_generators(0, 3)).extendable);
}

TEST_CASE("K-groups of a point") {
  // Krein side: the metric doubles the group, so c ≡ +1 sees C[Z2].
  KScenario sc;
  CHECK(kgroup_point(sc).descriptor == "Z+Z");
  sc.s = 1;
  CHECK(kgroup_point(sc).descriptor == "0");
  sc.s = 2;
  CHECK(kgroup_point(sc).descriptor == "Z+Z");
  // Hilbert side for comparison
  const TwistData triv = TwistData::trivial_on(FiniteGroupData::trivial());
  CHECK(kgroup_twisted(triv, 0, 0).descriptor == "Z");
  CHECK(kgroup_twisted(triv, 0, 1).descriptor == "0");
  CHECK(kgroup_twisted(triv, 1, 0).descriptor == "0");

  KScenario z2;
  z2.group = GroupChoice::Z2;
  CHECK(kgroup_point(z2).descriptor == "Z+Z+Z+Z");
  z2.wp_id = true;
  z2.c_id = true;
  z2.s = 2;
  CHECK(kgroup_point(z2).descriptor == "Z");
  z2.s = 1;
  CHECK(kgroup_point(z2).descriptor == "0");

  KScenario anti;
  anti.varpi_id = true;
  CHECK_THROWS_AS(kgroup_point(anti), UnsupportedScenario);
  KScenario triv_wp;
  triv_wp.wp_id = true;
  CHECK_THROWS_AS(kgroup_point(triv_wp), UnsupportedScenario);

  CHECK(descriptor_for_rank(3) == "Z+Z+Z");
  CHECK_THROWS_AS(descriptor_for_rank(-1), InvalidInput);
  CHECK_THROWS_AS(kgroup_twisted(z2_twist(-1, 1), 0, 0), InvalidInput);
}

}  // TEST_SUITE
