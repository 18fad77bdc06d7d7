#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kreinlab/gradekit.hpp"

namespace kreinlab {

// Unit-modulus scalar held exactly when it is a power of i.
struct Phase {
  int quarter = 0;  // value = i^quarter for 0..3; -1 means floating
  cplx value = 1.0;

  static Phase power_of_i(int k);
  static Phase sign(int s) { return power_of_i(s > 0 ? 0 : 2); }
  // Snaps to a power of i when within 1e-12 of one.
  static Phase from_complex(cplx z);

  bool exact() const { return quarter >= 0; }
  Phase conj() const;
  // z^{ϖ}: identity for ϖ = +1, conjugation for ϖ = -1.
  Phase twisted(int varpi) const { return varpi > 0 ? *this : conj(); }
  Phase operator*(const Phase& o) const;
  Phase operator-() const { return *this * sign(-1); }
  // Exact comparison for exact phases, 1e-12 otherwise.
  bool operator==(const Phase& o) const;
  // Bit-level identity (same representation, same bits).
  bool identical(const Phase& o) const;
};

struct FiniteGroupData {
  int order = 1;
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table;  // table[a][b] = index of a·b
  int unit = 0;

  static FiniteGroupData trivial();
  static FiniteGroupData z2();
  // G × Z₂ with (g, ε) at index g + |G|·[ε = -1].
  static FiniteGroupData times_z2(const FiniteGroupData& g);
  // Throws InvalidInput unless the table defines a group.
  static FiniteGroupData from_table(std::vector<std::string> labels,
                                    std::vector<std::vector<int>> table);

  int mul(int a, int b) const { return table[a][b]; }
  int inverse(int a) const;
  // Throws InvalidInput with the failing law.
  void validate() const;
  // A small generating set, chosen greedily in index order.
  std::vector<int> generators() const;
};

inline int pair_index(int g, int eps, int base_order) { return g + (eps < 0 ? base_order : 0); }

struct TwistData {
  FiniteGroupData group;
  std::vector<int> varpi, wp, c;
  std::vector<std::vector<Phase>> tau;

  static TwistData trivial_on(const FiniteGroupData& g);
};

struct TwistVerdict {
  bool ok = true;
  std::string failure;
  std::array<int, 3> witness{-1, -1, -1};
};

// Twist data together with a pending Clifford signature (r, s).
struct CliffordTwist {
  TwistData twist;
  int r = 0;
  int s = 0;
};

struct CliffordAction {
  int r = 0;
  int s = 0;
  std::vector<ComplexMatrix> generators;  // γᵢ² = +1 for i < r, -1 after
  Gradation grading;
};

struct PUARep {
  TwistData twist;
  std::vector<RealLinearOp> images;
};

struct PuaVerdict {
  bool ok = false;
  std::vector<RelationResidual> relations;
};

struct KreinHilbertInverse {
  PUARep rep;
  KreinMetric metric;
};

// Graded module on which the extension problem is posed: J must be odd
// (JΓ = -ΓJ), satisfy J·op = sign·op·J for every listed operator, and J² = -1.
struct GradedModule {
  ComplexMatrix gamma;
  std::vector<std::pair<ComplexMatrix, int>> ops;
};

struct ExtensionResult {
  bool extendable = false;
  int null_dim = 0;
  ComplexMatrix j;                 // normalized J with J² = -1 when extendable
  bool chirality_checked = false;  // cross-check against γ₁⋯γₙ-type candidates ran
};

TwistVerdict validate_twist(const TwistData& t, double tol = 1e-12);

TwistData reduce_data(const TwistData& t);

// Absorbs the last Clifford generator (an s-type one while s > 0).
CliffordTwist clifford_absorb(const CliffordTwist& t);

TwistData tau_hat(const TwistData& t);

PuaVerdict verify_pua(const PUARep& rep, const std::optional<KreinMetric>& metric = {},
                      const std::vector<ComplexMatrix>& gammas = {}, double tol = default_tol());

// ρ′((g, ε)) = ρ(g) η^{(1-ε)/2}, with the twist of reduce_data.
PUARep krein_hilbert_correspondence(const PUARep& rep, const KreinMetric& metric);
// Recovers (ρ, η) from ρ′ on base × Z₂; η = ρ′((e, -1)).
KreinHilbertInverse krein_hilbert_inverse(const PUARep& extended, const FiniteGroupData& base,
                                          double tol = default_tol());

// Graded operators (ρ(g), c(g)) of a representation, for is_eta_gradation.
std::vector<GradedOp> graded_ops(const PUARep& rep);

CliffordAction clifford_generators(int r, int s);

// Basis (as vec columns) of all X with X·A = s·A·X for every listed (A, s).
ComplexMatrix intertwiner_space(const std::vector<std::pair<ComplexMatrix, int>>& cons,
                                Eigen::Index d, double tol);

ExtensionResult graded_extension_test(const GradedModule& module, std::uint64_t seed = 0,
                                      double tol = 1e-8);
ExtensionResult graded_extension_test(const CliffordAction& action, std::uint64_t seed = 0,
                                      double tol = 1e-8);

// ---- K-groups of a point ----

enum class GroupChoice { Trivial, Z2 };

struct KScenario {
  GroupChoice group = GroupChoice::Trivial;
  bool wp_id = false;     // ℘ = Id (else trivial)
  bool c_id = false;      // c = Id (else trivial)
  bool varpi_id = false;  // only the trivial ϖ is supported
  int r = 0;
  int s = 0;
};

struct KGroupResult {
  std::string descriptor;  // "0", "Z", "Z+Z", ...
  int rank = 0;
  int classes = 0;          // irreducible graded modules up to isomorphism
  int non_extendable = 0;
  std::vector<std::string> trace;
};

// Rank of the K-group of a point for Hilbert-side twist data (℘ ≡ +1),
// after absorbing Cl^{r,s} and decomposing the graded regular module.
KGroupResult kgroup_twisted(const TwistData& t, int r, int s, std::uint64_t seed = 0);

// Krein-side scenario: reduce_data first, then kgroup_twisted.
KGroupResult kgroup_point(const KScenario& sc, std::uint64_t seed = 0);

TwistData scenario_twist(const KScenario& sc);

std::string descriptor_for_rank(int rank);

}  // namespace kreinlab
