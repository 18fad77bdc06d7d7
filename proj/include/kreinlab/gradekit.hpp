#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kreinlab/csym.hpp"

namespace kreinlab {

struct Gradation {
  ComplexMatrix gamma;
  std::optional<KreinMetric> metric;  // present for η-gradations

  // Throws InvalidInput unless Γ = Γ*, Γ² = 1 and (with a metric) Γη = ηΓ.
  static Gradation make(const ComplexMatrix& gamma, std::optional<KreinMetric> metric = {},
                        double tol = default_tol());
  Eigen::Index dim() const { return gamma.rows(); }
};

struct FlattenResult {
  Gradation gradation;
  bool nontrivial = false;  // λ lies strictly between min σ(H) and max σ(H)
};

// An operator with the sign of its graded commutation: Γ op = sign · op Γ.
struct GradedOp {
  RealLinearOp op;
  int sign = 1;
};

struct RelationResidual {
  std::string relation;
  double residual = 0.0;
  bool ok = false;
};

struct GradationVerdict {
  bool ok = false;
  std::vector<RelationResidual> relations;
};

struct KaroubiTriple {
  Eigen::Index dimension = 0;
  std::vector<GradedOp> rho;
  std::vector<ComplexMatrix> gammas;
  Gradation gamma0;
  Gradation gamma1;

  // Throws InvalidInput when either gradation violates the stored relations.
  static KaroubiTriple make(std::vector<GradedOp> rho, std::vector<ComplexMatrix> gammas,
                            Gradation g0, Gradation g1, double tol = default_tol());
};

struct ThetaResult {
  Gradation gradation;
  double spectral_residual = 0.0;  // matching distance between σ(AΓ) and i·σ(A)
};

struct PathReport {
  std::vector<double> thetas;
  std::vector<Gradation> points;
  double lipschitz = 0.0;              // max step difference / step size
  double max_involution_residual = 0.0;
};

FlattenResult spectral_flatten(const ComplexMatrix& h, double lambda, double tol = default_tol());

GradationVerdict is_eta_gradation(const ComplexMatrix& gamma,
                                  const std::optional<KreinMetric>& metric,
                                  const std::vector<GradedOp>& rho,
                                  const std::vector<ComplexMatrix>& gammas,
                                  double tol = default_tol());

// ϑ(A) = -exp(πAΓ)Γ.
ThetaResult theta_map(const ComplexMatrix& a, const Gradation& gamma, double tol = default_tol());

// T_θ ⊗ 1 with T_θ = [[cos θ, sin θ], [sin θ, -cos θ]].
ComplexMatrix swap_rotation(Eigen::Index n, double theta);

// Γ(θ) = (T_θ ⊗ 1)(Γ₀ ⊕ Γ₁)(T_θ ⊗ 1) on the doubled space.
Gradation gradation_swap_path(const Gradation& g0, const Gradation& g1, double theta);
PathReport gradation_swap_grid(const Gradation& g0, const Gradation& g1, int points = 50);

// Two-dimensional model with η = diag(1, -1).
ComplexMatrix appendix_b_eta();
ComplexMatrix appendix_b_R();
ComplexMatrix appendix_b_U(double r, double alpha, double beta, double delta);
ComplexMatrix appendix_b_H(double x1, double x2, double y, double z);
ComplexMatrix appendix_b_Xi(double r, double theta);
ComplexMatrix appendix_b_Q(double r, double theta);

enum class AppendixBKind { U, H, Xi, Q };
ComplexMatrix appendix_b_params(AppendixBKind kind, const std::vector<double>& params);

// h = u·1 + v·Ξ in dimension 2, u = tr(h)/2.
std::pair<double, double> decompose_commuting(const ComplexMatrix& h, const ComplexMatrix& xi,
                                              double tol = default_tol());

struct ComponentLabel {
  int plus = 1;   // sign(u + v)
  int minus = 1;  // sign(u - v)
  std::string str() const;
  bool operator==(const ComponentLabel&) const = default;
};

ComponentLabel classify_gapped_2d(const ComplexMatrix& h, const CSymmetry& xi,
                                  double tol = default_tol());

}  // namespace kreinlab
