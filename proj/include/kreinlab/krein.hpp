#pragma once

#include <optional>

#include "kreinlab/numkit.hpp"

namespace kreinlab {

struct KreinMetric {
  ComplexMatrix eta;
  int kappa_plus = 0;
  int kappa_minus = 0;

  // Validates η = η* = η⁻¹ and counts the signature.
  static KreinMetric from(const ComplexMatrix& eta, double tol = default_tol());
  static KreinMetric diagonal(const std::vector<int>& signs);

  int kappa() const { return std::min(kappa_plus, kappa_minus); }
  Eigen::Index dim() const { return eta.rows(); }
};

// Linear (varpi = +1) or anti-linear (varpi = -1) operator; the anti-linear
// action is v -> mat * conj(v) with conj the entrywise conjugation.
struct RealLinearOp {
  ComplexMatrix mat;
  int varpi = 1;

  static RealLinearOp linear(ComplexMatrix m) { return {std::move(m), 1}; }
  static RealLinearOp antilinear(ComplexMatrix m) { return {std::move(m), -1}; }
  static RealLinearOp identity(Eigen::Index n) { return linear(eye(n)); }
  static RealLinearOp conjugation(Eigen::Index n) { return antilinear(eye(n)); }

  Eigen::Index dim() const { return mat.rows(); }
  bool is_linear() const { return varpi == 1; }

  ComplexVector apply(const ComplexVector& v) const;
  RealLinearOp adjoint() const;
  RealLinearOp inverse() const;
  // Complex scalar multiple: z * A.
  RealLinearOp scaled(cplx z) const { return {z * mat, varpi}; }
};

// A ∘ B.
RealLinearOp operator*(const RealLinearOp& a, const RealLinearOp& b);
RealLinearOp operator*(const ComplexMatrix& a, const RealLinearOp& b);
RealLinearOp operator*(const RealLinearOp& a, const ComplexMatrix& b);
RealLinearOp operator+(const RealLinearOp& a, const RealLinearOp& b);
RealLinearOp operator-(const RealLinearOp& a, const RealLinearOp& b);

// Frobenius distance between two operators of the same linearity; infinite otherwise.
double op_distance(const RealLinearOp& a, const RealLinearOp& b);

struct FundamentalDecomposition {
  ComplexMatrix p_plus;
  ComplexMatrix p_minus;
};

struct NormalizedMetric {
  ComplexMatrix w;  // sqrt(|η′|)
  KreinMetric metric;
};

struct Verdict {
  bool ok = false;
  double residual = 0.0;
};

struct ConjugationAndReflection {
  RealLinearOp c;
  std::optional<ComplexMatrix> r;  // empty when κ₊ ≠ κ₋
};

NormalizedMetric normalize_metric(const ComplexMatrix& eta_prime, double tol = default_tol());

RealLinearOp eta_adjoint(const RealLinearOp& a, const KreinMetric& metric);
ComplexMatrix eta_adjoint(const ComplexMatrix& a, const KreinMetric& metric);

Verdict is_eta_selfadjoint(const ComplexMatrix& h, const KreinMetric& metric,
                           double tol = default_tol());

FundamentalDecomposition fundamental_decomposition(const KreinMetric& metric);

ConjugationAndReflection standard_conjugation_and_reflection(const KreinMetric& metric,
                                                             double tol = default_tol());

// Throws Unavailable when κ₊ ≠ κ₋.
ComplexMatrix standard_reflection(const KreinMetric& metric, double tol = default_tol());

}  // namespace kreinlab
