#pragma once

#include "kreinlab/krein.hpp"

namespace kreinlab {

struct CSymVerdict {
  bool ok = false;
  double involution_residual = 0.0;  // |Ξ² - 1|
  double min_eig = 0.0;              // smallest eigenvalue of the Hermitian part of ηΞ
  double sharp_residual = 0.0;       // |ηΞ - (ηΞ)*|, i.e. |Ξ - Ξ♯|
};

struct CSymmetry {
  ComplexMatrix xi;
  KreinMetric metric;

  // Throws NotACSymmetry unless Ξ² = 1 and ηΞ ≻ 0.
  static CSymmetry make(const ComplexMatrix& xi, const KreinMetric& metric,
                        double tol = default_tol());
  // The trivial C-symmetry Ξ = η.
  static CSymmetry trivial(const KreinMetric& metric) { return {metric.eta, metric}; }
};

struct GPair {
  ComplexMatrix g;      // √(ηΞ)
  ComplexMatrix g_inv;  // (ηΞ)^{-1/2} = η G η
};

struct StabilityCertificate {
  CSymmetry xi;
  ComplexMatrix g;
  ComplexMatrix g_inv;
  ComplexMatrix h_tilde;
  double hermitian_residual = 0.0;  // |H̃ - H̃*|
  double eta_commutator = 0.0;      // |[H̃, η]|
  double spectrum_residual = 0.0;   // matching distance between σ(H) and σ(H̃)
};

CSymVerdict is_csymmetry(const ComplexMatrix& xi, const KreinMetric& metric,
                         double tol = default_tol());

ComplexMatrix q_from_xi(const CSymmetry& xi, double tol = default_tol());
CSymmetry xi_from_q(const ComplexMatrix& q, const KreinMetric& metric, double tol = default_tol());

ComplexMatrix g_from_xi(const CSymmetry& xi, double tol = default_tol());
GPair g_pair(const CSymmetry& xi, double tol = default_tol());

StabilityCertificate reduce_hamiltonian(const ComplexMatrix& h, const CSymmetry& xi,
                                        double tol = default_tol());

// Ξ from η-orthogonal spectral projections with signs sign⟨v, ηv⟩.
// Throws NotDynamicallyStable with obstruction "non-real", "defective" or "neutral".
CSymmetry find_csymmetry(const ComplexMatrix& h, const KreinMetric& metric,
                         double tol = default_tol());

// f(H) := G⁻¹ f(H̃) G.
ComplexMatrix stable_functional_calculus(const ComplexMatrix& h, const CSymmetry& xi,
                                         const std::function<double(double)>& f,
                                         double tol = default_tol());

// V_t = G⁻¹ exp(-i t H̃) G.
ComplexMatrix stable_propagator(const ComplexMatrix& h, const CSymmetry& xi, double t,
                                double tol = default_tol());

}  // namespace kreinlab
