#pragma once

#include <optional>
#include <string>

#include "kreinlab/csym.hpp"

namespace kreinlab {

struct SymmetrySignature {
  int varpi = 1;                 // +1 linear, -1 anti-linear
  int wp = 1;                    // +1 η-isometry, -1 η-pseudo-isometry
  std::optional<int> epsilon;    // empty = irrelevant (linear case)
  std::optional<int> c;          // empty = unknown (no Hamiltonian given)
  bool degenerate = false;       // U both commutes and anticommutes with H
};

struct IsometryType {
  int wp = 1;
  int varpi = 1;
  double residual_plus = 0.0;   // |ηU* - U⁻¹η|
  double residual_minus = 0.0;  // |ηU* + U⁻¹η|
};

struct SymmetryClassification {
  SymmetrySignature signature;
  std::string name;
};

struct TransformedSymmetry {
  RealLinearOp u_tilde;
  int varpi = 1;
  int wp = 1;
  bool compatible = false;            // UΞ = ℘ΞU
  double compatibility_residual = 0.0;
  double unitarity_residual = 0.0;    // |Ũ*Ũ - 1|
  double eta_relation_residual = 0.0; // |Ũη - ℘ηŨ|
};

IsometryType classify_isometry_type(const RealLinearOp& u, const KreinMetric& metric,
                                    double tol = default_tol());

SymmetryClassification classify_involutive_symmetry(const RealLinearOp& u,
                                                    const KreinMetric& metric,
                                                    const std::optional<ComplexMatrix>& h,
                                                    double tol = default_tol());

TransformedSymmetry transform_symmetry(const RealLinearOp& u, const CSymmetry& xi,
                                       double tol = default_tol());

// Row name of the twelve-type table; with c unknown, the two rows of the
// (ϖ, ℘) quadrant joined by " | ".
std::string table_row_name(const SymmetrySignature& s);

// All twelve row names in table order.
const std::vector<std::string>& table_row_names();

}  // namespace kreinlab
