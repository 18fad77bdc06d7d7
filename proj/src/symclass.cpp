#include "kreinlab/symclass.hpp"

namespace kreinlab {

namespace {

std::string linear_name(int wp, int c) {
  if (wp == 1) return c == 1 ? "Proper Linear" : "Chiral χ";
  return c == 1 ? "Pure Reflecting R" : "Reflecting Chiral χ_R";
}

std::string antilinear_name(int wp, int eps, int c) {
  const std::string parity = eps == 1 ? "Even" : "Odd";
  const std::string sgn = eps == 1 ? "(+)" : "(−)";
  const bool tr = c == 1;
  std::string base = tr ? "Time Reversal" : "Particle-Hole";
  std::string sym = tr ? "T" : "P";
  if (wp == 1) return parity + " " + base + " " + sym + sgn;
  return parity + " Reflecting " + base + " " + sym + "_R" + sgn;
}

}  // namespace

const std::vector<std::string>& table_row_names() {
  static const std::vector<std::string> names = {
      linear_name(1, 1),          linear_name(-1, 1),         linear_name(1, -1),
      linear_name(-1, -1),        antilinear_name(1, 1, 1),   antilinear_name(-1, 1, 1),
      antilinear_name(1, -1, 1),  antilinear_name(-1, -1, 1), antilinear_name(1, 1, -1),
      antilinear_name(-1, 1, -1), antilinear_name(1, -1, -1), antilinear_name(-1, -1, -1)};
  return names;
}

std::string table_row_name(const SymmetrySignature& s) {
  if (s.varpi == 1) {
    if (s.c) return linear_name(s.wp, *s.c);
    return linear_name(s.wp, 1) + " | " + linear_name(s.wp, -1);
  }
  if (!s.epsilon) throw InvalidInput("anti-linear signature needs ε");
  if (s.c) return antilinear_name(s.wp, *s.epsilon, *s.c);
  return antilinear_name(s.wp, *s.epsilon, 1) + " | " + antilinear_name(s.wp, *s.epsilon, -1);
}

IsometryType classify_isometry_type(const RealLinearOp& u, const KreinMetric& metric, double tol) {
  if (u.dim() != metric.dim()) throw DimensionMismatch("classify_isometry_type");
  RealLinearOp inv = u.inverse();
  RealLinearOp lhs = metric.eta * u.adjoint();
  RealLinearOp rhs = inv * metric.eta;
  IsometryType out;
  out.varpi = u.varpi;
  out.residual_plus = (lhs.mat - rhs.mat).norm();
  out.residual_minus = (lhs.mat + rhs.mat).norm();
  const double s = scale_of(u.mat) * scale_of(inv.mat);
  if (out.residual_plus <= tol * s)
    out.wp = 1;
  else if (out.residual_minus <= tol * s)
    out.wp = -1;
  else
    throw NotAnEtaSymmetry("neither ηU* = U⁻¹η (residual " + std::to_string(out.residual_plus) +
                           ") nor ηU* = -U⁻¹η (residual " + std::to_string(out.residual_minus) +
                           ")");
  return out;
}

SymmetryClassification classify_involutive_symmetry(const RealLinearOp& u,
                                                    const KreinMetric& metric,
                                                    const std::optional<ComplexMatrix>& h,
                                                    double tol) {
  IsometryType it = classify_isometry_type(u, metric, tol);
  SymmetryClassification out;
  out.signature.varpi = it.varpi;
  out.signature.wp = it.wp;
  const Eigen::Index n = u.dim();
  RealLinearOp sq = u * u;
  const double s = scale_of(u.mat) * scale_of(u.mat);
  if (u.varpi == 1) {
    if ((sq.mat - eye(n)).norm() > tol * s) throw NotInvolutive("linear U with U² ≠ 1");
  } else {
    if ((sq.mat - eye(n)).norm() <= tol * s)
      out.signature.epsilon = 1;
    else if ((sq.mat + eye(n)).norm() <= tol * s)
      out.signature.epsilon = -1;
    else
      throw NotInvolutive("anti-linear U with U² ≠ ±1");
  }
  if (h) {
    if (h->rows() != n) throw DimensionMismatch("classify_involutive_symmetry: H");
    RealLinearOp hop = RealLinearOp::linear(*h);
    RealLinearOp uh = u * hop, hu = hop * u;
    const double hs = scale_of(u.mat) * scale_of(*h);
    bool comm = (uh.mat - hu.mat).norm() <= tol * hs;
    bool anti = (uh.mat + hu.mat).norm() <= tol * hs;
    if (comm && anti) {
      out.signature.c = 1;
      out.signature.degenerate = true;
    } else if (comm) {
      out.signature.c = 1;
    } else if (anti) {
      out.signature.c = -1;
    } else {
      throw NeitherCommutesNorAnticommutes("UH ≠ ±HU");
    }
  }
  out.name = table_row_name(out.signature);
  return out;
}

TransformedSymmetry transform_symmetry(const RealLinearOp& u, const CSymmetry& xi, double tol) {
  const KreinMetric& metric = xi.metric;
  IsometryType it = classify_isometry_type(u, metric, tol);
  GPair gp = g_pair(xi, tol);
  TransformedSymmetry out;
  out.u_tilde = gp.g * u * gp.g_inv;
  out.varpi = out.u_tilde.varpi;
  out.wp = classify_isometry_type(out.u_tilde, metric, tol).wp;
  const double wp = double(it.wp);
  RealLinearOp ux = u * xi.xi, xu = xi.xi * u;
  out.compatibility_residual = (ux.mat - wp * xu.mat).norm();
  out.compatible =
      out.compatibility_residual <= tol * scale_of(u.mat) * scale_of(xi.xi);
  const Eigen::Index n = u.dim();
  RealLinearOp uu = out.u_tilde.adjoint() * out.u_tilde;
  out.unitarity_residual = (uu.mat - eye(n)).norm();
  RealLinearOp ue = out.u_tilde * metric.eta, eu = metric.eta * out.u_tilde;
  out.eta_relation_residual = (ue.mat - wp * eu.mat).norm();
  return out;
}

}  // namespace kreinlab
