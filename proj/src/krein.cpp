#include "kreinlab/krein.hpp"

namespace kreinlab {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw DimensionMismatch(std::string(what) + ": matrix is not square");
}

}  // namespace

KreinMetric KreinMetric::from(const ComplexMatrix& eta, double tol) {
  require_square(eta, "KreinMetric");
  const Eigen::Index n = eta.rows();
  const double s = scale_of(eta);
  if ((eta - eta.adjoint()).norm() > tol * s) throw NotHermitian("metric is not Hermitian");
  if ((eta * eta - eye(n)).norm() > tol * s) throw InvalidInput("metric is not an involution");
  KreinMetric out;
  out.eta = eta;
  HermEig<cplx> e = herm_eig<cplx>(eta, tol);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (e.eigenvalues(i) > 0)
      ++out.kappa_plus;
    else
      ++out.kappa_minus;
  }
  return out;
}

KreinMetric KreinMetric::diagonal(const std::vector<int>& signs) {
  KreinMetric out;
  const Eigen::Index n = Eigen::Index(signs.size());
  out.eta = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (signs[i] != 1 && signs[i] != -1) throw InvalidInput("diagonal metric needs ±1 entries");
    out.eta(i, i) = double(signs[i]);
    if (signs[i] > 0)
      ++out.kappa_plus;
    else
      ++out.kappa_minus;
  }
  return out;
}

ComplexVector RealLinearOp::apply(const ComplexVector& v) const {
  if (varpi == 1) return mat * v;
  return mat * v.conjugate();
}

RealLinearOp RealLinearOp::adjoint() const {
  if (varpi == 1) return {mat.adjoint(), 1};
  return {mat.transpose(), -1};
}

RealLinearOp RealLinearOp::inverse() const {
  Eigen::FullPivLU<ComplexMatrix> lu(mat);
  if (!lu.isInvertible()) throw Singular("RealLinearOp::inverse: singular operator");
  ComplexMatrix inv = lu.inverse();
  if (varpi == 1) return {inv, 1};
  return {inv.conjugate(), -1};
}

RealLinearOp operator*(const RealLinearOp& a, const RealLinearOp& b) {
  if (a.mat.cols() != b.mat.rows()) throw DimensionMismatch("operator composition");
  if (a.varpi == 1) return {a.mat * b.mat, b.varpi};
  return {a.mat * b.mat.conjugate(), -b.varpi};
}

RealLinearOp operator*(const ComplexMatrix& a, const RealLinearOp& b) {
  return RealLinearOp::linear(a) * b;
}

RealLinearOp operator*(const RealLinearOp& a, const ComplexMatrix& b) {
  return a * RealLinearOp::linear(b);
}

RealLinearOp operator+(const RealLinearOp& a, const RealLinearOp& b) {
  if (a.varpi != b.varpi) throw InvalidInput("cannot add linear and anti-linear operators");
  return {a.mat + b.mat, a.varpi};
}

RealLinearOp operator-(const RealLinearOp& a, const RealLinearOp& b) {
  if (a.varpi != b.varpi) throw InvalidInput("cannot subtract linear and anti-linear operators");
  return {a.mat - b.mat, a.varpi};
}

double op_distance(const RealLinearOp& a, const RealLinearOp& b) {
  if (a.varpi != b.varpi || a.mat.rows() != b.mat.rows() || a.mat.cols() != b.mat.cols())
    return std::numeric_limits<double>::infinity();
  return (a.mat - b.mat).norm();
}

NormalizedMetric normalize_metric(const ComplexMatrix& eta_prime, double tol) {
  require_square(eta_prime, "normalize_metric");
  HermEig<cplx> e = herm_eig<cplx>(eta_prime, tol);
  const Eigen::Index n = eta_prime.rows();
  double scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(e.eigenvalues(i)));
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(e.eigenvalues(i)) <= tol * scale)
      throw Singular("normalize_metric: zero eigenvalue");
  NormalizedMetric out;
  out.w = apply_spectral(e, [](double x) { return std::sqrt(std::abs(x)); });
  out.metric.eta = apply_spectral(e, [](double x) { return x > 0 ? 1.0 : -1.0; });
  for (Eigen::Index i = 0; i < n; ++i) {
    if (e.eigenvalues(i) > 0)
      ++out.metric.kappa_plus;
    else
      ++out.metric.kappa_minus;
  }
  return out;
}

RealLinearOp eta_adjoint(const RealLinearOp& a, const KreinMetric& metric) {
  if (a.dim() != metric.dim() || a.mat.cols() != metric.dim())
    throw DimensionMismatch("eta_adjoint: operator and metric dimensions differ");
  return metric.eta * a.adjoint() * metric.eta;
}

ComplexMatrix eta_adjoint(const ComplexMatrix& a, const KreinMetric& metric) {
  return eta_adjoint(RealLinearOp::linear(a), metric).mat;
}

Verdict is_eta_selfadjoint(const ComplexMatrix& h, const KreinMetric& metric, double tol) {
  require_square(h, "is_eta_selfadjoint");
  if (h.rows() != metric.dim()) throw DimensionMismatch("is_eta_selfadjoint");
  Verdict v;
  v.residual = (h - metric.eta * h.adjoint() * metric.eta).norm();
  v.ok = v.residual <= tol * scale_of(h);
  return v;
}

FundamentalDecomposition fundamental_decomposition(const KreinMetric& metric) {
  const Eigen::Index n = metric.dim();
  return {0.5 * (eye(n) + metric.eta), 0.5 * (eye(n) - metric.eta)};
}

ConjugationAndReflection standard_conjugation_and_reflection(const KreinMetric& metric,
                                                             double tol) {
  // Eigenbasis of η: ascending eigenvalue, so the κ₋ negative directions come first.
  HermEig<cplx> e = herm_eig<cplx>(metric.eta, tol);
  const ComplexMatrix& u = e.eigenvectors;
  ConjugationAndReflection out;
  out.c = RealLinearOp::antilinear(u * u.transpose());
  if (metric.kappa_plus == metric.kappa_minus) {
    const Eigen::Index k = metric.kappa_minus;
    ComplexMatrix um = u.leftCols(k), up = u.rightCols(k);
    out.r = up * um.adjoint() + um * up.adjoint();
  }
  return out;
}

ComplexMatrix standard_reflection(const KreinMetric& metric, double tol) {
  auto cr = standard_conjugation_and_reflection(metric, tol);
  if (!cr.r) throw Unavailable("reflection needs κ₊ = κ₋");
  return *cr.r;
}

}  // namespace kreinlab
