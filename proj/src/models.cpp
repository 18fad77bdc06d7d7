#include "kreinlab/models.hpp"

#include <cmath>

namespace kreinlab {

Grid1D Grid1D::make(int n, double l) {
  if (n < 2 || n % 2 != 0) throw InvalidInput("Grid1D needs an even number of points ≥ 2");
  if (!(l > 0.0) || !std::isfinite(l)) throw InvalidInput("Grid1D needs a positive half-length");
  Grid1D g;
  g.n = n;
  g.l = l;
  g.h = 2.0 * l / n;
  g.points.resize(n);
  for (int j = 0; j < n; ++j) g.points(j) = -l + (j + 0.5) * g.h;
  // exact mirror symmetry, independent of rounding in the formula above
  for (int j = 0; j < n / 2; ++j) g.points(n - 1 - j) = -g.points(j);
  return g;
}

ComplexMatrix second_difference(const Grid1D& grid) {
  const int n = grid.n;
  const double ih2 = 1.0 / (grid.h * grid.h);
  ComplexMatrix d = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    d(j, j) = -2.0 * ih2;
    if (j > 0) d(j, j - 1) = ih2;
    if (j + 1 < n) d(j, j + 1) = ih2;
  }
  return d;
}

KreinMetric parity_metric(const Grid1D& grid) {
  const int n = grid.n;
  KreinMetric m;
  m.eta = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m.eta(j, n - 1 - j) = 1.0;
  m.kappa_plus = m.kappa_minus = n / 2;
  return m;
}

cplx i_power(double y, double epsilon) {
  const double sgn = y > 0 ? 1.0 : (y < 0 ? -1.0 : 0.0);
  const double mag = std::pow(std::abs(y), epsilon);
  const double ang = epsilon * (kPi / 2) * sgn;
  return {mag * std::cos(ang), mag * std::sin(ang)};
}

std::pair<ComplexMatrix, KreinMetric> discretize_heps(const Grid1D& grid, double epsilon,
                                                      const std::function<double(double)>& f,
                                                      double tol) {
  if (!std::isfinite(epsilon)) throw InvalidInput("discretize_heps: ε must be finite");
  const int n = grid.n;
  RealVector fx(n);
  for (int j = 0; j < n; ++j) fx(j) = f(grid.points(j));
  for (int j = 0; j < n; ++j) {
    const double a = fx(j), b = fx(n - 1 - j);
    if (std::abs(a + b) > tol * std::max({1.0, std::abs(a), std::abs(b)}))
      throw NotOdd("f(" + std::to_string(grid.points(j)) + ") + f(-x) = " + std::to_string(a + b));
  }
  // Symmetrize so that f(-x) = -f(x) holds bit-exactly on the grid.
  for (int j = 0; j < n / 2; ++j) {
    const double a = 0.5 * (fx(j) - fx(n - 1 - j));
    fx(j) = a;
    fx(n - 1 - j) = -a;
  }
  ComplexMatrix h = -second_difference(grid);
  for (int j = 0; j < n; ++j) h(j, j) -= i_power(fx(j), epsilon);
  return {h, parity_metric(grid)};
}

std::pair<ComplexMatrix, KreinMetric> discretize_mw(const Grid1D& grid,
                                                    const std::function<double(double)>& w,
                                                    double tol) {
  const int n = grid.n;
  std::vector<int> signs(n);
  for (int j = 0; j < n; ++j) {
    const double v = w(grid.points(j));
    if (std::abs(std::abs(v) - 1.0) > tol)
      throw NotUnimodular("w(" + std::to_string(grid.points(j)) + ") = " + std::to_string(v));
    signs[j] = v > 0 ? 1 : -1;
  }
  KreinMetric metric = KreinMetric::diagonal(signs);
  ComplexMatrix m = metric.eta * second_difference(grid);
  return {m, metric};
}

WeightSplit split_weight(const ComplexMatrix& w, double tol) {
  if (w.rows() != w.cols()) throw DimensionMismatch("split_weight: W must be square");
  if ((w - w.adjoint()).norm() > tol * scale_of(w)) throw NotHermitian("split_weight: W ≠ W*");
  HermEig<cplx> e = herm_eig<cplx>(ComplexMatrix(0.5 * (w + w.adjoint())), tol);
  const double s = scale_of(w);
  WeightSplit out;
  out.b_plus = out.b_minus = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < e.eigenvalues.size(); ++k) {
    const double l = e.eigenvalues(k);
    if (std::abs(l) <= tol * s) throw Singular("W has eigenvalue " + std::to_string(l));
    if (l > 0) {
      out.a_plus = std::max(out.a_plus, l);
      out.b_plus = std::min(out.b_plus, l);
    } else {
      out.a_minus = std::max(out.a_minus, -l);
      out.b_minus = std::min(out.b_minus, -l);
    }
  }
  if (!std::isfinite(out.b_plus)) out.b_plus = 0.0;
  if (!std::isfinite(out.b_minus)) out.b_minus = 0.0;
  out.w_plus = apply_spectral(e, [](double l) { return l > 0 ? l : 0.0; });
  out.w_minus = apply_spectral(e, [](double l) { return l < 0 ? l : 0.0; });
  return out;
}

MaxwellModel build_maxwell(const ComplexMatrix& m0, const ComplexMatrix& w, double tol) {
  if (m0.rows() != m0.cols() || w.rows() != w.cols() || m0.rows() != w.rows())
    throw DimensionMismatch("build_maxwell: M₀ and W must be square of equal size");
  if ((m0 - m0.adjoint()).norm() > tol * scale_of(m0)) throw NotHermitian("build_maxwell: M₀ ≠ M₀*");
  const Eigen::Index n = m0.rows();
  MaxwellModel out;
  out.m0 = 0.5 * (m0 + m0.adjoint());
  out.w = 0.5 * (w + w.adjoint());
  HermEig<cplx> e0 = herm_eig<cplx>(out.m0, tol);
  if (n > 0 && e0.eigenvalues(0) <= tol * scale_of(m0))
    throw NotPositive("M₀ has eigenvalue " + std::to_string(e0.eigenvalues(0)) +
                      ", strict positivity is required");
  out.split = split_weight(out.w, tol);

  HermEig<cplx> ew = herm_eig<cplx>(out.w, tol);
  ComplexMatrix eta = apply_spectral(ew, [](double l) { return l > 0 ? 1.0 : -1.0; });
  out.eta_w = KreinMetric::from(0.5 * (eta + eta.adjoint()), tol);
  out.abs_w_sqrt = apply_spectral(ew, [](double l) { return std::sqrt(std::abs(l)); });
  out.abs_w_isqrt = apply_spectral(ew, [](double l) { return 1.0 / std::sqrt(std::abs(l)); });
  out.m = out.w * out.m0;

  // In Euclidean coordinates M becomes η_W·(|W|^{1/2} M₀ |W|^{1/2}).
  ComplexMatrix me = to_euclidean(out, out.m);
  out.selfadjoint_residual = is_eta_selfadjoint(me, out.eta_w, tol).residual;

  SchurForm sf = complex_schur(out.m, tol);
  for (Eigen::Index k = 0; k < n; ++k)
    out.max_imag_spectrum = std::max(out.max_imag_spectrum, std::abs(sf.eigenvalues(k).imag()));

  out.xi_raw = matsign_newton(out.m, tol);
  ComplexMatrix xe = to_euclidean(out, out.xi_raw);
  out.verdict = is_csymmetry(xe, out.eta_w, tol);
  if (out.verdict.ok) out.xi = CSymmetry{xe, out.eta_w};
  return out;
}

ComplexMatrix to_euclidean(const MaxwellModel& model, const ComplexMatrix& x) {
  return model.abs_w_isqrt * x * model.abs_w_sqrt;
}

std::string to_string(Parity p) {
  switch (p) {
    case Parity::Even:
      return "even";
    case Parity::Odd:
      return "odd";
    default:
      return "neither";
  }
}

ParityReport parity_check(const ComplexMatrix& m0, const RealLinearOp& c, double tol) {
  if (m0.rows() != m0.cols() || c.dim() != m0.rows())
    throw DimensionMismatch("parity_check: C and M₀ differ in size");
  const Eigen::Index n = m0.rows();
  if (c.is_linear()) throw PreconditionViolated("parity_check: C must be anti-linear");
  RealLinearOp cc = c * c;
  if ((cc.mat - eye(n)).norm() > tol * scale_of(c.mat) * scale_of(c.mat))
    throw PreconditionViolated("parity_check: C² ≠ 1");
  RealLinearOp conj = c * RealLinearOp::linear(m0) * c;
  ParityReport r;
  r.even_residual = (conj.mat - m0).norm();
  r.odd_residual = (conj.mat + m0).norm();
  const double s = scale_of(m0) * scale_of(c.mat) * scale_of(c.mat);
  if (r.even_residual <= tol * s && r.even_residual <= r.odd_residual)
    r.parity = Parity::Even;
  else if (r.odd_residual <= tol * s)
    r.parity = Parity::Odd;
  ComplexVector lam = complex_schur(m0, tol).eigenvalues;
  r.spectrum_residual = multiset_distance(lam, ComplexVector(-lam));
  if (r.parity == Parity::Odd) r.spectrum_symmetric = r.spectrum_residual <= std::sqrt(tol) * scale_of(m0);
  return r;
}

ComplexMatrix curl_block_surrogate(const RealMatrix& s) {
  if (s.rows() != s.cols()) throw DimensionMismatch("curl_block_surrogate: S must be square");
  if ((s - s.transpose()).norm() > 0.0) throw InvalidInput("curl_block_surrogate: S must be symmetric");
  const Eigen::Index k = s.rows();
  ComplexMatrix m = ComplexMatrix::Zero(2 * k, 2 * k);
  m.topRightCorner(k, k) = cplx(0, 1) * s.cast<cplx>();
  m.bottomLeftCorner(k, k) = cplx(0, -1) * s.cast<cplx>();
  return m;
}

ComplexMatrix shifted_laplacian(int n, double shift) {
  if (n < 1) throw InvalidInput("shifted_laplacian: n ≥ 1");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    m(j, j) = 2.0 + shift;
    if (j > 0) m(j, j - 1) = -1.0;
    if (j + 1 < n) m(j, j + 1) = -1.0;
  }
  return m;
}

}  // namespace kreinlab
