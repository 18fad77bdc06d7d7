#include "kreinlab/numkit.hpp"

#include <cstdlib>

#include <Eigen/Eigenvalues>

namespace kreinlab {

double default_tol() {
  static const double tol = [] {
    const char* env = std::getenv("KREINLAB_TOL");
    if (env != nullptr) {
      char* end = nullptr;
      double v = std::strtod(env, &end);
      if (end != env && v > 0 && std::isfinite(v)) return v;
    }
    return 1e-9;
  }();
  return tol;
}

ComplexMatrix matfun_hermitian_c(const ComplexMatrix& m, const std::function<cplx(double)>& f,
                                 double tol) {
  return apply_spectral(herm_eig<cplx>(m, tol), f);
}

namespace {

// Order by real part, ties (within tol) broken by imaginary part.
bool schur_before(cplx a, cplx b, double slack) {
  if (std::abs(a.real() - b.real()) > slack) return a.real() < b.real();
  return a.imag() < b.imag() - slack;
}

// Swap diagonal entries k, k+1 of an upper-triangular t by a unitary rotation.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& q, Eigen::Index k) {
  const Eigen::Index n = t.rows();
  cplx a = t(k, k), b = t(k, k + 1), c = t(k + 1, k + 1);
  // Eigenvector of the 2x2 block for eigenvalue c becomes the first basis vector.
  Eigen::Vector2cd v(b, c - a);
  double nv = v.norm();
  if (nv == 0.0) return;
  v /= nv;
  Eigen::Matrix2cd u;
  u << v(0), -std::conj(v(1)), v(1), std::conj(v(0));
  t.middleRows(k, 2) = u.adjoint() * t.middleRows(k, 2);
  t.middleCols(k, 2) = t.middleCols(k, 2) * u;
  q.middleCols(k, 2) = q.middleCols(k, 2) * u;
  t(k + 1, k) = 0.0;
  (void)n;
}

}  // namespace

SchurForm complex_schur(const ComplexMatrix& m, double tol) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("complex_schur needs a square matrix");
  if (!m.allFinite()) throw DomainError("complex_schur: non-finite entries");
  SchurForm out;
  if (n == 0) return out;
  Eigen::ComplexSchur<ComplexMatrix> schur(n);
  schur.setMaxIterations(kSchurIterationsPerRow * n);
  schur.compute(m, true);
  if (schur.info() != Eigen::Success)
    throw NoConvergence("complex_schur: QR iteration budget exhausted");
  ComplexMatrix t = schur.matrixT().triangularView<Eigen::Upper>();
  ComplexMatrix q = schur.matrixU();

  const double slack = tol * std::max(1.0, t.diagonal().cwiseAbs().maxCoeff());
  // Bubble sort keeps the order deterministic and each swap is a stable rotation.
  for (Eigen::Index pass = 0; pass < n; ++pass) {
    bool swapped = false;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (schur_before(t(k + 1, k + 1), t(k, k), slack)) {
        swap_adjacent(t, q, k);
        swapped = true;
      }
    }
    if (!swapped) break;
  }
  out.q = q;
  out.t = t.triangularView<Eigen::Upper>();
  out.eigenvalues = out.t.diagonal();
  return out;
}

ComplexMatrix schur_eigenvectors(const SchurForm& s, double tol) {
  const Eigen::Index n = s.t.rows();
  const ComplexMatrix& t = s.t;
  const double tnorm = std::max(t.norm(), std::numeric_limits<double>::min());
  const double smin = std::max(std::numeric_limits<double>::epsilon() * tnorm,
                               std::numeric_limits<double>::min() * 1e3);
  (void)tol;
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    y(k, k) = 1.0;
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      cplx rhs = 0.0;
      for (Eigen::Index j = i + 1; j <= k; ++j) rhs -= t(i, j) * y(j, k);
      cplx d = t(i, i) - t(k, k);
      if (std::abs(d) < smin) d = smin;  // tie perturbation
      y(i, k) = rhs / d;
    }
    y.col(k).normalize();
  }
  ComplexMatrix v = s.q * y;
  for (Eigen::Index k = 0; k < n; ++k) v.col(k).normalize();
  return v;
}

ComplexMatrix matsign_schur(const ComplexMatrix& m, double tol) {
  SchurForm s = complex_schur(m, tol);
  const Eigen::Index n = m.rows();
  const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double re = s.eigenvalues(i).real();
    if (std::abs(re) <= tol * scale)
      throw DomainError("matsign_schur: eigenvalue on the imaginary axis");
    if (re < 0) ++k;
  }
  // Sorted Schur form: the k eigenvalues with negative real part come first.
  const Eigen::Index p = n - k;
  ComplexMatrix sgn = ComplexMatrix::Zero(n, n);
  sgn.topLeftCorner(k, k) = -ComplexMatrix::Identity(k, k);
  sgn.bottomRightCorner(p, p) = ComplexMatrix::Identity(p, p);
  if (k > 0 && p > 0) {
    // T11 X - X T22 = -2 T12, column by column.
    ComplexMatrix t11 = s.t.topLeftCorner(k, k);
    ComplexMatrix t22 = s.t.bottomRightCorner(p, p);
    ComplexMatrix c = -2.0 * s.t.topRightCorner(k, p);
    ComplexMatrix x(k, p);
    for (Eigen::Index j = 0; j < p; ++j) {
      ComplexVector rhs = c.col(j);
      for (Eigen::Index l = 0; l < j; ++l) rhs += x.col(l) * t22(l, j);
      ComplexMatrix lhs = t11 - t22(j, j) * ComplexMatrix::Identity(k, k);
      x.col(j) = lhs.triangularView<Eigen::Upper>().solve(rhs);
    }
    sgn.topRightCorner(k, p) = x;
  }
  return s.q * sgn * s.q.adjoint();
}

ComplexMatrix matsign_newton(const ComplexMatrix& m, double tol, int max_iter) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("matsign_newton needs a square matrix");
  if (n == 0) return m;
  ComplexMatrix x = m;
  double last = std::numeric_limits<double>::infinity();
  int growth = 0;
  bool scaling = true;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::PartialPivLU<ComplexMatrix> lu(x);
    double logdet = 0.0;
    const auto& lum = lu.matrixLU();
    for (Eigen::Index i = 0; i < n; ++i) {
      double d = std::abs(lum(i, i));
      if (d == 0.0 || !std::isfinite(d)) throw NoConvergence("matsign_newton: singular iterate");
      logdet += std::log(d);
    }
    double c = scaling ? std::exp(-logdet / double(n)) : 1.0;
    ComplexMatrix next = 0.5 * (c * x + lu.inverse() / c);
    if (!next.allFinite()) throw NoConvergence("matsign_newton: iterate overflow");
    double res = (next - x).norm() / std::max(next.norm(), std::numeric_limits<double>::min());
    x = std::move(next);
    if (res <= tol) {
      // Quadratic convergence: one unscaled step lands at rounding level.
      Eigen::PartialPivLU<ComplexMatrix> lu2(x);
      x = 0.5 * (x + lu2.inverse());
      return x;
    }
    if (res < 1e-2) scaling = false;  // scaling only helps far from convergence
    if (res > last) {
      if (++growth >= 5) throw NoConvergence("matsign_newton: residual grew 5 times in a row");
    } else {
      growth = 0;
    }
    last = res;
  }
  throw NoConvergence("matsign_newton: iteration limit reached");
}

double condition_number(const ComplexMatrix& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  double smin = sv(sv.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smin;
}

ComplexMatrix null_space(const ComplexMatrix& m, double thresh) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0 || m.norm() <= thresh) return ComplexMatrix::Identity(n, n);
  auto kernel = [&](const auto& svd) -> ComplexMatrix {
    const auto& sv = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > thresh) ++rank;
    return svd.matrixV().rightCols(n - rank);
  };
  // BDCSVD in Eigen 3.4.0 can return NaNs, or a V that is not unitary, on some
  // complex input; such kernels fail this check and JacobiSVD takes over.
  auto sound = [&](const ComplexMatrix& k) {
    if (k.hasNaN()) return false;
    const double c = std::sqrt(double(std::max<Eigen::Index>(k.cols(), 1)));
    return (k.adjoint() * k - ComplexMatrix::Identity(k.cols(), k.cols())).norm() <= 1e-10 * c &&
           (m * k).norm() <= 2.0 * thresh * c + 1e-12 * m.norm();
  };
  ComplexMatrix out = kernel(Eigen::BDCSVD<ComplexMatrix>(m, Eigen::ComputeFullV));
  if (!sound(out)) out = kernel(Eigen::JacobiSVD<ComplexMatrix>(m, Eigen::ComputeFullV));
  return out;
}

double multiset_distance(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index arg = -1;
    for (Eigen::Index j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      double d = std::abs(a(i) - b(j));
      if (d < best) {
        best = d;
        arg = j;
      }
    }
    used[arg] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace kreinlab
