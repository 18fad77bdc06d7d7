#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "kreinlab/core.hpp"

namespace kreinlab {

template <typename Scalar>
struct HermEig {
  RealVector eigenvalues;      // ascending
  Mat<Scalar> eigenvectors;    // columns, unitary
};

struct SchurForm {
  ComplexMatrix q;
  ComplexMatrix t;
  ComplexVector eigenvalues;  // diagonal of t, sorted by (real, imag)
};

enum class HermFn { Exp, Log, Sqrt, Abs, Sign };

// Cyclic Jacobi: sweep limit and the per-row iteration budget of the Schur solver.
constexpr int kJacobiMaxSweeps = 60;
constexpr int kSchurIterationsPerRow = 30;
constexpr int kNewtonMaxIter = 100;

namespace detail {

inline double conj_of(double x) { return x; }
inline cplx conj_of(cplx x) { return std::conj(x); }
inline double abs2_of(double x) { return x * x; }
inline double abs2_of(cplx x) { return std::norm(x); }

template <typename Scalar>
void normalize_phase(Eigen::Ref<Vec<Scalar>> v) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v(i)));
  if (best == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= best * (1.0 - 1e-10)) {
      Scalar ph = v(i) / Scalar(std::abs(v(i)));
      v *= conj_of(ph);
      return;
    }
  }
}

}  // namespace detail

template <typename Scalar>
HermEig<Scalar> herm_eig(const Mat<Scalar>& m, double tol = default_tol()) {
  using std::abs;
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DimensionMismatch("herm_eig needs a square matrix");
  if (!m.allFinite()) throw DomainError("herm_eig: non-finite entries");
  const double mnorm = m.norm();
  if ((m - m.adjoint()).norm() > tol * std::max(mnorm, std::numeric_limits<double>::min()))
    throw NotHermitian("herm_eig: |m - m*| exceeds tol*|m|");

  Mat<Scalar> a = (m + m.adjoint()) / Scalar(2.0);
  Mat<Scalar> v = Mat<Scalar>::Identity(n, n);
  auto offdiag = [&]() {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < n; ++p)
        if (p != q) s += detail::abs2_of(a(p, q));
    return std::sqrt(s);
  };

  const double anorm = std::max(a.norm(), std::numeric_limits<double>::min());
  // Past tol, keep sweeping while the off-diagonal mass still shrinks; tight
  // clusters can leave it near tol after the first sweep that gets there.
  double prev = std::numeric_limits<double>::infinity();
  int sweep = 0;
  for (;; ++sweep) {
    double off = offdiag();
    if (off <= 4 * std::numeric_limits<double>::epsilon() * anorm) break;
    if (off <= tol * anorm && (off > 0.5 * prev || sweep >= kJacobiMaxSweeps)) break;
    if (sweep >= kJacobiMaxSweeps) throw NoConvergence("herm_eig: Jacobi sweep limit reached");
    prev = off;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        Scalar b = a(p, q);
        double absb = abs(b);
        if (absb == 0.0) continue;
        Scalar phase = b / Scalar(absb);
        double app = std::real(a(p, p)), aqq = std::real(a(q, q));
        double theta = (aqq - app) / (2.0 * absb);
        double t = (theta >= 0 ? 1.0 : -1.0) / (abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
        Scalar j11 = c, j12 = s;
        Scalar j21 = -s * detail::conj_of(phase), j22 = c * detail::conj_of(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          Scalar akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * j11 + akq * j21;
          a(k, q) = akp * j12 + akq * j22;
          Scalar vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * j11 + vkq * j21;
          v(k, q) = vkp * j12 + vkq * j22;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          Scalar apk = a(p, k), aqk = a(q, k);
          a(p, k) = detail::conj_of(j11) * apk + detail::conj_of(j21) * aqk;
          a(q, k) = detail::conj_of(j12) * apk + detail::conj_of(j22) * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        a(p, p) = Scalar(std::real(a(p, p)));
        a(q, q) = Scalar(std::real(a(q, q)));
      }
    }
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return std::real(a(i, i)) < std::real(a(j, j));
  });
  HermEig<Scalar> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = std::real(a(order[k], order[k]));
    out.eigenvectors.col(k) = v.col(order[k]);
    detail::normalize_phase<Scalar>(out.eigenvectors.col(k));
  }
  return out;
}

// V f(Λ) V* for an already computed decomposition.
template <typename Scalar, typename F>
auto apply_spectral(const HermEig<Scalar>& e, F&& f) {
  using R = decltype(f(0.0));
  using Out = std::conditional_t<std::is_same_v<R, cplx>, cplx, Scalar>;
  const Eigen::Index n = e.eigenvalues.size();
  Vec<Out> fl(n);
  for (Eigen::Index k = 0; k < n; ++k) fl(k) = Out(f(e.eigenvalues(k)));
  Mat<Out> vv = e.eigenvectors.template cast<Out>();
  return Mat<Out>(vv * fl.asDiagonal() * vv.adjoint());
}

template <typename Scalar>
Mat<Scalar> matfun_hermitian(const Mat<Scalar>& m, const std::function<double(double)>& f,
                             double tol = default_tol()) {
  return apply_spectral(herm_eig<Scalar>(m, tol), f);
}

template <typename Scalar>
Mat<Scalar> matfun_hermitian(const Mat<Scalar>& m, HermFn fn, double tol = default_tol()) {
  HermEig<Scalar> e = herm_eig<Scalar>(m, tol);
  const Eigen::Index n = e.eigenvalues.size();
  double scale = 1.0;
  for (Eigen::Index k = 0; k < n; ++k) scale = std::max(scale, std::abs(e.eigenvalues(k)));
  const double floor = tol * scale;
  switch (fn) {
    case HermFn::Exp:
      return apply_spectral(e, [](double x) { return std::exp(x); });
    case HermFn::Abs:
      return apply_spectral(e, [](double x) { return std::abs(x); });
    case HermFn::Log:
    case HermFn::Sqrt:
      if (n > 0 && e.eigenvalues(0) <= floor)
        throw DomainError("matfun_hermitian: log/sqrt needs a positive definite matrix");
      if (fn == HermFn::Log) return apply_spectral(e, [](double x) { return std::log(x); });
      return apply_spectral(e, [](double x) { return std::sqrt(x); });
    case HermFn::Sign:
      for (Eigen::Index k = 0; k < n; ++k)
        if (std::abs(e.eigenvalues(k)) <= floor)
          throw DomainError("matfun_hermitian: sign of a matrix with a zero eigenvalue");
      return apply_spectral(e, [](double x) { return x > 0 ? 1.0 : -1.0; });
  }
  throw DomainError("matfun_hermitian: unknown function");
}

// Complex-valued spectral function of a Hermitian matrix, e.g. exp(i t H).
ComplexMatrix matfun_hermitian_c(const ComplexMatrix& m, const std::function<cplx(double)>& f,
                                 double tol = default_tol());

SchurForm complex_schur(const ComplexMatrix& m, double tol = default_tol());

// Eigenvectors of the Schur form by back-substitution; repeated diagonal entries
// are perturbed apart, so a defective matrix yields (nearly) parallel columns.
ComplexMatrix schur_eigenvectors(const SchurForm& s, double tol = default_tol());

// Spectral sign through the Schur form and a triangular Sylvester solve.
ComplexMatrix matsign_schur(const ComplexMatrix& m, double tol = default_tol());

ComplexMatrix matsign_newton(const ComplexMatrix& m, double tol = default_tol(),
                             int max_iter = kNewtonMaxIter);

// 2-norm condition number via SVD.
double condition_number(const ComplexMatrix& m);

// Orthonormal basis of the numerical null space: singular values <= thresh.
ComplexMatrix null_space(const ComplexMatrix& m, double thresh);

// Greedy nearest matching of two multisets; returns the largest matched distance.
double multiset_distance(const ComplexVector& a, const ComplexVector& b);

}  // namespace kreinlab
