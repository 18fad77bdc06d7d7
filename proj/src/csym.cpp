#include "kreinlab/csym.hpp"

#include <numeric>

namespace kreinlab {

namespace {

ComplexMatrix herm_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

void require_dim(const ComplexMatrix& m, const KreinMetric& metric, const char* what) {
  if (m.rows() != m.cols() || m.rows() != metric.dim())
    throw DimensionMismatch(std::string(what) + ": dimension does not match the metric");
}

}  // namespace

CSymVerdict is_csymmetry(const ComplexMatrix& xi, const KreinMetric& metric, double tol) {
  require_dim(xi, metric, "is_csymmetry");
  const Eigen::Index n = xi.rows();
  CSymVerdict v;
  const double s = scale_of(xi);
  v.involution_residual = (xi * xi - eye(n)).norm();
  ComplexMatrix ex = metric.eta * xi;
  v.sharp_residual = (ex - ex.adjoint()).norm();
  HermEig<cplx> e = herm_eig<cplx>(herm_part(ex), tol);
  v.min_eig = n > 0 ? e.eigenvalues(0) : 1.0;
  v.ok = v.involution_residual <= tol * s * s && v.sharp_residual <= tol * s &&
         v.min_eig > tol * s;
  return v;
}

CSymmetry CSymmetry::make(const ComplexMatrix& xi, const KreinMetric& metric, double tol) {
  CSymVerdict v = is_csymmetry(xi, metric, tol);
  if (!v.ok)
    throw NotACSymmetry("Ξ² - 1 residual " + std::to_string(v.involution_residual) +
                        ", min eig(ηΞ) " + std::to_string(v.min_eig));
  return {xi, metric};
}

ComplexMatrix q_from_xi(const CSymmetry& xi, double tol) {
  // ηΞ ≻ 0, so the principal logarithm is defined on its whole spectrum.
  return matfun_hermitian<cplx>(herm_part(xi.metric.eta * xi.xi), HermFn::Log, tol);
}

CSymmetry xi_from_q(const ComplexMatrix& q, const KreinMetric& metric, double tol) {
  require_dim(q, metric, "xi_from_q");
  const double s = scale_of(q);
  if ((q - q.adjoint()).norm() > tol * s) throw NotInRSpace("Q is not self-adjoint");
  if ((q * metric.eta + metric.eta * q).norm() > tol * s)
    throw NotInRSpace("Q does not anticommute with η");
  ComplexMatrix eq = matfun_hermitian<cplx>(herm_part(q), HermFn::Exp, tol);
  return {metric.eta * eq, metric};
}

GPair g_pair(const CSymmetry& xi, double tol) {
  HermEig<cplx> e = herm_eig<cplx>(herm_part(xi.metric.eta * xi.xi), tol);
  const Eigen::Index n = e.eigenvalues.size();
  double scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(e.eigenvalues(i)));
  if (n > 0 && e.eigenvalues(0) <= tol * scale)
    throw NotACSymmetry("ηΞ is not positive definite");
  GPair out;
  out.g = apply_spectral(e, [](double x) { return std::sqrt(x); });
  out.g_inv = apply_spectral(e, [](double x) { return 1.0 / std::sqrt(x); });
  return out;
}

ComplexMatrix g_from_xi(const CSymmetry& xi, double tol) { return g_pair(xi, tol).g; }

StabilityCertificate reduce_hamiltonian(const ComplexMatrix& h, const CSymmetry& xi, double tol) {
  require_dim(h, xi.metric, "reduce_hamiltonian");
  if (!is_eta_selfadjoint(h, xi.metric, tol).ok)
    throw NotEtaSelfAdjoint("reduce_hamiltonian: H ≠ ηH*η");
  const double comm = (h * xi.xi - xi.xi * h).norm();
  if (comm > tol * scale_of(h) * scale_of(xi.xi))
    throw DoesNotCommuteWithXi("reduce_hamiltonian: |[H, Ξ]| = " + std::to_string(comm));
  StabilityCertificate c;
  c.xi = xi;
  GPair gp = g_pair(xi, tol);
  c.g = gp.g;
  c.g_inv = gp.g_inv;
  c.h_tilde = c.g * h * c.g_inv;
  c.hermitian_residual = (c.h_tilde - c.h_tilde.adjoint()).norm();
  c.eta_commutator = (c.h_tilde * xi.metric.eta - xi.metric.eta * c.h_tilde).norm();
  SchurForm s = complex_schur(h, tol);
  HermEig<cplx> e = herm_eig<cplx>(herm_part(c.h_tilde), tol);
  c.spectrum_residual = multiset_distance(s.eigenvalues, e.eigenvalues.cast<cplx>());
  return c;
}

CSymmetry find_csymmetry(const ComplexMatrix& h, const KreinMetric& metric, double tol) {
  require_dim(h, metric, "find_csymmetry");
  if (!is_eta_selfadjoint(h, metric, tol).ok)
    throw NotEtaSelfAdjoint("find_csymmetry: H ≠ ηH*η");
  const Eigen::Index n = h.rows();
  const ComplexMatrix& eta = metric.eta;
  SchurForm s = complex_schur(h, tol);
  const ComplexVector& lam = s.eigenvalues;

  // Cluster eigenvalues closer than 1e3·tol·(1 + |λ|); rounding splits a Jordan
  // block by roughly sqrt(eps), which stays well inside that radius.
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(lam(i) - lam(j)) <= 1e3 * tol * (1.0 + std::abs(lam(i))))
        parent[find(j)] = find(i);
  std::vector<std::vector<Eigen::Index>> clusters;
  std::vector<Eigen::Index> slot(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index r = find(i);
    if (slot[r] < 0) {
      slot[r] = Eigen::Index(clusters.size());
      clusters.emplace_back();
    }
    clusters[slot[r]].push_back(i);
  }

  const double hscale = scale_of(h);
  const double rank_thresh = std::sqrt(tol) * hscale;
  ComplexMatrix w(n, n);
  RealVector signs(n);
  Eigen::Index col = 0;
  for (const auto& cl : clusters) {
    cplx mean = 0.0;
    for (Eigen::Index i : cl) mean += lam(i);
    mean /= double(cl.size());
    if (std::abs(mean.imag()) > tol * (1.0 + std::abs(mean)))
      throw NotDynamicallyStable("non-real", "eigenvalue " + std::to_string(mean.real()) +
                                                 (mean.imag() >= 0 ? "+" : "") +
                                                 std::to_string(mean.imag()) + "i");
    const Eigen::Index k = Eigen::Index(cl.size());
    ComplexMatrix shifted = h - mean.real() * eye(n);
    Eigen::BDCSVD<ComplexMatrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv(n - k) > rank_thresh)
      throw NotDynamicallyStable("defective", "eigenvalue " + std::to_string(mean.real()) +
                                                  " has fewer eigenvectors than its multiplicity");
    ComplexMatrix basis = svd.matrixV().rightCols(k);
    // Degenerate eigenspace: diagonalize the restricted metric.
    HermEig<cplx> re = herm_eig<cplx>(herm_part(basis.adjoint() * eta * basis), tol);
    for (Eigen::Index j = 0; j < k; ++j) {
      double d = re.eigenvalues(j);
      if (std::abs(d) <= tol)
        throw NotDynamicallyStable("neutral", "eigenvalue " + std::to_string(mean.real()) +
                                                  " has an η-neutral eigenvector");
      w.col(col) = basis * re.eigenvectors.col(j);
      signs(col) = d > 0 ? 1.0 : -1.0;
      ++col;
    }
  }
  if (condition_number(w) > 1.0 / tol)
    throw NotDynamicallyStable("defective", "eigenvector matrix condition number exceeds 1/tol");
  Eigen::PartialPivLU<ComplexMatrix> lu(w);
  ComplexMatrix xi = w * signs.cast<cplx>().asDiagonal() * lu.inverse();
  // Remove the rounding-level non-Hermitian part of ηΞ.
  xi = eta * herm_part(eta * xi);
  return {xi, metric};
}

ComplexMatrix stable_functional_calculus(const ComplexMatrix& h, const CSymmetry& xi,
                                         const std::function<double(double)>& f, double tol) {
  StabilityCertificate c = reduce_hamiltonian(h, xi, tol);
  ComplexMatrix fh = matfun_hermitian<cplx>(herm_part(c.h_tilde), f, tol);
  return c.g_inv * fh * c.g;
}

ComplexMatrix stable_propagator(const ComplexMatrix& h, const CSymmetry& xi, double t,
                                double tol) {
  StabilityCertificate c = reduce_hamiltonian(h, xi, tol);
  ComplexMatrix u = matfun_hermitian_c(herm_part(c.h_tilde),
                                       [t](double x) { return std::exp(cplx(0.0, -t * x)); }, tol);
  return c.g_inv * u * c.g;
}

}  // namespace kreinlab
