#include "kreinlab/gradekit.hpp"

namespace kreinlab {

namespace {

void check_angle(double a, const char* what) {
  if (!(a >= -kPi - 1e-12 && a <= kPi + 1e-12))
    throw OutOfDomain(std::string(what) + " must lie in [-π, π]");
}

void check_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw OutOfDomain("r must be a finite non-negative number");
}

}  // namespace

Gradation Gradation::make(const ComplexMatrix& gamma, std::optional<KreinMetric> metric,
                          double tol) {
  GradationVerdict v = is_eta_gradation(gamma, metric, {}, {}, tol);
  if (!v.ok) {
    for (const auto& r : v.relations)
      if (!r.ok)
        throw InvalidInput("not a gradation: " + r.relation + " residual " +
                           std::to_string(r.residual));
  }
  return {gamma, std::move(metric)};
}

FlattenResult spectral_flatten(const ComplexMatrix& h, double lambda, double tol) {
  if (h.rows() != h.cols()) throw DimensionMismatch("spectral_flatten");
  // Non-Hermitian (even η-self-adjoint) input must be reduced first.
  HermEig<cplx> e = herm_eig<cplx>(h, tol);
  const Eigen::Index n = e.eigenvalues.size();
  double scale = std::max(1.0, std::abs(lambda));
  for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(e.eigenvalues(i)));
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(e.eigenvalues(i) - lambda) <= tol * scale)
      throw GapClosed("spectral_flatten: λ is an eigenvalue within tol");
  FlattenResult out;
  out.gradation.gamma = apply_spectral(e, [lambda](double x) { return x > lambda ? 1.0 : -1.0; });
  out.nontrivial = n > 0 && e.eigenvalues(0) < lambda && lambda < e.eigenvalues(n - 1);
  return out;
}

GradationVerdict is_eta_gradation(const ComplexMatrix& gamma,
                                  const std::optional<KreinMetric>& metric,
                                  const std::vector<GradedOp>& rho,
                                  const std::vector<ComplexMatrix>& gammas, double tol) {
  const Eigen::Index n = gamma.rows();
  if (gamma.cols() != n) throw DimensionMismatch("is_eta_gradation: Γ not square");
  if (metric && metric->dim() != n) throw DimensionMismatch("is_eta_gradation: metric");
  GradationVerdict v;
  auto add = [&](std::string name, double res, double scale) {
    v.relations.push_back({std::move(name), res, res <= tol * scale});
  };
  const double gs = scale_of(gamma);
  add("Γ = Γ*", (gamma - gamma.adjoint()).norm(), gs);
  add("Γ² = 1", (gamma * gamma - eye(n)).norm(), gs * gs);
  if (metric) add("Γη = ηΓ", (gamma * metric->eta - metric->eta * gamma).norm(), gs);
  RealLinearOp g = RealLinearOp::linear(gamma);
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i].op.dim() != n) throw DimensionMismatch("is_eta_gradation: ρ");
    RealLinearOp lhs = g * rho[i].op, rhs = rho[i].op * g;
    add("Γρ[" + std::to_string(i) + "] = " + (rho[i].sign > 0 ? "+" : "-") + "ρΓ",
        (lhs.mat - double(rho[i].sign) * rhs.mat).norm(), gs * scale_of(rho[i].op.mat));
  }
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    if (gammas[j].rows() != n) throw DimensionMismatch("is_eta_gradation: γ");
    add("Γγ[" + std::to_string(j) + "] = -γΓ", (gamma * gammas[j] + gammas[j] * gamma).norm(),
        gs * scale_of(gammas[j]));
  }
  v.ok = true;
  for (const auto& r : v.relations) v.ok = v.ok && r.ok;
  return v;
}

KaroubiTriple KaroubiTriple::make(std::vector<GradedOp> rho, std::vector<ComplexMatrix> gammas,
                                  Gradation g0, Gradation g1, double tol) {
  if (g0.dim() != g1.dim()) throw DimensionMismatch("KaroubiTriple: gradation dimensions");
  for (const Gradation* g : {&g0, &g1}) {
    GradationVerdict v = is_eta_gradation(g->gamma, g->metric, rho, gammas, tol);
    if (!v.ok) throw InvalidInput("KaroubiTriple: gradation violates the symmetry relations");
  }
  KaroubiTriple t;
  t.dimension = g0.dim();
  t.rho = std::move(rho);
  t.gammas = std::move(gammas);
  t.gamma0 = std::move(g0);
  t.gamma1 = std::move(g1);
  return t;
}

ThetaResult theta_map(const ComplexMatrix& a, const Gradation& gamma, double tol) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || n != gamma.dim()) throw DimensionMismatch("theta_map");
  const ComplexMatrix& g = gamma.gamma;
  const double as = scale_of(a);
  if ((a - a.adjoint()).norm() > tol * as) throw PreconditionViolated("A = A* fails");
  if ((a * g + g * a).norm() > tol * as) throw PreconditionViolated("AΓ = -ΓA fails");
  HermEig<cplx> ea = herm_eig<cplx>(a, tol);
  if (n > 0 && (ea.eigenvalues(0) < -1.0 - tol || ea.eigenvalues(n - 1) > 1.0 + tol))
    throw PreconditionViolated("σ(A) ⊆ [-1, 1] fails");
  if (gamma.metric && (a * gamma.metric->eta - gamma.metric->eta * a).norm() > tol * as)
    throw PreconditionViolated("A must commute with η for an η-gradation");
  // AΓ is anti-Hermitian: AΓ = iK with K = -iAΓ Hermitian.
  ComplexMatrix ag = a * g;
  ComplexMatrix k = cplx(0.0, -1.0) * ag;
  k = 0.5 * (k + k.adjoint());
  ComplexMatrix e = matfun_hermitian_c(k, [](double x) { return std::exp(cplx(0.0, kPi * x)); }, tol);
  ThetaResult out;
  out.gradation.gamma = -e * g;
  out.gradation.gamma = 0.5 * (out.gradation.gamma + out.gradation.gamma.adjoint());
  out.gradation.metric = gamma.metric;
  SchurForm s = complex_schur(ag, tol);
  out.spectral_residual = multiset_distance(s.eigenvalues, cplx(0.0, 1.0) * ea.eigenvalues.cast<cplx>());
  return out;
}

ComplexMatrix swap_rotation(Eigen::Index n, double theta) {
  ComplexMatrix t = ComplexMatrix::Zero(2 * n, 2 * n);
  const double c = std::cos(theta), s = std::sin(theta);
  for (Eigen::Index i = 0; i < n; ++i) {
    t(i, i) = c;
    t(i, n + i) = s;
    t(n + i, i) = s;
    t(n + i, n + i) = -c;
  }
  return t;
}

Gradation gradation_swap_path(const Gradation& g0, const Gradation& g1, double theta) {
  if (g0.dim() != g1.dim()) throw ContextMismatch("gradations of different dimension");
  if (g0.metric.has_value() != g1.metric.has_value() ||
      (g0.metric && (g0.metric->eta - g1.metric->eta).norm() != 0.0))
    throw ContextMismatch("gradations carry different metrics");
  const Eigen::Index n = g0.dim();
  ComplexMatrix block = ComplexMatrix::Zero(2 * n, 2 * n);
  block.topLeftCorner(n, n) = g0.gamma;
  block.bottomRightCorner(n, n) = g1.gamma;
  ComplexMatrix t = swap_rotation(n, theta);
  Gradation out;
  out.gamma = t * block * t;
  if (g0.metric) {
    ComplexMatrix eta2 = ComplexMatrix::Zero(2 * n, 2 * n);
    eta2.topLeftCorner(n, n) = g0.metric->eta;
    eta2.bottomRightCorner(n, n) = g0.metric->eta;
    KreinMetric m;
    m.eta = eta2;
    m.kappa_plus = 2 * g0.metric->kappa_plus;
    m.kappa_minus = 2 * g0.metric->kappa_minus;
    out.metric = m;
  }
  return out;
}

PathReport gradation_swap_grid(const Gradation& g0, const Gradation& g1, int points) {
  if (points < 2) throw InvalidInput("gradation_swap_grid needs at least two points");
  PathReport r;
  const double step = (kPi / 2) / double(points - 1);
  for (int i = 0; i < points; ++i) {
    double th = i == points - 1 ? kPi / 2 : step * i;
    Gradation g = gradation_swap_path(g0, g1, th);
    const Eigen::Index n = g.dim();
    r.max_involution_residual =
        std::max(r.max_involution_residual, (g.gamma * g.gamma - eye(n)).norm());
    if (!r.points.empty())
      r.lipschitz = std::max(r.lipschitz, opnorm(g.gamma - r.points.back().gamma) / step);
    r.thetas.push_back(th);
    r.points.push_back(std::move(g));
  }
  return r;
}

ComplexMatrix appendix_b_eta() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix appendix_b_R() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix appendix_b_U(double r, double alpha, double beta, double delta) {
  check_radius(r);
  check_angle(alpha, "α");
  check_angle(beta, "β");
  check_angle(delta, "δ");
  const double c = std::sqrt(1.0 + r * r);
  ComplexMatrix m(2, 2);
  m << std::polar(c, alpha), std::polar(r, beta + delta), std::polar(r, alpha - delta),
      std::polar(c, beta);
  return m;
}

ComplexMatrix appendix_b_H(double x1, double x2, double y, double z) {
  ComplexMatrix m(2, 2);
  m << x1, cplx(y, z), cplx(-y, z), x2;
  return m;
}

ComplexMatrix appendix_b_Xi(double r, double theta) {
  check_radius(r);
  check_angle(theta, "θ");
  const double c = std::sqrt(1.0 + r * r);
  ComplexMatrix m(2, 2);
  m << c, std::polar(r, theta), -std::polar(r, -theta), -c;
  return m;
}

ComplexMatrix appendix_b_Q(double r, double theta) {
  check_radius(r);
  check_angle(theta, "θ");
  ComplexMatrix m(2, 2);
  m << 0.0, std::polar(r, theta), std::polar(r, -theta), 0.0;
  return m;
}

ComplexMatrix appendix_b_params(AppendixBKind kind, const std::vector<double>& p) {
  auto need = [&](std::size_t k) {
    if (p.size() != k) throw InvalidInput("wrong number of parameters");
  };
  switch (kind) {
    case AppendixBKind::U:
      need(4);
      return appendix_b_U(p[0], p[1], p[2], p[3]);
    case AppendixBKind::H:
      need(4);
      return appendix_b_H(p[0], p[1], p[2], p[3]);
    case AppendixBKind::Xi:
      need(2);
      return appendix_b_Xi(p[0], p[1]);
    case AppendixBKind::Q:
      need(2);
      return appendix_b_Q(p[0], p[1]);
  }
  throw InvalidInput("unknown kind");
}

std::pair<double, double> decompose_commuting(const ComplexMatrix& h, const ComplexMatrix& xi,
                                              double tol) {
  if (h.rows() != 2 || h.cols() != 2 || xi.rows() != 2 || xi.cols() != 2)
    throw OutOfDomain("decompose_commuting works in dimension 2");
  const double s = scale_of(h) * scale_of(xi);
  if ((h * xi - xi * h).norm() > tol * s) throw NotCommuting("h does not commute with Ξ");
  cplx u = h.trace() / 2.0;
  ComplexMatrix rest = h - u * eye(2);
  // Ξ is traceless with Ξ² = 1, so tr(rest·Ξ) = 2v.
  cplx v = (rest * xi).trace() / 2.0;
  if ((rest - v * xi).norm() > tol * s || std::abs(u.imag()) > tol * s ||
      std::abs(v.imag()) > tol * s)
    throw NotCommuting("h is not of the form u·1 + v·Ξ with real u, v");
  return {u.real(), v.real()};
}

std::string ComponentLabel::str() const {
  return std::string("(") + (plus > 0 ? "+" : "-") + "," + (minus > 0 ? "+" : "-") + ")";
}

ComponentLabel classify_gapped_2d(const ComplexMatrix& h, const CSymmetry& xi, double tol) {
  if (h.rows() != 2 || h.cols() != 2 || xi.metric.dim() != 2)
    throw OutOfDomain("classify_gapped_2d works in dimension 2");
  if (!is_eta_selfadjoint(h, xi.metric, tol).ok) throw NotInCommutant("h is not η-self-adjoint");
  std::pair<double, double> uv;
  try {
    uv = decompose_commuting(h, xi.xi, tol);
  } catch (const NotCommuting& e) {
    throw NotInCommutant(e.what());
  }
  const double s = scale_of(h);
  const double lp = uv.first + uv.second, lm = uv.first - uv.second;
  if (std::abs(lp) <= tol * s || std::abs(lm) <= tol * s) throw GapClosed("det h = 0 within tol");
  return {lp > 0 ? 1 : -1, lm > 0 ? 1 : -1};
}

}  // namespace kreinlab
