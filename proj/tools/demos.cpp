#include "demos.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kreinlab/models.hpp"

namespace kreinlab::demos {

namespace {

json pair_of(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_rows(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(pair_of(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InternalError(what);
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"appendixB", "maxwell", "pt-spectrum", "homotopy"};
  return n;
}

json run(const std::string& name, std::uint64_t seed, double tol) {
  if (name == "appendixB") return appendix_b(seed, tol);
  if (name == "maxwell") return maxwell(seed, tol);
  if (name == "pt-spectrum") return pt_spectrum(tol);
  if (name == "homotopy") return homotopy(tol);
  throw InvalidInput("unknown demo \"" + name + "\"");
}

json appendix_b(std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  json out;
  out["demo"] = "appendixB";

  json norms = json::array();
  for (double r : {0.0, 0.5, 1.0, 2.0, 10.0}) {
    const double a = angle(rng), b = angle(rng), d = angle(rng), th = angle(rng);
    const double expected = r + std::sqrt(1.0 + r * r);
    const double nu = opnorm(appendix_b_U(r, a, b, d));
    const double nx = opnorm(appendix_b_Xi(r, th));
    json row;
    row["r"] = r;
    row["expected"] = expected;
    row["norm_U_residual"] = std::abs(nu - expected);
    row["norm_Xi_residual"] = std::abs(nx - expected);
    require(std::abs(nu - expected) < 1e-10 && std::abs(nx - expected) < 1e-10,
            "appendixB: norm formula off at r = " + std::to_string(r));
    norms.push_back(row);
  }
  out["norms"] = norms;

  KreinMetric eta = KreinMetric::from(appendix_b_eta());
  CSymmetry xi = CSymmetry::make(appendix_b_Xi(1.0, 0.3), eta, tol);
  json comps = json::array();
  const std::pair<double, double> uv[] = {{3, 1}, {1, 2}, {1, -2}, {-3, 1}};
  for (auto [u, v] : uv) {
    ComplexMatrix h = u * eye(2) + v * xi.xi;
    ComponentLabel got = classify_gapped_2d(h, xi, tol);
    ComponentLabel oracle{u + v > 0 ? 1 : -1, u - v > 0 ? 1 : -1};
    require(got == oracle, "appendixB: component mismatch");
    json row;
    row["u"] = u;
    row["v"] = v;
    row["component"] = got.str();
    comps.push_back(row);
  }
  out["components"] = comps;

  // T_θ conjugation of diag(1,-1) leaves the commutant of η off the endpoints.
  json contrast = json::array();
  const ComplexMatrix g = appendix_b_eta();
  const int pts = 50;
  for (int i = 0; i < pts; ++i) {
    const double th = i == pts - 1 ? kPi / 2 : (kPi / 2) * i / double(pts - 1);
    ComplexMatrix t = swap_rotation(1, th);
    ComplexMatrix gt = t * g * t;
    const double comm = (gt * eta.eta - eta.eta * gt).norm();
    const bool endpoint = i == 0 || i == pts - 1;
    require((comm <= tol) == endpoint, "appendixB: contrast fails at θ = " + std::to_string(th));
    json row;
    row["theta"] = th;
    row["commutator"] = comm;
    row["gradation_residual"] = (gt * gt - eye(2)).norm();
    row["in_commutant"] = comm <= tol;
    contrast.push_back(row);
  }
  out["contrast"] = contrast;
  return out;
}

json maxwell(std::uint64_t seed, double tol, int n) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  ComplexMatrix w = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) w(j, j) = coin(rng) ? 1.0 : -1.0;
  // both signs present, so the metric is genuinely indefinite
  w(0, 0) = 1.0;
  w(n - 1, n - 1) = -1.0;
  ComplexMatrix m0 = shifted_laplacian(n, 1.0);
  MaxwellModel mx = build_maxwell(m0, w, tol);

  json out;
  out["demo"] = "maxwell";
  out["n"] = n;
  json pattern = json::array();
  for (int j = 0; j < n; ++j) pattern.push_back(int(w(j, j).real()));
  out["weight_pattern"] = pattern;
  out["m0"] = "shifted Dirichlet Laplacian (-D2 + 1)";
  json split;
  split["a_plus"] = mx.split.a_plus;
  split["b_plus"] = mx.split.b_plus;
  split["a_minus"] = mx.split.a_minus;
  split["b_minus"] = mx.split.b_minus;
  out["weight_split"] = split;
  out["selfadjoint_residual"] = mx.selfadjoint_residual;
  out["max_imag_spectrum"] = mx.max_imag_spectrum;
  const double mnorm = opnorm(mx.m);
  out["norm_M"] = mnorm;
  json cert;
  cert["involution_residual"] = mx.verdict.involution_residual;
  cert["sharp_residual"] = mx.verdict.sharp_residual;
  cert["min_eig_eta_xi"] = mx.verdict.min_eig;
  cert["commutator_xi_m"] = (mx.xi_raw * mx.m - mx.m * mx.xi_raw).norm();
  cert["csymmetry"] = mx.verdict.ok;
  if (mx.xi) {
    StabilityCertificate sc = reduce_hamiltonian(to_euclidean(mx, mx.m), *mx.xi, tol);
    cert["h_tilde_hermitian_residual"] = sc.hermitian_residual;
    cert["h_tilde_eta_commutator"] = sc.eta_commutator;
    cert["spectrum_residual"] = sc.spectrum_residual;
  }
  out["certificate"] = cert;
  out["assumed"] = json::array({"resolvent set nonempty (finite dimension)",
                                "0 and infinity are not singular critical points (finite dimension)"});
  require(mx.verdict.ok, "maxwell: sign of M is not a C-symmetry");
  require(mx.max_imag_spectrum < 1e-7 * mnorm, "maxwell: spectrum is not real");
  return out;
}

json pt_spectrum(double tol) {
  json out;
  out["demo"] = "pt-spectrum";
  out["grid"] = {{"n", 64}, {"l", 6.0}};
  out["note"] = "low-lying spectrum reported only; boundary truncation makes reality claims untestable here";
  Grid1D grid = Grid1D::make(64, 6.0);
  json rows = json::array();
  for (double eps : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5}) {
    auto [h, eta] = discretize_heps(grid, eps, [](double x) { return x; }, tol);
    json row;
    row["epsilon"] = eps;
    row["eta_selfadjoint_residual"] = is_eta_selfadjoint(h, eta, tol).residual;
    ComplexVector lam = complex_schur(h, tol).eigenvalues;
    std::vector<cplx> v(lam.data(), lam.data() + lam.size());
    std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
      return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    json low = json::array();
    double max_im = 0.0;
    for (std::size_t k = 0; k < std::min<std::size_t>(5, v.size()); ++k) {
      low.push_back(pair_of(v[k]));
      max_im = std::max(max_im, std::abs(v[k].imag()));
    }
    row["lowest"] = low;
    row["lowest_max_imag"] = max_im;
    try {
      find_csymmetry(h, eta, tol);
      row["verdict"] = "stable";
    } catch (const NotDynamicallyStable& e) {
      row["verdict"] = e.obstruction();
    }
    rows.push_back(row);
  }
  out["sweep"] = rows;
  return out;
}

json homotopy(double tol, int points) {
  json out;
  out["demo"] = "homotopy";
  const ComplexMatrix g = appendix_b_eta();
  json path = json::array();
  ComplexMatrix last;
  for (int i = 0; i < points; ++i) {
    const double th = i == points - 1 ? kPi / 2 : (kPi / 2) * i / double(points - 1);
    ComplexMatrix t = swap_rotation(1, th);
    ComplexMatrix gt = t * g * t;
    json row;
    row["theta"] = th;
    row["gamma"] = matrix_rows(gt);
    row["involution_residual"] = (gt * gt - eye(2)).norm();
    path.push_back(row);
    last = gt;
  }
  out["path"] = path;
  ComplexMatrix swapped(2, 2);
  swapped << -1.0, 0.0, 0.0, 1.0;
  const double swap_res = (last - swapped).norm();
  out["endpoint_swap_residual"] = swap_res;
  require(swap_res <= tol, "homotopy: endpoint is not diag(-1, 1)");

  // Doubled-space path between η and -η as η-gradations.
  KreinMetric eta = KreinMetric::from(g);
  Gradation g0 = Gradation::make(g, eta, tol), g1 = Gradation::make(-g, eta, tol);
  PathReport rep = gradation_swap_grid(g0, g1, points);
  ComplexMatrix target = ComplexMatrix::Zero(4, 4);
  target.topLeftCorner(2, 2) = -g;
  target.bottomRightCorner(2, 2) = g;
  json dbl;
  dbl["points"] = points;
  dbl["lipschitz"] = rep.lipschitz;
  dbl["max_involution_residual"] = rep.max_involution_residual;
  dbl["endpoint_swap_residual"] = (rep.points.back().gamma - target).norm();
  out["doubled"] = dbl;
  require(rep.max_involution_residual <= tol, "homotopy: path leaves the gradations");
  return out;
}

}  // namespace kreinlab::demos
