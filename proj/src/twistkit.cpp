#include "kreinlab/twistkit.hpp"

#include <random>

namespace kreinlab {

// ---- Phase ----

Phase Phase::power_of_i(int k) {
  static const cplx vals[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
  Phase p;
  p.quarter = ((k % 4) + 4) % 4;
  p.value = vals[p.quarter];
  return p;
}

Phase Phase::from_complex(cplx z) {
  for (int k = 0; k < 4; ++k) {
    Phase p = power_of_i(k);
    if (std::abs(z - p.value) <= 1e-12) return p;
  }
  Phase p;
  p.quarter = -1;
  p.value = z;
  return p;
}

Phase Phase::conj() const {
  if (exact()) return power_of_i(-quarter);
  Phase p = *this;
  p.value = std::conj(value);
  return p;
}

Phase Phase::operator*(const Phase& o) const {
  if (exact() && o.exact()) return power_of_i(quarter + o.quarter);
  Phase p;
  p.quarter = -1;
  p.value = value * o.value;
  return p;
}

bool Phase::operator==(const Phase& o) const {
  if (exact() && o.exact()) return quarter == o.quarter;
  return std::abs(value - o.value) <= 1e-12;
}

bool Phase::identical(const Phase& o) const {
  return quarter == o.quarter && value.real() == o.value.real() &&
         value.imag() == o.value.imag();
}

// ---- FiniteGroupData ----

FiniteGroupData FiniteGroupData::trivial() {
  FiniteGroupData g;
  g.order = 1;
  g.labels = {"e"};
  g.table = {{0}};
  g.unit = 0;
  return g;
}

FiniteGroupData FiniteGroupData::z2() {
  FiniteGroupData g;
  g.order = 2;
  g.labels = {"+1", "-1"};
  g.table = {{0, 1}, {1, 0}};
  g.unit = 0;
  return g;
}

FiniteGroupData FiniteGroupData::times_z2(const FiniteGroupData& g) {
  FiniteGroupData out;
  const int n = g.order;
  out.order = 2 * n;
  out.labels.resize(out.order);
  out.table.assign(out.order, std::vector<int>(out.order));
  for (int e1 = 0; e1 < 2; ++e1) {
    for (int a = 0; a < n; ++a) {
      int ia = a + e1 * n;
      out.labels[ia] = "(" + g.labels[a] + (e1 ? ",-)" : ",+)");
      for (int e2 = 0; e2 < 2; ++e2)
        for (int b = 0; b < n; ++b) out.table[ia][b + e2 * n] = g.mul(a, b) + ((e1 ^ e2) ? n : 0);
    }
  }
  out.unit = g.unit;
  return out;
}

FiniteGroupData FiniteGroupData::from_table(std::vector<std::string> labels,
                                            std::vector<std::vector<int>> table) {
  FiniteGroupData g;
  g.order = int(table.size());
  g.labels = std::move(labels);
  g.table = std::move(table);
  if (g.order == 0) throw InvalidInput("empty group");
  if (int(g.labels.size()) != g.order) throw InvalidInput("label count differs from group order");
  for (const auto& row : g.table)
    if (int(row.size()) != g.order) throw InvalidInput("multiplication table is not square");
  for (const auto& row : g.table)
    for (int x : row)
      if (x < 0 || x >= g.order) throw InvalidInput("table entry out of range");
  g.unit = -1;
  for (int e = 0; e < g.order && g.unit < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < g.order && ok; ++a) ok = g.table[e][a] == a && g.table[a][e] == a;
    if (ok) g.unit = e;
  }
  if (g.unit < 0) throw InvalidInput("no unit element");
  g.validate();
  return g;
}

int FiniteGroupData::inverse(int a) const {
  for (int b = 0; b < order; ++b)
    if (mul(a, b) == unit) return b;
  throw InvalidInput("element " + labels[a] + " has no inverse");
}

void FiniteGroupData::validate() const {
  if (order < 1 || int(table.size()) != order || int(labels.size()) != order)
    throw InvalidInput("inconsistent group sizes");
  for (int a = 0; a < order; ++a)
    if (mul(unit, a) != a || mul(a, unit) != a) throw InvalidInput("unit law fails");
  for (int a = 0; a < order; ++a) {
    bool has = false;
    for (int b = 0; b < order; ++b) has = has || (mul(a, b) == unit && mul(b, a) == unit);
    if (!has) throw InvalidInput("element " + labels[a] + " has no inverse");
  }
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          throw InvalidInput("associativity fails at (" + labels[a] + "," + labels[b] + "," +
                             labels[c] + ")");
}

std::vector<int> FiniteGroupData::generators() const {
  std::vector<int> gens;
  std::vector<bool> in(order, false);
  in[unit] = true;
  for (int g = 0; g < order; ++g) {
    if (in[g]) continue;
    gens.push_back(g);
    // Closure under right multiplication by the generators found so far.
    std::vector<int> queue;
    for (int a = 0; a < order; ++a)
      if (in[a]) queue.push_back(a);
    while (!queue.empty()) {
      int a = queue.back();
      queue.pop_back();
      for (int s : gens) {
        int p = mul(a, s);
        if (!in[p]) {
          in[p] = true;
          queue.push_back(p);
        }
      }
    }
  }
  return gens;
}

// ---- TwistData ----

TwistData TwistData::trivial_on(const FiniteGroupData& g) {
  TwistData t;
  t.group = g;
  t.varpi.assign(g.order, 1);
  t.wp.assign(g.order, 1);
  t.c.assign(g.order, 1);
  t.tau.assign(g.order, std::vector<Phase>(g.order, Phase::sign(1)));
  return t;
}

TwistVerdict validate_twist(const TwistData& t, double tol) {
  TwistVerdict v;
  auto fail = [&](std::string what, int a = -1, int b = -1, int c = -1) {
    v.ok = false;
    v.failure = std::move(what);
    v.witness = {a, b, c};
    return v;
  };
  const FiniteGroupData& g = t.group;
  try {
    g.validate();
  } catch (const InvalidInput& e) {
    return fail(std::string("group: ") + e.what());
  }
  const int n = g.order;
  if (int(t.varpi.size()) != n || int(t.wp.size()) != n || int(t.c.size()) != n ||
      int(t.tau.size()) != n)
    return fail("sizes differ from the group order");
  for (const auto& row : t.tau)
    if (int(row.size()) != n) return fail("τ table is not |G|×|G|");
  const std::pair<const char*, const std::vector<int>*> homs[] = {
      {"ϖ", &t.varpi}, {"℘", &t.wp}, {"c", &t.c}};
  for (const auto& [name, h] : homs) {
    for (int a = 0; a < n; ++a) {
      if ((*h)[a] != 1 && (*h)[a] != -1) return fail(std::string(name) + " takes a value ≠ ±1", a);
      for (int b = 0; b < n; ++b)
        if ((*h)[g.mul(a, b)] != (*h)[a] * (*h)[b])
          return fail(std::string(name) + " is not a homomorphism", a, b);
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (std::abs(std::abs(t.tau[a][b].value) - 1.0) > tol)
        return fail("τ is not unit modulus", a, b);
  for (int a = 0; a < n; ++a)
    if (!(t.tau[a][g.unit] == Phase::sign(1)) || !(t.tau[g.unit][a] == Phase::sign(1)))
      return fail("normalization τ(g,e) = 1 = τ(e,g) fails", a, g.unit);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Phase lhs = t.tau[b][c].twisted(t.varpi[a]) * t.tau[a][g.mul(b, c)];
        Phase rhs = t.tau[g.mul(a, b)][c] * t.tau[a][b];
        bool same = (lhs.exact() && rhs.exact()) ? lhs.quarter == rhs.quarter
                                                 : std::abs(lhs.value - rhs.value) <= tol;
        if (!same) return fail("2-cocycle identity fails", a, b, c);
      }
  return v;
}

namespace {

void require_valid(const TwistData& t, const char* what) {
  TwistVerdict v = validate_twist(t);
  if (!v.ok) throw InvalidInput(std::string(what) + ": " + v.failure);
}

}  // namespace

TwistData reduce_data(const TwistData& t) {
  require_valid(t, "reduce_data");
  const int n = t.group.order;
  TwistData out;
  out.group = FiniteGroupData::times_z2(t.group);
  const int m = out.group.order;
  out.varpi.resize(m);
  out.wp.assign(m, 1);  // ℘ is absorbed into the Z₂ factor
  out.c.resize(m);
  out.tau.assign(m, std::vector<Phase>(m));
  for (int e1 = 0; e1 < 2; ++e1)
    for (int g1 = 0; g1 < n; ++g1) {
      int i1 = g1 + e1 * n;
      out.varpi[i1] = t.varpi[g1];
      out.c[i1] = t.c[g1];
      for (int e2 = 0; e2 < 2; ++e2)
        for (int g2 = 0; g2 < n; ++g2) {
          Phase f = e1 ? Phase::sign(t.wp[g2]) : Phase::sign(1);
          out.tau[i1][g2 + e2 * n] = f * t.tau[g1][g2];
        }
    }
  return out;
}

CliffordTwist clifford_absorb(const CliffordTwist& in) {
  if (in.r + in.s <= 0) throw NoGenerators("clifford_absorb: no Clifford generator left");
  if (in.r < 0 || in.s < 0) throw InvalidInput("clifford_absorb: negative signature");
  require_valid(in.twist, "clifford_absorb");
  const TwistData& t = in.twist;
  const int n = t.group.order;
  // ρ′((g,-1)) = ρ(g)γ for the last generator γ; γ² = -1 while s > 0.
  const int gamma_sq = in.s > 0 ? -1 : 1;
  CliffordTwist out;
  out.r = in.s > 0 ? in.r : in.r - 1;
  out.s = in.s > 0 ? in.s - 1 : 0;
  TwistData& o = out.twist;
  o.group = FiniteGroupData::times_z2(t.group);
  const int m = o.group.order;
  o.varpi.resize(m);
  o.wp.resize(m);
  o.c.resize(m);
  o.tau.assign(m, std::vector<Phase>(m));
  for (int e1 = 0; e1 < 2; ++e1)
    for (int g1 = 0; g1 < n; ++g1) {
      int i1 = g1 + e1 * n;
      o.varpi[i1] = t.varpi[g1];
      o.wp[i1] = t.wp[g1];
      o.c[i1] = e1 ? -t.c[g1] : t.c[g1];
      for (int e2 = 0; e2 < 2; ++e2)
        for (int g2 = 0; g2 < n; ++g2) {
          int sign = 1;
          if (e1) sign *= t.c[g2];
          if (e1 && e2) sign *= gamma_sq;
          o.tau[i1][g2 + e2 * n] = Phase::sign(sign) * t.tau[g1][g2];
        }
    }
  return out;
}

TwistData tau_hat(const TwistData& t) {
  require_valid(t, "tau_hat");
  TwistData out = t;
  const int n = t.group.order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.c[a] == -1 && t.c[b] == -1) out.tau[a][b] = -t.tau[a][b];
  return out;
}

PuaVerdict verify_pua(const PUARep& rep, const std::optional<KreinMetric>& metric,
                      const std::vector<ComplexMatrix>& gammas, double tol) {
  const TwistData& t = rep.twist;
  const int n = t.group.order;
  if (int(rep.images.size()) != n) throw InvalidInput("verify_pua: one image per element needed");
  PuaVerdict v;
  auto add = [&](std::string name, double res, double scale) {
    v.relations.push_back({std::move(name), res, res <= tol * scale});
  };
  const Eigen::Index d = rep.images[0].dim();
  for (int g = 0; g < n; ++g) {
    const RealLinearOp& u = rep.images[g];
    if (u.dim() != d || u.mat.cols() != d) throw DimensionMismatch("verify_pua: image sizes");
    const std::string lab = t.group.labels[g];
    add("ρ(" + lab + ")*ρ(" + lab + ") = 1", ((u.adjoint() * u).mat - eye(d)).norm(),
        scale_of(u.mat) * scale_of(u.mat));
    add("ρ(" + lab + ") has linearity ϖ", u.varpi == t.varpi[g] ? 0.0 : 1.0, 0.0);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      RealLinearOp lhs = rep.images[a] * rep.images[b];
      RealLinearOp rhs = rep.images[t.group.mul(a, b)].scaled(t.tau[a][b].value);
      add("ρ(" + t.group.labels[a] + ")ρ(" + t.group.labels[b] + ") = τρ(gh)",
          lhs.varpi == rhs.varpi ? (lhs.mat - rhs.mat).norm() : 1.0,
          scale_of(lhs.mat));
    }
  if (metric) {
    if (metric->dim() != d) throw DimensionMismatch("verify_pua: metric");
    for (int g = 0; g < n; ++g) {
      RealLinearOp l = rep.images[g] * metric->eta, r = metric->eta * rep.images[g];
      add("ρ(" + t.group.labels[g] + ")η = ℘ηρ", (l.mat - double(t.wp[g]) * r.mat).norm(),
          scale_of(l.mat));
    }
  }
  for (std::size_t k = 0; k < gammas.size(); ++k)
    for (int g = 0; g < n; ++g) {
      RealLinearOp l = gammas[k] * rep.images[g], r = rep.images[g] * gammas[k];
      add("γ[" + std::to_string(k) + "]ρ(" + t.group.labels[g] + ") = cργ",
          (l.mat - double(t.c[g]) * r.mat).norm(), scale_of(l.mat));
    }
  v.ok = true;
  for (const auto& r : v.relations) v.ok = v.ok && r.ok;
  return v;
}

PUARep krein_hilbert_correspondence(const PUARep& rep, const KreinMetric& metric) {
  const int n = rep.twist.group.order;
  if (int(rep.images.size()) != n) throw InvalidInput("one image per element needed");
  PUARep out;
  out.twist = reduce_data(rep.twist);
  out.images.resize(2 * n);
  for (int g = 0; g < n; ++g) {
    out.images[pair_index(g, 1, n)] = rep.images[g];
    out.images[pair_index(g, -1, n)] = rep.images[g] * metric.eta;
  }
  return out;
}

KreinHilbertInverse krein_hilbert_inverse(const PUARep& ext, const FiniteGroupData& base,
                                          double tol) {
  const int n = base.order;
  if (ext.twist.group.order != 2 * n || int(ext.images.size()) != 2 * n)
    throw InvalidInput("extended representation must live on base × Z₂");
  const RealLinearOp& e = ext.images[pair_index(base.unit, -1, n)];
  if (!e.is_linear()) throw InvalidInput("ρ′((e,-1)) must be linear");
  const Eigen::Index d = e.dim();
  const double s = scale_of(e.mat);
  if ((e.mat - eye(d)).norm() <= tol * s || (e.mat + eye(d)).norm() <= tol * s)
    throw Reducible("ρ′((e,-1)) = ±1");
  KreinHilbertInverse out;
  out.metric = KreinMetric::from(e.mat, tol);
  if (out.metric.kappa_plus != out.metric.kappa_minus)
    throw Unbalanced("ρ′((e,-1)) has eigenspaces of different dimension");
  TwistData& t = out.rep.twist;
  t.group = base;
  t.varpi.resize(n);
  t.wp.resize(n);
  t.c.resize(n);
  t.tau.assign(n, std::vector<Phase>(n));
  out.rep.images.resize(n);
  for (int g = 0; g < n; ++g) {
    const int ig = pair_index(g, 1, n);
    const RealLinearOp& u = ext.images[ig];
    out.rep.images[g] = u;
    t.varpi[g] = ext.twist.varpi[ig];
    t.c[g] = ext.twist.c[ig];
    RealLinearOp l = u * out.metric.eta, r = out.metric.eta * u;
    const double us = scale_of(u.mat);
    if ((l.mat - r.mat).norm() <= tol * us)
      t.wp[g] = 1;
    else if ((l.mat + r.mat).norm() <= tol * us)
      t.wp[g] = -1;
    else
      throw InvalidInput("ρ′((g,+1)) neither commutes nor anticommutes with η");
    for (int h = 0; h < n; ++h) t.tau[g][h] = ext.twist.tau[ig][pair_index(h, 1, n)];
  }
  return out;
}

std::vector<GradedOp> graded_ops(const PUARep& rep) {
  std::vector<GradedOp> out;
  for (std::size_t g = 0; g < rep.images.size(); ++g) out.push_back({rep.images[g], rep.twist.c[g]});
  return out;
}

// ---- Clifford modules ----

namespace {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix pauli(char which) {
  ComplexMatrix m(2, 2);
  switch (which) {
    case 'x': m << 0, 1, 1, 0; break;
    case 'y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
    case 'z': m << 1, 0, 0, -1; break;
    default: m = eye(2);
  }
  return m;
}

}  // namespace

CliffordAction clifford_generators(int r, int s) {
  if (r < 0 || s < 0) throw InvalidInput("clifford_generators: negative signature");
  const int n = r + s;
  const int k = (n + 1) / 2;
  CliffordAction a;
  a.r = r;
  a.s = s;
  // Jordan-Wigner strings on k qubits: 2k anticommuting Hermitian involutions,
  // all anticommuting with Z⊗…⊗Z.
  for (int i = 0; i < n; ++i) {
    const int site = i / 2;
    ComplexMatrix m = ComplexMatrix::Identity(1, 1);
    for (int q = 0; q < k; ++q) {
      char f = q < site ? 'z' : (q == site ? (i % 2 == 0 ? 'x' : 'y') : 'i');
      m = kron(m, pauli(f));
    }
    if (i >= r) m *= cplx(0, 1);
    a.generators.push_back(m);
  }
  ComplexMatrix g = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < k; ++q) g = kron(g, pauli('z'));
  a.grading.gamma = g;
  return a;
}

ComplexMatrix intertwiner_space(const std::vector<std::pair<ComplexMatrix, int>>& cons,
                                Eigen::Index d, double tol) {
  // X·A - s·A·X = 0 in vec form: (Aᵀ ⊗ 1 - s·1 ⊗ A) vec(X) = 0. The constraints
  // are imposed one at a time on the surviving orthonormal basis.
  const Eigen::Index dd = d * d;
  ComplexMatrix basis = ComplexMatrix::Identity(dd, dd);
  for (const auto& [a, sign] : cons) {
    if (a.rows() != d || a.cols() != d) throw DimensionMismatch("intertwiner_space");
    if (basis.cols() == 0) break;
    const double s = sign;
    ComplexMatrix k = ComplexMatrix::Zero(dd, basis.cols());
    for (Eigen::Index v = 0; v < basis.cols(); ++v) {
      Eigen::Map<const ComplexMatrix> x(basis.col(v).data(), d, d);
      ComplexMatrix r = x * a - s * a * x;
      k.col(v) = Eigen::Map<const ComplexVector>(r.data(), dd);
    }
    basis = (basis * null_space(k, tol)).eval();
  }
  return basis;
}

ExtensionResult graded_extension_test(const GradedModule& module, std::uint64_t seed, double tol) {
  const Eigen::Index d = module.gamma.rows();
  ExtensionResult res;
  if (d == 0) return res;
  std::vector<std::pair<ComplexMatrix, int>> cons;
  cons.push_back({module.gamma, -1});
  for (const auto& op : module.ops) cons.push_back(op);
  ComplexMatrix ns = intertwiner_space(cons, d, tol);
  res.null_dim = int(ns.cols());
  if (ns.cols() == 0) return res;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<ComplexVector> cands;
  for (Eigen::Index i = 0; i < ns.cols(); ++i) cands.push_back(ns.col(i));
  for (int t = 0; t < 8; ++t) {
    ComplexVector w(ns.cols());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = cplx(unif(rng), unif(rng));
    cands.push_back(ns * w);
  }
  double best = 0.0;
  for (const auto& c : cands) {
    ComplexMatrix j = Eigen::Map<const ComplexMatrix>(c.data(), d, d);
    ComplexMatrix j2 = j * j;
    const double jn = j.squaredNorm() / double(d);
    cplx lambda = j2.trace() / double(d);
    // Graded Schur: on an irreducible module J² is scalar.
    if ((j2 - lambda * eye(d)).norm() > 1e-6 * jn * std::sqrt(double(d))) continue;
    const double rel = std::abs(lambda) / jn;
    if (rel > tol && rel > best) {
      best = rel;
      res.extendable = true;
      res.j = j / std::sqrt(-lambda);
    }
  }
  return res;
}

ExtensionResult graded_extension_test(const CliffordAction& action, std::uint64_t seed,
                                      double tol) {
  GradedModule m;
  m.gamma = action.grading.gamma;
  for (const auto& g : action.generators) m.ops.push_back({g, -1});
  ExtensionResult res = graded_extension_test(m, seed, tol);

  // Cross-check with the chirality products i^k γ₁⋯γₙ Γ^m.
  const Eigen::Index d = m.gamma.rows();
  ComplexMatrix prod = eye(d);
  for (const auto& g : action.generators) prod = prod * g;
  bool chir = false;
  for (int mm = 0; mm < 2 && !chir; ++mm) {
    ComplexMatrix p = mm ? ComplexMatrix(prod * m.gamma) : prod;
    bool ok = (p * m.gamma + m.gamma * p).norm() <= tol;
    for (const auto& g : action.generators) ok = ok && (p * g + g * p).norm() <= tol;
    ComplexMatrix p2 = p * p;
    cplx lambda = p2.trace() / double(d);
    ok = ok && std::abs(lambda) > tol && (p2 - lambda * eye(d)).norm() <= tol;
    chir = ok;  // the i^k factor only rescales the square
  }
  res.chirality_checked = true;
  if (chir != res.extendable)
    throw InternalError("extension search and chirality candidates disagree");
  return res;
}

}  // namespace kreinlab
