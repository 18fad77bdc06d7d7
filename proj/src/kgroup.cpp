#include "kreinlab/twistkit.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <sstream>

namespace kreinlab {

namespace {

std::string phase_str(const Phase& p) {
  static const char* names[4] = {"1", "i", "-1", "-i"};
  if (p.exact()) return names[p.quarter];
  std::ostringstream os;
  os << p.value;
  return os.str();
}

std::string tau_table_str(const TwistData& t) {
  std::ostringstream os;
  const int n = t.group.order;
  for (int a = 0; a < n; ++a) {
    os << (a ? "; " : "");
    for (int b = 0; b < n; ++b) os << (b ? " " : "") << phase_str(t.tau[a][b]);
  }
  return os.str();
}

// Left regular action of the twisted group algebra: L(g)e_h = τ(g,h)e_{gh}.
struct RegularModule {
  const TwistData* t;
  int n;

  ComplexMatrix apply_left(int g, const ComplexMatrix& v) const {
    ComplexMatrix out = ComplexMatrix::Zero(n, v.cols());
    for (int h = 0; h < n; ++h) out.row(t->group.mul(g, h)) = t->tau[g][h].value * v.row(h);
    return out;
  }
};

struct Candidate {
  ComplexMatrix basis;     // n × d, orthonormal
  std::vector<int> signs;  // grading of each column
  bool shifted = false;
  ComplexVector chars;     // (tr L(g), tr ΓL(g)) for every g
};

ComplexVector characters(const RegularModule& reg, const ComplexMatrix& v,
                         const std::vector<int>& signs, bool shifted) {
  const int n = reg.n;
  ComplexVector ch(2 * n);
  for (int g = 0; g < n; ++g) {
    ComplexMatrix lv = reg.apply_left(g, v);
    cplx tr = 0, trg = 0;
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
      cplx d = v.col(k).dot(lv.col(k));
      tr += d;
      trg += double(signs[k]) * d;
    }
    ch(g) = tr;
    ch(n + g) = shifted ? -trg : trg;
  }
  return ch;
}

// Restricted graded module on span(V): Γ and the generators with their signs.
GradedModule restrict(const RegularModule& reg, const Candidate& cand,
                      const std::vector<int>& gens) {
  const Eigen::Index d = cand.basis.cols();
  GradedModule m;
  m.gamma = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k < d; ++k) m.gamma(k, k) = cand.shifted ? -cand.signs[k] : cand.signs[k];
  for (int g : gens) {
    ComplexMatrix lv = reg.apply_left(g, cand.basis);
    ComplexMatrix r = cand.basis.adjoint() * lv;
    if ((lv - cand.basis * r).norm() > 1e-8 * std::sqrt(double(d)))
      throw InternalError("kgroup: eigenspace is not invariant under the algebra");
    m.ops.push_back({r, reg.t->c[g]});
  }
  return m;
}

bool even_commutant_trivial(const GradedModule& m) {
  std::vector<std::pair<ComplexMatrix, int>> cons;
  cons.push_back({m.gamma, 1});
  for (const auto& [a, s] : m.ops) cons.push_back({a, 1});
  return intertwiner_space(cons, m.gamma.rows(), 1e-8).cols() == 1;
}

// Irreducible graded submodules of the regular module, one attempt per seed.
std::optional<std::vector<Candidate>> decompose(const RegularModule& reg, std::uint64_t seed) {
  const TwistData& t = *reg.t;
  const int n = reg.n;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  // Random element of the even commutant: right multiplications by ker c.
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int g = 0; g < n; ++g) {
    if (t.c[g] != 1) continue;
    cplx b(gauss(rng), gauss(rng));
    for (int x = 0; x < n; ++x) h(t.group.mul(x, g), x) += b * t.tau[x][g].value;
  }
  h = (h + h.adjoint()).eval();

  std::vector<int> even, odd;
  for (int x = 0; x < n; ++x) (t.c[x] == 1 ? even : odd).push_back(x);

  struct Vecs {
    double lambda;
    ComplexVector v;
    int sign;
  };
  std::vector<Vecs> all;
  for (int part = 0; part < 2; ++part) {
    const std::vector<int>& idx = part == 0 ? even : odd;
    if (idx.empty()) continue;
    const Eigen::Index m = Eigen::Index(idx.size());
    ComplexMatrix blk(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) blk(i, j) = h(idx[i], idx[j]);
    HermEig<cplx> e = herm_eig(blk, 1e-12);
    for (Eigen::Index k = 0; k < m; ++k) {
      ComplexVector v = ComplexVector::Zero(n);
      for (Eigen::Index i = 0; i < m; ++i) v(idx[i]) = e.eigenvectors(i, k);
      all.push_back({e.eigenvalues(k), v, part == 0 ? 1 : -1});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Vecs& a, const Vecs& b) { return a.lambda < b.lambda; });
  double scale = 1.0;
  for (const auto& x : all) scale = std::max(scale, std::abs(x.lambda));

  std::vector<Candidate> out;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i + 1;
    while (j < all.size() && all[j].lambda - all[j - 1].lambda <= 1e-8 * scale) ++j;
    Candidate c;
    c.basis.resize(n, Eigen::Index(j - i));
    for (std::size_t k = i; k < j; ++k) {
      c.basis.col(Eigen::Index(k - i)) = all[k].v;
      c.signs.push_back(all[k].sign);
    }
    // Orthogonality of projective characters: dim End = Σ|χ|² / 2|G|.
    c.chars = characters(reg, c.basis, c.signs, false);
    if (std::abs(c.chars.squaredNorm() / double(2 * n) - 1.0) > 1e-6) return std::nullopt;
    out.push_back(std::move(c));
    i = j;
  }
  return out;
}

}  // namespace

std::string descriptor_for_rank(int rank) {
  if (rank < 0) throw InvalidInput("descriptor_for_rank: negative rank");
  if (rank == 0) return "0";
  std::string s = "Z";
  for (int i = 1; i < rank; ++i) s += "+Z";
  return s;
}

KGroupResult kgroup_twisted(const TwistData& t0, int r, int s, std::uint64_t seed) {
  if (r < 0 || s < 0) throw InvalidInput("kgroup: negative Clifford signature");
  TwistVerdict v = validate_twist(t0);
  if (!v.ok) throw InvalidInput("kgroup: " + v.failure);
  for (int x : t0.varpi)
    if (x != 1) throw UnsupportedScenario("kgroup: anti-linear (ϖ nontrivial) twists are not supported");
  for (int x : t0.wp)
    if (x != 1) throw InvalidInput("kgroup_twisted: ℘ must be trivial, apply reduce_data first");

  KGroupResult res;
  CliffordTwist ct{t0, r, s};
  while (ct.r + ct.s > 0) {
    const bool s_type = ct.s > 0;
    ct = clifford_absorb(ct);
    res.trace.push_back(std::string("absorbed ") + (s_type ? "s-type (γ² = -1)" : "r-type (γ² = +1)") +
                        " generator: |G| = " + std::to_string(ct.twist.group.order));
  }
  const TwistData& t = ct.twist;
  RegularModule reg{&t, t.group.order};
  const std::vector<int> gens = t.group.generators();

  std::optional<std::vector<Candidate>> found;
  for (std::uint64_t attempt = 0; attempt < 4 && !found; ++attempt)
    found = decompose(reg, seed + attempt);
  if (!found) throw InternalError("kgroup: could not isolate irreducible graded submodules");

  // Isomorphism classes by graded characters, closed under the parity shift.
  std::vector<Candidate> classes;
  auto known = [&](const ComplexVector& ch) {
    for (const auto& c : classes)
      if ((c.chars - ch).norm() <= 1e-6 * std::max(1.0, ch.norm())) return true;
    return false;
  };
  for (auto& c : *found)
    if (!known(c.chars)) classes.push_back(c);
  const std::size_t base = classes.size();
  for (std::size_t k = 0; k < base; ++k) {
    Candidate sh = classes[k];
    sh.shifted = true;
    sh.chars = characters(reg, sh.basis, sh.signs, true);
    if (!known(sh.chars)) classes.push_back(sh);
  }
  res.classes = int(classes.size());
  std::ostringstream dims;
  for (std::size_t k = 0; k < classes.size(); ++k)
    dims << (k ? ", " : "") << classes[k].basis.cols() << (classes[k].shifted ? "Π" : "");
  res.trace.push_back("irreducible graded modules: " + std::to_string(res.classes) + " (dims " +
                      dims.str() + ")");

  for (std::size_t k = 0; k < classes.size(); ++k) {
    GradedModule m = restrict(reg, classes[k], gens);
    if (!even_commutant_trivial(m))
      throw InternalError("kgroup: class representative is not irreducible");
    ExtensionResult ext = graded_extension_test(m, seed);
    if (!ext.extendable) ++res.non_extendable;
    res.trace.push_back("module " + std::to_string(k) + ": " +
                        (ext.extendable ? "extends" : "does not extend") + " (odd solutions " +
                        std::to_string(ext.null_dim) + ")");
  }
  if (res.non_extendable % 2 != 0)
    throw InternalError("kgroup: odd number of non-extendable classes");
  res.rank = res.non_extendable / 2;
  res.descriptor = descriptor_for_rank(res.rank);
  res.trace.push_back("rank = " + std::to_string(res.non_extendable) + "/2 = " +
                      std::to_string(res.rank));
  return res;
}

TwistData scenario_twist(const KScenario& sc) {
  if (sc.varpi_id) throw UnsupportedScenario("kgroup: ϖ = Id is not supported");
  if (sc.r < 0 || sc.s < 0) throw InvalidInput("kgroup: negative Clifford signature");
  if (sc.group == GroupChoice::Trivial) {
    if (sc.wp_id || sc.c_id)
      throw UnsupportedScenario("kgroup: the trivial group only carries trivial ℘ and c");
    return TwistData::trivial_on(FiniteGroupData::trivial());
  }
  TwistData t = TwistData::trivial_on(FiniteGroupData::z2());
  if (sc.wp_id) t.wp[1] = -1;
  if (sc.c_id) t.c[1] = -1;
  return t;
}

KGroupResult kgroup_point(const KScenario& sc, std::uint64_t seed) {
  TwistData t = scenario_twist(sc);
  TwistData red = reduce_data(t);
  KGroupResult res = kgroup_twisted(red, sc.r, sc.s, seed);
  std::vector<std::string> head;
  head.push_back(std::string("G = ") + (sc.group == GroupChoice::Z2 ? "Z2" : "{e}") +
                 ", ℘ = " + (sc.wp_id ? "Id" : "trivial") + ", c = " + (sc.c_id ? "Id" : "trivial") +
                 ", Cl(" + std::to_string(sc.r) + "," + std::to_string(sc.s) + ")");
  head.push_back("τ′ on G×Z2: " + tau_table_str(red));
  res.trace.insert(res.trace.begin(), head.begin(), head.end());
  return res;
}

}  // namespace kreinlab
