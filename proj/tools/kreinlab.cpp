#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "demos.hpp"
#include "kreinlab/io.hpp"
#include "kreinlab/symclass.hpp"

using namespace kreinlab;

namespace {

// Frozen exit-code contract.
enum Exit {
  kStable = 0,
  kUnstable = 1,
  kParse = 2,
  kDimension = 3,
  kAnalysis = 4,
  kUnsupported = 5,
  kInvariant = 6,
};

const char* kReportSchema = "kreinlab.report/1";

struct Options {
  std::uint64_t seed = 0;
  double tol = 0.0;  // 0 → default_tol()
  bool json_out = false;
  bool table_out = false;
  double tolerance() const { return tol > 0 ? tol : default_tol(); }
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string scalar_str(const json& j) {
  if (j.is_number_float()) return fmt(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

bool is_pair(const json& j) { return j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(); }

void flatten(const json& j, const std::string& key, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || (j[0].is_array() && !is_pair(j[0])))) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", os);
  } else if (j.is_array()) {
    os << key << ":";
    for (const auto& v : j) {
      if (is_pair(v))
        os << " " << fmt(v[0].get<double>()) << (v[1].get<double>() < 0 ? "" : "+") << fmt(v[1].get<double>()) << "i";
      else
        os << " " << scalar_str(v);
    }
    os << "\n";
  } else {
    os << key << ": " << scalar_str(j) << "\n";
  }
}

void emit(const json& report, const Options& opt) {
  if (opt.json_out) {
    std::cout << dump(report) << "\n";
  } else {
    std::ostringstream os;
    flatten(report, "", os);
    std::cout << os.str();
  }
}

int exit_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const json::exception*>(&e)) return kParse;
  if (dynamic_cast<const DimensionMismatch*>(&e)) return kDimension;
  if (dynamic_cast<const UnsupportedScenario*>(&e)) return kUnsupported;
  if (dynamic_cast<const InternalError*>(&e)) return kInvariant;
  return kAnalysis;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    std::cerr << "kreinlab: " << e.what() << "\n";
    return exit_for(e);
  }
}

json pair_json(cplx z) { return json::array({z.real(), z.imag()}); }

json vector_json(const ComplexVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(pair_json(v(i)));
  return a;
}

json signature_json(const SymmetryClassification& c) {
  json j;
  j["varpi"] = c.signature.varpi;
  j["wp"] = c.signature.wp;
  if (c.signature.epsilon) j["epsilon"] = *c.signature.epsilon;
  if (c.signature.c) j["c"] = *c.signature.c;
  j["degenerate"] = c.signature.degenerate;
  j["name"] = c.name;
  return j;
}

int cmd_analyze(const std::vector<std::string>& files, const Options& opt) {
  const double tol = opt.tolerance();
  std::vector<MatrixDocument> docs;
  for (const auto& f : files)
    for (auto& d : read_matrix_documents(f)) docs.push_back(std::move(d));
  std::optional<MatrixDocument> metric_doc, ham_doc;
  std::vector<MatrixDocument> syms, grads;
  for (auto& d : docs) {
    const std::string role = d.role.value_or("");
    if (role == "metric") {
      if (metric_doc) throw ParseError("more than one metric document");
      metric_doc = d;
    } else if (role == "hamiltonian") {
      if (ham_doc) throw ParseError("more than one hamiltonian document");
      ham_doc = d;
    } else if (role == "symmetry") {
      syms.push_back(d);
    } else if (role == "gradation") {
      grads.push_back(d);
    } else {
      throw ParseError("every document needs a role (metric, hamiltonian, symmetry, gradation)");
    }
  }
  if (!ham_doc) throw ParseError("no hamiltonian document");
  const Eigen::Index n = ham_doc->dimension();
  if (!metric_doc) throw ParseError("no metric document");
  if (metric_doc->dimension() != n) throw DimensionMismatch("metric and hamiltonian differ in dimension");
  for (const auto& d : syms)
    if (d.dimension() != n) throw DimensionMismatch("symmetry and hamiltonian differ in dimension");
  for (const auto& d : grads)
    if (d.dimension() != n) throw DimensionMismatch("gradation and hamiltonian differ in dimension");

  const ComplexMatrix& h = ham_doc->matrix;
  KreinMetric metric = KreinMetric::from(metric_doc->matrix, tol);
  json report;
  report["schema"] = kReportSchema;
  report["command"] = "analyze";
  report["dimension"] = n;
  report["metric_signature"] = {metric.kappa_plus, metric.kappa_minus};
  Verdict sa = is_eta_selfadjoint(h, metric, tol);
  report["eta_selfadjoint_residual"] = sa.residual;
  report["spectrum"] = vector_json(complex_schur(h, tol).eigenvalues);

  int code = kStable;
  json stab;
  std::optional<CSymmetry> xi;
  try {
    xi = find_csymmetry(h, metric, tol);
    StabilityCertificate cert = reduce_hamiltonian(h, *xi, tol);
    stab["verdict"] = "stable";
    stab["hermitian_residual"] = cert.hermitian_residual;
    stab["eta_commutator"] = cert.eta_commutator;
    stab["spectrum_residual"] = cert.spectrum_residual;
    CSymVerdict v = is_csymmetry(xi->xi, metric, tol);
    stab["xi_involution_residual"] = v.involution_residual;
    stab["xi_min_eig"] = v.min_eig;
    if (n == 2) stab["component"] = classify_gapped_2d(h, *xi, tol).str();
  } catch (const NotDynamicallyStable& e) {
    stab["verdict"] = "unstable";
    stab["obstruction"] = e.obstruction();
    stab["detail"] = e.what();
    code = kUnstable;
  }
  report["stability"] = stab;

  json rows = json::array();
  {
    SymmetryClassification ctx =
        classify_involutive_symmetry(RealLinearOp::identity(n), metric, h, tol);
    json r = signature_json(ctx);
    r["source"] = "identity";
    rows.push_back(r);
  }
  for (std::size_t k = 0; k < syms.size(); ++k) {
    RealLinearOp u{syms[k].matrix, syms[k].varpi.value_or(1)};
    json r = signature_json(classify_involutive_symmetry(u, metric, h, tol));
    r["source"] = "symmetry " + std::to_string(k);
    if (xi) {
      TransformedSymmetry ts = transform_symmetry(u, *xi, tol);
      r["xi_compatible"] = ts.compatible;
      if (ts.compatible) {
        r["transformed_unitarity_residual"] = ts.unitarity_residual;
        r["transformed_eta_residual"] = ts.eta_relation_residual;
      }
    }
    rows.push_back(r);
  }
  report["symmetries"] = rows;

  if (!grads.empty()) {
    json gj = json::array();
    for (const auto& g : grads) {
      GradationVerdict v = is_eta_gradation(g.matrix, metric, {}, {}, tol);
      json r;
      r["ok"] = v.ok;
      for (const auto& rel : v.relations) r["residuals"][rel.relation] = rel.residual;
      gj.push_back(r);
    }
    report["gradations"] = gj;
  }
  emit(report, opt);
  return code;
}

struct KgroupArgs {
  std::string group = "trivial", wp = "trivial", c = "trivial", varpi = "trivial";
  int r = 0, s = 0;
  std::string twist_file;
};

bool parse_hom(const std::string& v, const char* what) {
  if (v == "trivial" || v == "+1") return false;
  if (v == "id" || v == "Id") return true;
  throw ParseError(std::string(what) + " must be \"trivial\" or \"id\"");
}

int cmd_kgroup(const KgroupArgs& a, const Options& opt) {
  KGroupResult res;
  json scen;
  if (!a.twist_file.empty()) {
    TwistDocument doc = twist_from_json(read_json_file(a.twist_file));
    bool wp_trivial = true;
    for (int x : doc.twist.wp) wp_trivial = wp_trivial && x == 1;
    TwistData t = wp_trivial ? doc.twist : reduce_data(doc.twist);
    res = kgroup_twisted(t, a.r, a.s, opt.seed);
    scen["twist_file"] = a.twist_file;
    scen["group_order"] = doc.twist.group.order;
  } else {
    KScenario sc;
    if (a.group == "trivial")
      sc.group = GroupChoice::Trivial;
    else if (a.group == "Z2" || a.group == "z2")
      sc.group = GroupChoice::Z2;
    else
      throw ParseError("--group must be \"trivial\" or \"Z2\"");
    sc.wp_id = parse_hom(a.wp, "--wp");
    sc.c_id = parse_hom(a.c, "--c");
    sc.varpi_id = parse_hom(a.varpi, "--varpi");
    sc.r = a.r;
    sc.s = a.s;
    res = kgroup_point(sc, opt.seed);
    scen["group"] = sc.group == GroupChoice::Z2 ? "Z2" : "trivial";
    scen["wp"] = sc.wp_id ? "id" : "trivial";
    scen["c"] = sc.c_id ? "id" : "trivial";
  }
  scen["r"] = a.r;
  scen["s"] = a.s;
  if (opt.json_out) {
    json report;
    report["schema"] = kReportSchema;
    report["command"] = "kgroup";
    report["scenario"] = scen;
    report["descriptor"] = res.descriptor;
    report["rank"] = res.rank;
    report["classes"] = res.classes;
    report["non_extendable"] = res.non_extendable;
    report["trace"] = res.trace;
    std::cout << dump(report) << "\n";
  } else {
    std::cout << res.descriptor << "\n";
    for (const auto& line : res.trace) std::cout << "  " << line << "\n";
  }
  return kStable;
}

int cmd_demo(const std::string& name, const std::string& out_file, const Options& opt) {
  json report = demos::run(name, opt.seed, opt.tolerance());
  report["schema"] = kReportSchema;
  report["command"] = "demo";
  if (!out_file.empty()) {
    std::ofstream f(out_file);
    if (!f) throw InvalidInput("cannot write " + out_file);
    f << dump(report) << "\n";
  }
  emit(report, opt);
  return kStable;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kreinlab: Krein-space operator analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "seed for every randomized step")->capture_default_str();
  app.add_option("--tol", opt.tol, "tolerance (default 1e-9 or KREINLAB_TOL)");
  auto* fj = app.add_flag("--json", opt.json_out, "JSON report");
  auto* ft = app.add_flag("--table", opt.table_out, "plain key/value report (default)");
  fj->excludes(ft);

  auto* analyze = app.add_subcommand("analyze", "stability and symmetry report for matrix documents");
  std::vector<std::string> files;
  analyze->add_option("files", files, "matrix documents (one per file or arrays)")->required();

  auto* kgroup = app.add_subcommand("kgroup", "K-group of a point for a twist scenario");
  KgroupArgs ka;
  kgroup->add_option("--group", ka.group, "trivial | Z2")->capture_default_str();
  kgroup->add_option("--wp", ka.wp, "℘: trivial | id")->capture_default_str();
  kgroup->add_option("--c", ka.c, "c: trivial | id")->capture_default_str();
  kgroup->add_option("--varpi", ka.varpi, "ϖ: trivial | id")->capture_default_str();
  kgroup->add_option("--r", ka.r, "Clifford generators squaring to +1")->capture_default_str();
  kgroup->add_option("--s", ka.s, "Clifford generators squaring to -1")->capture_default_str();
  kgroup->add_option("--twist", ka.twist_file, "twist document instead of a scenario");

  auto* demo = app.add_subcommand("demo", "reproduce a worked example");
  std::string demo_name, demo_out;
  demo->add_option("name", demo_name, "appendixB | maxwell | pt-spectrum | homotopy")
      ->required()
      ->check(CLI::IsMember(demos::names()));
  demo->add_option("--out", demo_out, "also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }
  if (opt.tol < 0) {
    std::cerr << "kreinlab: --tol must be positive\n";
    return kParse;
  }

  if (*analyze) return guarded([&] { return cmd_analyze(files, opt); });
  if (*kgroup) return guarded([&] { return cmd_kgroup(ka, opt); });
  if (*demo) return guarded([&] { return cmd_demo(demo_name, demo_out, opt); });
  return kParse;
}
