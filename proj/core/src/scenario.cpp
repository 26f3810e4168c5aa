#include "finsler/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "finsler/acceptance.hpp"
#include "finsler/legendre.hpp"
#include "finsler/spray.hpp"
#include "finsler/tensor.hpp"
#include "finsler/zoo.hpp"

namespace finsler {

using nlohmann::json;

namespace {

Vec to_vec(const json& j) {
  require(j.is_array(), Err::bad_scenario, "expected a number array");
  Vec v;
  for (const auto& e : j) v.push_back(e.get<double>());
  return v;
}

Mat to_mat(const json& j) {
  require(j.is_array() && !j.empty(), Err::bad_scenario, "expected a matrix (array of arrays)");
  int rows = static_cast<int>(j.size());
  int cols = static_cast<int>(j[0].size());
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    require(static_cast<int>(j[i].size()) == cols, Err::bad_scenario, "ragged matrix");
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

RiemannianChart parse_chart(const json& j, int dim) {
  std::string name = j.is_string() ? j.get<std::string>() : j.value("chart", "euclidean");
  if (name == "euclidean") return RiemannianChart::euclidean(dim);
  if (name == "round-sphere") return RiemannianChart::round_sphere(dim);
  raise(Err::bad_scenario, "unknown chart '" + name + "'");
}

WindField parse_wind(const json& j) {
  if (j.is_array()) return WindField::constant(to_vec(j));
  require(j.is_object(), Err::bad_scenario, "wind must be an array or an object");
  std::string f = j.value("field", "constant");
  if (f == "constant") return WindField::constant(to_vec(j.at("v")));
  if (f == "hopf") return WindField::hopf();
  if (f == "linear") return WindField::linear(to_mat(j.at("A")));
  if (f == "swirl") return WindField::swirl();
  raise(Err::bad_scenario, "unknown wind field '" + f + "'");
}

PhiFamily parse_phi(const json& j) {
  std::string fam = j.at("family").get<std::string>();
  if (fam == "constant-one") return PhiFamily::constant_one();
  if (fam == "kropina") return PhiFamily::kropina();
  if (fam == "helicoid") return PhiFamily::helicoid(j.at("a").get<double>(), j.at("b").get<double>());
  raise(Err::bad_scenario, "unknown phi family '" + fam + "'");
}

ModelPtr parse_metric(const json& j) {
  require(j.is_object(), Err::bad_scenario, "metric must be an object");
  std::string kind = j.at("kind").get<std::string>();
  int dim = j.value("dim", 3);
  if (kind == "euclidean") return std::make_shared<EuclideanModel>(dim);
  if (kind == "riemannian") return std::make_shared<RiemannianModel>(parse_chart(j, dim));
  if (kind == "kropina") {
    RiemannianChart h = parse_chart(j.value("h", json("euclidean")), dim);
    return kropina_from_navigation(h, parse_wind(j.at("W")));
  }
  if (kind == "alpha-beta") {
    RiemannianChart a = parse_chart(j.value("a", json("euclidean")), dim);
    return std::make_shared<AlphaBetaModel>(a, to_vec(j.at("b")), parse_phi(j.at("phi")),
                                            j.at("b0").get<double>());
  }
  if (kind == "helicoid-dual")
    return std::make_shared<HelicoidMetric>(j.at("a").get<double>(), j.value("b", 1.0));
  raise(Err::bad_scenario, "unknown metric kind '" + kind + "'");
}

VolumeForm parse_volume(const json& j, const MetricModel& model) {
  std::string kind = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
  if (kind == "lebesgue") return VolumeForm::lebesgue();
  if (kind == "riemannian") {
    require(model.base_chart() != nullptr, Err::bad_scenario, "riemannian volume needs a chart");
    return VolumeForm::riemannian(*model.base_chart());
  }
  if (kind == "busemann-hausdorff") return VolumeForm::busemann_hausdorff(model);
  if (kind == "exp-linear") return VolumeForm::exp_linear(to_vec(j.at("a")));
  raise(Err::bad_scenario, "unknown volume kind '" + kind + "'");
}

GridSpec parse_grid(const json& j) {
  require(j.is_array() && j.size() == 3, Err::bad_scenario, "grid must be [lo, hi, count]");
  GridSpec g;
  g.lo = j[0].get<double>();
  g.hi = j[1].get<double>();
  g.count = j[2].get<int>();
  require(g.count >= 1, Err::bad_scenario, "grid count must be >= 1");
  return g;
}

Immersion parse_surface(const json& j, GridSpec& ug, GridSpec& vg, CoOrientation& co) {
  std::string fam = j.at("family").get<std::string>();
  if (j.contains("u")) ug = parse_grid(j.at("u"));
  if (j.contains("v")) vg = parse_grid(j.at("v"));
  if (j.contains("co_orientation")) {
    const json& c = j.at("co_orientation");
    std::string kind = c.value("kind", "frame");
    if (kind == "frame")
      co = CoOrientation::frame();
    else if (kind == "vector")
      co = CoOrientation::vector(to_vec(c.at("v")));
    else if (kind == "radial")
      co = CoOrientation::radial(to_vec(c.at("center")));
    else
      raise(Err::bad_scenario, "unknown co-orientation '" + kind + "'");
  }
  if (fam == "helicoid") return Immersion::helicoid(j.at("a").get<double>());
  if (fam == "sphere")
    return Immersion::sphere(j.contains("center") ? to_vec(j.at("center")) : Vec{0, 0, 0},
                             j.at("r").get<double>());
  if (fam == "cylinder") return Immersion::cylinder(j.at("r").get<double>());
  if (fam == "hyperplane")
    return Immersion::hyperplane(to_vec(j.at("p0")), to_vec(j.at("e1")), to_vec(j.at("e2")));
  if (fam == "clifford-torus")
    return Immersion::clifford_torus(j.at("r").get<double>(), j.at("s").get<double>());
  if (fam == "graph")
    return Immersion::graph(j.value("c0", 0.0), j.value("c1", 0.0), j.value("c2", 0.0),
                            j.value("q11", 0.0), j.value("q12", 0.0), j.value("q22", 0.0));
  raise(Err::bad_scenario, "unknown surface family '" + fam + "'");
}

ScalarField parse_field(const json& j, int dim) {
  std::string fam = j.at("family").get<std::string>();
  if (fam == "linear") return ScalarField::linear(to_vec(j.at("a")), j.value("c", 0.0));
  if (fam == "quadratic")
    return ScalarField::quadratic(to_mat(j.at("Q")),
                                  j.contains("a") ? to_vec(j.at("a")) : Vec(dim, 0.0),
                                  j.value("c", 0.0));
  if (fam == "norm")
    return ScalarField::norm(dim, j.contains("center") ? to_vec(j.at("center")) : Vec{});
  raise(Err::bad_scenario, "unknown field family '" + fam + "'");
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    raise(Err::bad_scenario, std::string("scenario JSON parse failure: ") + e.what());
  }
  try {
    Scenario s;
    s.seed = j.value("seed", 42ull);
    s.tol = j.value("tol", 1e-6);
    std::string mode = j.value("derivatives", "exact");
    if (mode == "exact")
      s.mode = DerivMode::exact;
    else if (mode == "fd")
      s.mode = DerivMode::finite_difference;
    else
      raise(Err::bad_scenario, "derivatives must be 'exact' or 'fd'");
    s.model = parse_metric(j.at("metric"));
    if (j.contains("volume")) s.volume = parse_volume(j.at("volume"), *s.model);
    if (j.contains("surface")) s.surface = parse_surface(j.at("surface"), s.ugrid, s.vgrid,
                                                          s.orientation);
    if (j.contains("field")) s.field = parse_field(j.at("field"), s.model->dim());
    if (j.contains("levels")) s.levels = to_vec(j.at("levels"));
    s.samples_per_level = j.value("samples_per_level", 10);
    if (j.contains("seed_box")) {
      s.box.lo = to_vec(j.at("seed_box").at("lo"));
      s.box.hi = to_vec(j.at("seed_box").at("hi"));
    } else {
      s.box.lo = Vec(s.model->dim(), -2.0);
      s.box.hi = Vec(s.model->dim(), 2.0);
    }
    s.echo = j.dump();
    return s;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    raise(Err::bad_scenario, std::string("scenario field error: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::bad_scenario, "cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

namespace {

json check_to_json(const CheckResult& c) {
  json j;
  j["name"] = c.name;
  j["pass"] = c.pass;
  j["max_dev"] = c.max_dev;
  j["tol"] = c.tol;
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.warnings.empty()) j["warnings"] = c.warnings;
  if (!c.failure.empty()) j["failure"] = c.failure;
  for (const auto& [key, vals] : c.payload) j["payload"][key] = vals;
  return j;
}

double relax_for(const Scenario& s, double tol) {
  return s.mode == DerivMode::finite_difference ? std::max(tol, 1e-4) : tol;
}

std::string fmt_vec(std::span<const double> v) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
  return os.str();
}

/// validate-metric: cone sanity, homogeneity, the squared-norm identity
/// g(y,y) = F^2, Cartan annihilation, positive definiteness, the
/// finite-difference cross-check, and round trips of the Legendre transform.
std::vector<CheckResult> validate_metric_checks(const Scenario& s) {
  const MetricModel& model = *s.model;
  Rng rng(s.seed);
  int m = model.dim();
  Vec x(m, 0.0);
  if (model.base_chart() && !model.base_chart()->flat()) {
    Rng xr = rng.child("chart-points");
    x = xr.uniform_vec(m, -0.5, 0.5);
  }
  const int nsamp = 25;

  CheckResult hom{.name = "homogeneity", .tol = relax_for(s, 1e-10)};
  CheckResult euler{.name = "squared-norm-identity", .tol = relax_for(s, 1e-9)};
  CheckResult cartan{.name = "cartan-annihilation", .tol = relax_for(s, 1e-9)};
  CheckResult spd{.name = "positive-definite", .tol = 0.0};
  CheckResult fdx{.name = "hessian-fd-crosscheck", .tol = 1e-5};
  CheckResult rt{.name = "legendre-round-trip", .tol = relax_for(s, 1e-8)};
  hom.pass = euler.pass = cartan.pass = spd.pass = fdx.pass = rt.pass = true;

  Rng yr = rng.child("cone-samples");
  for (int k = 0; k < nsamp; ++k) {
    Vec y = model.sample_cone(x, yr);
    double f = eval_metric(model, x, y, s.mode);
    for (double lam : {0.5, 2.0, 10.0}) {
      Vec ly = scaled(lam, y);
      double fl = eval_metric(model, x, ly, s.mode);
      double dev = std::abs(fl - lam * f) / (lam * f);
      hom.max_dev = std::max(hom.max_dev, dev);
      if (dev > hom.tol && hom.failure.empty())
        hom.failure = "y=" + fmt_vec(y) + " lambda=" + std::to_string(lam) +
                      " F(lambda y)=" + std::to_string(fl) +
                      " lambda F(y)=" + std::to_string(lam * f);
    }
    TensorPack pack = fundamental_tensor(model, x, y, s.mode);
    double gyy = 0.0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) gyy += pack.g(i, j) * y[i] * y[j];
    double edev = std::abs(gyy - f * f) / (f * f);
    euler.max_dev = std::max(euler.max_dev, edev);
    if (edev > euler.tol && euler.failure.empty())
      euler.failure = "y=" + fmt_vec(y) + " g(y,y)=" + std::to_string(gyy) +
                      " F^2=" + std::to_string(f * f);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double cy = 0.0;
        for (int kk = 0; kk < m; ++kk) cy += pack.cartan_at(i, j, kk, m) * y[kk];
        cartan.max_dev = std::max(cartan.max_dev, std::abs(cy));
      }
    Vec vals;
    Mat vecs;
    sym_eig(pack.g, vals, vecs);
    if (vals[0] <= 0.0) {
      spd.pass = false;
      if (spd.failure.empty())
        spd.failure = "y=" + fmt_vec(y) + " min eigenvalue=" + std::to_string(vals[0]);
    }
    // exact vs finite-difference fundamental tensor
    if (model.primal_evaluable() && s.mode == DerivMode::exact) {
      TensorPack fd = fundamental_tensor(model, x, y, DerivMode::finite_difference, false);
      double scale = 0.0, dev = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          scale = std::max(scale, std::abs(pack.g(i, j)));
          dev = std::max(dev, std::abs(pack.g(i, j) - fd.g(i, j)));
        }
      fdx.max_dev = std::max(fdx.max_dev, dev / std::max(1.0, scale));
    }
    Vec xi = legendre(model, x, y, s.mode);
    Vec back = legendre_inverse(model, x, xi, s.mode);
    double dev = 0.0, scale = std::max(1.0, norm2(y));
    for (int i = 0; i < m; ++i) dev = std::max(dev, std::abs(back[i] - y[i]));
    rt.max_dev = std::max(rt.max_dev, dev / scale);
    if (rt.max_dev > rt.tol && rt.failure.empty())
      rt.failure = "y=" + fmt_vec(y) + " round trip=" + fmt_vec(back);
  }
  hom.pass = hom.max_dev <= hom.tol;
  euler.pass = euler.max_dev <= euler.tol;
  cartan.pass = cartan.max_dev <= cartan.tol;
  fdx.pass = fdx.max_dev <= fdx.tol;
  rt.pass = rt.max_dev <= rt.tol;

  std::vector<CheckResult> out{hom, euler, cartan, spd, fdx, rt};

  // profile validation when the model carries one
  const PhiFamily* fam = nullptr;
  double b0 = 0.0;
  if (auto* ab = dynamic_cast<const AlphaBetaModel*>(&model)) {
    fam = &ab->profile();
    b0 = ab->b0();
  } else if (auto* he = dynamic_cast<const HelicoidMetric*>(&model)) {
    fam = &he->profile();
    b0 = he->b();
  }
  if (fam) {
    CheckResult pv{.name = "profile-convexity", .tol = 0.0};
    PhiValidationReport rep = validate_phi(*fam, b0, -b0 * 0.999, b0 * 0.999, 201);
    pv.pass = rep.pass;
    pv.max_dev = -std::min(rep.min_first, rep.min_second);
    pv.detail = "min(phi - s phi') = " + std::to_string(rep.min_first) +
                ", min convexity = " + std::to_string(rep.min_second);
    pv.warnings = rep.warnings;
    out.push_back(pv);
  }
  return out;
}

std::vector<CheckResult> surface_report_checks(const Scenario& s) {
  require(s.surface.has_value(), Err::bad_scenario, "surface-report needs a surface");
  const MetricModel& model = *s.model;
  CheckResult pairing{.name = "conormal-annihilates-frame", .pass = true,
                      .tol = relax_for(s, 1e-10)};
  CheckResult unit{.name = "normal-is-unit", .pass = true, .tol = relax_for(s, 1e-9)};
  CheckResult selfadj{.name = "shape-self-adjoint", .pass = true, .tol = relax_for(s, 1e-8)};
  CheckResult table{.name = "per-sample-curvatures", .pass = true, .tol = 0.0};
  VolumeForm vol =
      s.volume.has_value() ? *s.volume : VolumeForm::busemann_hausdorff(model);
  int idx = 0;
  for (double uu : s.ugrid.values())
    for (double vv : s.vgrid.values()) {
      Vec u{uu, vv};
      ShapeReport rep = shape_operator(model, *s.surface, u, s.orientation, &vol, s.mode);
      Mat frame = s.surface->tangent_frame(u);
      for (int a = 0; a < 2; ++a) {
        double p = 0.0;
        for (int i = 0; i < model.dim(); ++i) p += rep.nu[i] * frame(i, a);
        pairing.max_dev = std::max(pairing.max_dev, std::abs(p));
      }
      double fn = eval_metric(model, rep.x, rep.n, s.mode);
      unit.max_dev = std::max(unit.max_dev, std::abs(fn - 1.0));
      selfadj.max_dev = std::max(selfadj.max_dev, rep.self_adjoint_resid);
      Vec row = rep.principal;
      row.push_back(rep.mean_hat);
      row.push_back(rep.mean);
      table.payload.emplace_back("sample_" + std::to_string(idx) + "_u=" + fmt_vec(u), row);
      for (const std::string& w : rep.warnings) table.warnings.push_back(w);
      ++idx;
    }
  pairing.pass = pairing.max_dev <= pairing.tol;
  unit.pass = unit.max_dev <= unit.tol;
  selfadj.pass = selfadj.max_dev <= selfadj.tol;
  table.detail = std::to_string(idx) + " samples (principal curvatures, mean, mean+S)";
  return {pairing, unit, selfadj, table};
}

std::vector<CheckResult> isoparametric_checks(const Scenario& s) {
  require(s.field.has_value(), Err::bad_scenario, "isoparametric-check needs a field");
  require(!s.levels.empty(), Err::bad_scenario, "isoparametric-check needs levels");
  const MetricModel& model = *s.model;
  VolumeForm vol = s.volume.has_value() ? *s.volume : VolumeForm::busemann_hausdorff(model);
  Rng rng(s.seed);
  Rng r1 = rng.child("isoparametric");
  IsoparametricVerdict v = isoparametric_check(model, vol, *s.field, s.levels,
                                               s.samples_per_level, s.tol, s.box, r1, s.mode);
  CheckResult trans{.name = "transnormal", .tol = s.tol};
  trans.pass = v.transnormal;
  trans.max_dev = v.max_spread_grad;
  CheckResult iso{.name = "isoparametric", .tol = s.tol};
  iso.pass = v.isoparametric_sigma && v.isoparametric_hat;
  iso.max_dev = std::max(v.max_spread_sigma, v.max_spread_hat);
  for (const auto& note : v.notes) iso.warnings.push_back(note);
  for (const auto& ls : v.levels) {
    trans.payload.emplace_back("level_" + std::to_string(ls.level) + "_F(grad)", ls.grad_norm);
    iso.payload.emplace_back("level_" + std::to_string(ls.level) + "_lap_sigma", ls.lap_sigma);
  }
  std::vector<CheckResult> out{trans, iso};
  if (model.x_independent() && model.has_closed_dual()) {
    Rng r2 = rng.child("isoparametric-dual");
    IsoparametricVerdict d = minkowski_dual_check(model, *s.field, s.levels, s.samples_per_level,
                                                  s.tol, s.box, r2, s.mode);
    CheckResult dual{.name = "dual-form-path", .tol = relax_for(s, 1e-8)};
    dual.pass = (d.transnormal == v.transnormal) &&
                (d.isoparametric_sigma == v.isoparametric_sigma);
    for (size_t i = 0; i < d.levels.size() && i < v.levels.size(); ++i) {
      dual.max_dev = std::max(dual.max_dev,
                              std::abs(d.levels[i].mean_grad - v.levels[i].mean_grad));
      if (!v.levels[i].lap_sigma.empty() && !d.levels[i].lap_sigma.empty())
        dual.max_dev = std::max(dual.max_dev,
                                std::abs(d.levels[i].mean_sigma - v.levels[i].mean_sigma));
    }
    dual.pass = dual.pass && dual.max_dev <= dual.tol;
    dual.detail = "primal vs dual-form a(t), b(t) agreement";
    out.push_back(dual);
  }
  return out;
}

std::vector<CheckResult> kropina_compare_checks(const Scenario& s) {
  require(s.surface.has_value(), Err::bad_scenario, "kropina-compare needs a surface");
  auto* km = dynamic_cast<const KropinaModel*>(s.model.get());
  require(km != nullptr, Err::bad_scenario, "kropina-compare needs a kropina metric");
  std::vector<Vec> us;
  for (double uu : s.ugrid.values())
    for (double vv : s.vgrid.values()) us.push_back(Vec{uu, vv});
  EquivalenceReport rep =
      kropina_equivalence_report(*km, *s.surface, us, s.tol, s.orientation, s.mode);
  CheckResult eig{.name = "principal-curvatures-match", .tol = s.tol};
  eig.pass = rep.max_eig_dev <= s.tol;
  eig.max_dev = rep.max_eig_dev;
  CheckResult vecs{.name = "principal-directions-match", .tol = s.tol};
  vecs.pass = rep.max_vec_angle <= s.tol;
  vecs.max_dev = rep.max_vec_angle;
  CheckResult conf{.name = "conformal-induced-metric", .tol = relax_for(s, 1e-8)};
  conf.pass = rep.max_conformal_resid <= conf.tol;
  conf.max_dev = rep.max_conformal_resid;
  CheckResult der{.name = "normal-derivative-identity", .tol = relax_for(s, 1e-6)};
  der.pass = rep.max_deriv_resid <= der.tol;
  der.max_dev = rep.max_deriv_resid;
  CheckResult nf{.name = "normal-shift-identity", .tol = relax_for(s, 1e-9)};
  nf.pass = rep.max_n_formula_resid <= nf.tol;
  nf.max_dev = rep.max_n_formula_resid;
  for (const auto& es : rep.samples) {
    eig.payload.emplace_back("u=" + fmt_vec(es.u) + "_F", es.principal_f);
    eig.payload.emplace_back("u=" + fmt_vec(es.u) + "_h", es.principal_h);
  }
  return {eig, vecs, conf, der, nf};
}

}  // namespace

std::string RunReport::to_json() const {
  json j;
  j["schema"] = "finslerlab/report-v1";
  j["tool_version"] = kToolVersion;
  j["command"] = command;
  j["pass"] = pass;
  j["exit_code"] = exit_code;
  json checks_json = json::array();
  for (const CheckResult& c : checks) checks_json.push_back(check_to_json(c));
  j["checks"] = checks_json;
  if (!scenario_echo.empty()) j["scenario"] = json::parse(scenario_echo);
  j["timing"] = {{"wall_ms", wall_ms},
                 {"generated_at", static_cast<long long>(
                                      std::chrono::duration_cast<std::chrono::seconds>(
                                          std::chrono::system_clock::now().time_since_epoch())
                                          .count())}};
  return j.dump(2);
}

RunReport run_command(const std::string& command, const Scenario& scenario) {
  auto start = std::chrono::steady_clock::now();
  RunReport rep;
  rep.command = command;
  rep.scenario_echo = scenario.echo;
  if (command == "validate-metric")
    rep.checks = validate_metric_checks(scenario);
  else if (command == "surface-report")
    rep.checks = surface_report_checks(scenario);
  else if (command == "isoparametric-check")
    rep.checks = isoparametric_checks(scenario);
  else if (command == "kropina-compare")
    rep.checks = kropina_compare_checks(scenario);
  else if (command == "reproduce-paper") {
    AcceptanceSummary summary = reproduce_paper(scenario.mode, nullptr);
    for (const auto& c : summary.criteria) {
      CheckResult cr;
      cr.name = c.name;
      cr.pass = c.pass;
      cr.max_dev = c.max_dev;
      cr.tol = c.tol;
      cr.detail = (c.skipped ? std::string("SKIPPED: ") : std::string()) + c.detail;
      rep.checks.push_back(std::move(cr));
    }
  } else
    raise(Err::bad_scenario, "unknown command '" + command + "'");
  rep.pass = true;
  for (const CheckResult& c : rep.checks) rep.pass = rep.pass && c.pass;
  rep.exit_code = rep.pass ? 0 : 1;
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                    .count();
  return rep;
}

}  // namespace finsler
