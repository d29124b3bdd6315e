#include <darboux/scene.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace darboux {

using json = nlohmann::ordered_json;

namespace {

double constantValue(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return evaluate_constant(parse(v.get<std::string>()));
    } catch (const Error& e) {
      fail(ErrorKind::config, "'" + key + "': " + e.what());
    }
  }
  fail(ErrorKind::config, "'" + key + "' must be a number or a constant expression");
}

std::string exprText(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return formatNumber(v.get<double>());
  fail(ErrorKind::config, "'" + key + "' must be an expression string");
}

std::array<std::string, 3> triple(const json& obj, const std::string& key) {
  if (!obj.contains(key)) fail(ErrorKind::config, "missing '" + key + "'");
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 3) fail(ErrorKind::config, "'" + key + "' must be an array of three expressions");
  return {exprText(v[0], key), exprText(v[1], key), exprText(v[2], key)};
}

Vec3 vector3(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3) fail(ErrorKind::config, "'" + key + "' must be an array of three numbers");
  return {constantValue(v[0], key), constantValue(v[1], key), constantValue(v[2], key)};
}

void rejectUnknownKeys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(ErrorKind::config, "unknown key '" + key + "' in " + where);
  }
}

CurveSource parseCurve(const json& c) {
  if (!c.is_object()) fail(ErrorKind::config, "'curve' must be an object");
  const std::string mode = c.value("mode", "surface");
  if (mode == "surface") {
    rejectUnknownKeys(c, {"mode", "alpha", "surface"}, "curve");
    const auto a = triple(c, "alpha");
    if (!c.contains("surface") || !c.at("surface").is_object()) fail(ErrorKind::config, "missing 'surface' object");
    const json& s = c.at("surface");
    rejectUnknownKeys(s, {"phi", "u", "v"}, "surface");
    const auto phi = triple(s, "phi");
    if (!s.contains("u") || !s.contains("v")) fail(ErrorKind::config, "surface needs 'u' and 'v'");
    return OrientedSurfaceCurve{SpaceCurve::parse(a[0], a[1], a[2]),
                                SurfaceChart::parse(phi[0], phi[1], phi[2], exprText(s.at("u"), "u"),
                                                    exprText(s.at("v"), "v"))};
  }
  if (mode == "normal") {
    rejectUnknownKeys(c, {"mode", "alpha", "normal"}, "curve");
    const auto a = triple(c, "alpha");
    const auto u = triple(c, "normal");
    return OrientedSurfaceCurve{SpaceCurve::parse(a[0], a[1], a[2]), AnalyticNormal{SpaceCurve::parse(u[0], u[1], u[2])}};
  }
  if (mode == "curvatures") {
    rejectUnknownKeys(c, {"mode", "kg", "kn", "taug", "origin", "frame"}, "curve");
    for (const char* k : {"kg", "kn", "taug"})
      if (!c.contains(k)) fail(ErrorKind::config, std::string("missing '") + k + "'");
    CurvatureProfile p = CurvatureProfile::parse(exprText(c.at("kg"), "kg"), exprText(c.at("kn"), "kn"),
                                                 exprText(c.at("taug"), "taug"));
    if (c.contains("origin")) p.origin = vector3(c.at("origin"), "origin");
    if (c.contains("frame")) {
      const json& f = c.at("frame");
      rejectUnknownKeys(f, {"T", "V", "U"}, "frame");
      p.T0 = vector3(f.at("T"), "T");
      p.V0 = vector3(f.at("V"), "V");
      p.U0 = vector3(f.at("U"), "U");
    }
    return p;
  }
  fail(ErrorKind::config, "unknown curve mode '" + mode + "' (surface, normal, curvatures)");
}

const std::vector<std::string> kFormats{"csv", "obj", "json"};

std::vector<std::string> checkedFormats(std::vector<std::string> f) {
  for (const auto& x : f)
    if (std::find(kFormats.begin(), kFormats.end(), x) == kFormats.end())
      fail(ErrorKind::config, "unknown export format '" + x + "' (csv, obj, json)");
  return f;
}

SceneConfig parseSceneJson(const json& doc) {
  if (!doc.is_object()) fail(ErrorKind::config, "scene must be a JSON object");
  rejectUnknownKeys(doc, {"name", "description", "curve", "grid", "families", "constants", "exports", "tolerances"},
                    "scene");
  if (!doc.contains("curve")) fail(ErrorKind::config, "missing 'curve'");
  SceneConfig cfg{doc.value("name", "scene"), doc.value("description", ""), parseCurve(doc.at("curve")), {}, {}, {}};
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    rejectUnknownKeys(g, {"s0", "s1", "n"}, "grid");
    if (!g.contains("s0") || !g.contains("s1")) fail(ErrorKind::config, "grid needs 's0' and 's1'");
    cfg.grid.s0 = constantValue(g.at("s0"), "s0");
    cfg.grid.s1 = constantValue(g.at("s1"), "s1");
    if (g.contains("n")) {
      if (!g.at("n").is_number_integer()) fail(ErrorKind::config, "'n' must be an integer");
      cfg.grid.n = g.at("n").get<int>();
    }
  }
  (void)cfg.grid.grid();
  if (doc.contains("families")) {
    if (!doc.at("families").is_array()) fail(ErrorKind::config, "'families' must be an array");
    for (const auto& f : doc.at("families")) cfg.families.push_back(parseFamily(exprText(f, "families")));
  }
  if (doc.contains("constants")) {
    if (!doc.at("constants").is_object()) fail(ErrorKind::config, "'constants' must be an object");
    for (const auto& [name, value] : doc.at("constants").items()) cfg.constants.set(name, constantValue(value, name));
  }
  if (doc.contains("exports")) cfg.formats = checkedFormats(doc.at("exports").get<std::vector<std::string>>());
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    rejectUnknownKeys(t, {"rel"}, "tolerances");
    if (t.contains("rel")) cfg.rel_tol = constantValue(t.at("rel"), "rel");
    if (!(cfg.rel_tol > 0.0)) fail(ErrorKind::config, "'rel' must be positive");
  }
  return cfg;
}

struct Builtin {
  const char* name;
  const char* description;
  const char* document;
};

// Sorted by name.
const Builtin kBuiltins[] = {
    {"cylinder-geodesic", "helical geodesic on a circular cylinder", R"json({
  "name": "cylinder-geodesic",
  "curve": {
    "mode": "surface",
    "alpha": ["sin(s/sqrt(2))", "cos(s/sqrt(2))", "s/sqrt(2)"],
    "surface": {"phi": ["sin(u)", "cos(u)", "v"], "u": "s/sqrt(2)", "v": "s/sqrt(2)"}
  },
  "grid": {"s0": 0, "s1": "8*pi", "n": 2001},
  "families": ["hcc1", "rns2", "icc1"],
  "constants": {"c8_icc1": -1, "c9": -1, "c10": -1, "c11": 1}
})json"},
    {"helicoid-asymptotic", "asymptotic helix on a helicoid", R"json({
  "name": "helicoid-asymptotic",
  "curve": {
    "mode": "surface",
    "alpha": ["cos(s/sqrt(2))", "sin(s/sqrt(2))", "s/sqrt(2)"],
    "surface": {"phi": ["v*cos(u)", "v*sin(u)", "u"], "u": "s/sqrt(2)", "v": "1"}
  },
  "grid": {"s0": 0, "s1": "8*pi", "n": 2001},
  "families": ["hcc1", "rns1", "icc3"],
  "constants": {"c4": -2, "c5": 1, "c8_rns3": -1, "c12": -2, "c13": 1}
})json"},
    {"plane-circle", "unit circle in the plane z = 0, a principal line", R"json({
  "name": "plane-circle",
  "curve": {
    "mode": "surface",
    "alpha": ["cos(s)", "sin(s)", "0"],
    "surface": {"phi": ["u", "v", "0"], "u": "cos(s)", "v": "sin(s)"}
  },
  "grid": {"s0": 0, "s1": "2*pi", "n": 2001},
  "families": ["hcc1", "hcc2", "rns2"],
  "constants": {"c4": -1}
})json"},
    {"twisted-cubic-control", "non-helical control curve (tangent indicatrix on Viviani's curve)", R"json({
  "name": "twisted-cubic-control",
  "curve": {
    "mode": "normal",
    "alpha": ["s/2 + sin(2*s)/4", "sin(s)^2/2", "-cos(s)"],
    "normal": ["-sin(s)", "cos(s)", "0"]
  },
  "grid": {"s0": 0.2, "s1": 1.2, "n": 2001},
  "families": ["hcc1"]
})json"},
};

json axisJson(const AxisFit& a) {
  return json{{"zeta", {a.zeta.x, a.zeta.y, a.zeta.z}},
              {"cos_angle_mean", a.cos_angle_mean},
              {"angle_std", a.angle_std},
              {"low_confidence", a.low_confidence}};
}

json constancyJson(const ConstancyReport& r) {
  return json{{"mean", r.mean}, {"stddev", r.stddev}, {"max_abs_dev", r.max_abs_dev}, {"verdict", r.verdict}};
}

json propertyJson(const PropertyVerdict& p) {
  return json{{"verdict", p.verdict}, {"method", p.method}, {"invariant_mean", p.invariant_mean},
              {"axis", axisJson(p.axis)}};
}

bool wants(const std::vector<std::string>& formats, const char* f) {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

class StageError : public std::runtime_error {
public:
  StageError(std::string stage, const Error& e)
      : std::runtime_error(stage + ": " + to_string(e.kind()) + ": " + e.what()), kind_(e.kind()) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

struct StopPipeline {};

template <class F>
auto inStage(const std::string& stage, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
  if (parts.size() != 3) fail(ErrorKind::config, "grid must be s0:s1:n, got '" + text + "'");
  GridSpec g;
  g.s0 = constantValue(json(parts[0]), "s0");
  g.s1 = constantValue(json(parts[1]), "s1");
  int n = 0;
  const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
  if (ec != std::errc() || ptr != parts[2].data() + parts[2].size())
    fail(ErrorKind::config, "grid sample count '" + parts[2] + "' is not an integer");
  g.n = n;
  (void)g.grid();
  return g;
}

SceneConfig parseScene(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorKind::config, std::string("scene is not valid JSON: ") + e.what());
  }
  try {
    return parseSceneJson(doc);
  } catch (const json::exception& e) {
    fail(ErrorKind::config, std::string("scene has a malformed value: ") + e.what());
  } catch (const ParseError& e) {
    fail(ErrorKind::config, std::string("scene expression: ") + e.what());
  }
}

SceneConfig builtinScene(const std::string& name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) {
      SceneConfig cfg = parseScene(b.document);
      cfg.description = b.description;
      return cfg;
    }
  }
  fail(ErrorKind::config, "unknown built-in scene '" + name + "'");
}

std::vector<std::string> listBuiltins() {
  std::vector<std::string> out;
  for (const auto& b : kBuiltins) out.push_back(std::string(b.name) + ": " + b.description);
  std::sort(out.begin(), out.end());
  return out;
}

SceneConfig loadScene(const std::string& name_or_path) {
  for (const auto& b : kBuiltins)
    if (name_or_path == b.name) return builtinScene(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) fail(ErrorKind::config, "no built-in scene or readable file named '" + name_or_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parseScene(text.str());
}

std::vector<Fixture> fixtureSuite() {
  std::vector<Fixture> out;
  for (const auto& b : kBuiltins) {
    SceneConfig cfg = builtinScene(b.name);
    out.push_back({cfg.name, cfg.source, cfg.grid.grid(), cfg.constants});
  }
  auto synthetic = [&](const char* name, const char* kg, const char* kn, const char* tg, double s0, double s1) {
    out.push_back({name, CurvatureProfile::parse(kg, kn, tg), Grid(s0, s1, 1001), FamilyConstants{}});
  };
  synthetic("stream-kg1-kn1-taus", "1", "1", "s", 0.0, 1.0);
  synthetic("stream-principal-circle", "1", "1", "0", 0.0, 1.0);
  synthetic("stream-geodesic-taus", "0", "1", "s", 0.0, 1.0);
  synthetic("stream-geodesic-growing-kn", "0", "(1+s^2/100)/2", "-1/2", 0.0, 10.0);
  return out;
}

int exitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config:
    case ErrorKind::lexical:
    case ErrorKind::syntax:
    case ErrorKind::missing_constant: return exit_code::config;
    case ErrorKind::validation: return exit_code::verification;
    default: return exit_code::math;
  }
}

std::string formatNumber(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string framesCsv(std::span<const DarbouxSample> samples) {
  std::string out = "s,alpha_x,alpha_y,alpha_z,T_x,T_y,T_z,V_x,V_y,V_z,U_x,U_y,U_z,k_g,k_n,tau_g\n";
  for (const auto& d : samples) {
    const double row[] = {d.s,   d.alpha.x, d.alpha.y, d.alpha.z, d.T.x, d.T.y, d.T.z, d.V.x,
                          d.V.y, d.V.z,     d.U.x,     d.U.y,     d.U.z, d.kg,  d.kn,  d.taug};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      if (i) out += ',';
      out += formatNumber(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string associatedCsv(const AssociatedCurve& a) {
  std::string out = "s,gamma_x,gamma_y,gamma_z,y1,y2,y3\n";
  for (std::size_t k = 0; k < a.gamma.size(); ++k) {
    const Vec3 p = a.point(k);
    const double row[] = {a.track.s[k], p.x, p.y, p.z, a.track.y[0][k], a.track.y[1][k], a.track.y[2][k]};
    for (std::size_t i = 0; i < std::size(row); ++i) {
      if (i) out += ',';
      out += formatNumber(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string polylineObj(const std::string& name, std::span<const Vec3> points) {
  std::string out = "o " + name + "\n";
  for (const auto& p : points) out += "v " + formatNumber(p.x) + ' ' + formatNumber(p.y) + ' ' + formatNumber(p.z) + '\n';
  out += 'l';
  for (std::size_t k = 1; k <= points.size(); ++k) out += ' ' + std::to_string(k);
  out += '\n';
  return out;
}

namespace {

double parseDouble(std::string_view t) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size())
    fail(ErrorKind::config, "malformed number '" + std::string(t) + "'");
  return v;
}

std::vector<std::string_view> splitOn(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(sep, start);
    if (end == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, end - start));
    start = end + 1;
  }
}

}  // namespace

std::vector<Vec3> readObjPolyline(const std::string& text) {
  std::vector<Vec3> pts;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("v ", 0) != 0) continue;
    const auto f = splitOn(std::string_view(line).substr(2), ' ');
    if (f.size() != 3) fail(ErrorKind::config, "OBJ vertex needs three coordinates");
    pts.push_back({parseDouble(f[0]), parseDouble(f[1]), parseDouble(f[2])});
  }
  return pts;
}

std::vector<Vec3> readAssociatedCsv(const std::string& text) {
  std::vector<Vec3> pts;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (line.rfind("s,gamma_x,gamma_y,gamma_z", 0) != 0) fail(ErrorKind::config, "not an associated-curve CSV");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = splitOn(line, ',');
    if (f.size() != 7) fail(ErrorKind::config, "associated-curve CSV row needs 7 columns");
    pts.push_back({parseDouble(f[1]), parseDouble(f[2]), parseDouble(f[3])});
  }
  return pts;
}

RunResult runScene(const SceneConfig& cfg, const RunOptions& opt) {
  RunResult result;
  const std::vector<std::string> formats = opt.formats ? checkedFormats(*opt.formats) : cfg.formats;
  json report;
  report["scene"] = cfg.name;
  bool verdicts_ok = true;

  try {
    const Grid grid = inStage("grid", [&] { return cfg.grid.grid(); });
    report["grid"] = {{"s0", grid.s0()}, {"s1", grid.s1()}, {"n", grid.size()}};

    if (const auto* curve = cfg.source.curve()) {
      const ValidationReport v = inStage("validate", [&] { return validateSurfaceCurve(*curve, grid); });
      report["validation"] = {{"max_speed_deviation", v.max_speed_deviation},
                              {"max_normality_deviation", v.max_normality_deviation},
                              {"max_normal_length_deviation", v.max_normal_length_deviation},
                              {"tolerance", v.tolerance},
                              {"pass", v.pass}};
      if (!v.pass) {
        verdicts_ok = false;
        result.error = "validate: curve is not a unit-speed surface curve";
        throw StopPipeline{};
      }
    } else {
      report["validation"] = {{"pass", true}, {"note", "frame realized from curvature functions"}};
    }
    if (opt.last == Stage::validate) throw StopPipeline{};

    const std::vector<DarbouxJet> jets = inStage("frames", [&] { return sampleDarbouxJets(cfg.source, grid, opt.exec); });
    std::vector<DarbouxSample> samples(jets.size());
    for (std::size_t k = 0; k < jets.size(); ++k) samples[k] = toSample(jets[k]);
    if (opt.export_frames && wants(formats, "csv")) result.exports.push_back({"csv", "frames.csv", framesCsv(samples)});
    if (opt.last == Stage::frames) throw StopPipeline{};

    inStage("classify", [&] {
      const BaseClassification b = classifyBase(jets, cfg.rel_tol);
      json c;
      c["geodesic"] = b.pointwise.is_geodesic;
      c["asymptotic"] = b.pointwise.is_asymptotic;
      c["principal_line"] = b.pointwise.is_principal_line;
      c["max_abs"] = {{"k_g", b.pointwise.max_abs_kg}, {"k_n", b.pointwise.max_abs_kn}, {"tau_g", b.pointwise.max_abs_taug}};
      c["helical"] = propertyJson(b.helical);
      c["relatively_normal_slant_helix"] = propertyJson(b.normal_slant);
      c["isophote"] = propertyJson(b.isophote);
      json slant;
      for (DarbouxKind k : {DarbouxKind::osculating, DarbouxKind::normal, DarbouxKind::rectifying}) {
        try {
          const SlantHelixVerdict v = darbouxSlantHelixTest(samples, k);
          slant[to_string(k)] = {{"verdict", v.verdict}, {"axis", axisJson(v.axis)}};
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::vanishing_field) throw;
          slant[to_string(k)] = {{"verdict", nullptr}, {"note", e.what()}};
        }
      }
      c["darboux_slant_helix"] = slant;
      report["classification"] = c;
      return 0;
    });
    if (opt.last == Stage::classify) throw StopPipeline{};

    report["families"] = json::object();
    for (Family f : cfg.families) {
      const std::string tag = to_string(f);
      const FamilyConstants k = withDefaults(f, cfg.constants);
      const AssociatedCurve a = inStage("construct(" + tag + ")", [&] { return construct(f, jets, k, grid, opt.exec); });
      json fam;
      fam["case"] = a.track.case_tag;
      json used = json::object();
      for (const auto& name : requiredConstants(f)) used[name] = k.require(name);
      fam["constants"] = used;
      const OdeResidual res = odeResidual(a);
      fam["ode_residual"] = {{"equality", {res.equality[0], res.equality[1]}}, {"min_inequality", res.min_inequality}};
      if (wants(formats, "csv")) result.exports.push_back({"csv", tag + ".csv", associatedCsv(a)});
      if (wants(formats, "obj")) result.exports.push_back({"obj-polyline", tag + ".obj", polylineObj(tag, a.points())});
      if (opt.last == Stage::verify) {
        const HelixReport h = inStage("verify(" + tag + ")", [&] { return helixReport(a, cfg.rel_tol); });
        fam["helix"] = {{"verdict", h.verdict},
                        {"lancret", constancyJson(h.lancret)},
                        {"axis", axisJson(h.axis)},
                        {"alignment", h.alignment},
                        {"binormal", h.binormal},
                        {"sign_consistent", h.sign_consistent}};
        if (!h.verdict) {
          verdicts_ok = false;
          if (result.error.empty()) result.error = "verify(" + tag + "): associated curve is not a general helix";
        }
      }
      report["families"][tag] = fam;
    }
  } catch (const StageError& e) {
    result.error = e.what();
    result.exit_code = exitCodeFor(e.kind());
  } catch (const StopPipeline&) {
    // early stop requested by the stage selection or a failed validation
  }

  if (result.exit_code == exit_code::ok && !verdicts_ok && !opt.report_only) result.exit_code = exit_code::verification;
  report["status"] = result.exit_code == exit_code::ok ? (verdicts_ok ? "ok" : "failed-verdicts") : "error";
  if (!result.error.empty()) report["error"] = result.error;
  result.report = report.dump(2) + "\n";
  if (wants(formats, "json")) result.exports.push_back({"json-report", "report.json", result.report});

  if (!opt.out_dir.empty()) {
    try {
      std::filesystem::create_directories(opt.out_dir);
      for (const auto& e : result.exports) {
        std::ofstream out(std::filesystem::path(opt.out_dir) / e.path, std::ios::binary);
        if (!out) fail(ErrorKind::config, "cannot write " + e.path);
        out << e.payload;
      }
    } catch (const std::filesystem::filesystem_error& e) {
      result.error = std::string("export: ") + e.what();
      result.exit_code = exit_code::config;
    } catch (const Error& e) {
      result.error = std::string("export: ") + e.what();
      result.exit_code = exit_code::config;
    }
  }
  return result;
}

}  // namespace darboux
