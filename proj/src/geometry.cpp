#include <darboux/geometry.hpp>

#include <algorithm>
#include <cmath>

namespace darboux {

Grid::Grid(double s0, double s1, int n) : s0_(s0), s1_(s1), n_(n) {
  if (!std::isfinite(s0) || !std::isfinite(s1) || !(s1 > s0)) fail(ErrorKind::config, "grid needs finite s1 > s0");
  if (n < 5 || n % 2 == 0) fail(ErrorKind::config, "grid sample count must be odd and >= 5, got " + std::to_string(n));
}

std::vector<double> Grid::samples() const {
  std::vector<double> s(n_);
  for (int k = 0; k < n_; ++k) s[k] = at(k);
  return s;
}

namespace {

// Parses text and rejects variables outside `allowed` up front, rather than at first evaluation.
Expr parseIn(const std::string& text, std::initializer_list<std::string_view> allowed) {
  Expr e = darboux::parse(text);
  for (const auto& name : e.variables())
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      std::string expected;
      for (auto a : allowed) expected += (expected.empty() ? "" : ", ") + std::string(a);
      fail(ErrorKind::config, "unbound variable '" + name + "' in '" + text + "' (expected " + expected + ")");
    }
  return e;
}

}  // namespace

SpaceCurve SpaceCurve::parse(const std::string& x, const std::string& y, const std::string& z) {
  return SpaceCurve{{parseIn(x, {"s"}), parseIn(y, {"s"}), parseIn(z, {"s"})}};
}

std::vector<Vec3> curvePoint(const SpaceCurve& c, double s, int order) {
  if (order < 0 || order > 3) fail(ErrorKind::domain, "curvePoint order must be in 0..3");
  const JetVec<3> j = c.jet<3>(s);
  std::vector<Vec3> out;
  for (int k = 0; k <= order; ++k) out.push_back(derivative(j, k));
  return out;
}

SurfaceChart SurfaceChart::parse(const std::string& x, const std::string& y, const std::string& z,
                                 const std::string& u, const std::string& v) {
  return SurfaceChart{{parseIn(x, {"u", "v"}), parseIn(y, {"u", "v"}), parseIn(z, {"u", "v"})}, parseIn(u, {"s"}),
                      parseIn(v, {"s"})};
}

Vec3 surfaceNormal(const std::array<Expr, 3>& phi, double u, double v) {
  auto partial = [&](bool along_u) {
    const Jet<1> uj = along_u ? Jet<1>::variable(u) : Jet<1>(u);
    const Jet<1> vj = along_u ? Jet<1>(v) : Jet<1>::variable(v);
    const std::vector<Binding<Jet<1>>> env{{"u", uj}, {"v", vj}};
    return Vec3{evaluate<Jet<1>>(phi[0], env).derivative(1), evaluate<Jet<1>>(phi[1], env).derivative(1),
                evaluate<Jet<1>>(phi[2], env).derivative(1)};
  };
  const Vec3 n = cross(partial(true), partial(false));
  const double len = norm(n);
  if (len < kDegenerateNormal) fail(ErrorKind::degenerate_parametrization, "phi_u and phi_v are parallel");
  return n / len;
}

ValidationReport validateSurfaceCurve(const OrientedSurfaceCurve& c, const Grid& g) {
  ValidationReport r;
  for (int k = 0; k < g.size(); ++k) {
    const double s = g.at(k);
    const Vec3 d1 = derivative(c.alpha.jet<1>(s), 1);
    const Vec3 U = value(normalJet<0>(c, s));
    r.max_speed_deviation = std::max(r.max_speed_deviation, std::abs(norm(d1) - 1.0));
    r.max_normality_deviation = std::max(r.max_normality_deviation, std::abs(dot(d1, U)));
    r.max_normal_length_deviation = std::max(r.max_normal_length_deviation, std::abs(norm(U) - 1.0));
  }
  r.pass = r.max_speed_deviation <= r.tolerance && r.max_normality_deviation <= r.tolerance &&
           r.max_normal_length_deviation <= r.tolerance;
  return r;
}

CurvatureProfile CurvatureProfile::parse(const std::string& kg, const std::string& kn, const std::string& taug) {
  CurvatureProfile p;
  p.kg = parseIn(kg, {"s"});
  p.kn = parseIn(kn, {"s"});
  p.taug = parseIn(taug, {"s"});
  return p;
}

namespace {
constexpr std::array<const char*, 14> kConstantNames{"c1",      "c2",      "c3",  "c4",  "c5",  "c6",  "c7",
                                                      "c8_rns3", "c8_icc1", "c9",  "c10", "c11", "c12", "c13"};
}

FamilyConstants::FamilyConstants(std::initializer_list<std::pair<const std::string, double>> init) {
  for (const auto& [k, v] : init) set(k, v);
}

bool FamilyConstants::is_known_name(const std::string& name) {
  return std::find(kConstantNames.begin(), kConstantNames.end(), name) != kConstantNames.end();
}

void FamilyConstants::set(const std::string& name, double value) {
  if (name == "c8") fail(ErrorKind::config, "constant 'c8' is ambiguous; use c8_rns3 or c8_icc1");
  if (!is_known_name(name)) fail(ErrorKind::config, "unknown constant '" + name + "'");
  if (!std::isfinite(value)) fail(ErrorKind::config, "constant '" + name + "' must be finite");
  values_[name] = value;
}

double FamilyConstants::require(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) fail(ErrorKind::missing_constant, "constant '" + name + "' is required but not supplied");
  return it->second;
}

}  // namespace darboux
