#pragma once

#include <darboux/errors.hpp>
#include <darboux/expr.hpp>
#include <darboux/vec3.hpp>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace darboux {

inline constexpr int kDefaultSamples = 2001;
inline constexpr double kUnitTolerance = 1e-6;

/// Uniform arclength samples s_k = s0 + k (s1 - s0)/(n - 1); n odd and >= 5.
class Grid {
public:
  Grid(double s0, double s1, int n = kDefaultSamples);

  double s0() const { return s0_; }
  double s1() const { return s1_; }
  int size() const { return n_; }
  double step() const { return (s1_ - s0_) / (n_ - 1); }
  double at(int k) const { return k == n_ - 1 ? s1_ : s0_ + k * step(); }
  std::vector<double> samples() const;

  /// Same range, 2n - 1 samples (every old sample is kept).
  Grid refined() const { return Grid(s0_, s1_, 2 * n_ - 1); }

private:
  double s0_, s1_;
  int n_;
};

/// Three component expressions in the variable s.
struct SpaceCurve {
  std::array<Expr, 3> components;

  static SpaceCurve parse(const std::string& x, const std::string& y, const std::string& z);

  template <class T>
  Vec3T<T> evaluate(const T& s) const {
    const std::vector<Binding<T>> env{{"s", s}};
    return {darboux::evaluate<T>(components[0], env), darboux::evaluate<T>(components[1], env),
            darboux::evaluate<T>(components[2], env)};
  }

  template <int N>
  JetVec<N> jet(double s) const {
    return evaluate(Jet<N>::variable(s));
  }
};

/// Position and derivatives up to `order` (0..3) at s.
std::vector<Vec3> curvePoint(const SpaceCurve& c, double s, int order);

/// Surface normal given directly as a unit field U(s).
struct AnalyticNormal {
  SpaceCurve field;
};

/// Surface phi(u, v) with the curve's chart coordinates u(s), v(s); U = phi_u x phi_v / |.|.
struct SurfaceChart {
  std::array<Expr, 3> phi;
  Expr u;
  Expr v;

  static SurfaceChart parse(const std::string& x, const std::string& y, const std::string& z, const std::string& u,
                            const std::string& v);
};

struct OrientedSurfaceCurve {
  SpaceCurve alpha;
  std::variant<AnalyticNormal, SurfaceChart> normal;
};

inline constexpr double kDegenerateNormal = 1e-12;

/// Unit normal phi_u x phi_v / |phi_u x phi_v| at (u, v); partials by one-variable jets.
Vec3 surfaceNormal(const std::array<Expr, 3>& phi, double u, double v);

/// Unit normal along the curve as a jet in s.
template <int N>
JetVec<N> surfaceNormalJet(const SurfaceChart& chart, double s) {
  using D = Dual<Jet<N>>;
  const std::vector<Binding<Jet<N>>> env{{"s", Jet<N>::variable(s)}};
  const Jet<N> u = evaluate<Jet<N>>(chart.u, env);
  const Jet<N> v = evaluate<Jet<N>>(chart.v, env);
  auto partial = [&](bool along_u) {
    const std::vector<Binding<D>> uv{{"u", D(u, Jet<N>(along_u ? 1.0 : 0.0))},
                                     {"v", D(v, Jet<N>(along_u ? 0.0 : 1.0))}};
    return JetVec<N>{evaluate<D>(chart.phi[0], uv).b, evaluate<D>(chart.phi[1], uv).b,
                     evaluate<D>(chart.phi[2], uv).b};
  };
  const JetVec<N> n = cross(partial(true), partial(false));
  if (norm(value(n)) < kDegenerateNormal)
    fail(ErrorKind::degenerate_parametrization, "phi_u x phi_v vanishes along the curve at s = " + std::to_string(s));
  return normalized(n);
}

template <int N>
JetVec<N> normalJet(const OrientedSurfaceCurve& c, double s) {
  if (const auto* a = std::get_if<AnalyticNormal>(&c.normal)) return a->field.jet<N>(s);
  return surfaceNormalJet<N>(std::get<SurfaceChart>(c.normal), s);
}

struct ValidationReport {
  double max_speed_deviation = 0.0;      // max | |alpha'| - 1 |
  double max_normality_deviation = 0.0;  // max |<alpha', U>|
  double max_normal_length_deviation = 0.0;  // max | |U| - 1 |
  double tolerance = kUnitTolerance;
  bool pass = false;
};

ValidationReport validateSurfaceCurve(const OrientedSurfaceCurve& c, const Grid& g);

/// Curvature functions (k_g, k_n, tau_g) of s; the frame is recovered by
/// integrating the Darboux equations from `origin` and the initial frame.
struct CurvatureProfile {
  Expr kg, kn, taug;
  Vec3 origin{0.0, 0.0, 0.0};
  Vec3 T0{1.0, 0.0, 0.0}, V0{0.0, 1.0, 0.0}, U0{0.0, 0.0, 1.0};

  static CurvatureProfile parse(const std::string& kg, const std::string& kn, const std::string& taug);
};

/// Named real constants c1..c13 (c8 is split into c8_rns3 / c8_icc1).
class FamilyConstants {
public:
  FamilyConstants() = default;
  FamilyConstants(std::initializer_list<std::pair<const std::string, double>> init);

  static bool is_known_name(const std::string& name);

  void set(const std::string& name, double value);
  bool contains(const std::string& name) const { return values_.count(name) != 0; }
  /// Throws missing_constant if absent.
  double require(const std::string& name) const;
  const std::map<std::string, double>& values() const { return values_; }

private:
  std::map<std::string, double> values_;
};

}  // namespace darboux
