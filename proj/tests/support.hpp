#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include <darboux/scene.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace darboux;

inline const double kSqrt2 = std::sqrt(2.0);

inline OrientedSurfaceCurve cylinderCurve() {
  return {SpaceCurve::parse("sin(s/sqrt(2))", "cos(s/sqrt(2))", "s/sqrt(2)"),
          SurfaceChart::parse("sin(u)", "cos(u)", "v", "s/sqrt(2)", "s/sqrt(2)")};
}

inline OrientedSurfaceCurve cylinderCurveAnalytic() {
  return {SpaceCurve::parse("sin(s/sqrt(2))", "cos(s/sqrt(2))", "s/sqrt(2)"),
          AnalyticNormal{SpaceCurve::parse("-sin(s/sqrt(2))", "-cos(s/sqrt(2))", "0")}};
}

inline OrientedSurfaceCurve helicoidCurve() {
  return {SpaceCurve::parse("cos(s/sqrt(2))", "sin(s/sqrt(2))", "s/sqrt(2)"),
          SurfaceChart::parse("v*cos(u)", "v*sin(u)", "u", "s/sqrt(2)", "1")};
}

inline OrientedSurfaceCurve planeCircle() {
  return {SpaceCurve::parse("cos(s)", "sin(s)", "0"), AnalyticNormal{SpaceCurve::parse("0", "0", "1")}};
}

inline Grid longGrid() { return Grid(0.0, 8.0 * std::numbers::pi, 2001); }

/// Curvature stream realized as a full fixture (frame from the Darboux equations).
inline CurveSource stream(const std::string& kg, const std::string& kn, const std::string& tg) {
  return CurvatureProfile::parse(kg, kn, tg);
}

inline double maxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double maxDist(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, norm(a[k] - b[k]));
  return m;
}

/// 5-point central differences of order 1..3 with step h.
inline double fd1(const std::function<double(double)>& f, double s, double h) {
  return (f(s - 2 * h) - 8 * f(s - h) + 8 * f(s + h) - f(s + 2 * h)) / (12 * h);
}
inline double fd2(const std::function<double(double)>& f, double s, double h) {
  return (-f(s - 2 * h) + 16 * f(s - h) - 30 * f(s) + 16 * f(s + h) - f(s + 2 * h)) / (12 * h * h);
}
inline double fd3(const std::function<double(double)>& f, double s, double h) {
  return (f(s + 2 * h) - 2 * f(s + h) + 2 * f(s - h) - f(s - 2 * h)) / (2 * h * h * h);
}

/// Random expression in s whose value and derivatives stay moderate on [-2, 2]
/// and whose domain is the whole real line.
class ExprGenerator {
public:
  explicit ExprGenerator(unsigned seed) : rng_(seed) {}

  std::string make(int depth = 3) {
    if (depth == 0) return leaf();
    switch (pick(10)) {
      case 0: return "(" + make(depth - 1) + "+" + make(depth - 1) + ")";
      case 1: return "(" + make(depth - 1) + "-" + make(depth - 1) + ")";
      case 2: return "(" + make(depth - 1) + "*" + make(depth - 1) + ")";
      case 3: return "(" + make(depth - 1) + ")/(2+cos(" + make(depth - 1) + "))";
      case 4: return "(" + make(depth - 1) + ")^" + std::to_string(1 + pick(3));
      case 5: return "sin(" + make(depth - 1) + ")";
      case 6: return "exp(sin(" + make(depth - 1) + "))";
      case 7: return "atan(" + make(depth - 1) + ")";
      case 8: return "log(2+cos(" + make(depth - 1) + "))";
      default: return "sqrt(1+(" + make(depth - 1) + ")^2)";
    }
  }

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::string leaf() {
    switch (pick(4)) {
      case 0: return "s";
      case 1: return "(s/2)";
      case 2: {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", uniform(0.1, 2.0));
        return buf;
      }
      default: return "(s*" + std::to_string(1 + pick(3)) + "/3)";
    }
  }

  std::mt19937 rng_;
};

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.18f)", x);  // the grammar has no exponent notation
  return buf;
}

/// Random unit-speed curve on a rigidly moved cylinder of radius r, with
/// varying (k_g, k_n, tau_g): the chart point (theta(s), z(s)) has unit-speed
/// direction angle a s + b. Half the cases use chart mode, half an analytic normal.
inline OrientedSurfaceCurve randomCylinderCurve(std::mt19937& rng, bool chart) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double r = 0.5 + 2.5 * U(rng), a = 0.3 + 1.7 * U(rng), b = 2 * std::numbers::pi * U(rng);
  const std::string theta = "((sin(" + num(a) + "*s+" + num(b) + ")-" + num(std::sin(b)) + ")/" + num(a) + ")";
  const std::string z = "((" + num(std::cos(b)) + "-cos(" + num(a) + "*s+" + num(b) + "))/" + num(a) + ")";

  // Random rotation (QR of a Gaussian matrix via Gram-Schmidt) and translation.
  std::normal_distribution<double> G;
  Vec3 c0{G(rng), G(rng), G(rng)}, c1{G(rng), G(rng), G(rng)};
  c0 = normalized(c0);
  c1 = normalized(c1 - dot(c1, c0) * c0);
  const Vec3 c2 = cross(c0, c1);
  const Vec3 t{G(rng), G(rng), G(rng)};
  auto place = [&](const std::string& x, const std::string& y, const std::string& w, bool translate) {
    auto row = [&](double m0, double m1, double m2, double shift) {
      return num(m0) + "*" + x + "+" + num(m1) + "*" + y + "+" + num(m2) + "*" + w + (translate ? "+" + num(shift) : "");
    };
    return std::array<std::string, 3>{row(c0.x, c1.x, c2.x, t.x), row(c0.y, c1.y, c2.y, t.y), row(c0.z, c1.z, c2.z, t.z)};
  };
  const std::string R = num(r);
  const auto alpha = place(R + "*cos(" + theta + "/" + R + ")", R + "*sin(" + theta + "/" + R + ")", z, true);
  const SpaceCurve curve = SpaceCurve::parse(alpha[0], alpha[1], alpha[2]);
  if (chart) {
    const auto phi = place(R + "*cos(u/" + R + ")", R + "*sin(u/" + R + ")", "v", true);
    return {curve, SurfaceChart::parse(phi[0], phi[1], phi[2], theta, z)};
  }
  const auto n = place("cos(" + theta + "/" + R + ")", "sin(" + theta + "/" + R + ")", "0", false);
  return {curve, AnalyticNormal{SpaceCurve::parse(n[0], n[1], n[2])}};
}

/// Rotation matrix from an axis-angle pair, applied to a vector.
inline Vec3 rotate(const Vec3& axis, double angle, const Vec3& v) {
  const Vec3 k = normalized(axis);
  return std::cos(angle) * v + std::sin(angle) * cross(k, v) + (1.0 - std::cos(angle)) * dot(k, v) * k;
}

}  // namespace testing_support
