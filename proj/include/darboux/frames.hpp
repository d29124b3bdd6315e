#pragma once

#include <darboux/geometry.hpp>
#include <darboux/parallel.hpp>

#include <array>
#include <variant>
#include <vector>

namespace darboux {

/// Darboux data at one sample as jets: alpha to order A, the frame to A-1,
/// and the curvature triple to A-2.
template <int A>
struct DarbouxJetT {
  double s = 0.0;
  JetVec<A> alpha;
  JetVec<A - 1> T, V, U;
  Jet<A - 2> kg, kn, taug;
};

/// Order used by the construction kernel: enough for gamma''' when the
/// coefficients contain first derivatives of the curvatures.
using DarbouxJet = DarbouxJetT<6>;

struct DarbouxSample {
  double s = 0.0;
  Vec3 alpha;
  Vec3 T, V, U;
  double kg = 0.0, kn = 0.0, taug = 0.0;
  double dkg = 0.0, dkn = 0.0, dtaug = 0.0;
};

struct FrenetSample {
  double s = 0.0;
  Vec3 T, N, B;
  double kappa = 0.0;
  double tau = 0.0;
  bool frame_defined = false;  // false when kappa < kFrenetKappaMin; N, B, tau are then unset
};

inline constexpr double kFrenetKappaMin = 1e-12;

/// Darboux jets of an expression-backed surface curve; throws validation
/// errors if the unit-speed / normality hypotheses fail at s.
template <int A>
DarbouxJetT<A> darbouxJetAt(const OrientedSurfaceCurve& c, double s) {
  DarbouxJetT<A> d;
  d.s = s;
  d.alpha = c.alpha.jet<A>(s);
  d.T = derivative(d.alpha);
  d.U = normalJet<A - 1>(c, s);
  const Vec3 t0 = value(d.T), u0 = value(d.U);
  if (std::abs(norm(t0) - 1.0) > kUnitTolerance)
    fail(ErrorKind::validation, "curve is not unit speed at s = " + std::to_string(s));
  if (std::abs(dot(t0, u0)) > kUnitTolerance)
    fail(ErrorKind::validation, "normal is not orthogonal to the tangent at s = " + std::to_string(s));
  if (std::abs(norm(u0) - 1.0) > kUnitTolerance)
    fail(ErrorKind::validation, "normal is not unit length at s = " + std::to_string(s));
  d.V = cross(d.U, d.T);
  const auto dT = derivative(d.T);
  const auto dV = derivative(d.V);
  d.kg = dot(dT, d.V);
  d.kn = dot(dT, d.U);
  d.taug = dot(dV, d.U);
  return d;
}

/// Frame jets from frame values and curvature jets via the Darboux equations.
template <int A>
DarbouxJetT<A> darbouxJetFromCurvatures(double s, const Vec3& alpha, const Vec3& T, const Vec3& V, const Vec3& U,
                                        const Jet<A - 2>& kg, const Jet<A - 2>& kn, const Jet<A - 2>& taug) {
  constexpr int F = A - 1;
  std::array<Vec3, F + 1> t{}, v{}, u{};
  t[0] = T;
  v[0] = V;
  u[0] = U;
  for (int k = 0; k < F; ++k) {
    Vec3 dt{}, dv{}, du{};
    for (int j = 0; j <= k; ++j) {
      dt = dt + kg.c[j] * v[k - j] + kn.c[j] * u[k - j];
      dv = dv + (-kg.c[j]) * t[k - j] + taug.c[j] * u[k - j];
      du = du + (-kn.c[j]) * t[k - j] + (-taug.c[j]) * v[k - j];
    }
    t[k + 1] = dt / (k + 1.0);
    v[k + 1] = dv / (k + 1.0);
    u[k + 1] = du / (k + 1.0);
  }
  DarbouxJetT<A> d;
  d.s = s;
  auto fill = [](JetVec<F>& out, const std::array<Vec3, F + 1>& coeffs) {
    for (int k = 0; k <= F; ++k) {
      out.x.c[k] = coeffs[k].x;
      out.y.c[k] = coeffs[k].y;
      out.z.c[k] = coeffs[k].z;
    }
  };
  fill(d.T, t);
  fill(d.V, v);
  fill(d.U, u);
  d.alpha = {antiderivative(d.T.x, alpha.x), antiderivative(d.T.y, alpha.y), antiderivative(d.T.z, alpha.z)};
  d.kg = kg;
  d.kn = kn;
  d.taug = taug;
  return d;
}

/// A surface curve given by expressions, or a curvature profile whose frame
/// is realized numerically.
class CurveSource {
public:
  CurveSource(OrientedSurfaceCurve c) : source_(std::move(c)) {}  // NOLINT
  CurveSource(CurvatureProfile p) : source_(std::move(p)) {}      // NOLINT

  const OrientedSurfaceCurve* curve() const { return std::get_if<OrientedSurfaceCurve>(&source_); }
  const CurvatureProfile* profile() const { return std::get_if<CurvatureProfile>(&source_); }

  /// (k_g, k_n, tau_g) at any s.
  std::array<double, 3> curvaturesAt(double s) const;

private:
  std::variant<OrientedSurfaceCurve, CurvatureProfile> source_;
};

DarbouxSample toSample(const DarbouxJet& d);

DarbouxSample darbouxAt(const OrientedSurfaceCurve& c, double s);

/// Darboux jets at every grid sample.
std::vector<DarbouxJet> sampleDarbouxJets(const CurveSource& src, const Grid& g, Exec exec = Exec::parallel);
std::vector<DarbouxSample> sampleDarboux(const CurveSource& src, const Grid& g, Exec exec = Exec::parallel);

/// Frenet data from gamma', gamma'', gamma''' of a curve in any parametrization.
FrenetSample frenetFromDerivatives(double s, const Vec3& d1, const Vec3& d2, const Vec3& d3);
FrenetSample frenetAt(const SpaceCurve& c, double s);
FrenetSample frenetOf(const DarbouxJet& d);

/// Throws undefined_frame when the Frenet frame does not exist.
const FrenetSample& requireFrame(const FrenetSample& f);

/// Angle from (T, N, B) to (T, V, U): V = cos(phi) N + sin(phi) B.
/// Then k_g = kappa cos(phi), k_n = -kappa sin(phi), tau_g = tau + phi'.
double phiAngle(const DarbouxSample& d, const FrenetSample& f);

/// phi along a sample sequence, unwrapped by nearest-angle continuation; NaN where undefined.
std::vector<double> phiSeries(const std::vector<DarbouxSample>& d, const std::vector<FrenetSample>& f);

}  // namespace darboux
