#include <darboux/frames.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace darboux {

namespace {

// alpha, T, V, U packed for the frame integrator.
using FrameState = std::array<Vec3, 4>;

FrameState frame_rate(const FrameState& y, const std::array<double, 3>& k) {
  const auto [kg, kn, tg] = k;
  return {y[1], kg * y[2] + kn * y[3], (-kg) * y[1] + tg * y[3], (-kn) * y[1] + (-tg) * y[2]};
}

FrameState axpy(const FrameState& y, double h, const FrameState& dy) {
  FrameState r;
  for (int i = 0; i < 4; ++i) r[i] = y[i] + h * dy[i];
  return r;
}

constexpr int kFrameSubsteps = 8;

// Classical RK4 on the Darboux equations, sampled at the grid.
std::vector<FrameState> realize_frames(const CurveSource& src, const CurvatureProfile& p, const Grid& g) {
  std::vector<FrameState> out(g.size());
  FrameState y{p.origin, p.T0, p.V0, p.U0};
  out[0] = y;
  const double h = g.step() / kFrameSubsteps;
  for (int k = 0; k + 1 < g.size(); ++k) {
    double s = g.at(k);
    for (int m = 0; m < kFrameSubsteps; ++m) {
      const FrameState k1 = frame_rate(y, src.curvaturesAt(s));
      const FrameState k2 = frame_rate(axpy(y, h / 2, k1), src.curvaturesAt(s + h / 2));
      const FrameState k3 = frame_rate(axpy(y, h / 2, k2), src.curvaturesAt(s + h / 2));
      const FrameState k4 = frame_rate(axpy(y, h, k3), src.curvaturesAt(s + h));
      for (int i = 0; i < 4; ++i) y[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      s += h;
    }
    out[k + 1] = y;
  }
  return out;
}

}  // namespace

std::array<double, 3> CurveSource::curvaturesAt(double s) const {
  if (const auto* c = curve()) {
    const DarbouxJetT<2> d = darbouxJetAt<2>(*c, s);
    return {d.kg.c[0], d.kn.c[0], d.taug.c[0]};
  }
  const CurvatureProfile& p = *profile();
  return {evaluate(p.kg, s), evaluate(p.kn, s), evaluate(p.taug, s)};
}

DarbouxSample toSample(const DarbouxJet& d) {
  DarbouxSample r;
  r.s = d.s;
  r.alpha = value(d.alpha);
  r.T = value(d.T);
  r.V = value(d.V);
  r.U = value(d.U);
  r.kg = d.kg.c[0];
  r.kn = d.kn.c[0];
  r.taug = d.taug.c[0];
  r.dkg = d.kg.derivative(1);
  r.dkn = d.kn.derivative(1);
  r.dtaug = d.taug.derivative(1);
  return r;
}

DarbouxSample darbouxAt(const OrientedSurfaceCurve& c, double s) {
  const DarbouxJetT<3> d = darbouxJetAt<3>(c, s);
  DarbouxSample r;
  r.s = s;
  r.alpha = value(d.alpha);
  r.T = value(d.T);
  r.V = value(d.V);
  r.U = value(d.U);
  r.kg = d.kg.c[0];
  r.kn = d.kn.c[0];
  r.taug = d.taug.c[0];
  r.dkg = d.kg.derivative(1);
  r.dkn = d.kn.derivative(1);
  r.dtaug = d.taug.derivative(1);
  return r;
}

std::vector<DarbouxJet> sampleDarbouxJets(const CurveSource& src, const Grid& g, Exec exec) {
  std::vector<DarbouxJet> out(g.size());
  if (const auto* c = src.curve()) {
    for_each_sample(g.size(), exec, [&](int k) { out[k] = darbouxJetAt<6>(*c, g.at(k)); });
    return out;
  }
  const CurvatureProfile& p = *src.profile();
  const std::vector<FrameState> frames = realize_frames(src, p, g);
  for_each_sample(g.size(), exec, [&](int k) {
    const double s = g.at(k);
    const std::vector<Binding<Jet<4>>> env{{"s", Jet<4>::variable(s)}};
    const auto& f = frames[k];
    out[k] = darbouxJetFromCurvatures<6>(s, f[0], f[1], f[2], f[3], evaluate<Jet<4>>(p.kg, env),
                                         evaluate<Jet<4>>(p.kn, env), evaluate<Jet<4>>(p.taug, env));
  });
  return out;
}

std::vector<DarbouxSample> sampleDarboux(const CurveSource& src, const Grid& g, Exec exec) {
  const std::vector<DarbouxJet> jets = sampleDarbouxJets(src, g, exec);
  std::vector<DarbouxSample> out(jets.size());
  for (std::size_t k = 0; k < jets.size(); ++k) out[k] = toSample(jets[k]);
  return out;
}

FrenetSample frenetFromDerivatives(double s, const Vec3& d1, const Vec3& d2, const Vec3& d3) {
  FrenetSample f;
  f.s = s;
  const double speed = norm(d1);
  if (!(speed > 1e-12)) fail(ErrorKind::zero_speed, "curve has zero speed at s = " + std::to_string(s));
  const Vec3 c = cross(d1, d2);
  const double cn = norm(c);
  f.T = d1 / speed;
  f.kappa = cn / (speed * speed * speed);
  if (f.kappa < kFrenetKappaMin) return f;
  f.B = c / cn;
  f.N = cross(f.B, f.T);
  f.tau = det(d1, d2, d3) / (cn * cn);
  f.frame_defined = true;
  return f;
}

FrenetSample frenetAt(const SpaceCurve& c, double s) {
  const JetVec<3> j = c.jet<3>(s);
  return frenetFromDerivatives(s, derivative(j, 1), derivative(j, 2), derivative(j, 3));
}

FrenetSample frenetOf(const DarbouxJet& d) {
  return frenetFromDerivatives(d.s, derivative(d.alpha, 1), derivative(d.alpha, 2), derivative(d.alpha, 3));
}

const FrenetSample& requireFrame(const FrenetSample& f) {
  if (!f.frame_defined)
    fail(ErrorKind::undefined_frame,
         "Frenet frame undefined at s = " + std::to_string(f.s) + " (kappa = " + std::to_string(f.kappa) + ")");
  return f;
}

double phiAngle(const DarbouxSample& d, const FrenetSample& f) {
  requireFrame(f);
  return std::atan2(dot(d.V, f.B), dot(d.V, f.N));
}

std::vector<double> phiSeries(const std::vector<DarbouxSample>& d, const std::vector<FrenetSample>& f) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> phi(d.size(), std::numeric_limits<double>::quiet_NaN());
  bool have_previous = false;
  double previous = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!f[k].frame_defined) continue;
    double p = phiAngle(d[k], f[k]);
    if (have_previous) p += two_pi * std::round((previous - p) / two_pi);
    phi[k] = p;
    previous = p;
    have_previous = true;
  }
  return phi;
}

}  // namespace darboux
