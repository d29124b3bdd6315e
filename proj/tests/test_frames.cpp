#include "support.hpp"

#include <gtest/gtest.h>

using namespace darboux;
using namespace testing_support;

namespace {

constexpr double kPi = std::numbers::pi;

void expectTriple(const OrientedSurfaceCurve& c, double kg, double kn, double tg) {
  const auto samples = sampleDarboux(c, longGrid(), Exec::serial);
  double err = 0;
  for (const auto& d : samples)
    err = std::max({err, std::abs(d.kg - kg), std::abs(d.kn - kn), std::abs(d.taug - tg)});
  EXPECT_LE(err, 1e-9);
}

// phi by nearest-branch continuation between neighbouring evaluations.
double unwrapNear(double p, double ref) { return p + 2 * kPi * std::round((ref - p) / (2 * kPi)); }

}  // namespace

TEST(DarbouxAt, CylinderTriple) { expectTriple(cylinderCurve(), 0.0, 0.5, -0.5); }
TEST(DarbouxAt, CylinderTripleAnalyticNormal) { expectTriple(cylinderCurveAnalytic(), 0.0, 0.5, -0.5); }
TEST(DarbouxAt, HelicoidTriple) { expectTriple(helicoidCurve(), -0.5, 0.0, 0.5); }

TEST(DarbouxAt, PlanarLine) {
  const OrientedSurfaceCurve line{SpaceCurve::parse("s", "0", "0"), AnalyticNormal{SpaceCurve::parse("0", "0", "1")}};
  const DarbouxSample d = darbouxAt(line, 2.0);
  EXPECT_EQ(d.kg, 0.0);
  EXPECT_EQ(d.kn, 0.0);
  EXPECT_EQ(d.taug, 0.0);
}

TEST(DarbouxAt, FrameIsOrthonormalRightHanded) {
  const DarbouxSample d = darbouxAt(helicoidCurve(), 1.3);
  EXPECT_NEAR(norm(d.T), 1, 1e-12);
  EXPECT_NEAR(norm(d.V), 1, 1e-12);
  EXPECT_NEAR(norm(d.U), 1, 1e-12);
  EXPECT_NEAR(dot(d.T, d.V), 0, 1e-12);
  EXPECT_NEAR(dot(d.T, d.U), 0, 1e-12);
  EXPECT_LE(norm(d.V - cross(d.U, d.T)), 1e-12);
}

TEST(DarbouxAt, RejectsUnvalidatedCurve) {
  const OrientedSurfaceCurve c{SpaceCurve::parse("s", "s", "0"), AnalyticNormal{SpaceCurve::parse("0", "0", "1")}};
  try {
    darbouxAt(c, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation);
  }
}

TEST(FrenetAt, Circle) {
  const FrenetSample f = frenetAt(SpaceCurve::parse("cos(s)", "sin(s)", "0"), 0.7);
  EXPECT_NEAR(f.kappa, 1.0, 1e-14);
  EXPECT_NEAR(f.tau, 0.0, 1e-14);
  EXPECT_LE(norm(f.B - Vec3{0, 0, 1}), 1e-14);
}

TEST(FrenetAt, CylinderHelix) {
  // det formula by hand: alpha' x alpha'' has length 1/4, det(alpha', alpha'', alpha''') = -1/32.
  for (double s : {0.0, 1.0, 10.0}) {
    const FrenetSample f = frenetAt(cylinderCurve().alpha, s);
    EXPECT_NEAR(f.kappa, 0.5, 1e-14);
    EXPECT_NEAR(f.tau, -0.5, 1e-14);
    EXPECT_NEAR(det(f.T, f.N, f.B), 1.0, 1e-12);
  }
}

TEST(FrenetAt, LineHasNoFrame) {
  const FrenetSample f = frenetAt(SpaceCurve::parse("s", "2*s", "0"), 1.0);
  EXPECT_EQ(f.kappa, 0.0);
  EXPECT_FALSE(f.frame_defined);
  try {
    requireFrame(f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::undefined_frame);
  }
}

TEST(FrenetAt, ZeroSpeed) {
  try {
    frenetAt(SpaceCurve::parse("s^2", "0", "0"), 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::zero_speed);
  }
}

TEST(PhiAngle, Cylinder) {
  // V = -N there, and B = U x V ... so phi is a quarter turn; the sign follows
  // the rotation-matrix convention V = cos(phi) N + sin(phi) B.
  const DarbouxSample d = darbouxAt(cylinderCurve(), 2.0);
  const FrenetSample f = frenetAt(cylinderCurve().alpha, 2.0);
  const double phi = phiAngle(d, f);
  EXPECT_NEAR(phi, -kPi / 2, 1e-12);
  EXPECT_NEAR(d.kg, f.kappa * std::cos(phi), 1e-12);
  EXPECT_NEAR(d.kn, -f.kappa * std::sin(phi), 1e-12);
}

TEST(PhiAngle, Helicoid) {
  const DarbouxSample d = darbouxAt(helicoidCurve(), 2.0);
  const FrenetSample f = frenetAt(helicoidCurve().alpha, 2.0);
  EXPECT_NEAR(std::abs(phiAngle(d, f)), kPi, 1e-12);
  EXPECT_NEAR(d.kg, -f.kappa, 1e-12);
}

TEST(PhiAngle, PlaneCircleNormalIsV) {
  const DarbouxSample d = darbouxAt(planeCircle(), 0.4);
  const FrenetSample f = frenetAt(planeCircle().alpha, 0.4);
  EXPECT_NEAR(phiAngle(d, f), 0.0, 1e-14);
}

TEST(PhiSeries, UnwrapsAcrossBranchCut) {
  // Helicoid phi sits at +-pi, the atan2 branch cut; the series must stay continuous.
  const Grid g(0, 10, 201);
  const auto d = sampleDarboux(helicoidCurve(), g, Exec::serial);
  std::vector<FrenetSample> f;
  for (const auto& x : d) f.push_back(frenetAt(helicoidCurve().alpha, x.s));
  const auto phi = phiSeries(d, f);
  for (std::size_t k = 1; k < phi.size(); ++k) EXPECT_LT(std::abs(phi[k] - phi[k - 1]), 1e-6);
}

TEST(Sampling, CurvatureProfileStream) {
  const Grid g(0.0, 1.0, 101);
  const auto d = sampleDarboux(stream("1", "1", "s"), g, Exec::serial);
  for (const auto& x : d) {
    EXPECT_NEAR(x.kg, 1.0, 1e-14);
    EXPECT_NEAR(x.taug, x.s, 1e-14);
    EXPECT_NEAR(x.dtaug, 1.0, 1e-14);
  }
  // Frame realized by integrating the Darboux equations stays orthonormal.
  EXPECT_NEAR(dot(d.back().T, d.back().V), 0.0, 1e-10);
  EXPECT_NEAR(norm(d.back().U), 1.0, 1e-10);
}

class FramesProperty : public ::testing::Test {
protected:
  static constexpr int kCases = 200;

  template <class F>
  void forEachCase(F&& check) {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> S(0.5, 3.0);
    for (int i = 0; i < kCases; ++i) {
      const OrientedSurfaceCurve c = randomCylinderCurve(rng, i % 2 == 0);
      check(c, S(rng), i);
    }
  }
};

TEST_F(FramesProperty, DarbouxEquationResiduals) {
  const double h = 1e-3;
  forEachCase([&](const OrientedSurfaceCurve& c, double s, int i) {
    const DarbouxSample d = darbouxAt(c, s);
    // T' straight from alpha'' (jets of alpha alone); V', U' by 5-point differences of sampled frames.
    const Vec3 dT = curvePoint(c.alpha, s, 2)[2];
    auto frameAt = [&](double x) { return darbouxAt(c, x); };
    const DarbouxSample m2 = frameAt(s - 2 * h), m1 = frameAt(s - h), p1 = frameAt(s + h), p2 = frameAt(s + 2 * h);
    const Vec3 dV = (m2.V - 8.0 * m1.V + 8.0 * p1.V - p2.V) / (12 * h);
    const Vec3 dU = (m2.U - 8.0 * m1.U + 8.0 * p1.U - p2.U) / (12 * h);
    EXPECT_LE(norm(dT - (d.kg * d.V + d.kn * d.U)), 1e-8) << "case " << i;
    EXPECT_LE(norm(dV - (-d.kg * d.T + d.taug * d.U)), 1e-8) << "case " << i;
    EXPECT_LE(norm(dU - (-d.kn * d.T - d.taug * d.V)), 1e-8) << "case " << i;
  });
}

TEST_F(FramesProperty, CurvatureSplit) {
  forEachCase([&](const OrientedSurfaceCurve& c, double s, int i) {
    const DarbouxSample d = darbouxAt(c, s);
    const FrenetSample f = frenetAt(c.alpha, s);
    ASSERT_GT(f.kappa, 1e-9);
    const double k2 = f.kappa * f.kappa;
    EXPECT_LE(std::abs(k2 - (d.kg * d.kg + d.kn * d.kn)), 1e-9 * k2) << "case " << i;
    const double phi = phiAngle(d, f);
    EXPECT_NEAR(d.kg, f.kappa * std::cos(phi), 1e-8) << "case " << i;
    EXPECT_NEAR(d.kn, -f.kappa * std::sin(phi), 1e-8) << "case " << i;
  });
}

TEST_F(FramesProperty, GeodesicTorsionSplit) {
  const double h = 1e-3;
  forEachCase([&](const OrientedSurfaceCurve& c, double s, int i) {
    auto phiAt = [&](double x) { return phiAngle(darbouxAt(c, x), frenetAt(c.alpha, x)); };
    const double p0 = phiAt(s);
    const double m2 = unwrapNear(phiAt(s - 2 * h), p0), m1 = unwrapNear(phiAt(s - h), p0);
    const double p1 = unwrapNear(phiAt(s + h), p0), p2 = unwrapNear(phiAt(s + 2 * h), p0);
    const double dphi = (m2 - 8 * m1 + 8 * p1 - p2) / (12 * h);
    EXPECT_NEAR(darbouxAt(c, s).taug, frenetAt(c.alpha, s).tau + dphi, 1e-6) << "case " << i;
  });
}

TEST_F(FramesProperty, CurvatureDerivativesMatchDifferences) {
  const double h = 1e-3;
  forEachCase([&](const OrientedSurfaceCurve& c, double s, int i) {
    const DarbouxSample d = darbouxAt(c, s);
    const DarbouxSample m2 = darbouxAt(c, s - 2 * h), m1 = darbouxAt(c, s - h);
    const DarbouxSample p1 = darbouxAt(c, s + h), p2 = darbouxAt(c, s + 2 * h);
    auto fd = [&](double DarbouxSample::*m) { return (m2.*m - 8 * (m1.*m) + 8 * (p1.*m) - p2.*m) / (12 * h); };
    EXPECT_LE(std::abs(d.dkg - fd(&DarbouxSample::kg)), 1e-6 * std::max(1.0, std::abs(d.dkg))) << "case " << i;
    EXPECT_LE(std::abs(d.dkn - fd(&DarbouxSample::kn)), 1e-6 * std::max(1.0, std::abs(d.dkn))) << "case " << i;
    EXPECT_LE(std::abs(d.dtaug - fd(&DarbouxSample::taug)), 1e-6 * std::max(1.0, std::abs(d.dtaug))) << "case " << i;
  });
}

TEST(FramesParallel, MatchesSerialBitwise) {
  std::mt19937 rng(3);
  for (int i = 0; i < 4; ++i) {
    const OrientedSurfaceCurve c = randomCylinderCurve(rng, i % 2 == 0);
    const Grid g(0.0, 3.0, 501);
    const auto a = sampleDarboux(c, g, Exec::serial);
    const auto b = sampleDarboux(c, g, Exec::parallel);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].kg, b[k].kg);
      EXPECT_EQ(a[k].kn, b[k].kn);
      EXPECT_EQ(a[k].taug, b[k].taug);
      EXPECT_EQ(a[k].dtaug, b[k].dtaug);
      EXPECT_EQ(a[k].U.x, b[k].U.x);
    }
  }
}
