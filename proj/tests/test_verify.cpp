#include "support.hpp"

#include <gtest/gtest.h>

#include <optional>

using namespace darboux;
using namespace testing_support;

namespace {

const std::vector<Fixture>& suite() {
  static const std::vector<Fixture> s = fixtureSuite();
  return s;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : suite())
    if (f.name == name) return f;
  throw std::runtime_error("no fixture " + name);
}

AssociatedCurve build(Family f, const std::string& name) {
  const Fixture& fx = fixture(name);
  return construct(f, fx.source, withDefaults(f, fx.constants), fx.grid);
}

std::optional<AssociatedCurve> tryBuild(Family f, const Fixture& fx) {
  try {
    return construct(f, fx.source, withDefaults(f, fx.constants), fx.grid);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::case_ambiguity || e.kind() == ErrorKind::divisor_too_small ||
        e.kind() == ErrorKind::regularity_violation)
      return std::nullopt;
    throw;
  }
}

// Tangent of gamma from its exact derivative.
std::vector<Vec3> tangents(const AssociatedCurve& a) {
  std::vector<Vec3> t;
  for (const auto& g : a.gamma) t.push_back(normalized(derivative(g, 1)));
  return t;
}

}  // namespace

TEST(HelixReportTest, Hcc1OnCylinder) {
  const AssociatedCurve a = build(Family::hcc1, "cylinder-geodesic");
  const HelixReport r = helixReport(a);
  EXPECT_TRUE(r.verdict);
  EXPECT_LT(r.alignment, 1e-10);
  EXPECT_LE(norm(r.axis.zeta - Vec3{0, 0, 1}), 1e-8);
  // Oracle: fitting T_gamma directly recovers the same axis.
  const std::vector<Vec3> t = tangents(a);
  const AxisFit direct = fitAxis(t);
  EXPECT_NEAR(std::abs(dot(direct.zeta, r.axis.zeta)), 1.0, 1e-10);
}

TEST(HelixReportTest, Icc1OnCylinderFollowsNormal) {
  const AssociatedCurve a = build(Family::icc1, "cylinder-geodesic");
  const HelixReport r = helixReport(a);
  EXPECT_TRUE(r.verdict);
  const std::vector<Vec3> t = tangents(a);
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(std::abs(dot(t[k], a.base[k].U)), 1.0, 1e-8);

  // Cross-check against gamma rebuilt from the RK4 track.
  const Fixture& fx = fixture("cylinder-geodesic");
  const CoefficientTrack o = rk4Oracle(Family::icc1, fx.source, withDefaults(Family::icc1, fx.constants), fx.grid);
  std::vector<Vec3> rebuilt;
  for (std::size_t k = 0; k < a.base.size(); ++k) {
    const DarbouxSample& d = a.base[k];
    rebuilt.push_back(d.alpha + o.y[0][k] * d.T + o.y[1][k] * d.V + o.y[2][k] * d.U);
  }
  EXPECT_LE(maxDist(rebuilt, a.points()), 1e-6);
  const PolylineReport p = polylineHelixCheck(rebuilt, fx.grid.step());
  EXPECT_TRUE(p.verdict);
}

TEST(HelixReportTest, ControlCurveIsNotAHelix) {
  const AssociatedCurve a = build(Family::hcc1, "twisted-cubic-control");
  const HelixReport r = helixReport(a);
  EXPECT_FALSE(r.verdict);
  EXPECT_FALSE(r.lancret.verdict);
  EXPECT_LT(r.alignment, 1e-8);  // still T-aligned: the helix property is what fails
}

TEST(HelixReportTest, PropertiesOfEveryConstructedCurve) {
  int checked = 0;
  for (const Fixture& fx : suite())
    for (Family f : kAllFamilies) {
      const auto a = tryBuild(f, fx);
      if (!a) continue;
      HelixReport r;
      try {
        r = helixReport(*a);
      } catch (const Error& e) {
        ASSERT_EQ(e.kind(), ErrorKind::curvature_vanishes) << fx.name << " " << to_string(f);
        continue;
      }
      ++checked;
      const std::string where = fx.name + " " + to_string(f);
      EXPECT_TRUE(r.sign_consistent) << where;
      if (!r.verdict) continue;
      if (std::abs(r.lancret.mean) > 1e-9)
        EXPECT_LE(r.lancret.stddev / std::abs(r.lancret.mean), 1e-6) << where;
      else
        EXPECT_LE(r.lancret.stddev, 1e-9) << where;
      EXPECT_LE(r.axis.angle_std, 1e-6) << where;
      const std::vector<Vec3> t = tangents(*a);
      double lo = 2, hi = -2;
      for (const auto& x : t) {
        lo = std::min(lo, dot(x, r.axis.zeta));
        hi = std::max(hi, dot(x, r.axis.zeta));
      }
      EXPECT_LE(hi - lo, 1e-8) << where;
      EXPECT_GE(dot(t.front(), r.axis.zeta), 0.0) << where;
    }
  EXPECT_GE(checked, 30);
}

TEST(HelixReportTest, BinormalFieldPerGroup) {
  EXPECT_EQ(binormalField(FamilyGroup::hcc), DarbouxKind::normal);
  EXPECT_EQ(binormalField(FamilyGroup::rns), DarbouxKind::rectifying);
  EXPECT_EQ(binormalField(FamilyGroup::icc), DarbouxKind::osculating);
}

TEST(Sweep, NoDisagreementsOnFixtureSuite) {
  const SweepResult r = equivalenceSweep(suite());
  EXPECT_EQ(r.disagreements(), 0) << r.csv();
  EXPECT_EQ(r.rows.size(), suite().size() * kAllFamilies.size());
}

TEST(Sweep, BuiltinHelicesAgreeOnEveryGroup) {
  const std::vector<Fixture> two{fixture("cylinder-geodesic"), fixture("helicoid-asymptotic")};
  const SweepResult r = equivalenceSweep(two);
  for (const std::string name : {"cylinder-geodesic", "helicoid-asymptotic"})
    for (FamilyGroup g : {FamilyGroup::hcc, FamilyGroup::rns, FamilyGroup::icc}) {
      int agreeing = 0;
      for (const auto& row : r.rows)
        if (row.fixture == name && groupOf(row.family) == g && row.admissible) {
          EXPECT_TRUE(row.base_verdict) << name << " " << to_string(row.family);
          EXPECT_TRUE(row.helix_verdict) << name << " " << to_string(row.family);
          ++agreeing;
        }
      EXPECT_GE(agreeing, 1) << name << " " << to_string(g);
    }
}

TEST(Sweep, ControlRowIsNegative) {
  const std::vector<Fixture> one{fixture("twisted-cubic-control")};
  const SweepResult r = equivalenceSweep(one);
  const auto row = std::find_if(r.rows.begin(), r.rows.end(), [](const SweepRow& x) { return x.family == Family::hcc1; });
  ASSERT_NE(row, r.rows.end());
  EXPECT_TRUE(row->admissible);
  EXPECT_FALSE(row->base_verdict);
  EXPECT_FALSE(row->helix_verdict);
}

TEST(Sweep, CsvLayout) {
  const std::vector<Fixture> one{fixture("cylinder-geodesic")};
  const std::string csv = equivalenceSweep(one).csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "fixture,family,status,base,helix,agree");
  EXPECT_NE(csv.find("cylinder-geodesic,hcc1,constructed,true,true,true"), std::string::npos);
  EXPECT_NE(csv.find("cylinder-geodesic,hcc2,skipped:divisor too small"), std::string::npos) << csv;
}

TEST(Polyline, HelixAndControl) {
  const AssociatedCurve a = build(Family::rns2, "cylinder-geodesic");
  EXPECT_TRUE(polylineHelixCheck(a.points(), a.grid.step()).verdict);
  const AssociatedCurve c = build(Family::hcc1, "twisted-cubic-control");
  EXPECT_FALSE(polylineHelixCheck(c.points(), c.grid.step()).verdict);
  EXPECT_THROW(polylineHelixCheck(std::vector<Vec3>(21, Vec3{}), 0.1), Error);
}

TEST(Polyline, ExportRoundTripKeepsVerdict) {
  for (const char* name : {"cylinder-geodesic", "helicoid-asymptotic", "plane-circle", "twisted-cubic-control"}) {
    const SceneConfig cfg = builtinScene(name);
    for (Family f : cfg.families) {
      const AssociatedCurve a = construct(f, cfg.source, withDefaults(f, cfg.constants), cfg.grid.grid());
      const bool verdict = helixReport(a).verdict;
      const std::vector<Vec3> obj = readObjPolyline(polylineObj(to_string(f), a.points()));
      const std::vector<Vec3> csv = readAssociatedCsv(associatedCsv(a));
      EXPECT_EQ(maxDist(obj, a.points()), 0.0) << name;
      EXPECT_EQ(maxDist(csv, a.points()), 0.0) << name;
      EXPECT_EQ(polylineHelixCheck(obj, a.grid.step()).verdict, verdict) << name << " " << to_string(f);
    }
  }
}
