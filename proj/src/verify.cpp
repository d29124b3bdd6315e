#include <darboux/quadrature.hpp>
#include <darboux/verify.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace darboux {

DarbouxKind binormalField(FamilyGroup g) {
  switch (g) {
    case FamilyGroup::hcc: return DarbouxKind::normal;
    case FamilyGroup::rns: return DarbouxKind::rectifying;
    case FamilyGroup::icc: return DarbouxKind::osculating;
  }
  return DarbouxKind::normal;
}

namespace {

Vec3 frenetDarbouxDirection(const FrenetSample& f) {
  return (f.tau * f.T + f.kappa * f.B) / std::sqrt(f.kappa * f.kappa + f.tau * f.tau);
}

// Axis fit with the sign fixed by the first tangent instead of the mean.
AxisFit orientedAxis(std::span<const Vec3> d, const Vec3& t0) {
  AxisFit axis = fitAxis(d);
  if (dot(t0, axis.zeta) < 0.0) {
    axis.zeta = -1.0 * axis.zeta;
    axis.cos_angle_mean = -axis.cos_angle_mean;
  }
  return axis;
}

std::vector<FrenetSample> checkedFrenet(std::vector<FrenetSample> f) {
  for (const auto& x : f)
    if (!(x.kappa >= kZeroCurvature) || !x.frame_defined)
      fail(ErrorKind::curvature_vanishes, "associated curve has vanishing curvature at s = " + std::to_string(x.s));
  return f;
}

}  // namespace

HelixReport helixReport(const AssociatedCurve& a, double rel_tol) {
  const std::size_t n = a.gamma.size();
  std::vector<FrenetSample> frenet(n);
  for (std::size_t k = 0; k < n; ++k)
    frenet[k] = frenetFromDerivatives(a.grid.at(static_cast<int>(k)), derivative(a.gamma[k], 1),
                                      derivative(a.gamma[k], 2), derivative(a.gamma[k], 3));
  frenet = checkedFrenet(std::move(frenet));

  HelixReport r;
  r.lancret = lancretTest(frenet, rel_tol);

  std::vector<Vec3> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = frenetDarbouxDirection(frenet[k]);
  r.axis = orientedAxis(d, frenet[0].T);

  const int c = designatedComponent(a.family);
  const DarbouxField field = darbouxField(a.base, binormalField(groupOf(a.family)));
  r.sign_consistent = true;
  double first_sign = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const DarbouxSample& b = a.base[k];
    const Vec3& X = c == 0 ? b.T : (c == 1 ? b.V : b.U);
    const double t = dot(frenet[k].T, X);
    r.alignment = std::max(r.alignment, 1.0 - std::abs(t));
    r.binormal = std::max(r.binormal, 1.0 - std::abs(dot(frenet[k].B, field.unit[k])));
    if (k == 0) first_sign = t;
    else if ((t > 0) != (first_sign > 0)) r.sign_consistent = false;
  }
  r.verdict = r.lancret.verdict && r.alignment <= kAlignmentTol && r.binormal <= kBinormalTol;
  return r;
}

int SweepResult::disagreements() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return !r.agrees(); }));
}

std::string SweepResult::csv() const {
  std::ostringstream out;
  out << "fixture,family,status,base,helix,agree\n";
  auto b = [](bool v) { return v ? "true" : "false"; };
  for (const auto& r : rows) {
    out << r.fixture << ',' << to_string(r.family) << ',';
    if (r.admissible)
      out << "constructed," << b(r.base_verdict) << ',' << b(r.helix_verdict) << ',' << b(r.agrees()) << '\n';
    else
      out << "skipped:" << r.skip_reason << ",,," << b(true) << '\n';
  }
  return out.str();
}

SweepResult equivalenceSweep(std::span<const Fixture> fixtures, Exec exec) {
  SweepResult result;
  for (const Fixture& fx : fixtures) {
    const std::vector<DarbouxJet> jets = sampleDarbouxJets(fx.source, fx.grid, exec);
    const BaseClassification base = classifyBase(jets);
    for (Family f : kAllFamilies) {
      SweepRow row;
      row.fixture = fx.name;
      row.family = f;
      switch (groupOf(f)) {
        case FamilyGroup::hcc: row.base_verdict = base.helical.verdict; break;
        case FamilyGroup::rns: row.base_verdict = base.normal_slant.verdict; break;
        case FamilyGroup::icc: row.base_verdict = base.isophote.verdict; break;
      }
      try {
        const AssociatedCurve a = construct(f, jets, withDefaults(f, fx.constants), fx.grid, exec);
        row.helix_verdict = helixReport(a).verdict;
        row.admissible = true;
      } catch (const Error& e) {
        switch (e.kind()) {
          case ErrorKind::case_ambiguity:
          case ErrorKind::divisor_too_small:
          case ErrorKind::regularity_violation:
          case ErrorKind::curvature_vanishes:
          case ErrorKind::vanishing_field:
            row.skip_reason = to_string(e.kind());
            break;
          default: throw;
        }
      }
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

PolylineReport polylineHelixCheck(std::span<const Vec3> points, double h, double rel_tol) {
  constexpr int kHalf = 5;  // 11-point stencils: third derivative is O(h^8)
  // Resample to every other vertex. Exported tracks come from a cumulative rule whose
  // odd and even nodes carry different error terms; the third derivative would amplify
  // that parity ripple far above the truncation error.
  const int n = static_cast<int>((points.size() + 1) / 2);
  if (n < 2 * kHalf + 2) fail(ErrorKind::domain, "polyline check needs at least 23 points");
  h *= 2.0;
  std::array<std::vector<double>, 3> coord;
  for (auto& c : coord) c.resize(n);
  for (int k = 0; k < n; ++k) {
    coord[0][k] = points[2 * k].x;
    coord[1][k] = points[2 * k].y;
    coord[2][k] = points[2 * k].z;
  }
  std::vector<FrenetSample> frenet;
  for (int k = kHalf; k + kHalf < n; ++k) {
    const CentralDerivatives x = centralStencil(coord[0], k, h, kHalf), y = centralStencil(coord[1], k, h, kHalf),
                             z = centralStencil(coord[2], k, h, kHalf);
    frenet.push_back(frenetFromDerivatives(k * h, {x.d1, y.d1, z.d1}, {x.d2, y.d2, z.d2}, {x.d3, y.d3, z.d3}));
  }
  frenet = checkedFrenet(std::move(frenet));
  PolylineReport r;
  r.lancret = lancretTest(frenet, rel_tol);
  std::vector<Vec3> d(frenet.size());
  for (std::size_t k = 0; k < frenet.size(); ++k) d[k] = frenetDarbouxDirection(frenet[k]);
  r.axis = orientedAxis(d, frenet[0].T);
  r.verdict = r.lancret.verdict && r.axis.angle_std <= kDefaultAxisTol;
  return r;
}

}  // namespace darboux
