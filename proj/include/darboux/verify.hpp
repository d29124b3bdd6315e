#pragma once

#include <darboux/associated.hpp>
#include <darboux/classify.hpp>

#include <span>
#include <string>
#include <vector>

namespace darboux {

inline constexpr double kAlignmentTol = 1e-8;
inline constexpr double kBinormalTol = 1e-6;

struct HelixReport {
  ConstancyReport lancret;  // tau_gamma / kappa_gamma
  AxisFit axis;             // fitted to d = (tau T_g + kappa B_g) / sqrt(kappa^2 + tau^2)
  double alignment = 0.0;   // max 1 - |<T_gamma, X>|, X the designated base field
  double binormal = 0.0;    // max 1 - |<B_gamma, unit Darboux field>|
  bool sign_consistent = false;  // <T_gamma, X> keeps its sign
  bool verdict = false;
};

/// The Darboux field whose direction B_gamma follows: D_n, D_r, D_o for HCC, RNS, ICC.
DarbouxKind binormalField(FamilyGroup g);

HelixReport helixReport(const AssociatedCurve& a, double rel_tol = kDefaultRelTol);

/// A fully sampled surface curve with its grid and family constants.
struct Fixture {
  std::string name;
  CurveSource source;
  Grid grid;
  FamilyConstants constants;
};

struct SweepRow {
  std::string fixture;
  Family family;
  bool admissible = false;
  std::string skip_reason;  // error kind when not admissible
  bool base_verdict = false;
  bool helix_verdict = false;

  bool agrees() const { return !admissible || base_verdict == helix_verdict; }
};

struct SweepResult {
  std::vector<SweepRow> rows;

  int disagreements() const;
  /// fixture,family,status,base,helix,agree
  std::string csv() const;
};

/// Base classification against the helix verdict of every family on every fixture.
SweepResult equivalenceSweep(std::span<const Fixture> fixtures, Exec exec = Exec::parallel);

/// Lancret and axis check of a bare polyline with uniform parameter step h,
/// using 7-point differences on interior samples.
struct PolylineReport {
  ConstancyReport lancret;
  AxisFit axis;
  bool verdict = false;
};

PolylineReport polylineHelixCheck(std::span<const Vec3> points, double h, double rel_tol = kDefaultRelTol);

}  // namespace darboux
