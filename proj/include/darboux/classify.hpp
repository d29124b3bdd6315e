#pragma once

#include <darboux/frames.hpp>

#include <span>
#include <string>
#include <vector>

namespace darboux {

inline constexpr double kDefaultRelTol = 1e-6;
/// "Identically zero" threshold for curvatures (max over the grid).
inline constexpr double kZeroCurvature = 1e-9;
inline constexpr double kDefaultAxisTol = 1e-6;

/// Constancy of a sampled function:
/// verdict = stddev <= relTol max(1, |mean|) and maxAbsDev <= 10 relTol max(1, |mean|).
struct ConstancyReport {
  std::vector<double> values;
  double mean = 0.0;
  double stddev = 0.0;
  double max_abs_dev = 0.0;
  double rel_tol = kDefaultRelTol;
  bool verdict = false;

  /// stddev / |mean|, or stddev itself when |mean| <= 1e-9.
  double relative_stddev() const;
};

ConstancyReport constancy(std::span<const double> f, double rel_tol = kDefaultRelTol);

struct PointwisePredicates {
  bool is_geodesic = false;
  bool is_asymptotic = false;
  bool is_principal_line = false;
  double max_abs_kg = 0.0, max_abs_kn = 0.0, max_abs_taug = 0.0;
};

PointwisePredicates pointwisePredicates(std::span<const DarbouxSample> samples);

/// tau/kappa on a grid; curvature_vanishes if kappa <= 1e-9 anywhere.
ConstancyReport lancretTest(const SpaceCurve& c, const Grid& g, double rel_tol = kDefaultRelTol);
ConstancyReport lancretTest(std::span<const FrenetSample> frenet, double rel_tol = kDefaultRelTol);

/// f = (tau_g' k_g - k_g' tau_g - k_n (k_g^2 + tau_g^2)) / (k_g^2 + tau_g^2)^(3/2).
double normalSlantInvariant(const DarbouxSample& d);
ConstancyReport relativelyNormalSlantHelixTest(std::span<const DarbouxSample> samples,
                                               double rel_tol = kDefaultRelTol);

/// cot(sigma), + branch: k_n^2 / (k_n^2 + tau_g^2)^(3/2) (tau_g/k_n)' + k_g / (k_n^2 + tau_g^2)^(1/2).
double isophoteInvariant(const DarbouxSample& d);
ConstancyReport isophoteTest(std::span<const DarbouxSample> samples, double rel_tol = kDefaultRelTol);

enum class DarbouxKind { osculating, normal, rectifying };
const char* to_string(DarbouxKind kind);

/// D_o = tau_g T - k_n V,  D_n = -k_n V + k_g U,  D_r = tau_g T + k_g U.
Vec3 darbouxVector(const DarbouxSample& d, DarbouxKind kind);

struct DarbouxField {
  DarbouxKind kind;
  std::vector<Vec3> raw;
  std::vector<Vec3> unit;
};

DarbouxField darbouxField(std::span<const DarbouxSample> samples, DarbouxKind kind);

struct AxisFit {
  Vec3 zeta;
  double cos_angle_mean = 0.0;
  double angle_std = 0.0;
  bool low_confidence = false;

  double rho() const;
};

/// Direction along which <dir, zeta> varies least (smallest-eigenvalue
/// eigenvector of the direction covariance); sign makes cos_angle_mean >= 0.
AxisFit fitAxis(std::span<const Vec3> dirs);

struct SlantHelixVerdict {
  AxisFit axis;
  bool verdict = false;
};

SlantHelixVerdict darbouxSlantHelixTest(std::span<const DarbouxSample> samples, DarbouxKind kind,
                                        double angle_tol = kDefaultAxisTol);

/// One base-curve property: decided by its invariant when the hypothesis
/// holds, otherwise by fitting a fixed direction to the defining field.
struct PropertyVerdict {
  bool verdict = false;
  std::string method;  // "lancret", "invariant", or "axis-fit"
  double invariant_mean = 0.0;
  AxisFit axis;        // fitted against T, V or U
};

struct BaseClassification {
  PointwisePredicates pointwise;
  PropertyVerdict helical;   // T at constant angle
  PropertyVerdict normal_slant;  // V at constant angle
  PropertyVerdict isophote;  // U at constant angle
};

BaseClassification classifyBase(std::span<const DarbouxJet> jets, double rel_tol = kDefaultRelTol,
                                double axis_tol = kDefaultAxisTol);

}  // namespace darboux
