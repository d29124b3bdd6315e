#pragma once

#include <darboux/frames.hpp>

#include <array>
#include <span>
#include <string>
#include <vector>

namespace darboux {

enum class Family { hcc1, hcc2, hcc3, rns1, rns2, rns3, icc1, icc2, icc3 };

/// Which base-frame field the tangent of gamma follows.
enum class FamilyGroup { hcc, rns, icc };

inline constexpr std::array<Family, 9> kAllFamilies{Family::hcc1, Family::hcc2, Family::hcc3,
                                                    Family::rns1, Family::rns2, Family::rns3,
                                                    Family::icc1, Family::icc2, Family::icc3};

const char* to_string(Family f);
const char* to_string(FamilyGroup g);
/// "hcc1".."icc3" (case-insensitive); config error otherwise.
Family parseFamily(const std::string& name);
FamilyGroup groupOf(Family f);
/// 0, 1, 2 for T, V, U: the frame component of gamma' that must not vanish.
int designatedComponent(Family f);
/// Constants any case of the family may read.
std::vector<std::string> requiredConstants(Family f);
/// Copy of k with every missing required constant set to 1.
FamilyConstants withDefaults(Family f, FamilyConstants k);

using CoefJet = Jet<3>;

struct CoefficientTrack {
  std::vector<double> s;
  std::array<std::vector<double>, 3> y;
  std::vector<std::array<CoefJet, 3>> jets;  // y1..y3 with derivatives to order 3
  std::string case_tag;
  FamilyConstants constants;
};

/// Closed-form coefficients on the sampled base data. No regularity check.
CoefficientTrack solveCoefficients(Family f, std::span<const DarbouxJet> base, const FamilyConstants& k,
                                   const Grid& g, Exec exec = Exec::parallel);

struct AssociatedCurve {
  Family family;
  Grid grid;
  std::vector<DarbouxSample> base;
  CoefficientTrack track;
  std::vector<JetVec<3>> gamma;
  /// gamma' in the base frame: (R1, R2, R3) per sample.
  std::vector<Vec3> r;

  Vec3 point(std::size_t k) const { return value(gamma[k]); }
  std::vector<Vec3> points() const;
};

/// Regularity bound for the designated component of gamma'.
inline constexpr double kRegularityMin = 1e-9;

AssociatedCurve construct(Family f, const CurveSource& src, const FamilyConstants& k, const Grid& g,
                          Exec exec = Exec::parallel);
AssociatedCurve construct(Family f, std::span<const DarbouxJet> base, const FamilyConstants& k, const Grid& g,
                          Exec exec = Exec::parallel);

struct OdeResidual {
  std::array<double, 2> equality{};  // max |.| of the two equality constraints
  double min_inequality = 0.0;       // min |.| of the designated expression
};

/// Residuals of the family's system with y' from 5-point differences.
OdeResidual odeResidual(Family f, const CoefficientTrack& t, std::span<const DarbouxSample> base, const Grid& g);
OdeResidual odeResidual(const AssociatedCurve& a);

/// Independent track: RK4 (step h/4) on the family's linear system from the
/// closed-form initial values; algebraic cases use finite-difference derivatives.
CoefficientTrack rk4Oracle(Family f, const CurveSource& src, const FamilyConstants& k, const Grid& g);

}  // namespace darboux
