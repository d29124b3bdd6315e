#include <darboux/associated.hpp>
#include <darboux/classify.hpp>
#include <darboux/quadrature.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

namespace darboux {

const char* to_string(Family f) {
  switch (f) {
    case Family::hcc1: return "hcc1";
    case Family::hcc2: return "hcc2";
    case Family::hcc3: return "hcc3";
    case Family::rns1: return "rns1";
    case Family::rns2: return "rns2";
    case Family::rns3: return "rns3";
    case Family::icc1: return "icc1";
    case Family::icc2: return "icc2";
    case Family::icc3: return "icc3";
  }
  return "?";
}

const char* to_string(FamilyGroup g) {
  switch (g) {
    case FamilyGroup::hcc: return "hcc";
    case FamilyGroup::rns: return "rns";
    case FamilyGroup::icc: return "icc";
  }
  return "?";
}

Family parseFamily(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Family f : kAllFamilies)
    if (lower == to_string(f)) return f;
  fail(ErrorKind::config, "unknown family '" + name + "' (expected hcc1..hcc3, rns1..rns3, icc1..icc3)");
}

FamilyGroup groupOf(Family f) {
  switch (f) {
    case Family::hcc1:
    case Family::hcc2:
    case Family::hcc3: return FamilyGroup::hcc;
    case Family::rns1:
    case Family::rns2:
    case Family::rns3: return FamilyGroup::rns;
    default: return FamilyGroup::icc;
  }
}

int designatedComponent(Family f) { return static_cast<int>(groupOf(f)); }

std::vector<std::string> requiredConstants(Family f) {
  switch (f) {
    case Family::hcc1: return {};
    case Family::hcc2: return {"c1"};
    case Family::hcc3: return {"c2"};
    case Family::rns1: return {"c3"};
    case Family::rns2: return {"c4", "c5", "c6", "c7"};
    case Family::rns3: return {"c8_rns3"};
    case Family::icc1: return {"c8_icc1"};
    case Family::icc2: return {"c9"};
    case Family::icc3: return {"c10", "c11", "c12", "c13"};
  }
  return {};
}

FamilyConstants withDefaults(Family f, FamilyConstants k) {
  for (const auto& name : requiredConstants(f))
    if (!k.contains(name)) k.set(name, 1.0);
  return k;
}

std::vector<Vec3> AssociatedCurve::points() const {
  std::vector<Vec3> p(gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) p[k] = value(gamma[k]);
  return p;
}

namespace {

using Series = std::vector<CoefJet>;

struct BaseSeries {
  Series kg, kn, tg, dkg, dkn, dtg, s;  // s is the anchored variable s - s0
};

BaseSeries split(std::span<const DarbouxJet> base, const Grid& g) {
  BaseSeries b;
  const std::size_t n = base.size();
  for (Series* v : {&b.kg, &b.kn, &b.tg, &b.dkg, &b.dkn, &b.dtg, &b.s}) v->resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const DarbouxJet& d = base[k];
    b.kg[k] = truncate<3>(d.kg);
    b.kn[k] = truncate<3>(d.kn);
    b.tg[k] = truncate<3>(d.taug);
    b.dkg[k] = derivative(d.kg);
    b.dkn[k] = derivative(d.kn);
    b.dtg[k] = derivative(d.taug);
    b.s[k] = CoefJet::variable(d.s) - g.s0();
  }
  return b;
}

std::pair<double, double> absRange(const Series& x) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& v : x) {
    lo = std::min(lo, std::abs(v.c[0]));
    hi = std::max(hi, std::abs(v.c[0]));
  }
  return {lo, hi};
}

/// True when x is identically zero on the grid, false when it never vanishes.
bool identicallyZero(const char* name, const Series& x) {
  const auto [lo, hi] = absRange(x);
  if (hi <= kZeroCurvature) return true;
  if (lo >= kZeroCurvature) return false;
  fail(ErrorKind::case_ambiguity, std::string(name) + " is neither identically zero nor nonvanishing on the grid (min |" +
                                      name + "| = " + std::to_string(lo) + ", max = " + std::to_string(hi) + ")");
}

void requireDivisor(const char* name, const Series& x) {
  const auto [lo, hi] = absRange(x);
  (void)hi;
  if (lo < kZeroCurvature)
    fail(ErrorKind::divisor_too_small,
         std::string(name) + " is too small to divide by (min |" + name + "| = " + std::to_string(lo) + ")");
}

class Builder {
public:
  Builder(const Grid& g, Exec exec, std::size_t n) : g_(g), exec_(exec), n_(n) {}

  template <class F>
  Series map(F fn) const {
    Series r(n_);
    for_each_sample(static_cast<int>(n_), exec_, [&](int k) { r[k] = fn(k); });
    return r;
  }

  /// Running integral from s0 with exact derivative jets.
  Series integral(const Series& f) const {
    const std::vector<Jet<4>> F = cumulativeIntegral<3>(std::span<const CoefJet>(f), g_);
    Series r(n_);
    for (std::size_t k = 0; k < n_; ++k) r[k] = truncate<3>(F[k]);
    return r;
  }

private:
  const Grid& g_;
  Exec exec_;
  std::size_t n_;
};

struct Coefficients {
  Series y1, y2, y3;
  std::string tag;
};

// Solution of y1' = k y3 - 1, y3' = -k y1 by variation of parameters with
// theta = int k: returns (y1, y3) for homogeneous weights (a, b).
std::pair<Series, Series> rotatingSolution(const Builder& B, const Series& kappa, double a, double b) {
  const Series theta = B.integral(kappa);
  const Series C = B.map([&](int k) { return cos(theta[k]); });
  const Series S = B.map([&](int k) { return sin(theta[k]); });
  const Series IS = B.integral(S);
  const Series IC = B.integral(C);
  Series first = B.map([&](int k) { return -S[k] * (IS[k] - a) - C[k] * (IC[k] + b); });
  Series second = B.map([&](int k) { return a * C[k] + b * S[k] - C[k] * IS[k] + S[k] * IC[k]; });
  return {std::move(first), std::move(second)};
}

Coefficients solve(Family f, const BaseSeries& b, const FamilyConstants& K, const Builder& B) {
  const Series zero(b.s.size(), CoefJet(0.0));
  const auto& [kg, kn, tg, dkg, dkn, dtg, sv] = b;
  (void)dtg;
  switch (f) {
    case Family::hcc1: {
      const Series A = B.integral(tg);
      return {zero, B.map([&](int k) { return sin(A[k]); }), B.map([&](int k) { return cos(A[k]); }), "hcc1"};
    }
    case Family::hcc2: {
      requireDivisor("k_g", kg);
      const double c1 = K.require("c1");
      const Series A = B.integral(B.map([&](int k) { return kn[k] * tg[k] / kg[k]; }));
      const Series y3 = B.map([&](int k) { return c1 * exp(-A[k]); });
      return {B.map([&](int k) { return tg[k] / kg[k] * y3[k]; }), zero, y3, "hcc2"};
    }
    case Family::hcc3: {
      requireDivisor("k_n", kn);
      const double c2 = K.require("c2");
      const Series A = B.integral(B.map([&](int k) { return kg[k] * tg[k] / kn[k]; }));
      const Series y2 = B.map([&](int k) { return c2 * exp(A[k]); });
      return {B.map([&](int k) { return -(tg[k] / kn[k]) * y2[k]; }), y2, zero, "hcc3"};
    }
    case Family::rns1: {
      if (identicallyZero("k_g", kg)) {
        requireDivisor("k_n", kn);
        requireDivisor("tau_g", tg);
        return {zero, B.map([&](int k) { return dkn[k] / (kn[k] * kn[k] * tg[k]); }),
                B.map([&](int k) { return 1.0 / kn[k]; }), "rns1:geodesic"};
      }
      const double c3 = K.require("c3");
      const Series A = B.integral(B.map([&](int k) { return kn[k] * tg[k] / kg[k]; }));
      const Series E = B.map([&](int k) { return exp(A[k]); });
      const Series I = B.integral(B.map([&](int k) { return exp(-A[k]) * tg[k] / kg[k]; }));
      return {zero, B.map([&](int k) { return kn[k] / kg[k] * E[k] * (I[k] - c3) + 1.0 / kg[k]; }),
              B.map([&](int k) { return E[k] * (c3 - I[k]); }), "rns1:general"};
    }
    case Family::rns2: {
      if (identicallyZero("k_n", kn)) {
        const double c4 = K.require("c4"), c5 = K.require("c5");
        return {B.map([&](int k) { return c4 - sv[k]; }), zero, B.map([&](int) { return CoefJet(c5); }),
                "rns2:asymptotic"};
      }
      const double c6 = K.require("c6"), c7 = K.require("c7");
      auto [y1, y3] = rotatingSolution(B, kn, c6, c7);
      return {std::move(y1), zero, std::move(y3), "rns2:general"};
    }
    case Family::rns3: {
      if (identicallyZero("tau_g", tg)) {
        requireDivisor("k_n", kn);
        requireDivisor("k_g", kg);
        return {zero, B.map([&](int k) { return 1.0 / kg[k]; }), zero, "rns3:principal-line"};
      }
      const double c8 = K.require("c8_rns3");
      const Series A = B.integral(B.map([&](int k) { return kn[k] * kg[k] / tg[k]; }));
      const Series I = B.integral(B.map([&](int k) { return exp(A[k]); }));
      const Series y1 = B.map([&](int k) { return exp(-A[k]) * (c8 - I[k]); });
      return {y1, B.map([&](int k) { return -(kn[k] / tg[k]) * y1[k]; }), zero, "rns3:general"};
    }
    case Family::icc1: {
      if (identicallyZero("k_n", kn)) {
        requireDivisor("k_g", kg);
        requireDivisor("tau_g", tg);
        return {zero, B.map([&](int k) { return 1.0 / kg[k]; }),
                B.map([&](int k) { return -dkg[k] / (kg[k] * kg[k] * tg[k]); }), "icc1:asymptotic"};
      }
      const double c8 = K.require("c8_icc1");
      const Series A = B.integral(B.map([&](int k) { return kg[k] * tg[k] / kn[k]; }));
      const Series I = B.integral(B.map([&](int k) { return exp(A[k]) * tg[k] / kn[k]; }));
      const Series y2 = B.map([&](int k) { return exp(-A[k]) * (I[k] + c8); });
      return {zero, y2, B.map([&](int k) { return (1.0 - kg[k] * y2[k]) / kn[k]; }), "icc1:general"};
    }
    case Family::icc2: {
      if (identicallyZero("tau_g", tg)) {
        requireDivisor("k_g", kg);
        requireDivisor("k_n", kn);
        return {zero, zero, B.map([&](int k) { return 1.0 / kn[k]; }), "icc2:principal-line"};
      }
      const double c9 = K.require("c9");
      const Series A = B.integral(B.map([&](int k) { return kg[k] * kn[k] / tg[k]; }));
      const Series I = B.integral(B.map([&](int k) { return exp(-A[k]); }));
      const Series y1 = B.map([&](int k) { return exp(A[k]) * (c9 - I[k]); });
      return {y1, zero, B.map([&](int k) { return kg[k] / tg[k] * y1[k]; }), "icc2:general"};
    }
    case Family::icc3: {
      if (identicallyZero("k_g", kg)) {
        const double c10 = K.require("c10"), c11 = K.require("c11");
        return {B.map([&](int k) { return c10 - sv[k]; }), B.map([&](int) { return CoefJet(c11); }), zero,
                "icc3:geodesic"};
      }
      const double c12 = K.require("c12"), c13 = K.require("c13");
      auto [y1, y2] = rotatingSolution(B, kg, c12, c13);
      return {std::move(y1), std::move(y2), zero, "icc3:general"};
    }
  }
  fail(ErrorKind::config, "unknown family");
}

double component(const Vec3& v, int i) { return i == 0 ? v.x : (i == 1 ? v.y : v.z); }

}  // namespace

CoefficientTrack solveCoefficients(Family f, std::span<const DarbouxJet> base, const FamilyConstants& k,
                                   const Grid& g, Exec exec) {
  if (static_cast<int>(base.size()) != g.size()) fail(ErrorKind::domain, "base samples do not match the grid");
  const BaseSeries b = split(base, g);
  const Builder B(g, exec, base.size());
  Coefficients c = solve(f, b, k, B);

  CoefficientTrack t;
  t.case_tag = std::move(c.tag);
  t.constants = k;
  const std::size_t n = base.size();
  t.s.resize(n);
  t.jets.resize(n);
  for (auto& y : t.y) y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.s[i] = base[i].s;
    t.jets[i] = {c.y1[i], c.y2[i], c.y3[i]};
    for (int j = 0; j < 3; ++j) {
      const double v = t.jets[i][j].c[0];
      if (!std::isfinite(v))
        fail(ErrorKind::non_finite, "non-finite y" + std::to_string(j + 1) + " at s = " + std::to_string(t.s[i]));
      t.y[j][i] = v;
    }
  }
  return t;
}

AssociatedCurve construct(Family f, std::span<const DarbouxJet> base, const FamilyConstants& k, const Grid& g,
                          Exec exec) {
  AssociatedCurve a{f, g, {}, solveCoefficients(f, base, k, g, exec), {}, {}};
  const int n = g.size();
  a.base.resize(n);
  a.gamma.resize(n);
  a.r.resize(n);
  for_each_sample(n, exec, [&](int i) {
    const DarbouxJet& d = base[i];
    a.base[i] = toSample(d);
    const auto& y = a.track.jets[i];
    const JetVec<3> T = truncate<3>(d.T), V = truncate<3>(d.V), U = truncate<3>(d.U);
    a.gamma[i] = truncate<3>(d.alpha) + y[0] * T + y[1] * V + y[2] * U;
    const Vec3 g1 = derivative(a.gamma[i], 1);
    a.r[i] = {dot(g1, a.base[i].T), dot(g1, a.base[i].V), dot(g1, a.base[i].U)};
  });

  const int c = designatedComponent(f);
  const std::string rname = "R" + std::to_string(c + 1);
  for (int i = 0; i < n; ++i) {
    const double R = component(a.r[i], c);
    if (!(std::abs(R) > kRegularityMin))
      fail(ErrorKind::regularity_violation,
           std::string(to_string(f)) + ": " + rname + " vanishes at s = " + std::to_string(g.at(i)));
    if (i > 0 && (R > 0) != (component(a.r[i - 1], c) > 0))
      fail(ErrorKind::regularity_violation, std::string(to_string(f)) + ": " + rname + " changes sign between s = " +
                                                std::to_string(g.at(i - 1)) + " and s = " + std::to_string(g.at(i)));
  }
  return a;
}

AssociatedCurve construct(Family f, const CurveSource& src, const FamilyConstants& k, const Grid& g, Exec exec) {
  const std::vector<DarbouxJet> base = sampleDarbouxJets(src, g, exec);
  return construct(f, base, k, g, exec);
}

OdeResidual odeResidual(Family f, const CoefficientTrack& t, std::span<const DarbouxSample> base, const Grid& g) {
  const double h = g.step();
  const std::vector<double> d1 = differentiate5(t.y[0], h);
  const std::vector<double> d2 = differentiate5(t.y[1], h);
  const std::vector<double> d3 = differentiate5(t.y[2], h);
  const int c = designatedComponent(f);
  OdeResidual out;
  out.min_inequality = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < base.size(); ++k) {
    const DarbouxSample& b = base[k];
    const double y1 = t.y[0][k], y2 = t.y[1][k], y3 = t.y[2][k];
    const std::array<double, 3> R{1.0 + d1[k] - b.kg * y2 - b.kn * y3, d2[k] + b.kg * y1 - b.taug * y3,
                                  d3[k] + b.kn * y1 + b.taug * y2};
    int e = 0;
    for (int i = 0; i < 3; ++i) {
      if (i == c) {
        out.min_inequality = std::min(out.min_inequality, std::abs(R[i]));
      } else {
        out.equality[e] = std::max(out.equality[e], std::abs(R[i]));
        ++e;
      }
    }
  }
  return out;
}

OdeResidual odeResidual(const AssociatedCurve& a) { return odeResidual(a.family, a.track, a.base, a.grid); }

namespace {

using State = std::array<double, 2>;
using Curvatures = std::array<double, 3>;

struct OracleSystem {
  std::function<State(const Curvatures&, const State&)> rhs;
  std::function<std::array<double, 3>(const Curvatures&, const State&)> full;
  std::function<State(const std::array<double, 3>&)> initial;
};

struct AlgebraicSystem {
  // Receives (k, k') at s.
  std::function<std::array<double, 3>(const Curvatures&, const Curvatures&)> y;
};

double sq(double x) { return x * x; }

}  // namespace

CoefficientTrack rk4Oracle(Family f, const CurveSource& src, const FamilyConstants& K, const Grid& g) {
  const std::vector<DarbouxJet> base = sampleDarbouxJets(src, g, Exec::serial);
  const CoefficientTrack closed = solveCoefficients(f, base, K, g, Exec::serial);
  const std::string& tag = closed.case_tag;

  CoefficientTrack out;
  out.case_tag = tag;
  out.constants = K;
  out.s = g.samples();
  const int n = g.size();
  for (auto& y : out.y) y.assign(n, 0.0);

  auto curv = [&](double s) { return src.curvaturesAt(s); };

  std::optional<AlgebraicSystem> alg;
  OracleSystem sys;
  using Y = std::array<double, 3>;
  if (tag == "hcc1") {
    sys = {[](const Curvatures& c, const State& x) { return State{c[2] * x[1], -c[2] * x[0]}; },
           [](const Curvatures&, const State& x) { return Y{0.0, x[0], x[1]}; },
           [](const Y& y) { return State{y[1], y[2]}; }};
  } else if (tag == "hcc2") {
    sys = {[](const Curvatures& c, const State& x) { return State{-(c[1] * c[2] / c[0]) * x[0], 0.0}; },
           [](const Curvatures& c, const State& x) { return Y{c[2] / c[0] * x[0], 0.0, x[0]}; },
           [](const Y& y) { return State{y[2], 0.0}; }};
  } else if (tag == "hcc3") {
    sys = {[](const Curvatures& c, const State& x) { return State{(c[0] * c[2] / c[1]) * x[0], 0.0}; },
           [](const Curvatures& c, const State& x) { return Y{-(c[2] / c[1]) * x[0], x[0], 0.0}; },
           [](const Y& y) { return State{y[1], 0.0}; }};
  } else if (tag == "rns1:geodesic") {
    alg = AlgebraicSystem{[](const Curvatures& c, const Curvatures& d) {
      return Y{0.0, d[1] / (sq(c[1]) * c[2]), 1.0 / c[1]};
    }};
  } else if (tag == "rns1:general") {
    sys = {[](const Curvatures& c, const State& x) {
             return State{(c[1] * c[2] / c[0]) * x[0] - c[2] / c[0], 0.0};
           },
           [](const Curvatures& c, const State& x) { return Y{0.0, (1.0 - c[1] * x[0]) / c[0], x[0]}; },
           [](const Y& y) { return State{y[2], 0.0}; }};
  } else if (tag == "rns2:asymptotic" || tag == "rns2:general") {
    sys = {[](const Curvatures& c, const State& x) { return State{c[1] * x[1] - 1.0, -c[1] * x[0]}; },
           [](const Curvatures&, const State& x) { return Y{x[0], 0.0, x[1]}; },
           [](const Y& y) { return State{y[0], y[2]}; }};
  } else if (tag == "rns3:principal-line") {
    alg = AlgebraicSystem{[](const Curvatures& c, const Curvatures&) { return Y{0.0, 1.0 / c[0], 0.0}; }};
  } else if (tag == "rns3:general") {
    sys = {[](const Curvatures& c, const State& x) { return State{-(c[1] * c[0] / c[2]) * x[0] - 1.0, 0.0}; },
           [](const Curvatures& c, const State& x) { return Y{x[0], -(c[1] / c[2]) * x[0], 0.0}; },
           [](const Y& y) { return State{y[0], 0.0}; }};
  } else if (tag == "icc1:asymptotic") {
    alg = AlgebraicSystem{[](const Curvatures& c, const Curvatures& d) {
      return Y{0.0, 1.0 / c[0], -d[0] / (sq(c[0]) * c[2])};
    }};
  } else if (tag == "icc1:general") {
    sys = {[](const Curvatures& c, const State& x) {
             return State{-(c[0] * c[2] / c[1]) * x[0] + c[2] / c[1], 0.0};
           },
           [](const Curvatures& c, const State& x) { return Y{0.0, x[0], (1.0 - c[0] * x[0]) / c[1]}; },
           [](const Y& y) { return State{y[1], 0.0}; }};
  } else if (tag == "icc2:principal-line") {
    alg = AlgebraicSystem{[](const Curvatures& c, const Curvatures&) { return Y{0.0, 0.0, 1.0 / c[1]}; }};
  } else if (tag == "icc2:general") {
    sys = {[](const Curvatures& c, const State& x) { return State{(c[0] * c[1] / c[2]) * x[0] - 1.0, 0.0}; },
           [](const Curvatures& c, const State& x) { return Y{x[0], 0.0, c[0] / c[2] * x[0]}; },
           [](const Y& y) { return State{y[0], 0.0}; }};
  } else if (tag == "icc3:geodesic" || tag == "icc3:general") {
    sys = {[](const Curvatures& c, const State& x) { return State{c[0] * x[1] - 1.0, -c[0] * x[0]}; },
           [](const Curvatures&, const State& x) { return Y{x[0], x[1], 0.0}; },
           [](const Y& y) { return State{y[0], y[1]}; }};
  } else {
    fail(ErrorKind::config, "no oracle for case " + tag);
  }

  auto store = [&](int k, const Y& y) {
    for (int j = 0; j < 3; ++j) out.y[j][k] = y[j];
  };

  if (alg) {
    constexpr double e = 1e-3;
    for (int k = 0; k < n; ++k) {
      const double s = g.at(k);
      const Curvatures m2 = curv(s - 2 * e), m1 = curv(s - e), p1 = curv(s + e), p2 = curv(s + 2 * e);
      Curvatures d{};
      for (int i = 0; i < 3; ++i) d[i] = (m2[i] - 8.0 * m1[i] + 8.0 * p1[i] - p2[i]) / (12.0 * e);
      store(k, alg->y(curv(s), d));
    }
    return out;
  }

  constexpr int kSubsteps = 4;
  State x = sys.initial({closed.y[0][0], closed.y[1][0], closed.y[2][0]});
  store(0, sys.full(curv(g.at(0)), x));
  const double h = g.step() / kSubsteps;
  auto axpy = [](const State& a, double t, const State& b) { return State{a[0] + t * b[0], a[1] + t * b[1]}; };
  for (int k = 0; k + 1 < n; ++k) {
    double s = g.at(k);
    for (int m = 0; m < kSubsteps; ++m) {
      const Curvatures c0 = curv(s), ch = curv(s + h / 2), c1 = curv(s + h);
      const State k1 = sys.rhs(c0, x);
      const State k2 = sys.rhs(ch, axpy(x, h / 2, k1));
      const State k3 = sys.rhs(ch, axpy(x, h / 2, k2));
      const State k4 = sys.rhs(c1, axpy(x, h, k3));
      for (int i = 0; i < 2; ++i) x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
      s += h;
    }
    store(k + 1, sys.full(curv(g.at(k + 1)), x));
  }
  return out;
}

}  // namespace darboux
