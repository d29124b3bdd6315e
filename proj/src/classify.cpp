#include <darboux/classify.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace darboux {

double ConstancyReport::relative_stddev() const { return std::abs(mean) <= 1e-9 ? stddev : stddev / std::abs(mean); }

ConstancyReport constancy(std::span<const double> f, double rel_tol) {
  if (f.size() < 5) fail(ErrorKind::domain, "constancy test needs at least 5 samples");
  ConstancyReport r;
  r.values.assign(f.begin(), f.end());
  r.rel_tol = rel_tol;
  double sum = 0.0;
  for (double v : f) {
    if (!std::isfinite(v)) fail(ErrorKind::non_finite, "non-finite value in constancy test");
    sum += v;
  }
  r.mean = sum / static_cast<double>(f.size());
  double sq = 0.0;
  for (double v : f) {
    const double d = v - r.mean;
    sq += d * d;
    r.max_abs_dev = std::max(r.max_abs_dev, std::abs(d));
  }
  r.stddev = std::sqrt(sq / static_cast<double>(f.size()));
  const double scale = std::max(1.0, std::abs(r.mean));
  r.verdict = r.stddev <= rel_tol * scale && r.max_abs_dev <= 10.0 * rel_tol * scale;
  return r;
}

PointwisePredicates pointwisePredicates(std::span<const DarbouxSample> samples) {
  PointwisePredicates p;
  for (const auto& d : samples) {
    p.max_abs_kg = std::max(p.max_abs_kg, std::abs(d.kg));
    p.max_abs_kn = std::max(p.max_abs_kn, std::abs(d.kn));
    p.max_abs_taug = std::max(p.max_abs_taug, std::abs(d.taug));
  }
  p.is_geodesic = p.max_abs_kg <= kZeroCurvature;
  p.is_asymptotic = p.max_abs_kn <= kZeroCurvature;
  p.is_principal_line = p.max_abs_taug <= kZeroCurvature;
  return p;
}

ConstancyReport lancretTest(std::span<const FrenetSample> frenet, double rel_tol) {
  std::vector<double> ratio(frenet.size());
  for (std::size_t k = 0; k < frenet.size(); ++k) {
    const FrenetSample& f = frenet[k];
    if (!(f.kappa > kZeroCurvature))
      fail(ErrorKind::curvature_vanishes, "curvature vanishes at s = " + std::to_string(f.s));
    ratio[k] = f.tau / f.kappa;
  }
  return constancy(ratio, rel_tol);
}

ConstancyReport lancretTest(const SpaceCurve& c, const Grid& g, double rel_tol) {
  std::vector<FrenetSample> f(g.size());
  for (int k = 0; k < g.size(); ++k) f[k] = frenetAt(c, g.at(k));
  return lancretTest(f, rel_tol);
}

double normalSlantInvariant(const DarbouxSample& d) {
  const double q = d.kg * d.kg + d.taug * d.taug;
  return (d.dtaug * d.kg - d.dkg * d.taug - d.kn * q) / (q * std::sqrt(q));
}

ConstancyReport relativelyNormalSlantHelixTest(std::span<const DarbouxSample> samples, double rel_tol) {
  std::vector<double> f(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const DarbouxSample& d = samples[k];
    if (!(d.kg * d.kg + d.taug * d.taug > 1e-12))
      fail(ErrorKind::hypothesis_violation, "k_g^2 + tau_g^2 vanishes at s = " + std::to_string(d.s));
    f[k] = normalSlantInvariant(d);
  }
  return constancy(f, rel_tol);
}

double isophoteInvariant(const DarbouxSample& d) {
  const double q = d.kn * d.kn + d.taug * d.taug;
  const double ratio_prime = (d.dtaug * d.kn - d.taug * d.dkn) / (d.kn * d.kn);
  return d.kn * d.kn / (q * std::sqrt(q)) * ratio_prime + d.kg / std::sqrt(q);
}

ConstancyReport isophoteTest(std::span<const DarbouxSample> samples, double rel_tol) {
  std::vector<double> f(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const DarbouxSample& d = samples[k];
    if (!(std::abs(d.kn) > kZeroCurvature))
      fail(ErrorKind::hypothesis_violation, "k_n vanishes at s = " + std::to_string(d.s));
    f[k] = isophoteInvariant(d);
  }
  return constancy(f, rel_tol);
}

const char* to_string(DarbouxKind kind) {
  switch (kind) {
    case DarbouxKind::osculating: return "osculating";
    case DarbouxKind::normal: return "normal";
    case DarbouxKind::rectifying: return "rectifying";
  }
  return "?";
}

Vec3 darbouxVector(const DarbouxSample& d, DarbouxKind kind) {
  switch (kind) {
    case DarbouxKind::osculating: return d.taug * d.T - d.kn * d.V;
    case DarbouxKind::normal: return (-d.kn) * d.V + d.kg * d.U;
    case DarbouxKind::rectifying: return d.taug * d.T + d.kg * d.U;
  }
  return {};
}

DarbouxField darbouxField(std::span<const DarbouxSample> samples, DarbouxKind kind) {
  DarbouxField f{kind, {}, {}};
  f.raw.reserve(samples.size());
  f.unit.reserve(samples.size());
  for (const auto& d : samples) {
    const Vec3 D = darbouxVector(d, kind);
    const double n = norm(D);
    if (!(n > 1e-12))
      fail(ErrorKind::vanishing_field,
           std::string(to_string(kind)) + " Darboux vector vanishes at s = " + std::to_string(d.s));
    f.raw.push_back(D);
    f.unit.push_back(D / n);
  }
  return f;
}

double AxisFit::rho() const { return std::acos(std::clamp(cos_angle_mean, -1.0, 1.0)); }

AxisFit fitAxis(std::span<const Vec3> dirs) {
  if (dirs.size() < 3) fail(ErrorKind::domain, "axis fit needs at least 3 directions");
  const double n = static_cast<double>(dirs.size());
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& d : dirs) mean += Eigen::Vector3d(d.x, d.y, d.z);
  mean /= n;
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& d : dirs) {
    const Eigen::Vector3d e = Eigen::Vector3d(d.x, d.y, d.z) - mean;
    cov += e * e.transpose();
  }
  cov /= n;

  AxisFit fit;
  Eigen::Vector3d z;
  const double spread = cov.trace();
  if (spread <= 1e-24) {
    // All directions coincide: any axis through them works, take the mean.
    if (!(mean.norm() > 1e-12)) fail(ErrorKind::vanishing_field, "axis fit on vanishing directions");
    z = mean.normalized();
    fit.low_confidence = true;
  } else {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    const Eigen::Vector3d lambda = es.eigenvalues();
    z = es.eigenvectors().col(0);
    fit.low_confidence = lambda(1) - lambda(0) <= 1e-9 * lambda(2);
  }
  fit.zeta = {z(0), z(1), z(2)};

  double c_sum = 0.0;
  for (const auto& d : dirs) c_sum += dot(d, fit.zeta);
  if (c_sum < 0.0) {
    fit.zeta = -1.0 * fit.zeta;
    c_sum = -c_sum;
  }
  fit.cos_angle_mean = c_sum / n;

  std::vector<double> theta(dirs.size());
  double t_sum = 0.0;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    theta[k] = std::atan2(norm(cross(dirs[k], fit.zeta)), dot(dirs[k], fit.zeta));
    t_sum += theta[k];
  }
  const double t_mean = t_sum / n;
  double sq = 0.0;
  for (double t : theta) sq += (t - t_mean) * (t - t_mean);
  fit.angle_std = std::sqrt(sq / n);
  return fit;
}

SlantHelixVerdict darbouxSlantHelixTest(std::span<const DarbouxSample> samples, DarbouxKind kind,
                                        double angle_tol) {
  const DarbouxField field = darbouxField(samples, kind);
  SlantHelixVerdict v;
  v.axis = fitAxis(field.unit);
  v.verdict = v.axis.angle_std <= angle_tol;
  return v;
}

namespace {

PropertyVerdict axisVerdict(std::span<const Vec3> dirs, double axis_tol) {
  PropertyVerdict p;
  p.method = "axis-fit";
  p.axis = fitAxis(dirs);
  p.verdict = p.axis.angle_std <= axis_tol;
  p.invariant_mean = p.axis.rho();
  return p;
}

}  // namespace

BaseClassification classifyBase(std::span<const DarbouxJet> jets, double rel_tol, double axis_tol) {
  std::vector<DarbouxSample> samples(jets.size());
  std::vector<FrenetSample> frenet(jets.size());
  std::vector<Vec3> T(jets.size()), V(jets.size()), U(jets.size());
  for (std::size_t k = 0; k < jets.size(); ++k) {
    samples[k] = toSample(jets[k]);
    frenet[k] = frenetOf(jets[k]);
    T[k] = samples[k].T;
    V[k] = samples[k].V;
    U[k] = samples[k].U;
  }

  BaseClassification b;
  b.pointwise = pointwisePredicates(samples);

  b.helical = axisVerdict(T, axis_tol);
  try {
    const ConstancyReport r = lancretTest(frenet, rel_tol);
    b.helical.method = "lancret";
    b.helical.verdict = r.verdict;
    b.helical.invariant_mean = r.mean;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::curvature_vanishes) throw;
  }

  b.normal_slant = axisVerdict(V, axis_tol);
  try {
    const ConstancyReport r = relativelyNormalSlantHelixTest(samples, rel_tol);
    b.normal_slant.method = "invariant";
    b.normal_slant.verdict = r.verdict;
    b.normal_slant.invariant_mean = r.mean;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::hypothesis_violation) throw;
  }

  b.isophote = axisVerdict(U, axis_tol);
  try {
    const ConstancyReport r = isophoteTest(samples, rel_tol);
    b.isophote.method = "invariant";
    b.isophote.verdict = r.verdict;
    b.isophote.invariant_mean = r.mean;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::hypothesis_violation) throw;
  }
  return b;
}

}  // namespace darboux
