#pragma once

#include <darboux/geometry.hpp>
#include <darboux/jet.hpp>

#include <span>
#include <vector>

namespace darboux {

/// Running integral F(s_k) = int_{s0}^{s_k} f ds on a uniform grid.
/// Even samples use composite Simpson; odd samples add the partial panel
/// h (5 f0 + 8 f1 - f2) / 12 to the preceding even sample.
std::vector<double> cumulativeIntegral(std::span<const double> f, const Grid& g);

/// Running integral of a sampled jet: values by quadrature, derivatives exact (F' = f).
template <int N>
std::vector<Jet<N + 1>> cumulativeIntegral(std::span<const Jet<N>> f, const Grid& g) {
  std::vector<double> values(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) values[k] = f[k].c[0];
  const std::vector<double> F = cumulativeIntegral(values, g);
  std::vector<Jet<N + 1>> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = antiderivative(f[k], F[k]);
  return out;
}

/// First derivative of grid samples by 5-point stencils (one-sided at the ends).
std::vector<double> differentiate5(std::span<const double> y, double h);

struct CentralDerivatives {
  double d1, d2, d3;
};

/// Derivatives 1..3 at sample k from a central stencil of 2*half+1 points
/// (weights by Fornberg's recursion). Needs half <= k < size - half.
CentralDerivatives centralStencil(std::span<const double> y, int k, double h, int half);

}  // namespace darboux
