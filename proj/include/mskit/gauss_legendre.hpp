#pragma once

#include <span>

namespace mskit {

// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

// 32-point rule, computed once on first use.
const GaussRule& gauss_legendre_32();

// Integrates fn over [a, b] with the 32-point rule.
template <class Fn>
double gauss_integrate(Fn&& fn, double a, double b) {
  const GaussRule& rule = gauss_legendre_32();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

}  // namespace mskit
