#include "mskit/gauss_legendre.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace mskit {
namespace {

constexpr int kOrder = 32;

struct Table {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};
};

// Newton iteration on P_n from the Chebyshev initial guess; symmetric pairs.
Table build_table() {
  Table t;
  const int m = (kOrder + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= kOrder; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // one more pass so dp matches the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int j = 2; j <= kOrder; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    t.nodes[i] = -x;
    t.nodes[kOrder - 1 - i] = x;
    t.weights[i] = w;
    t.weights[kOrder - 1 - i] = w;
  }
  return t;
}

}  // namespace

const GaussRule& gauss_legendre_32() {
  static const Table table = build_table();
  static const GaussRule rule{table.nodes, table.weights};
  return rule;
}

}  // namespace mskit
