#include "mskit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mskit/bcurve.hpp"
#include "mskit/errors.hpp"
#include "mskit/gauss_legendre.hpp"
#include "mskit/moments.hpp"

namespace mskit::oracle {
namespace {

constexpr double kQuadRange = 500.0;
constexpr int kRombergLevels = 24;
constexpr int kRombergMinLevel = 4;
constexpr double kRombergTolerance = 1e-13;

constexpr double kGoldenWidth = 1e-12;
constexpr double kPositivityRange = 50.0;
constexpr double kPositivityStep = 1e-4;
constexpr int kPositivityPanels = 4;

double scaled_integrand(double eta, int k, double z) {
  const double zk = std::pow(z, k);
  if (eta >= 0.0) return zk * std::exp(-eta * z * z);
  return zk * std::exp(eta * (1.0 - z) * (1.0 + z));
}

}  // namespace

double quad_moment(double eta, int k) {
  if (!std::isfinite(eta) || std::abs(eta) > kQuadRange) {
    throw ArgumentError("quad_moment: |eta| must be <= 500");
  }
  if (k < 0) throw ArgumentError("quad_moment: k must be non-negative");

  auto fn = [&](double z) { return scaled_integrand(eta, k, z); };
  std::vector<double> prev{0.5 * (fn(0.0) + fn(1.0))};
  std::vector<double> row;
  for (int level = 1; level <= kRombergLevels; ++level) {
    const long intervals = 1L << level;
    const double h = 1.0 / static_cast<double>(intervals);
    double odd_sum = 0.0;
    for (long j = 1; j < intervals; j += 2) odd_sum += fn(h * static_cast<double>(j));
    row.assign(level + 1, 0.0);
    row[0] = 0.5 * prev[0] + h * odd_sum;
    double factor = 1.0;
    for (int col = 1; col <= level; ++col) {
      factor *= 4.0;
      row[col] = row[col - 1] + (row[col - 1] - prev[col - 1]) / (factor - 1.0);
    }
    const double current = row[level];
    const double before = prev[level - 1];
    if (level >= kRombergMinLevel && std::abs(current - before) < kRombergTolerance * std::abs(current)) {
      return current;
    }
    prev.swap(row);
  }
  throw OracleFailure("quad_moment: Romberg did not converge for eta=" + std::to_string(eta) +
                      ", k=" + std::to_string(k));
}

int sign_scan(double alpha, double lo, double hi, std::size_t n) {
  if (!(lo < hi)) throw ArgumentError("sign_scan: need lo < hi");
  if (n < 1000) throw ArgumentError("sign_scan: need at least 1000 samples");
  int changes = 0;
  int last_sign = 0;
  const double width = hi - lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double eta = lo + width * static_cast<double>(i) / static_cast<double>(n - 1);
    const double b = eval_B(eta, alpha).b;
    const int sign = (b > 0.0) - (b < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

GoldenResult golden_min_f(double lo, double hi) {
  if (!(lo < hi)) throw ArgumentError("golden_min_f: need lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = eval_f(c);
  double fd = eval_f(d);
  while (b - a > kGoldenWidth) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval_f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval_f(d);
    }
  }
  const double eta = 0.5 * (a + b);
  return GoldenResult{eta, eval_f(eta)};
}

PositivityResult positivity_2d(double eta) {
  if (!std::isfinite(eta) || std::abs(eta) > kPositivityRange) {
    throw ArgumentError("positivity_2d: |eta| must be <= 50");
  }
  // exp(x)(A0(A4-A6) - A2(A2-A4)) from scaled moments: A_k = exp(-sigma) s_k.
  auto g = [](double x) {
    const MomentSet m = compute_moments(x, 6);
    const double combo = m.scaled(0) * m.scaled_difference(4) - m.scaled(2) * m.scaled_difference(2);
    return std::exp(x - 2.0 * m.log_scale()) * combo;
  };
  const double h = kPositivityStep;
  const double lhs = (g(eta + h) - g(eta - h)) / (2.0 * h);

  auto integrand = [eta](double x, double y) {
    const double x2 = x * x;
    const double y2 = y * y;
    const double diff = x2 - y2;
    const double rest = 1.0 - x2 - y2;
    return 0.5 * diff * diff * rest * rest * std::exp(-eta * (x2 + y2 - 1.0));
  };
  const GaussRule& rule = gauss_legendre_32();
  std::vector<double> nodes;
  std::vector<double> weights;
  for (int p = 0; p < kPositivityPanels; ++p) {
    const double a = static_cast<double>(p) / kPositivityPanels;
    const double b = static_cast<double>(p + 1) / kPositivityPanels;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back(mid + half * rule.nodes[i]);
      weights.push_back(half * rule.weights[i]);
    }
  }
  double rhs = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < nodes.size(); ++j) inner += weights[j] * integrand(nodes[i], nodes[j]);
    rhs += weights[i] * inner;
  }
  if (!(rhs > 0.0)) throw OracleFailure("positivity_2d: quadrature is not positive");
  return PositivityResult{lhs, rhs};
}

double fd_check_B(double eta, double alpha, int order) {
  if (order < 1 || order > 3) throw ArgumentError("fd_check_B: order must be 1, 2 or 3");
  auto lower = [&](double x) {
    const BEval e = eval_B(x, alpha);
    switch (order) {
      case 1: return e.b;
      case 2: return e.b1;
      default: return e.b2;
    }
  };
  const BEval at = eval_B(eta, alpha);
  const double closed = order == 1 ? at.b1 : order == 2 ? at.b2 : at.b3;
  const double h = 1e-5 * std::max(1.0, std::abs(eta));
  auto centred = [&](double step) { return (lower(eta + step) - lower(eta - step)) / (2.0 * step); };
  const double coarse = centred(h);
  const double fine = centred(0.5 * h);
  const double richardson = (4.0 * fine - coarse) / 3.0;
  return std::abs(richardson - closed) / std::max(1e-3, std::abs(closed));
}

}  // namespace mskit::oracle
