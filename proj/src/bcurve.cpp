#include "mskit/bcurve.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "mskit/errors.hpp"

namespace mskit {
namespace {

constexpr double kTwentyThirds = 20.0 / 3.0;
constexpr double kZeroTolerance = 1e-8;
constexpr double kQuadraticRootTolerance = 1e-10;

void require_positive_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ArgumentError(std::string(who) + ": alpha must be positive and finite");
  }
}

}  // namespace

BEval eval_B(const MomentSet& m, double alpha) {
  require_positive_alpha(alpha, "eval_B");
  const double eta = m.eta();
  const double q3 = 3.0 * m.q();
  const double r2 = m.ratio(2);
  const double r4 = m.ratio(4);
  const double r6 = m.ratio(6);

  BEval out{};
  out.eta = eta;
  out.alpha = alpha;
  out.b = q3 - (3.0 - 2.0 * eta + 4.0 * eta * eta / alpha);
  out.b1 = q3 * (r2 - 1.0) + 2.0 - 8.0 * eta / alpha;
  out.b2 = q3 * (1.0 - 2.0 * r2 - r4 + 2.0 * r2 * r2) - 8.0 / alpha;
  out.b3 = q3 * (6.0 * r2 * r2 * r2 - 6.0 * r2 * (r2 + r4) + (3.0 * r2 + 3.0 * r4 + r6) - 1.0);
  return out;
}

BEval eval_B(double eta, double alpha) {
  require_positive_alpha(alpha, "eval_B");
  return eval_B(compute_moments(eta, 6), alpha);
}

double quadratic_factor(double eta, double alpha) {
  return eta * eta + 0.5 * eta * alpha + 0.5 * alpha * (7.5 - alpha);
}

double derivative_factor(double eta, double alpha) {
  require_positive_alpha(alpha, "derivative_factor");
  return -(8.0 * eta / (3.0 * alpha * alpha)) * quadratic_factor(eta, alpha);
}

double b1_factorized(double eta_star, double alpha) {
  require_positive_alpha(alpha, "b1_factorized");
  const double residual = std::abs(eval_B(eta_star, alpha).b);
  if (residual > kZeroTolerance * (1.0 + eta_star * eta_star)) {
    throw ContractError("b1_factorized: eta_star=" + std::to_string(eta_star) +
                            " is not a zero of B; |B|=" + std::to_string(residual),
                        residual);
  }
  return derivative_factor(eta_star, alpha);
}

double b2_at_quadratic_root(double eta_star, double alpha) {
  if (!(alpha > kTwentyThirds)) {
    throw DomainError("b2_at_quadratic_root: needs alpha > 20/3 (real quadratic roots)");
  }
  const double a = quadratic_factor(eta_star, alpha);
  if (std::abs(a) > kQuadraticRootTolerance * (eta_star * eta_star + alpha * alpha)) {
    throw ContractError("b2_at_quadratic_root: eta_star is not a root of the quadratic factor",
                        std::abs(a));
  }
  return 4.0 / (3.0 * alpha) * (eta_star + 15.0 - 2.0 * alpha);
}

std::optional<EtaBarPair> eta_bar(double alpha) {
  require_positive_alpha(alpha, "eta_bar");
  double disc = 1.0 - 20.0 / (3.0 * alpha);
  if (std::abs(disc) <= 4.0 * std::numeric_limits<double>::epsilon()) disc = 0.0;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double first = -0.25 * alpha * (1.0 + 3.0 * root);
  // Product of the roots is (alpha/2)(15/2 - alpha); avoids cancellation in
  // 1 - 3 sqrt(disc) and makes the root exactly 0 at alpha = 7.5.
  const double second = 0.5 * alpha * (7.5 - alpha) / first;
  return EtaBarPair{alpha, first, second};
}

double eval_f(const MomentSet& m) { return 1.0 / m.ratio_difference(2); }

double eval_f(double eta) { return eval_f(compute_moments(eta, 6)); }

double f_prime_numerator(const MomentSet& m) {
  return m.ratio_difference(4) - m.ratio(2) * m.ratio_difference(2);
}

double eval_f_prime(const MomentSet& m) {
  const double d2 = m.ratio_difference(2);
  return f_prime_numerator(m) / (d2 * d2);
}

double eval_f_prime(double eta) { return eval_f_prime(compute_moments(eta, 6)); }

double zero_relation_residual(double eta_star, double alpha) {
  require_positive_alpha(alpha, "zero_relation_residual");
  const MomentSet m = compute_moments(eta_star, 6);
  return std::abs(m.ratio(2) - (alpha - 2.0 * eta_star) / (3.0 * alpha));
}

}  // namespace mskit
