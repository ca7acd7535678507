#pragma once

#include <cstddef>
#include <string>

// Slow reference computations. They follow different numerical routes from the
// main paths so that a shared systematic error is unlikely: quad_moment never
// touches compute_moments, and golden_min_f never touches the bisection in
// classify.

namespace mskit::oracle {

/// Trapezoid rule with Richardson (Romberg) extrapolation of the same scaled
/// integrand the main path stores (exp(eta) A_k for eta < 0). Refines until two
/// successive diagonal estimates agree to 1e-13 relative; throws OracleFailure
/// after 24 levels. Throws ArgumentError for |eta| > 500 or negative k.
double quad_moment(double eta, int k);

/// Number of sign changes of B(., alpha) over n uniformly spaced samples on
/// [lo, hi]. Samples where B is exactly zero are skipped, so a crossing that
/// lands on a grid point still counts once.
int sign_scan(double alpha, double lo, double hi, std::size_t n);

struct GoldenResult {
  double eta;
  double f_value;
};

/// Golden-section minimisation of f on [lo, hi] down to width 1e-12.
GoldenResult golden_min_f(double lo = -100.0, double hi = 0.0);

struct PositivityResult {
  double lhs;  // centred difference of g(eta) = exp(eta)(A0(A4-A6) - A2(A2-A4))
  double rhs;  // 1/2 \iint (x^2-y^2)^2 (1-x^2-y^2)^2 exp(-eta(x^2+y^2-1))
};

/// Both sides of the positivity identity behind the uniqueness of the minimiser
/// of f. Throws ArgumentError for |eta| > 50 and OracleFailure if rhs <= 0.
PositivityResult positivity_2d(double eta);

/// |closed form - finite difference| / max(1e-3, |closed form|) for the
/// order-th eta-derivative of B, order in {1, 2, 3}. The finite difference is
/// a Richardson-improved centred difference of the next-lower derivative.
double fd_check_B(double eta, double alpha, int order);

}  // namespace mskit::oracle

namespace mskit {

/// Outcome of one verification check.
struct OracleReport {
  std::string name;
  double max_residual;
  double tolerance;
  std::size_t samples;
  bool passed;  // max_residual <= tolerance
};

inline OracleReport make_report(std::string name, double max_residual, double tolerance,
                                std::size_t samples) {
  return OracleReport{std::move(name), max_residual, tolerance, samples,
                      max_residual <= tolerance};
}

}  // namespace mskit
