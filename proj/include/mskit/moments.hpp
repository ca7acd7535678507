#pragma once

#include <cmath>
#include <vector>

namespace mskit {

/// Which evaluation route compute_moments takes. `automatic` uses the Taylor
/// series for |eta| <= 0.5 and composite Gauss-Legendre quadrature otherwise;
/// the explicit routes exist for cross-checking the handover.
enum class MomentPath { automatic, series, quadrature };

/// Even moments A_k(eta) = \int_0^1 z^k exp(-eta z^2) dz, k = 0, 2, ..., kmax.
///
/// Values are stored scaled so that nothing overflows: s_k = A_k for
/// eta >= 0 and s_k = exp(eta) A_k = \int_0^1 z^k exp(eta (1 - z^2)) dz for
/// eta < 0, so every s_k lies in (0, 1]. Everything downstream consumes the
/// scale-free ratios r_k = A_k / A_0 and q = exp(-eta) / A_0.
///
/// The neighbouring differences s_k - s_{k+2} are integrated directly
/// (weight z^k (1 - z^2)) instead of being formed by subtraction, because for
/// eta << 0 all r_k crowd towards 1 and the subtraction would lose digits.
class MomentSet {
public:
  double eta() const noexcept { return eta_; }
  int kmax() const noexcept { return kmax_; }

  /// s_k for even k in [0, kmax].
  double scaled(int k) const;
  /// s_k - s_{k+2} for even k in [0, kmax - 2].
  double scaled_difference(int k) const;
  /// r_k = s_k / s_0.
  double ratio(int k) const;
  /// r_k - r_{k+2}.
  double ratio_difference(int k) const;

  /// q = exp(-eta) / A_0. Underflows to 0 in binary64 once eta exceeds ~745;
  /// log_q() stays exact there.
  double q() const noexcept { return q_; }
  double log_q() const noexcept { return log_scale() - eta_ - std::log(scaled_[0]); }
  /// exp(-eta) in the same scaling as s_k: exp(-eta) for eta >= 0, 1 otherwise.
  double scaled_exponential() const noexcept { return scaled_exp_; }
  /// sigma with s_k = exp(sigma) A_k (sigma = eta for eta < 0, else 0).
  double log_scale() const noexcept { return eta_ < 0.0 ? eta_ : 0.0; }

private:
  friend MomentSet compute_moments(double eta, int kmax, MomentPath path);
  MomentSet(double eta, int kmax, std::vector<double> scaled,
            std::vector<double> differences);

  static std::size_t slot(int k, int limit);

  double eta_;
  int kmax_;
  std::vector<double> scaled_;       // index k/2
  std::vector<double> differences_;  // index k/2
  double q_;
  double scaled_exp_;
};

/// Throws DomainError for non-finite eta and ArgumentError for odd kmax or
/// kmax < 6. Ratios and q are accurate to ~1e-13 relative for |eta| <= 1e4.
MomentSet compute_moments(double eta, int kmax = 6,
                          MomentPath path = MomentPath::automatic);

/// |(A_k(eta+h) - A_k(eta-h)) / (2h) + A_{k+2}(eta)| / A_0(eta).
/// Measures the identity dA_k/deta = -A_{k+2} in ratio form.
double moment_derivative_check(double eta, int k, double h);
/// Same with h = 1e-5 * max(1, |eta|).
double moment_derivative_check(double eta, int k);

/// Residual of (k+1) s_k - 2 eta s_{k+2} - E, the integration-by-parts
/// recurrence in stored scaling. Used as a check, never to generate moments.
double recurrence_residual(const MomentSet& m, int k);

#ifdef MSKIT_WITH_SPECIAL_FUNCTIONS
/// s_0 through special functions: erf for eta > 0, Dawson's integral for
/// eta < 0. Cross-check only.
double special_function_a0(double eta);
/// Dawson's integral F(x) = exp(-x^2) \int_0^x exp(t^2) dt.
double dawson(double x);
#endif

}  // namespace mskit
