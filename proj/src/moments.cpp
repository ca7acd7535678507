#include "mskit/moments.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mskit/errors.hpp"
#include "mskit/gauss_legendre.hpp"

#ifdef MSKIT_WITH_SPECIAL_FUNCTIONS
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <numbers>
#endif

namespace mskit {
namespace {

constexpr double kSeriesRadius = 0.5;
constexpr double kSeriesTermFloor = 1e-18;

// Beyond this exponent the integrand is below exp(-100) of its peak.
constexpr double kExponentCutoff = 100.0;
// Exponent span covered by one 32-node panel on the first pass.
constexpr double kPanelSpan = 12.0;
constexpr double kRefineTolerance = 1e-14;
constexpr int kMaxRefinements = 5;

struct RawMoments {
  std::vector<double> scaled;
  std::vector<double> differences;
};

RawMoments series_moments(double eta, int kmax) {
  const int count = kmax / 2 + 1;
  RawMoments out{std::vector<double>(count, 0.0), std::vector<double>(count - 1, 0.0)};
  for (int idx = 0; idx < count; ++idx) {
    const int k = 2 * idx;
    double coeff = 1.0;  // (-eta)^n / n!
    double sum = 0.0;
    double diff = 0.0;
    for (int n = 0; n < 200; ++n) {
      const double d1 = 2.0 * n + k + 1.0;
      const double term = coeff / d1;
      sum += term;
      if (idx + 1 < count) diff += 2.0 * coeff / (d1 * (d1 + 2.0));
      if (std::abs(term) < kSeriesTermFloor) break;
      coeff *= -eta / (n + 1.0);
    }
    out.scaled[idx] = sum;
    if (idx + 1 < count) out.differences[idx] = diff;
  }
  if (eta < 0.0) {
    const double scale = std::exp(eta);
    for (double& v : out.scaled) v *= scale;
    for (double& v : out.differences) v *= scale;
  }
  return out;
}

// Panels are equally spaced in the exponent phi (phi = eta z^2 for eta > 0,
// phi = |eta| (1 - z^2) for eta < 0), which grades them towards the boundary
// layer at z = 0 or z = 1. For eta < 0 the nodes are placed in u = 1 - z so
// that 1 - z^2 = u (2 - u) keeps full relative precision inside the layer.
RawMoments panel_moments(double eta, int kmax, double span) {
  const int count = kmax / 2 + 1;
  RawMoments out{std::vector<double>(count, 0.0), std::vector<double>(count - 1, 0.0)};
  const double a = std::abs(eta);
  const double phi_max = std::min(a, kExponentCutoff);
  const int panels = a == 0.0 ? 1 : std::max(1, static_cast<int>(std::ceil(phi_max / span)));

  // Panel edge in the integration variable (z for eta >= 0, u for eta < 0).
  auto edge = [&](int j) {
    if (a == 0.0) return static_cast<double>(j);
    if (j == panels && phi_max == a) return 1.0;
    const double x = phi_max * j / panels / a;
    return eta > 0.0 ? std::sqrt(x) : x / (1.0 + std::sqrt(1.0 - x));
  };

  auto accumulate = [&](double t, double weight) {
    double z, one_minus, w;
    if (eta >= 0.0) {
      z = t;
      one_minus = (1.0 - z) * (1.0 + z);
      w = std::exp(-eta * z * z);
    } else {
      z = 1.0 - t;
      one_minus = t * (2.0 - t);
      w = std::exp(eta * one_minus);
    }
    const double z2 = z * z;
    double p = weight * w;
    for (int idx = 0; idx < count; ++idx) {
      out.scaled[idx] += p;
      if (idx + 1 < count) out.differences[idx] += p * one_minus;
      p *= z2;
    }
  };

  const GaussRule& rule = gauss_legendre_32();
  for (int j = 0; j < panels; ++j) {
    const double lo = edge(j);
    const double hi = edge(j + 1);
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      accumulate(mid + half * rule.nodes[i], half * rule.weights[i]);
    }
  }
  return out;
}

double max_relative_change(const RawMoments& coarse, const RawMoments& fine) {
  double worst = 0.0;
  auto scan = [&](const std::vector<double>& c, const std::vector<double>& f) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      worst = std::max(worst, std::abs(c[i] - f[i]) / std::abs(f[i]));
    }
  };
  scan(coarse.scaled, fine.scaled);
  scan(coarse.differences, fine.differences);
  return worst;
}

RawMoments quadrature_moments(double eta, int kmax) {
  double span = kPanelSpan;
  RawMoments coarse = panel_moments(eta, kmax, span);
  for (int level = 0; level < kMaxRefinements; ++level) {
    span *= 0.5;
    RawMoments fine = panel_moments(eta, kmax, span);
    if (max_relative_change(coarse, fine) <= kRefineTolerance) return fine;
    coarse = std::move(fine);
  }
  throw InternalError("compute_moments: quadrature did not settle at eta=" +
                      std::to_string(eta));
}

}  // namespace

MomentSet::MomentSet(double eta, int kmax, std::vector<double> scaled,
                     std::vector<double> differences)
    : eta_(eta),
      kmax_(kmax),
      scaled_(std::move(scaled)),
      differences_(std::move(differences)),
      q_(eta >= 0.0 ? std::exp(-eta) / scaled_[0] : 1.0 / scaled_[0]),
      scaled_exp_(eta >= 0.0 ? std::exp(-eta) : 1.0) {}

std::size_t MomentSet::slot(int k, int limit) {
  if (k < 0 || k > limit || k % 2 != 0) {
    throw ArgumentError("MomentSet: moment index " + std::to_string(k) +
                        " outside even range [0, " + std::to_string(limit) + "]");
  }
  return static_cast<std::size_t>(k / 2);
}

double MomentSet::scaled(int k) const { return scaled_[slot(k, kmax_)]; }

double MomentSet::scaled_difference(int k) const {
  return differences_[slot(k, kmax_ - 2)];
}

double MomentSet::ratio(int k) const {
  if (k == 0) return 1.0;
  return scaled(k) / scaled_[0];
}

double MomentSet::ratio_difference(int k) const {
  return scaled_difference(k) / scaled_[0];
}

MomentSet compute_moments(double eta, int kmax, MomentPath path) {
  if (!std::isfinite(eta)) throw DomainError("compute_moments: eta must be finite");
  if (kmax < 6 || kmax % 2 != 0) {
    throw ArgumentError("compute_moments: kmax must be even and >= 6, got " +
                        std::to_string(kmax));
  }
  if (path == MomentPath::automatic) {
    path = std::abs(eta) <= kSeriesRadius ? MomentPath::series : MomentPath::quadrature;
  }
  RawMoments raw =
      path == MomentPath::series ? series_moments(eta, kmax) : quadrature_moments(eta, kmax);
  return MomentSet(eta, kmax, std::move(raw.scaled), std::move(raw.differences));
}

double moment_derivative_check(double eta, int k, double h) {
  if (!(h > 0.0)) throw ArgumentError("moment_derivative_check: h must be positive");
  if (k < 0 || k % 2 != 0) throw ArgumentError("moment_derivative_check: k must be even");
  const int kmax = std::max(6, k + 2);
  const MomentSet mid = compute_moments(eta, kmax);
  const MomentSet plus = compute_moments(eta + h, kmax);
  const MomentSet minus = compute_moments(eta - h, kmax);
  // A_k(x) / A_0(eta) without leaving the scaled representation.
  auto relative = [&](const MomentSet& at) {
    return std::exp(mid.log_scale() - at.log_scale()) * at.scaled(k) / mid.scaled(0);
  };
  const double derivative = (relative(plus) - relative(minus)) / (2.0 * h);
  return std::abs(derivative + mid.ratio(k + 2));
}

double moment_derivative_check(double eta, int k) {
  return moment_derivative_check(eta, k, 1e-5 * std::max(1.0, std::abs(eta)));
}

double recurrence_residual(const MomentSet& m, int k) {
  const double sk = m.scaled(k);
  const double sk2 = m.scaled(k + 2);
  return (k + 1.0) * sk - 2.0 * m.eta() * sk2 - m.scaled_exponential();
}

#ifdef MSKIT_WITH_SPECIAL_FUNCTIONS
double dawson(double x) {
  return x * boost::math::hypergeometric_1F1(1.0, 1.5, -x * x);
}

double special_function_a0(double eta) {
  if (!std::isfinite(eta)) throw DomainError("special_function_a0: eta must be finite");
  if (eta == 0.0) return 1.0;
  const double root = std::sqrt(std::abs(eta));
  if (eta > 0.0) {
    return 0.5 * std::sqrt(std::numbers::pi) * boost::math::erf(root) / root;
  }
  // exp(eta) \int_0^1 exp(|eta| z^2) dz = F(sqrt|eta|) / sqrt|eta|
  return dawson(root) / root;
}
#endif

}  // namespace mskit
