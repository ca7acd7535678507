#include "mskit/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mskit/bcurve.hpp"
#include "mskit/classify.hpp"
#include "mskit/moments.hpp"

namespace mskit {
namespace {

constexpr double kTwentyThirds = 20.0 / 3.0;

double relative_to(double value, double expected) {
  return std::abs(value - expected) / std::max(std::abs(expected), 1e-3);
}

OracleReport origin_values() {
  double worst = 0.0;
  const std::array alphas{0.1, 1.0, kTwentyThirds, 7.5, 10.0, 100.0};
  for (double a : alphas) {
    const BEval e = eval_B(0.0, a);
    worst = std::max({worst, std::abs(e.b), std::abs(e.b1)});
  }
  return make_report("origin-value", worst, 1e-13, alphas.size());
}

OracleReport origin_second_derivative() {
  double worst = 0.0;
  const std::array alphas{0.1, 1.0, kTwentyThirds, 7.5, 10.0, 100.0};
  for (double a : alphas) {
    const double expected = 16.0 / (15.0 * a) * (a - 7.5);
    worst = std::max(worst, relative_to(eval_B(0.0, a).b2, expected));
  }
  return make_report("second-derivative-at-origin", worst, 1e-12, alphas.size());
}

OracleReport origin_third_derivative() {
  double worst = 0.0;
  const std::array alphas{1.0, 7.5, 10.0};
  for (double a : alphas) worst = std::max(worst, std::abs(eval_B(0.0, a).b3 + 32.0 / 105.0));
  return make_report("third-derivative-at-origin", worst, 1e-10, alphas.size());
}

OracleReport f_anchor() {
  return make_report("f-at-origin", std::abs(eval_f(0.0) - 7.5), 1e-12, 1);
}

OracleReport f_prime_anchor() {
  return make_report("f-prime-at-origin", std::abs(eval_f_prime(0.0) - 5.0 / 7.0), 1e-10, 1);
}

OracleReport recurrence() {
  double worst = 0.0;
  std::size_t samples = 0;
  for (double mag : {1e-3, 1.0, 10.0, 1e2, 1e3, 1e4}) {
    for (double eta : {-mag, mag}) {
      const MomentSet m = compute_moments(eta, 6);
      for (int k : {0, 2, 4}) {
        const double scale = std::max(std::abs(m.scaled(k)), m.scaled_exponential());
        worst = std::max(worst, std::abs(recurrence_residual(m, k)) / scale);
        ++samples;
      }
    }
  }
  return make_report("recurrence-residual", worst, 1e-12, samples);
}

OracleReport quadrature_agreement() {
  double worst = 0.0;
  std::size_t samples = 0;
  for (double eta : {-500.0, -100.0, -10.0, -3.0, -1.0, -0.45, 0.45, 1.0, 3.0, 10.0, 100.0, 500.0}) {
    const MomentSet m = compute_moments(eta, 6);
    const double s0 = oracle::quad_moment(eta, 0);
    for (int k : {2, 4, 6}) {
      worst = std::max(worst, relative_to(m.ratio(k), oracle::quad_moment(eta, k) / s0));
      ++samples;
    }
    const double q = (eta >= 0.0 ? std::exp(-eta) : 1.0) / s0;
    worst = std::max(worst, std::abs(m.q() - q) / q);
    ++samples;
  }
  return make_report("moment-quadrature-agreement", worst, 1e-12, samples);
}

OracleReport moment_derivatives() {
  double worst = 0.0;
  std::size_t samples = 0;
  for (double eta : {-100.0, -10.0, -2.0, 0.0, 2.0, 10.0, 100.0}) {
    for (int k : {0, 2, 4}) {
      worst = std::max(worst, moment_derivative_check(eta, k));
      ++samples;
    }
  }
  return make_report("moment-derivative", worst, 1e-6, samples);
}

OracleReport derivative_consistency() {
  double worst = 0.0;
  std::size_t samples = 0;
  for (int i = 0; i < 9; ++i) {
    const double eta = -20.0 + 5.0 * i;
    for (double a : {1.0, 5.0, 7.5, 10.0, 50.0}) {
      for (int order : {1, 2, 3}) {
        worst = std::max(worst, oracle::fd_check_B(eta, a, order));
        ++samples;
      }
    }
  }
  return make_report("derivative-consistency", worst, 1e-5, samples);
}

std::vector<OracleReport> critical_checks() {
  const CriticalData& c = critical_data();
  const bool inside = c.alpha_star > kTwentyThirds && c.alpha_star < 7.5 && c.eta_min < 0.0;
  const oracle::GoldenResult golden = oracle::golden_min_f(-100.0, 0.0);
  const double tangent = std::abs(c.eta_min - eta_bar(c.alpha_star)->eta_bar_1);
  return {
      make_report("critical-inclusion", inside ? 0.0 : 1.0, 0.0, 1),
      make_report("critical-oracle-agreement", std::abs(golden.f_value - c.alpha_star), 1e-9, 1),
      make_report("critical-stationarity", std::abs(eval_f_prime(c.eta_min)), 1e-8, 1),
      make_report("critical-tangent-root", tangent, 1e-7, 1),
  };
}

struct Expectation {
  double alpha;
  ZeroCase label;
  int negative;
  int positive;
};

std::vector<Expectation> case_table() {
  const double star = critical_data().alpha_star;
  return {{2.0, ZeroCase::v, 0, 0},           {5.0, ZeroCase::v, 0, 0},
          {kTwentyThirds, ZeroCase::v, 0, 0}, {star - 1e-3, ZeroCase::v, 0, 0},
          {star + 1e-3, ZeroCase::iii, 2, 0}, {7.4, ZeroCase::iii, 2, 0},
          {7.5, ZeroCase::ii, 1, 0},          {7.6, ZeroCase::i, 1, 1},
          {10.0, ZeroCase::i, 1, 1},          {50.0, ZeroCase::i, 1, 1}};
}

OracleReport zero_count_table() {
  double mismatches = 0.0;
  const auto table = case_table();
  for (const Expectation& e : table) {
    const ZeroSet set = classify(e.alpha);
    const auto neg = std::count_if(set.zeros.begin(), set.zeros.end(),
                                   [](const ZeroRecord& z) { return z.side == Side::negative; });
    const auto pos = std::count_if(set.zeros.begin(), set.zeros.end(),
                                   [](const ZeroRecord& z) { return z.side == Side::positive; });
    if (set.case_label != e.label || neg != e.negative || pos != e.positive) mismatches += 1.0;
  }
  return make_report("zero-count-table", mismatches, 0.0, table.size());
}

OracleReport sign_scan_agreement() {
  double mismatches = 0.0;
  std::size_t samples = 0;
  for (const Expectation& e : case_table()) {
    const auto agreed = zero_count_oracle_check(e.alpha);
    if (!agreed) continue;
    ++samples;
    if (!*agreed) mismatches += 1.0;
  }
  return make_report("sign-scan-agreement", mismatches, 0.0, samples);
}

OracleReport zero_ordering() {
  // Smallest margin among eta1 < bar1 < -alpha/2 and eta2 > bar2 > 0.
  double margin = INFINITY;
  for (double a : {8.0, 10.0, 50.0}) {
    const ZeroSet set = classify(a);
    const EtaBarPair bars = *eta_bar(a);
    const double eta1 = set.zeros.front().eta;
    const double eta2 = set.zeros.back().eta;
    margin = std::min({margin, bars.eta_bar_1 - eta1, -0.5 * a - bars.eta_bar_1,
                       eta2 - bars.eta_bar_2, bars.eta_bar_2});
  }
  return make_report("zero-ordering", std::max(0.0, 1e-6 - margin), 0.0, 3);
}

OracleReport zero_relation_and_factorization(bool factorization) {
  double worst = 0.0;
  std::size_t samples = 0;
  for (const Expectation& e : case_table()) {
    for (const ZeroRecord& z : classify(e.alpha).zeros) {
      if (z.side == Side::origin) continue;
      ++samples;
      if (factorization) {
        worst = std::max(worst, std::abs(b1_factorized(z.eta, e.alpha) - eval_B(z.eta, e.alpha).b1));
      } else {
        worst = std::max(worst, zero_relation_residual(z.eta, e.alpha));
      }
    }
  }
  return factorization ? make_report("factorization", worst, 1e-8, samples)
                       : make_report("zero-relation", worst, 1e-10, samples);
}

OracleReport equivalence_identity() {
  double worst = 0.0;
  std::size_t samples = 0;
  for (int i = 0; i <= 200; ++i) {
    const double eta = -50.0 + 0.5 * i;
    const MomentSet m = compute_moments(eta, 6);
    for (double a : {1.0, 7.5, 20.0}) {
      const double b = eval_B(m, a).b;
      const double alt = 4.0 * eta * eta * (1.0 / eval_f(m) - 1.0 / a);
      worst = std::max(worst, std::abs(b - alt) / (1.0 + eta * eta));
      ++samples;
    }
  }
  return make_report("equivalence-identity", worst, 1e-10, samples);
}

OracleReport f_bound() {
  double violations = 0.0;
  std::size_t samples = 0;
  for (int i = -400; i <= 400; ++i) {
    const double eta = std::copysign(std::pow(10.0, std::abs(i) / 100.0) - 1.0, i);
    const double ratio = eta / eval_f(eta);
    if (!(ratio > -1.0 && ratio < 0.5)) violations += 1.0;
    ++samples;
  }
  return make_report("f-bound", violations, 0.0, samples);
}

std::vector<OracleReport> positivity() {
  double worst = 0.0;
  for (double eta : {-5.0, 0.0, 5.0}) {
    const oracle::PositivityResult p = oracle::positivity_2d(eta);
    worst = std::max(worst, p.rhs > 0.0 ? std::abs(p.lhs - p.rhs) / p.rhs : INFINITY);
  }
  const double exact = 4.0 / 525.0;
  return {make_report("positivity-2d", worst, 1e-6, 3),
          make_report("positivity-2d-exact", std::abs(oracle::positivity_2d(0.0).rhs - exact) / exact,
                      1e-10, 1)};
}

OracleReport alpha_monotonicity() {
  double violations = 0.0;
  std::size_t samples = 0;
  for (double eta : {-5.0, -1.0, 1.0, 5.0}) {
    for (double a : {1.0, 5.0, 7.5, 10.0}) {
      if (!(eval_B(eta, a + 1e-3).b > eval_B(eta, a).b)) violations += 1.0;
      ++samples;
    }
  }
  return make_report("alpha-monotonicity", violations, 0.0, samples);
}

OracleReport branch_monotonicity() {
  const double star = critical_data().alpha_star;
  double violations = 0.0;
  const BranchTable inner = sweep(star + 1e-3, 7.5 - 1e-3, 50);
  double last1 = INFINITY;
  double last2 = -INFINITY;
  for (const BranchRow& r : inner.rows) {
    if (r.branch == Branch::neg1) {
      if (!(r.eta < last1)) violations += 1.0;
      last1 = r.eta;
    } else if (r.branch == Branch::neg2) {
      if (!(r.eta > last2)) violations += 1.0;
      last2 = r.eta;
    }
  }
  const BranchTable outer = sweep(7.5 + 1e-2, 50.0, 50);
  for (const BranchRow& r : outer.rows) {
    if (r.branch == Branch::pos && !(r.eta > 0.0 && r.order_parameter < 0.0)) violations += 1.0;
    if (r.branch == Branch::neg2) violations += 1.0;
  }
  return make_report("branch-monotonicity", violations, 0.0, inner.rows.size() + outer.rows.size());
}

}  // namespace

std::vector<OracleReport> run_verification() {
  std::vector<OracleReport> out;
  out.push_back(origin_values());
  out.push_back(origin_second_derivative());
  out.push_back(origin_third_derivative());
  out.push_back(f_anchor());
  out.push_back(f_prime_anchor());
  out.push_back(recurrence());
  out.push_back(quadrature_agreement());
  out.push_back(moment_derivatives());
  out.push_back(derivative_consistency());
  for (OracleReport& r : critical_checks()) out.push_back(std::move(r));
  out.push_back(zero_count_table());
  out.push_back(sign_scan_agreement());
  out.push_back(zero_ordering());
  out.push_back(zero_relation_and_factorization(false));
  out.push_back(zero_relation_and_factorization(true));
  out.push_back(equivalence_identity());
  out.push_back(f_bound());
  for (OracleReport& r : positivity()) out.push_back(std::move(r));
  out.push_back(alpha_monotonicity());
  out.push_back(branch_monotonicity());
  return out;
}

}  // namespace mskit
