#include "mskit/classify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "mskit/bcurve.hpp"
#include "mskit/errors.hpp"
#include "mskit/moments.hpp"
#include "mskit/oracle.hpp"

namespace mskit {
namespace {

constexpr double kTwentyThirds = 20.0 / 3.0;
constexpr double kBisectionWidth = 1e-13;
constexpr double kEtaMinStart = -8.0;
constexpr double kEtaMinLimit = -1e3;
constexpr double kOracleAgreement = 1e-8;
constexpr double kMultiplicityThreshold = 1e-8;
constexpr double kZeroResidual = 1e-9;
constexpr double kFSecondStep = 1e-3;
constexpr int kNewtonSteps = 2;
constexpr double kScanCutoff = 1e-6;
constexpr std::size_t kScanSamples = 200000;

double numerator_at(double eta) { return f_prime_numerator(compute_moments(eta, 6)); }

bool narrow_enough(double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  return hi - lo <= kBisectionWidth * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi;
}

struct Root {
  double eta;
  Bracket bracket;
};

// f - alpha changes sign on [lo, hi] and f is monotone there.
Root solve_f_equals(double alpha, double lo, double hi) {
  double g_lo = eval_f(lo) - alpha;
  const double g_hi = eval_f(hi) - alpha;
  if (g_lo == 0.0) return Root{lo, {lo, lo}};
  if (g_hi == 0.0) return Root{hi, {hi, hi}};
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw InternalError("classify: f - alpha does not change sign on [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "] for alpha=" + std::to_string(alpha));
  }
  while (!narrow_enough(lo, hi)) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = eval_f(mid) - alpha;
    if (g_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  double eta = 0.5 * (lo + hi);
  // Newton polish; a step that leaves the certified bracket is discarded.
  for (int step = 0; step < kNewtonSteps; ++step) {
    const MomentSet m = compute_moments(eta, 6);
    const double slope = eval_f_prime(m);
    if (slope == 0.0) break;
    const double next = eta - (eval_f(m) - alpha) / slope;
    if (!(next >= lo && next <= hi)) break;
    eta = next;
  }
  return Root{eta, {lo, hi}};
}

int multiplicity_at(double eta, double alpha) {
  const BEval e = eval_B(eta, alpha);
  if (std::abs(e.b1) > kMultiplicityThreshold) return 1;
  if (std::abs(e.b2) > kMultiplicityThreshold) return 2;
  return 3;
}

ZeroRecord confirmed_zero(double eta, Bracket bracket, double alpha) {
  const double b = eval_B(eta, alpha).b;
  const double f = eval_f(eta);
  if (std::abs(b) > kZeroResidual * (1.0 + eta * eta) || std::abs(f - alpha) > kZeroResidual * alpha) {
    throw InternalError("classify: root eta=" + std::to_string(eta) + " fails confirmation, |B|=" +
                        std::to_string(std::abs(b)) + ", |f-alpha|=" + std::to_string(std::abs(f - alpha)));
  }
  return ZeroRecord{eta, multiplicity_at(eta, alpha), bracket,
                    eta < 0.0 ? Side::negative : Side::positive};
}

}  // namespace

std::string_view to_string(ZeroCase c) {
  switch (c) {
    case ZeroCase::i: return "i";
    case ZeroCase::ii: return "ii";
    case ZeroCase::iii: return "iii";
    case ZeroCase::iv: return "iv";
    case ZeroCase::v: return "v";
    case ZeroCase::boundary_ambiguous: return "boundary-ambiguous";
  }
  return "?";
}

std::string_view to_string(Side s) {
  switch (s) {
    case Side::negative: return "negative";
    case Side::origin: return "origin";
    case Side::positive: return "positive";
  }
  return "?";
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::iso: return "iso";
    case Branch::neg1: return "neg1";
    case Branch::neg2: return "neg2";
    case Branch::pos: return "pos";
  }
  return "?";
}

Bracket find_eta_min_bracket() {
  double hi = 0.0;
  double lo = kEtaMinStart;
  // N(0) = 4/315 > 0; walk left until N turns negative.
  while (numerator_at(lo) >= 0.0) {
    hi = lo;
    lo *= 2.0;
    if (lo < kEtaMinLimit) {
      throw InternalError("find_eta_min: no sign change of f' numerator above eta=-1000");
    }
  }
  while (!narrow_enough(lo, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (numerator_at(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Bracket{lo, hi};
}

double find_eta_min() {
  const Bracket b = find_eta_min_bracket();
  return 0.5 * (b.lo + b.hi);
}

CriticalData critical_alpha() {
  CriticalData out{};
  out.eta_min_bracket = find_eta_min_bracket();
  out.eta_min = 0.5 * (out.eta_min_bracket.lo + out.eta_min_bracket.hi);
  out.alpha_star = eval_f(out.eta_min);
  const double h = kFSecondStep;
  out.f_second_at_min =
      (eval_f(out.eta_min + h) - 2.0 * out.alpha_star + eval_f(out.eta_min - h)) / (h * h);

  const oracle::GoldenResult golden = oracle::golden_min_f(-100.0, 0.0);
  out.oracle_alpha_star = golden.f_value;
  if (std::abs(golden.f_value - out.alpha_star) > kOracleAgreement) {
    throw InternalError("critical_alpha: bisection gives " + std::to_string(out.alpha_star) +
                        " but golden section gives " + std::to_string(golden.f_value));
  }
  if (!(out.alpha_star > kTwentyThirds && out.alpha_star < 7.5)) {
    throw InternalError("critical_alpha: alpha* outside (20/3, 7.5)");
  }
  return out;
}

const CriticalData& critical_data() {
  static const CriticalData data = critical_alpha();
  return data;
}

ZeroSet classify(double alpha) { return classify(alpha, critical_data()); }

ZeroSet classify(double alpha, const CriticalData& critical, ClassifyOptions options) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ArgumentError("classify: alpha must be positive and finite");
  }
  const double band = options.alpha_band;
  const bool at_upper = std::abs(alpha - 7.5) <= band;
  const bool at_critical = std::abs(alpha - critical.alpha_star) <= band;

  ZeroSet out{alpha, {}, ZeroCase::v};
  if (at_upper && at_critical) {
    out.case_label = ZeroCase::boundary_ambiguous;
  } else if (at_upper) {
    out.case_label = ZeroCase::ii;
  } else if (at_critical) {
    out.case_label = ZeroCase::iv;
  } else if (alpha > 7.5) {
    out.case_label = ZeroCase::i;
  } else if (alpha > critical.alpha_star) {
    out.case_label = ZeroCase::iii;
  }

  const double eta_min = critical.eta_min;
  const double left_lo = -std::max(alpha, std::abs(eta_min)) - 1.0;
  const double right_hi = 0.5 * alpha + 1.0;

  switch (out.case_label) {
    case ZeroCase::v:
      break;
    case ZeroCase::iv:
      out.zeros.push_back(confirmed_zero(eta_min, critical.eta_min_bracket, alpha));
      break;
    case ZeroCase::ii:
    case ZeroCase::boundary_ambiguous: {
      if (alpha > critical.alpha_star + band) {
        const Root left = solve_f_equals(alpha, left_lo, eta_min);
        out.zeros.push_back(confirmed_zero(left.eta, left.bracket, alpha));
      }
      break;
    }
    case ZeroCase::i:
    case ZeroCase::iii: {
      const Root left = solve_f_equals(alpha, left_lo, eta_min);
      const Root right = solve_f_equals(alpha, eta_min, right_hi);
      out.zeros.push_back(confirmed_zero(left.eta, left.bracket, alpha));
      out.zeros.push_back(confirmed_zero(right.eta, right.bracket, alpha));
      break;
    }
  }

  // The origin is a double zero, triple exactly at alpha = 7.5. Its order
  // follows the label so that it agrees with the boundary band.
  const int origin_order =
      (out.case_label == ZeroCase::ii || out.case_label == ZeroCase::boundary_ambiguous) ? 3 : 2;
  out.zeros.push_back(ZeroRecord{0.0, origin_order, {0.0, 0.0}, Side::origin});
  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const ZeroRecord& a, const ZeroRecord& b) { return a.eta < b.eta; });
  return out;
}

BranchTable sweep(double alpha_min, double alpha_max, int steps, unsigned threads) {
  if (!(alpha_min > 0.0) || !(alpha_max > alpha_min) || !std::isfinite(alpha_max)) {
    throw ArgumentError("sweep: need 0 < alpha_min < alpha_max");
  }
  if (steps < 2) throw ArgumentError("sweep: steps must be >= 2");

  const CriticalData& critical = critical_data();
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    grid[i] = alpha_min + (alpha_max - alpha_min) * static_cast<double>(i) / (steps - 1);
  }
  grid.back() = alpha_max;

  std::vector<ZeroSet> sets(grid.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(grid.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        sets[i] = classify(grid[i], critical);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  BranchTable table;
  for (const ZeroSet& set : sets) {
    const std::size_t first = table.rows.size();
    for (const ZeroRecord& z : set.zeros) {
      Branch branch = Branch::iso;
      if (z.side != Side::origin) {
        if (z.eta <= critical.eta_min) {
          branch = Branch::neg1;
        } else {
          branch = z.eta < 0.0 ? Branch::neg2 : Branch::pos;
        }
      }
      const double s = z.side == Side::origin ? 0.0 : -z.eta / set.alpha;
      table.rows.push_back(BranchRow{set.alpha, branch, z.eta, s, set.case_label});
    }
    std::stable_sort(table.rows.begin() + static_cast<std::ptrdiff_t>(first), table.rows.end(),
                     [](const BranchRow& a, const BranchRow& b) { return a.branch < b.branch; });
  }
  return table;
}

std::optional<bool> zero_count_oracle_check(double alpha) {
  if (!(alpha > 0.0)) throw ArgumentError("zero_count_oracle_check: alpha must be positive");
  const CriticalData& critical = critical_data();
  if (std::abs(alpha - 7.5) <= kScanCutoff || std::abs(alpha - critical.alpha_star) <= kScanCutoff) {
    return std::nullopt;
  }
  const int changes = oracle::sign_scan(alpha, -alpha - 1.0, 0.5 * alpha + 1.0, kScanSamples);
  const std::size_t scanned = static_cast<std::size_t>(changes) + 1;
  return scanned == classify(alpha, critical).zeros.size();
}

}  // namespace mskit
