#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace mskit {

enum class Side { negative, origin, positive };

/// Regimes of the zero-count classification:
///   i    alpha > 7.5             three zeros, eta1 < 0 < eta2
///   ii   alpha = 7.5             two zeros, eta1 < 0 and a triple zero at 0
///   iii  alpha* < alpha < 7.5    three zeros, eta1 < eta2 < 0
///   iv   alpha = alpha*          two zeros, a double zero eta1 < 0 and 0
///   v    alpha < alpha*          the isotropic zero only
/// boundary_ambiguous is reported only when a caller-supplied tolerance band
/// is wide enough for alpha to sit in both boundary bands at once.
enum class ZeroCase { i, ii, iii, iv, v, boundary_ambiguous };

std::string_view to_string(ZeroCase c);
std::string_view to_string(Side s);

struct Bracket {
  double lo;
  double hi;
};

struct ZeroRecord {
  double eta;
  int multiplicity;
  Bracket bracket;  // f - alpha changes sign across it; [0, 0] for the origin
  Side side;
};

struct ZeroSet {
  double alpha;
  std::vector<ZeroRecord> zeros;  // ascending eta
  ZeroCase case_label;
};

struct CriticalData {
  double eta_min;
  double alpha_star;
  double f_second_at_min;
  Bracket eta_min_bracket;
  double oracle_alpha_star;  // golden-section value it was checked against
};

struct ClassifyOptions {
  double alpha_band = 1e-9;  // boundary tolerance around 7.5 and alpha*
};

/// Unique root of f_prime_numerator, by bisection from [-8, 0] with leftward
/// expansion. Returns the final bracket; its width is <= 1e-13 max(1, |eta|).
Bracket find_eta_min_bracket();
double find_eta_min();

/// eta_min, alpha* = f(eta_min), and a finite-difference f'' witness.
/// Throws InternalError if alpha* disagrees with the golden-section oracle by
/// more than 1e-8 or falls outside (20/3, 7.5).
CriticalData critical_alpha();

/// critical_alpha(), computed on first use and shared read-only afterwards.
const CriticalData& critical_data();

/// All zeros of B(., alpha), found by bisection on the monotone pieces of f
/// and confirmed against B. Throws ArgumentError for alpha <= 0.
ZeroSet classify(double alpha);
ZeroSet classify(double alpha, const CriticalData& critical, ClassifyOptions options = {});

enum class Branch { iso, neg1, neg2, pos };
std::string_view to_string(Branch b);

struct BranchRow {
  double alpha;
  Branch branch;
  double eta;
  double order_parameter;  // S = -eta / alpha
  ZeroCase case_label;
};

struct BranchTable {
  std::vector<BranchRow> rows;  // sorted by (alpha, branch)
};

/// classify() on `steps` equally spaced alphas in [alpha_min, alpha_max].
/// The root left of eta_min is branch neg1; the root right of it is neg2 when
/// negative and pos when positive. `threads` = 0 picks the hardware count;
/// the result does not depend on it.
BranchTable sweep(double alpha_min, double alpha_max, int steps, unsigned threads = 1);

/// Compares classify(alpha)'s zero count with a 2e5-point sign scan of B on
/// [-alpha-1, alpha/2+1] plus the analytically known origin. std::nullopt
/// (inconclusive) within 1e-6 of 7.5 or alpha*, where zeros are tangential.
std::optional<bool> zero_count_oracle_check(double alpha);

}  // namespace mskit
