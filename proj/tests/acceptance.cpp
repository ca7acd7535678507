// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mskit/bcurve.hpp"
#include "mskit/classify.hpp"
#include "mskit/moments.hpp"
#include "mskit/oracle.hpp"

using namespace mskit;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

struct Run {
  int code;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = "\"" MSKIT_CLI_PATH "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// The alpha grid shared by the zero-count and zero-relation criteria.
std::vector<double> case_grid() {
  const double a = critical_data().alpha_star;
  return {2.0, 5.0, 20.0 / 3.0, a - 1e-3, a + 1e-3, 7.4, 7.5, 7.6, 10.0, 50.0};
}

Outcome origin_values() {
  double worst_b = 0.0, worst_b2 = 0.0, worst_b3 = 0.0;
  for (double a : {0.1, 1.0, 20.0 / 3.0, 7.5, 10.0, 100.0}) {
    const BEval e = eval_B(0.0, a);
    worst_b = std::max({worst_b, std::abs(e.b), std::abs(e.b1)});
    const double expect = 16.0 / (15.0 * a) * (a - 7.5);
    const double err = expect == 0.0 ? std::abs(e.b2) : std::abs(e.b2 - expect) / std::abs(expect);
    worst_b2 = std::max(worst_b2, err);
  }
  for (double a : {1.0, 7.5, 10.0}) worst_b3 = std::max(worst_b3, std::abs(eval_B(0.0, a).b3 + 32.0 / 105.0));
  return {worst_b <= 1e-13 && worst_b2 <= 1e-12 && worst_b3 <= 1e-10,
          "|b|,|b1| " + fmt(worst_b) + " b2 rel " + fmt(worst_b2) + " b3 " + fmt(worst_b3)};
}

Outcome f_anchors() {
  const double e0 = std::abs(eval_f(0.0) - 7.5);
  const double e1 = std::abs(eval_f_prime(0.0) - 5.0 / 7.0);
  return {e0 <= 1e-12 && e1 <= 1e-10, "f(0) " + fmt(e0) + " f'(0) " + fmt(e1)};
}

Outcome critical_inclusion() {
  const CriticalData& c = critical_data();
  const double golden = oracle::golden_min_f().f_value;
  const double gap = std::abs(c.alpha_star - golden);
  const bool ok = c.alpha_star > 20.0 / 3.0 && c.alpha_star < 7.5 && gap <= 1e-9 && c.eta_min < 0.0;
  std::ostringstream s;
  s.precision(15);
  s << "alpha*=" << c.alpha_star << " eta_min=" << c.eta_min << " oracle gap " << fmt(gap);
  return {ok, s.str()};
}

Outcome zero_count_table() {
  const std::vector<std::size_t> counts{1, 1, 1, 1, 3, 3, 2, 3, 3, 3};
  const std::vector<ZeroCase> cases{ZeroCase::v,   ZeroCase::v,   ZeroCase::v, ZeroCase::v,
                                     ZeroCase::iii, ZeroCase::iii, ZeroCase::ii, ZeroCase::i,
                                     ZeroCase::i,   ZeroCase::i};
  const auto grid = case_grid();
  std::string got;
  bool ok = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ZeroSet set = classify(grid[i]);
    ok = ok && set.zeros.size() == counts[i] && set.case_label == cases[i];
    // sign pattern: negatives before the origin, positives after it
    int negatives = 0, positives = 0;
    for (const auto& z : set.zeros) {
      negatives += z.side == Side::negative && z.eta < 0.0;
      positives += z.side == Side::positive && z.eta > 0.0;
    }
    const int expect_neg = cases[i] == ZeroCase::iii ? 2 : (cases[i] == ZeroCase::v ? 0 : 1);
    const int expect_pos = cases[i] == ZeroCase::i ? 1 : 0;
    ok = ok && negatives == expect_neg && positives == expect_pos;
    // second route: sign scan plus the analytic origin (inconclusive only at 7.5)
    const auto agree = zero_count_oracle_check(grid[i]);
    if (agree.has_value()) {
      ok = ok && *agree;
    } else {
      ok = ok && oracle::sign_scan(7.5, -8.0, 4.0, 100000) == 2 && set.zeros.size() == 2;
    }
    got += (i ? "," : "") + std::to_string(set.zeros.size());
  }
  return {ok, "counts " + got};
}

Outcome strict_ordering() {
  double margin = INFINITY;
  for (double a : {8.0, 10.0, 50.0}) {
    const ZeroSet set = classify(a);
    if (set.zeros.size() != 3) return {false, "wrong zero count at alpha=" + fmt(a)};
    const EtaBarPair bars = *eta_bar(a);
    margin = std::min({margin, bars.eta_bar_1 - set.zeros[0].eta, -0.5 * a - bars.eta_bar_1,
                       set.zeros[2].eta - bars.eta_bar_2, bars.eta_bar_2});
  }
  return {margin > 1e-6, "smallest margin " + fmt(margin)};
}

Outcome zero_relation() {
  double worst = 0.0;
  std::size_t n = 0;
  for (double a : case_grid()) {
    for (const auto& z : classify(a).zeros) {
      if (z.side == Side::origin) continue;
      worst = std::max(worst, zero_relation_residual(z.eta, a));
      ++n;
    }
  }
  return {worst < 1e-10 && n > 0, std::to_string(n) + " zeros, max " + fmt(worst)};
}

Outcome derivative_consistency() {
  double worst = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double eta = -20.0 + 5.0 * i;
    for (double a : {1.0, 5.0, 7.5, 10.0, 50.0}) {
      for (int order = 1; order <= 3; ++order) worst = std::max(worst, oracle::fd_check_B(eta, a, order));
    }
  }
  return {worst < 1e-5, "max relative error " + fmt(worst)};
}

Outcome recurrence() {
  double worst = 0.0;
  for (double mag : {1e-3, 1.0, 10.0, 1e2, 1e3, 1e4}) {
    for (double eta : {mag, -mag}) {
      const MomentSet m = compute_moments(eta, 6);
      for (int k : {0, 2, 4}) worst = std::max(worst, std::abs(recurrence_residual(m, k)));
    }
  }
  return {worst <= 1e-12, "max residual " + fmt(worst)};
}

Outcome positivity() {
  double worst = 0.0;
  bool positive = true;
  for (double eta : {-5.0, 0.0, 5.0}) {
    const auto p = oracle::positivity_2d(eta);
    positive = positive && p.rhs > 0.0;
    worst = std::max(worst, std::abs(p.lhs - p.rhs) / p.rhs);
  }
  // exact value of the eta = 0 integral by term-by-term polynomial integration
  const double exact = 4.0 / 525.0;
  const double err = std::abs(oracle::positivity_2d(0.0).rhs - exact) / exact;
  return {positive && worst <= 1e-6 && err <= 1e-10,
          "lhs/rhs rel " + fmt(worst) + " exact rel " + fmt(err)};
}

Outcome branch_monotonicity() {
  const double a_star = critical_data().alpha_star;
  const BranchTable inner = sweep(a_star + 1e-3, 7.5 - 1e-3, 50);
  std::vector<double> neg1, neg2;
  for (const auto& r : inner.rows) {
    if (r.branch == Branch::neg1) neg1.push_back(r.eta);
    if (r.branch == Branch::neg2) neg2.push_back(r.eta);
  }
  bool ok = neg1.size() == 50 && neg2.size() == 50;
  for (std::size_t i = 1; ok && i < 50; ++i) ok = neg1[i] < neg1[i - 1] && neg2[i] > neg2[i - 1];

  const BranchTable outer = sweep(7.5 + 1e-3, 50.0, 50);
  std::size_t pos = 0;
  for (const auto& r : outer.rows) {
    if (r.branch != Branch::pos) continue;
    ++pos;
    ok = ok && r.eta > 0.0 && r.order_parameter < 0.0;
  }
  ok = ok && pos == 50;
  return {ok, "case (iii) rows " + std::to_string(neg1.size()) + "+" + std::to_string(neg2.size()) +
                  ", positive branch rows " + std::to_string(pos)};
}

Outcome alpha_monotonicity() {
  double smallest = INFINITY;
  for (double eta : {-5.0, -1.0, 1.0, 5.0}) {
    for (double a : {1.0, 5.0, 7.5, 10.0}) {
      smallest = std::min(smallest, eval_B(eta, a + 1e-3).b - eval_B(eta, a).b);
    }
  }
  return {smallest > 0.0, "smallest increment " + fmt(smallest)};
}

Outcome cli_contract() {
  const Run zeros = run_cli("zeros --alpha 10 --format csv");
  std::vector<std::string> rows;
  std::istringstream in(zeros.out);
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  const bool zeros_ok = zeros.code == 0 && rows.size() == 4 &&
                        rows[0] == "alpha,case,eta,multiplicity,side,bracket_lo,bracket_hi";
  const Run verify = run_cli("verify");
  const Run c1 = run_cli("critical");
  const Run c2 = run_cli("critical");
  const bool critical_ok = c1.code == 0 && !c1.out.empty() && c1.out == c2.out;
  return {zeros_ok && verify.code == 0 && critical_ok,
          std::string("zeros ") + (zeros_ok ? "ok" : "bad") + ", verify exit " + std::to_string(verify.code) +
              ", critical " + (critical_ok ? "identical" : "differs")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"origin derivative values", origin_values},
      {"f anchors", f_anchors},
      {"critical inclusion", critical_inclusion},
      {"zero-count table", zero_count_table},
      {"strict ordering at zeros", strict_ordering},
      {"zero-relation residual", zero_relation},
      {"derivative consistency", derivative_consistency},
      {"recurrence residual", recurrence},
      {"positivity identity", positivity},
      {"branch monotonicity", branch_monotonicity},
      {"alpha-monotonicity of B", alpha_monotonicity},
      {"CLI contract", cli_contract},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first << "  (" << o.detail
              << ")\n";
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed\n";
  return failures ? 1 : 0;
}
