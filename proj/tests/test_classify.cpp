#include <doctest.h>

#include <cmath>

#include "mskit/bcurve.hpp"
#include "mskit/classify.hpp"
#include "mskit/errors.hpp"
#include "mskit/moments.hpp"
#include "mskit/oracle.hpp"

using namespace mskit;

namespace {

// High-precision references (mpmath, 30-40 digits), rounded to double.
constexpr double kEtaMin = -2.178287974844518190083614990930855810809;
constexpr double kAlphaStar = 6.731486396483356510410506485928897534018;

std::vector<double> nonzero_roots(const ZeroSet& set) {
  std::vector<double> out;
  for (const auto& z : set.zeros) {
    if (z.side != Side::origin) out.push_back(z.eta);
  }
  return out;
}

}  // namespace

TEST_CASE("eta_min: unique root of the f' numerator") {
  const double eta_min = find_eta_min();
  CHECK(eta_min < 0.0);
  CHECK(std::abs(eta_min - kEtaMin) < 1e-12);
  CHECK(f_prime_numerator(compute_moments(0.0)) == doctest::Approx(4.0 / 315.0).epsilon(1e-13));
  CHECK(f_prime_numerator(compute_moments(0.0)) > 0.0);
  CHECK(eval_f_prime(eta_min - 1.0) < 0.0);
  CHECK(eval_f_prime(eta_min + 1.0) > 0.0);
  const Bracket b = find_eta_min_bracket();
  CHECK(b.lo <= eta_min);
  CHECK(eta_min <= b.hi);
  CHECK(b.hi - b.lo <= 1e-13 * std::max(1.0, std::abs(eta_min)));
  CHECK(f_prime_numerator(compute_moments(b.lo)) < 0.0);
  CHECK(f_prime_numerator(compute_moments(b.hi)) > 0.0);
}

TEST_CASE("critical data") {
  const CriticalData& c = critical_data();
  CHECK(c.alpha_star > 20.0 / 3.0);
  CHECK(c.alpha_star < 7.5);
  CHECK(std::abs(c.alpha_star - kAlphaStar) < 1e-12);
  CHECK(std::abs(c.alpha_star - c.oracle_alpha_star) < 1e-9);
  CHECK(std::abs(c.alpha_star - eval_f(c.eta_min)) < 1e-14);
  CHECK(c.f_second_at_min > 0.0);
  CHECK(c.f_second_at_min == doctest::Approx(0.30324510590879).epsilon(1e-6));
  CHECK(std::abs(eval_f_prime(c.eta_min)) < 1e-8);
  // the tangential zero at alpha* is the left root of the quadratic factor
  CHECK(std::abs(eta_bar(c.alpha_star)->eta_bar_1 - c.eta_min) < 1e-7);

  const CriticalData again = critical_alpha();
  CHECK(again.alpha_star == c.alpha_star);
  CHECK(again.eta_min == c.eta_min);
}

TEST_CASE("classify: case (i) at alpha = 10") {
  const ZeroSet set = classify(10.0);
  CHECK(set.case_label == ZeroCase::i);
  REQUIRE(set.zeros.size() == 3);
  const EtaBarPair bars = *eta_bar(10.0);
  CHECK(set.zeros[0].eta < bars.eta_bar_1);
  CHECK(bars.eta_bar_1 < -5.0);
  CHECK(set.zeros[1].eta == 0.0);
  CHECK(set.zeros[1].multiplicity == 2);
  CHECK(set.zeros[1].side == Side::origin);
  CHECK(set.zeros[2].eta > bars.eta_bar_2);
  CHECK(bars.eta_bar_2 > 0.0);
  CHECK(std::abs(set.zeros[0].eta - (-7.9013716051846750835)) < 1e-11);
  CHECK(std::abs(set.zeros[2].eta - 2.35429141338392629484514550325) < 1e-11);
  for (const auto& z : set.zeros) {
    CHECK(std::abs(eval_B(z.eta, 10.0).b) <= 1e-9 * (1.0 + z.eta * z.eta));
    if (z.side == Side::origin) continue;
    CHECK(z.multiplicity == 1);
    CHECK(z.bracket.lo <= z.eta);
    CHECK(z.eta <= z.bracket.hi);
    CHECK((eval_f(z.bracket.lo) - 10.0) * (eval_f(z.bracket.hi) - 10.0) <= 0.0);
  }
  CHECK(set.zeros[0].side == Side::negative);
  CHECK(set.zeros[2].side == Side::positive);
}

TEST_CASE("classify: case (ii) at alpha = 7.5") {
  const ZeroSet set = classify(7.5);
  CHECK(set.case_label == ZeroCase::ii);
  REQUIRE(set.zeros.size() == 2);
  CHECK(set.zeros[0].eta < -3.75);
  CHECK(std::abs(set.zeros[0].eta - (-4.6110092674687512658)) < 1e-11);
  CHECK(set.zeros[1].eta == 0.0);
  CHECK(set.zeros[1].multiplicity == 3);
}

TEST_CASE("classify: case (v) below alpha*") {
  for (double a : {0.5, 2.0, 5.0, 20.0 / 3.0, kAlphaStar - 1e-3}) {
    CAPTURE(a);
    const ZeroSet set = classify(a);
    CHECK(set.case_label == ZeroCase::v);
    REQUIRE(set.zeros.size() == 1);
    CHECK(set.zeros[0].eta == 0.0);
    CHECK(set.zeros[0].multiplicity == 2);
  }
  CHECK_THROWS_AS(classify(0.0), ArgumentError);
  CHECK_THROWS_AS(classify(-1.0), ArgumentError);
}

TEST_CASE("classify: case (iii) between alpha* and 7.5") {
  const CriticalData& c = critical_data();
  for (int i = 0; i <= 20; ++i) {
    const double lo = c.alpha_star + 1e-3;
    const double a = lo + (7.5 - 1e-3 - lo) * i / 20.0;
    CAPTURE(a);
    const ZeroSet set = classify(a);
    CHECK(set.case_label == ZeroCase::iii);
    REQUIRE(set.zeros.size() == 3);
    CHECK(set.zeros[0].eta < c.eta_min);
    CHECK(set.zeros[1].eta > c.eta_min);
    CHECK(set.zeros[1].eta < 0.0);
    CHECK(set.zeros[2].eta == 0.0);
    CHECK(set.zeros[0].multiplicity == 1);
    CHECK(set.zeros[1].multiplicity == 1);
  }
  const ZeroSet s74 = classify(7.4);
  CHECK(std::abs(s74.zeros[0].eta - (-4.4321263014267167333)) < 1e-11);
  CHECK(std::abs(s74.zeros[1].eta - (-0.144810391034851543899572762488)) < 1e-11);
}

TEST_CASE("classify: case (iv) at alpha*") {
  const CriticalData& c = critical_data();
  const ZeroSet set = classify(c.alpha_star);
  CHECK(set.case_label == ZeroCase::iv);
  REQUIRE(set.zeros.size() == 2);
  CHECK(set.zeros[0].eta == c.eta_min);
  CHECK(set.zeros[0].multiplicity == 2);
  CHECK(set.zeros[1].eta == 0.0);
}

TEST_CASE("classify: boundary band") {
  const CriticalData& c = critical_data();
  CHECK(classify(7.5 + 5e-10).case_label == ZeroCase::ii);
  CHECK(classify(7.5 - 5e-10).case_label == ZeroCase::ii);
  CHECK(classify(c.alpha_star + 5e-10).case_label == ZeroCase::iv);
  CHECK(classify(7.5 + 1e-6).case_label == ZeroCase::i);
  // bands wide enough to overlap leave the label undecided
  const ZeroSet wide = classify(7.2, c, ClassifyOptions{0.5});
  CHECK(wide.case_label == ZeroCase::boundary_ambiguous);
}

TEST_CASE("classify: strict ordering against the quadratic roots") {
  for (double a : {8.0, 10.0, 50.0}) {
    CAPTURE(a);
    const ZeroSet set = classify(a);
    const auto roots = nonzero_roots(set);
    REQUIRE(roots.size() == 2);
    const EtaBarPair bars = *eta_bar(a);
    CHECK(bars.eta_bar_1 - roots[0] > 1e-6);
    CHECK(-0.5 * a - bars.eta_bar_1 > 1e-6);
    CHECK(roots[1] - bars.eta_bar_2 > 1e-6);
    CHECK(bars.eta_bar_2 > 1e-6);
    // sign of B' at the zeros, from the factorized form
    CHECK(eval_B(roots[0], a).b1 > 0.0);
    CHECK(eval_B(roots[1], a).b1 < 0.0);
  }
  const ZeroSet fifty = classify(50.0);
  CHECK(std::abs(fifty.zeros[0].eta - (-48.4346410740059044412662382624)) < 1e-10);
  CHECK(std::abs(fifty.zeros[2].eta - 23.3972473594994623149649944366) < 1e-10);
}

TEST_CASE("classify: both formulations confirm every root") {
  for (double a : {6.8, 7.0, 7.3, 7.6, 12.0, 30.0, 100.0, 400.0}) {
    CAPTURE(a);
    for (double eta : nonzero_roots(classify(a))) {
      CHECK(std::abs(eval_B(eta, a).b) <= 1e-9 * (1.0 + eta * eta));
      CHECK(std::abs(eval_f(eta) - a) <= 1e-9 * a);
      CHECK(zero_relation_residual(eta, a) < 1e-10);
    }
  }
}

TEST_CASE("bracket validity: B < 0 outside [-alpha-1, alpha/2+1]") {
  for (double a : {0.1, 1.0, 5.0, 7.5, 10.0, 50.0, 200.0}) {
    CAPTURE(a);
    CHECK(eval_B(-a - 1.0, a).b < 0.0);
    CHECK(eval_B(0.5 * a + 1.0, a).b < 0.0);
  }
}

TEST_CASE("zero_count_oracle_check") {
  CHECK(zero_count_oracle_check(10.0) == std::optional<bool>(true));
  CHECK(zero_count_oracle_check(2.0) == std::optional<bool>(true));
  CHECK(zero_count_oracle_check(7.0) == std::optional<bool>(true));
  CHECK(classify(7.0).zeros.size() == 3);  // 7.0 > alpha*
  CHECK_FALSE(zero_count_oracle_check(7.5).has_value());
  CHECK_FALSE(zero_count_oracle_check(critical_data().alpha_star + 1e-7).has_value());
}

TEST_CASE("sweep(1, 6, 11): isotropic branch only") {
  const BranchTable t = sweep(1.0, 6.0, 11);
  CHECK(t.rows.size() == 11);
  for (const auto& r : t.rows) {
    CHECK(r.branch == Branch::iso);
    CHECK(r.eta == 0.0);
    CHECK(r.order_parameter == 0.0);
    CHECK(r.case_label == ZeroCase::v);
  }
}

TEST_CASE("sweep(8, 12, 5): three branches per alpha") {
  const BranchTable t = sweep(8.0, 12.0, 5);
  REQUIRE(t.rows.size() == 15);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const auto& r = t.rows[i];
    CAPTURE(i);
    CHECK(r.alpha == doctest::Approx(8.0 + static_cast<double>(i / 3)).epsilon(1e-15));
    CHECK(std::abs(r.order_parameter + r.eta / r.alpha) < 1e-15);
    switch (r.branch) {
      case Branch::iso: CHECK(r.order_parameter == 0.0); break;
      case Branch::neg1: CHECK(r.order_parameter > 0.0); break;
      case Branch::pos: CHECK(r.order_parameter < 0.0); break;
      case Branch::neg2: FAIL("no inner negative branch above 7.5"); break;
    }
  }
  CHECK(t.rows[0].branch == Branch::iso);
  CHECK(t.rows[1].branch == Branch::neg1);
  CHECK(t.rows[2].branch == Branch::pos);
  CHECK_THROWS_AS(sweep(2.0, 1.0, 5), ArgumentError);
  CHECK_THROWS_AS(sweep(1.0, 2.0, 1), ArgumentError);
}

TEST_CASE("branch monotonicity in case (iii)") {
  const CriticalData& c = critical_data();
  const BranchTable t = sweep(c.alpha_star + 1e-3, 7.5 - 1e-3, 50);
  std::vector<double> outer, inner;
  for (const auto& r : t.rows) {
    if (r.branch == Branch::neg1) outer.push_back(r.eta);
    if (r.branch == Branch::neg2) inner.push_back(r.eta);
  }
  REQUIRE(outer.size() == 50);
  REQUIRE(inner.size() == 50);
  for (std::size_t i = 1; i < 50; ++i) {
    CHECK(outer[i] < outer[i - 1]);
    CHECK(inner[i] > inner[i - 1]);
  }
}

TEST_CASE("sweep output does not depend on the thread count") {
  const BranchTable serial = sweep(6.0, 20.0, 37, 1);
  for (unsigned threads : {2u, 4u, 0u}) {
    const BranchTable parallel = sweep(6.0, 20.0, 37, threads);
    REQUIRE(parallel.rows.size() == serial.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
      CHECK(parallel.rows[i].alpha == serial.rows[i].alpha);
      CHECK(parallel.rows[i].branch == serial.rows[i].branch);
      CHECK(parallel.rows[i].eta == serial.rows[i].eta);
    }
  }
}
