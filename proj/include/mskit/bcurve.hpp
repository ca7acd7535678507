#pragma once

#include <optional>

#include "mskit/moments.hpp"

namespace mskit {

/// B(eta, alpha) = 3 exp(-eta) / A_0(eta) - (3 - 2 eta + 4 eta^2 / alpha) and
/// its first three eta-derivatives.
struct BEval {
  double eta;
  double alpha;
  double b;
  double b1;
  double b2;
  double b3;
};

/// Roots of eta^2 + eta alpha / 2 + (alpha / 2)(15/2 - alpha), ordered.
struct EtaBarPair {
  double alpha;
  double eta_bar_1;
  double eta_bar_2;
};

/// All four values come from closed forms in q, r_2, r_4, r_6, so they stay
/// finite for any finite eta. Throws ArgumentError for alpha <= 0.
BEval eval_B(double eta, double alpha);
BEval eval_B(const MomentSet& moments, double alpha);

/// eta^2 + eta alpha / 2 + (alpha / 2)(15/2 - alpha).
double quadratic_factor(double eta, double alpha);

/// -(8 eta / (3 alpha^2)) * quadratic_factor(eta, alpha). Pure formula with no
/// check that eta is a zero of B.
double derivative_factor(double eta, double alpha);

/// B_eta at a zero of B in factorized form. Checks |B| <= 1e-8 (1 + eta^2)
/// and throws ContractError carrying the measured |B| otherwise.
double b1_factorized(double eta_star, double alpha);

/// (4 / (3 alpha)) (eta_star + 15 - 2 alpha): B_eta_eta at a zero that also
/// annihilates the quadratic factor. Throws DomainError for alpha <= 20/3 and
/// ContractError if eta_star is not a root of the quadratic factor.
double b2_at_quadratic_root(double eta_star, double alpha);

/// std::nullopt when alpha < 20/3 (no real roots). The roots coincide at
/// -alpha/4 for alpha == 20/3; eta_bar_2 is exactly 0 at alpha == 7.5.
std::optional<EtaBarPair> eta_bar(double alpha);

/// f(eta) = A_0 / (A_2 - A_4); a nonzero eta is a zero of B(., alpha) iff
/// f(eta) == alpha.
double eval_f(double eta);
double eval_f(const MomentSet& moments);

double eval_f_prime(double eta);
double eval_f_prime(const MomentSet& moments);

/// (r_4 - r_6) - r_2 (r_2 - r_4): numerator of f' in ratio form.
double f_prime_numerator(const MomentSet& moments);

/// |r_2(eta*) - (alpha - 2 eta*) / (3 alpha)|.
double zero_relation_residual(double eta_star, double alpha);

}  // namespace mskit
