#ifndef WEALTHSTAT_CONVOLVE_HPP
#define WEALTHSTAT_CONVOLVE_HPP

#include <cstdint>
#include <vector>

#include "wealthstat/pmf.hpp"
#include "wealthstat/solver.hpp"

namespace wealthstat {

struct WeightedPart {
    Pmf pmf;
    std::int64_t weight = 1;
};

// Distribution of the total value v = sum_I w_I k_I under the product of
// the part laws.  Mass landing beyond v_max is accumulated into the
// truncation mass.
ValuePmf weighted_convolve(const std::vector<WeightedPart>& parts, std::int64_t v_max);

// Mean plus twenty standard deviations of the summed value, a generous
// default support for weighted_convolve.
std::int64_t default_value_support(const std::vector<WeightedPart>& parts);

// Z(q) = sum_v P(v) q^v of a solved system, evaluated from the per-species
// closed-form factors.  Z(1) = 1 and Z'(1) is the mean total value.
double generating_function(const WealthSystem& sys, double q);

// Equal-weighted convolution of `banks` geometric laws sharing total mean
// m: the negative binomial
//   P(k) = C(banks+k-1, k) (banks/(m+banks))^banks (m/(m+banks))^k .
// Interpolates the single-bank geometric law (banks = 1) and the Poisson
// law (banks -> infinity).
Pmf bank_convolution(double m, std::int64_t banks, double tail_tol = kDefaultTailTol);

// Equal-weighted convolution of `total` fermionic laws with mean
// total/owners each: Binomial(total, 1/owners).  Converges to
// Poisson(total/owners) as both grow.
Pmf fermionic_binomial(std::int64_t total, std::int64_t owners, double tail_tol = kDefaultTailTol);

// Convolution of a Poisson law (mean m) with a bosonic geometric law
// (mean mbar):
//   P(k) = (e^{-m}/(mbar+1)) (mbar/(mbar+1))^k sum_{j<=k} (m+m/mbar)^j/j!
// mbar = 0 degenerates to the pure Poisson law.
Pmf poisson_geometric_convolve(double m, double mbar, double tail_tol = kDefaultTailTol);

// Net balance a = deposits - debts where both sides follow the
// `banks`-fold convolution with means m_deposit and m_debt.
SignedPmf net_balance(double m_deposit, double m_debt, std::int64_t banks,
                      double tail_tol = kDefaultTailTol);

// Direct convolution of two Poisson laws; equals the Poisson law with the
// summed mean (the family is closed under equal-weighted convolution).
Pmf poisson_additivity_check(double m1, double m2, double tail_tol = kDefaultTailTol);

}  // namespace wealthstat

#endif
