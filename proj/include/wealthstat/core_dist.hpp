#ifndef WEALTHSTAT_CORE_DIST_HPP
#define WEALTHSTAT_CORE_DIST_HPP

#include <cstdint>

#include "wealthstat/pmf.hpp"

namespace wealthstat {

enum class WealthClass { distinguishable, identical };

// One kind of wealth object.  Distinguishable species (coins, banknotes)
// carry an individually conserved mean count; identical species (deposits,
// UTXOs) are constrained only through the shared total value.
struct SpeciesSpec {
    WealthClass cls = WealthClass::distinguishable;
    std::int64_t weight = 1;               // unit value, >= 1
    Cutoff cutoff = Cutoff::unbounded();   // maximal possession count
    double target_mean = 0.0;              // mean count; used for distinguishable species
};

void validate(const SpeciesSpec& spec);  // throws std::invalid_argument

// Lagrange multiplier and the matching normalization constant of a
// single-species occupation law.
struct GentileParams {
    double beta = 0.0;
    double norm = 1.0;
};

inline constexpr double kDefaultTailTol = 1e-12;

// p_k proportional to e^{-beta k}/k! for 0 <= k <= cutoff.  Unbounded
// support is cut where the remaining mass drops below tail_tol; the cut
// mass is reported in Pmf::truncation_mass.
Pmf truncated_poisson(double beta, Cutoff cutoff, double tail_tol = kDefaultTailTol);

// p_k = N e^{-beta_w k} for 0 <= k <= cutoff, N = (1-e^{-beta_w}) /
// (1-e^{-(cutoff+1) beta_w}).  With unbounded support this is the
// Bose-Einstein law and requires beta_w > 0; at cutoff 1 it is Fermi-Dirac.
Pmf truncated_geometric(double beta_w, Cutoff cutoff, double tail_tol = kDefaultTailTol);

enum class AtomicKind { poisson, bosonic, fermionic };

// The elemental laws parameterized directly by their mean m:
//   poisson   e^{-m} m^k / k!                    variance m
//   bosonic   (1/(1+m)) (m/(1+m))^k              variance m(1+m)
//   fermionic (1-m, m), requires m <= 1          variance m(1-m)
// All reduce to a point mass at 0 when m = 0.
Pmf atomic_pmf(AtomicKind kind, double m, double tail_tol = kDefaultTailTol);

// Normalization constants of the two truncated laws.
double truncated_poisson_norm(double beta, Cutoff cutoff);
double truncated_geometric_norm(double beta_w, Cutoff cutoff);

// Closed-form means: (1 - N e^{-beta L}/L!) e^{-beta} for the truncated
// Poisson law and
//   [1-(L+1)e^{-L b}+L e^{-(L+1)b}] / [(e^b-1)(1-e^{-(L+1)b})]
// for the truncated geometric one.  Both are strictly decreasing in the
// multiplier, which the constraint solvers rely on.
double truncated_poisson_mean(double beta, Cutoff cutoff);
double truncated_geometric_mean(double beta_w, Cutoff cutoff);

// Exact variances of the truncated laws (the negated derivatives of the
// means with respect to the multiplier).
double truncated_poisson_variance(double beta, Cutoff cutoff);
double truncated_geometric_variance(double beta_w, Cutoff cutoff);

}  // namespace wealthstat

#endif
