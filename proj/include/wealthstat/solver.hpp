#ifndef WEALTHSTAT_SOLVER_HPP
#define WEALTHSTAT_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wealthstat/core_dist.hpp"
#include "wealthstat/pmf.hpp"

namespace wealthstat {

// Raised when a constraint root cannot be bracketed or refined; carries the
// final bracket in the message.
struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolvedMultipliers {
    // One entry per species; NaN for identical species (they share betabar).
    std::vector<double> beta;
    std::optional<double> betabar;
};

// A collection of species plus, once solved, the multipliers that realize
// the target means: one beta per distinguishable species, one shared
// betabar reproducing the mean per-owner value of the identical sector.
struct WealthSystem {
    std::vector<SpeciesSpec> species;
    double total_value_mean = 0.0;
    std::optional<SolvedMultipliers> solved;
};

// beta with truncated_poisson_mean(beta, cutoff) = m.  Closed form
// beta = -ln m when the cutoff is unbounded.
GentileParams solve_beta_distinguishable(double m, Cutoff cutoff);

// Shared betabar with sum_i w_i * truncated_geometric_mean(betabar w_i,
// cutoff_i) = total_value_mean.  The left side is strictly decreasing in
// betabar, so the root is unique.  The returned norm is the joint
// zero-occupancy probability prod_i N_i.
GentileParams solve_betabar(const std::vector<std::pair<std::int64_t, Cutoff>>& identical_species,
                            double total_value_mean);

// Solves every multiplier of the system; errors are labeled with the
// offending species index.
WealthSystem solve_system(WealthSystem sys);

// Relative residual demanded of every solved constraint.
inline constexpr double kSolverTol = 1e-10;

}  // namespace wealthstat

#endif
