#ifndef WEALTHSTAT_MC_HPP
#define WEALTHSTAT_MC_HPP

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "wealthstat/core_dist.hpp"
#include "wealthstat/pmf.hpp"

namespace wealthstat {

// Identifies one reproducible random sequence.  Identical (seed, stream)
// pairs replay identical samples; distinct streams are independent.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// Deterministic engine pinned to mt19937_64 seeded through std::seed_seq
// from the words of (seed, stream); both are fully specified by the
// standard, so sequences are reproducible across builds.
class SampleRng {
public:
    explicit SampleRng(RngStream s);
    std::uint64_t next() { return eng_(); }
    std::uint64_t below(std::uint64_t n);  // unbiased uniform over [0, n)

private:
    std::mt19937_64 eng_;
};

// One random allocation: per-owner possession counts and the induced
// occupancy histogram (occupancy[k] = number of owners holding k).
struct AllocationSample {
    std::vector<std::int64_t> ownership;
    std::vector<std::int64_t> occupancy;
};

// Each of `total` distinguishable units goes to a uniformly random owner.
AllocationSample sample_distinguishable(std::int64_t total, std::int64_t owners, RngStream rng);

// Uniformly random weak composition of `total` identical units over the
// owners (stars and bars: a uniform subset of bar positions).
AllocationSample sample_identical_bosonic(std::int64_t total, std::int64_t owners, RngStream rng);

// A uniformly random subset of `total` owners holds one unit each;
// requires total <= owners.
AllocationSample sample_identical_fermionic(std::int64_t total, std::int64_t owners, RngStream rng);

// Averaged occupancy n_k / N over the samples, exactly normalized.
Pmf empirical_occupancy(const std::vector<AllocationSample>& samples);

enum class SampleKind { distinguishable, bosonic, fermionic };

// Empirical occupancy of n_samples independent samples using stream ids
// 0..n_samples-1.  Sampling parallelizes across streams; the result is
// identical for every thread count.
Pmf sampled_occupancy(SampleKind kind, std::int64_t total, std::int64_t owners,
                      std::int64_t n_samples, std::uint64_t seed, int threads = 1);

// Exact census of every occupancy satisfying the conservation constraints
// of a small instance, with the configuration count Omega = Upsilon * Phi
// evaluated in exact integer arithmetic.
struct OccupancyCensus {
    using Ownership = std::vector<std::int64_t>;          // one count per species
    using Occupancy = std::map<Ownership, std::int64_t>;  // nonzero cells only
    struct Entry {
        Occupancy occupancy;
        mpz_class omega;
    };
    std::vector<Entry> entries;
    mpz_class total = 0;      // sum of Omega over all occupancies
    mpz_class max_omega = 0;
    std::vector<Occupancy> maximizers;  // ties reported, never broken
};

// Enumerates every occupancy of `owners` people over the given species.
// Distinguishable species conserve their individual totals (aligned with
// their order of appearance); the identical sector conserves only the
// summed value.  Guarded to instances with owners <= 12 and budgets <= 12.
OccupancyCensus enumerate_extremum(std::int64_t owners, const std::vector<SpeciesSpec>& species,
                                   const std::vector<std::int64_t>& distinguishable_totals,
                                   std::int64_t identical_total_value);

// Single-species convenience wrapper.
OccupancyCensus enumerate_single(std::int64_t owners, std::int64_t total, WealthClass cls,
                                 Cutoff cutoff = Cutoff::unbounded());

}  // namespace wealthstat

#endif
