#ifndef WEALTHSTAT_BITCOIN_HPP
#define WEALTHSTAT_BITCOIN_HPP

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "wealthstat/pmf.hpp"

namespace wealthstat {

// Exact integer-partition counts P(0..v_max) computed by the Euler
// pentagonal-number recurrence in arbitrary precision.
class PartitionTable {
public:
    explicit PartitionTable(std::int64_t v_max);

    std::int64_t v_max() const noexcept { return static_cast<std::int64_t>(vals_.size()) - 1; }
    const mpz_class& value(std::int64_t v) const;
    double log_value(std::int64_t v) const;  // natural log, exact to double rounding

private:
    std::vector<mpz_class> vals_;
};

// Satoshi hard cap: the largest UTXO denomination.
inline constexpr std::int64_t kBitcoinHardCap = 2'100'000'000'000'000LL;

// Largest total value the exact evaluators accept; partition counts beyond
// this are out of numeric reach.
inline constexpr std::int64_t kMaxBitcoinValueSupport = 10'000'000LL;

// One identical species per denomination i = 1..denom_cap of weight i,
// sharing the multiplier betabar fixed by the mean total value per address.
struct BitcoinModel {
    double betabar = 0.0;
    std::int64_t denom_cap = kBitcoinHardCap;
    double mean_total_value = 0.0;  // satoshi per address
};

// Expected number of i-satoshi UTXOs per address: 1/(e^{i betabar} - 1).
double utxo_popularity(std::int64_t denom, double betabar);

// sum_{i<=denom_cap} i/(e^{i betabar} - 1); terms are cut once negligible.
double bitcoin_mean_total_value(double betabar, std::int64_t denom_cap = kBitcoinHardCap);

// Exact root of bitcoin_mean_total_value(betabar) = mean_total_value.
double solve_betabar_bitcoin(double mean_total_value, std::int64_t denom_cap = kBitcoinHardCap);

// Semi-infinite integral approximation: betabar = pi/sqrt(6 mean).
double betabar_approx(double mean_total_value);

BitcoinModel make_bitcoin_model(double mean_total_value, std::int64_t denom_cap = kBitcoinHardCap);

// ln P(0) = sum_i ln(1 - e^{-i betabar}).
double log_zero_value_probability(double betabar, std::int64_t denom_cap = kBitcoinHardCap);

// Total-value distribution P(v) = P(0) Part(v) e^{-v betabar} for
// v = 0..v_max.  Valid for v_max <= denom_cap, where partitions into parts
// bounded by the cap coincide with unrestricted ones.
ValuePmf value_distribution(const BitcoinModel& model, std::int64_t v_max);
ValuePmf value_distribution(const BitcoinModel& model, const PartitionTable& partitions,
                            std::int64_t v_max);

// Hardy-Ramanujan estimate of P(v)/P(0): e^{pi sqrt(2v/3) - v betabar}/(4 v sqrt(3)).
// First-order accurate for large v (roughly v >= 100).
double hardy_ramanujan_ratio(std::int64_t v, double betabar);

// Location of the maximum of the Hardy-Ramanujan estimate,
//   v* = (pi^2/(6 betabar^2)) ((1 + sqrt(1 - 24 betabar/pi^2))/2)^2 ,
// always below the mean pi^2/(6 betabar^2).  Requires betabar < pi^2/24.
double value_mode(double betabar);

// Share of the mean total value carried by the 1-satoshi species; the
// Bose-Einstein condensation diagnostic.  Grows monotonically from 0 and
// exceeds 0.9 once betabar >= 3.
double condensation_ratio(double betabar, std::int64_t denom_cap = kBitcoinHardCap);

}  // namespace wealthstat

#endif
