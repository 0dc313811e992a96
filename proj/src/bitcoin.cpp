#include "wealthstat/bitcoin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wealthstat/solver.hpp"

namespace wealthstat {

namespace {

// Relative size below which constraint-sum terms are dropped.
constexpr double kTermTol = 1e-18;

// The denomination sums need on the order of 45/betabar terms before the
// cutoff bites; beyond this many the exact summation is not practical.
constexpr std::int64_t kMaxSumTerms = 50'000'000;

double check_betabar(double betabar, const char* what) {
    if (!(betabar > 0.0) || !std::isfinite(betabar))
        throw std::invalid_argument(std::string(what) + ": betabar must be > 0");
    return betabar;
}

}  // namespace

PartitionTable::PartitionTable(std::int64_t v_max) {
    if (v_max < 0) throw std::invalid_argument("PartitionTable: v_max must be >= 0");
    if (v_max > kMaxBitcoinValueSupport)
        throw std::invalid_argument("PartitionTable: v_max exceeds the supported range");
    vals_.resize(static_cast<std::size_t>(v_max) + 1);
    vals_[0] = 1;
    for (std::int64_t n = 1; n <= v_max; ++n) {
        mpz_class acc = 0;
        for (std::int64_t j = 1;; ++j) {
            const std::int64_t g1 = j * (3 * j - 1) / 2;  // generalized pentagonal numbers
            const std::int64_t g2 = j * (3 * j + 1) / 2;
            if (g1 > n) break;
            const bool plus = (j % 2) == 1;
            if (plus)
                acc += vals_[static_cast<std::size_t>(n - g1)];
            else
                acc -= vals_[static_cast<std::size_t>(n - g1)];
            if (g2 <= n) {
                if (plus)
                    acc += vals_[static_cast<std::size_t>(n - g2)];
                else
                    acc -= vals_[static_cast<std::size_t>(n - g2)];
            }
        }
        vals_[static_cast<std::size_t>(n)] = acc;
    }
}

const mpz_class& PartitionTable::value(std::int64_t v) const {
    if (v < 0 || v > v_max()) throw std::out_of_range("PartitionTable::value: index out of range");
    return vals_[static_cast<std::size_t>(v)];
}

double PartitionTable::log_value(std::int64_t v) const {
    const mpz_class& z = value(v);
    signed long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
}

double utxo_popularity(std::int64_t denom, double betabar) {
    if (denom < 1) throw std::invalid_argument("utxo_popularity: denom must be >= 1");
    check_betabar(betabar, "utxo_popularity");
    const double x = static_cast<double>(denom) * betabar;
    if (x > 700.0) return std::exp(-x);  // expm1 would overflow; tail is e^{-x}
    return 1.0 / std::expm1(x);
}

double bitcoin_mean_total_value(double betabar, std::int64_t denom_cap) {
    check_betabar(betabar, "bitcoin_mean_total_value");
    if (denom_cap < 1) throw std::invalid_argument("bitcoin_mean_total_value: denom_cap must be >= 1");
    double sum = 0.0;
    for (std::int64_t i = 1; i <= denom_cap; ++i) {
        const double term = static_cast<double>(i) * utxo_popularity(i, betabar);
        sum += term;
        // terms decay like i e^{-i betabar} once past the scale 1/betabar
        if (static_cast<double>(i) * betabar > 1.0 && term < kTermTol * sum) break;
        if (i >= kMaxSumTerms)
            throw SolveError(
                "bitcoin_mean_total_value: betabar too small for exact summation; "
                "use betabar_approx");
    }
    return sum;
}

double betabar_approx(double mean_total_value) {
    if (!(mean_total_value > 0.0))
        throw std::invalid_argument("betabar_approx: mean_total_value must be > 0");
    return std::numbers::pi / std::sqrt(6.0 * mean_total_value);
}

double solve_betabar_bitcoin(double mean_total_value, std::int64_t denom_cap) {
    if (!(mean_total_value > 0.0) || !std::isfinite(mean_total_value))
        throw std::invalid_argument("solve_betabar_bitcoin: mean_total_value must be > 0");
    auto constraint = [denom_cap](double bb) { return bitcoin_mean_total_value(bb, denom_cap); };
    // strictly decreasing; bracket around the integral approximation
    double lo = betabar_approx(mean_total_value) / 8.0;
    double hi = betabar_approx(mean_total_value) * 8.0;
    int n = 0;
    while (constraint(lo) < mean_total_value) {
        lo /= 8.0;
        if (++n > 100 || lo == 0.0)
            throw SolveError("solve_betabar_bitcoin: failed to bracket from below");
    }
    n = 0;
    while (constraint(hi) > mean_total_value) {
        hi *= 8.0;
        if (++n > 100 || !std::isfinite(hi))
            throw SolveError("solve_betabar_bitcoin: failed to bracket from above");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (constraint(mid) > mean_total_value ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BitcoinModel make_bitcoin_model(double mean_total_value, std::int64_t denom_cap) {
    BitcoinModel model;
    model.denom_cap = denom_cap;
    model.mean_total_value = mean_total_value;
    model.betabar = solve_betabar_bitcoin(mean_total_value, denom_cap);
    return model;
}

double log_zero_value_probability(double betabar, std::int64_t denom_cap) {
    check_betabar(betabar, "log_zero_value_probability");
    double s = 0.0;
    for (std::int64_t i = 1; i <= denom_cap; ++i) {
        const double e = std::exp(-static_cast<double>(i) * betabar);
        if (e < kTermTol) break;
        s += std::log1p(-e);
        if (i >= kMaxSumTerms)
            throw SolveError("log_zero_value_probability: betabar too small for exact summation");
    }
    return s;
}

ValuePmf value_distribution(const BitcoinModel& model, std::int64_t v_max) {
    return value_distribution(model, PartitionTable(v_max), v_max);
}

ValuePmf value_distribution(const BitcoinModel& model, const PartitionTable& partitions,
                            std::int64_t v_max) {
    check_betabar(model.betabar, "value_distribution");
    if (v_max < 0) throw std::invalid_argument("value_distribution: v_max must be >= 0");
    if (v_max > model.denom_cap)
        throw std::invalid_argument("value_distribution: v_max exceeds the denomination cap " +
                                    std::to_string(model.denom_cap));
    if (v_max > kMaxBitcoinValueSupport)
        throw std::invalid_argument("value_distribution: v_max exceeds the supported range");
    if (v_max > partitions.v_max())
        throw std::invalid_argument("value_distribution: partition table too short");
    const double log_p0 = log_zero_value_probability(model.betabar, model.denom_cap);
    std::vector<double> p(static_cast<std::size_t>(v_max) + 1);
    double total = 0.0;
    for (std::int64_t v = 0; v <= v_max; ++v) {
        const double lp = log_p0 + partitions.log_value(v) - static_cast<double>(v) * model.betabar;
        p[static_cast<std::size_t>(v)] = std::exp(lp);
        total += p[static_cast<std::size_t>(v)];
    }
    return ValuePmf(std::move(p), std::max(0.0, 1.0 - total));
}

double hardy_ramanujan_ratio(std::int64_t v, double betabar) {
    if (v < 1) throw std::invalid_argument("hardy_ramanujan_ratio: v must be >= 1");
    check_betabar(betabar, "hardy_ramanujan_ratio");
    const double vd = static_cast<double>(v);
    return std::exp(std::numbers::pi * std::sqrt(2.0 * vd / 3.0) - vd * betabar) /
           (4.0 * vd * std::sqrt(3.0));
}

double value_mode(double betabar) {
    check_betabar(betabar, "value_mode");
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double disc = 1.0 - 24.0 * betabar / pi2;
    if (disc < 0.0)
        throw std::domain_error("value_mode: betabar must be below pi^2/24 = " +
                                std::to_string(pi2 / 24.0));
    const double half = 0.5 * (1.0 + std::sqrt(disc));
    return pi2 / (6.0 * betabar * betabar) * half * half;
}

double condensation_ratio(double betabar, std::int64_t denom_cap) {
    check_betabar(betabar, "condensation_ratio");
    return utxo_popularity(1, betabar) / bitcoin_mean_total_value(betabar, denom_cap);
}

}  // namespace wealthstat
