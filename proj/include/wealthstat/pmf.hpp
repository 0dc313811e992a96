#ifndef WEALTHSTAT_PMF_HPP
#define WEALTHSTAT_PMF_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace wealthstat {

// Maximal-occupation (Gentile) cutoff: a finite bound on the possession
// count, or unbounded for the boson limit.
class Cutoff {
public:
    static Cutoff unbounded() noexcept { return Cutoff(kUnbounded); }
    static Cutoff at(std::int64_t bound);  // requires bound >= 1

    bool is_finite() const noexcept { return bound_ != kUnbounded; }
    // Finite bound; must not be called on an unbounded cutoff.
    std::int64_t value() const;

    friend bool operator==(Cutoff a, Cutoff b) noexcept { return a.bound_ == b.bound_; }

private:
    static constexpr std::int64_t kUnbounded = -1;
    explicit Cutoff(std::int64_t bound) noexcept : bound_(bound) {}
    std::int64_t bound_;
};

// Finite probability mass function over possession counts k = 0..K,
// together with an explicit bound on the mass beyond K.  Stored
// probabilities plus the truncation mass always account for the whole
// distribution: sum(probs) + truncation_mass == 1 up to rounding.
class Pmf {
public:
    Pmf() = default;
    Pmf(std::vector<double> probs, double truncation_mass);

    static Pmf delta(std::size_t k);

    // Zero beyond the stored support.
    double operator[](std::size_t k) const noexcept {
        return k < probs_.size() ? probs_[k] : 0.0;
    }
    std::size_t size() const noexcept { return probs_.size(); }
    const std::vector<double>& probs() const noexcept { return probs_; }
    double truncation_mass() const noexcept { return truncation_mass_; }

    double mass() const noexcept;  // sum of stored probabilities
    double mean() const noexcept;
    double variance() const noexcept;

private:
    std::vector<double> probs_;
    double truncation_mass_ = 0.0;
};

// Distribution of an aggregate value v = 0..V rather than of a single
// possession count; structurally identical to Pmf.
using ValuePmf = Pmf;

// pmf over signed integers (net balances) a = min_value()..max_value().
class SignedPmf {
public:
    SignedPmf() = default;
    SignedPmf(std::vector<double> probs, std::int64_t min_value, double truncation_mass);

    double at(std::int64_t a) const noexcept;
    std::int64_t min_value() const noexcept { return min_value_; }
    std::int64_t max_value() const noexcept {
        return min_value_ + static_cast<std::int64_t>(probs_.size()) - 1;
    }
    const std::vector<double>& probs() const noexcept { return probs_; }
    double truncation_mass() const noexcept { return truncation_mass_; }
    double mean() const noexcept;

private:
    std::vector<double> probs_;
    std::int64_t min_value_ = 0;
    double truncation_mass_ = 0.0;
};

// Half the L1 distance; the truncated tails of both arguments are treated
// as disjoint mass.
double tv_distance(const Pmf& a, const Pmf& b) noexcept;

}  // namespace wealthstat

#endif
