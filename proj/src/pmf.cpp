#include "wealthstat/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wealthstat {

namespace {
constexpr double kNormalizationSlack = 1e-9;
}

Cutoff Cutoff::at(std::int64_t bound) {
    if (bound < 1)
        throw std::invalid_argument("Cutoff::at: bound must be >= 1, got " +
                                    std::to_string(bound));
    return Cutoff(bound);
}

std::int64_t Cutoff::value() const {
    if (!is_finite()) throw std::logic_error("Cutoff::value called on unbounded cutoff");
    return bound_;
}

Pmf::Pmf(std::vector<double> probs, double truncation_mass)
    : probs_(std::move(probs)), truncation_mass_(truncation_mass) {
    if (probs_.empty()) throw std::invalid_argument("Pmf: empty support");
    if (!(truncation_mass_ >= 0.0) || !std::isfinite(truncation_mass_))
        throw std::invalid_argument("Pmf: truncation_mass must be finite and >= 0");
    double total = truncation_mass_;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("Pmf: probabilities must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > kNormalizationSlack)
        throw std::invalid_argument("Pmf: total mass " + std::to_string(total) +
                                    " is not 1 within tolerance");
}

Pmf Pmf::delta(std::size_t k) {
    std::vector<double> p(k + 1, 0.0);
    p[k] = 1.0;
    return Pmf(std::move(p), 0.0);
}

double Pmf::mass() const noexcept {
    double s = 0.0;
    for (double p : probs_) s += p;
    return s;
}

double Pmf::mean() const noexcept {
    double s = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k) s += static_cast<double>(k) * probs_[k];
    return s;
}

double Pmf::variance() const noexcept {
    const double m = mean();
    double s = 0.0;
    for (std::size_t k = 0; k < probs_.size(); ++k) {
        const double d = static_cast<double>(k) - m;
        s += d * d * probs_[k];
    }
    return s;
}

SignedPmf::SignedPmf(std::vector<double> probs, std::int64_t min_value, double truncation_mass)
    : probs_(std::move(probs)), min_value_(min_value), truncation_mass_(truncation_mass) {
    if (probs_.empty()) throw std::invalid_argument("SignedPmf: empty support");
    double total = truncation_mass_;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("SignedPmf: probabilities must be finite and >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > kNormalizationSlack)
        throw std::invalid_argument("SignedPmf: total mass is not 1 within tolerance");
}

double SignedPmf::at(std::int64_t a) const noexcept {
    const std::int64_t idx = a - min_value_;
    if (idx < 0 || idx >= static_cast<std::int64_t>(probs_.size())) return 0.0;
    return probs_[static_cast<std::size_t>(idx)];
}

double SignedPmf::mean() const noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i)
        s += static_cast<double>(min_value_ + static_cast<std::int64_t>(i)) * probs_[i];
    return s;
}

double tv_distance(const Pmf& a, const Pmf& b) noexcept {
    const std::size_t n = std::max(a.size(), b.size());
    double l1 = 0.0;
    for (std::size_t k = 0; k < n; ++k) l1 += std::abs(a[k] - b[k]);
    return 0.5 * (l1 + a.truncation_mass() + b.truncation_mass());
}

}  // namespace wealthstat
