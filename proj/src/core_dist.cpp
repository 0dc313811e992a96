#include "wealthstat/core_dist.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace wealthstat {

namespace {

constexpr std::int64_t kMaxSupportEntries = 20'000'000;
// Terms this far (in log) below the peak are negligible relative to the
// total mass even when millions of them are dropped.
constexpr double kLogTermFloor = 64.0;

void check_finite(double x, const char* what) {
    if (!std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be finite");
}

// log(e^x - 1) without overflow for large x.
double log_expm1(double x) {
    if (x > 36.0) return x + std::log1p(-std::exp(-x));
    return std::log(std::expm1(x));
}

// Log-terms t_k = -beta k - log k! up to the cutoff, stopping early once
// the remaining terms cannot contribute at double precision.
std::vector<double> poisson_log_terms(double beta, Cutoff cutoff) {
    const double lambda = std::exp(-beta);  // peak location
    std::vector<double> t;
    double tmax = -std::numeric_limits<double>::infinity();
    for (std::int64_t k = 0;; ++k) {
        if (k > kMaxSupportEntries)
            throw std::invalid_argument("truncated_poisson: support too large (e^{-beta} = " +
                                        std::to_string(lambda) + ")");
        const double tk = -beta * static_cast<double>(k) - std::lgamma(static_cast<double>(k) + 1.0);
        t.push_back(tk);
        tmax = std::max(tmax, tk);
        if (cutoff.is_finite() && k == cutoff.value()) break;
        if (static_cast<double>(k) > lambda && tk < tmax - kLogTermFloor) break;
    }
    return t;
}

struct ScaledSums {
    double log_full;   // log sum_k e^{t_k} over stored terms
    double full;       // sum e^{t_k - tmax}
    double tmax;
};

ScaledSums scaled_sum(const std::vector<double>& t) {
    double tmax = -std::numeric_limits<double>::infinity();
    for (double x : t) tmax = std::max(tmax, x);
    double s = 0.0;
    for (double x : t) s += std::exp(x - tmax);
    return {tmax + std::log(s), s, tmax};
}

}  // namespace

void validate(const SpeciesSpec& spec) {
    if (spec.weight < 1)
        throw std::invalid_argument("SpeciesSpec: weight must be >= 1");
    if (!(spec.target_mean >= 0.0) || !std::isfinite(spec.target_mean))
        throw std::invalid_argument("SpeciesSpec: target_mean must be finite and >= 0");
    if (spec.cls == WealthClass::distinguishable && spec.cutoff.is_finite() &&
        spec.target_mean >= static_cast<double>(spec.cutoff.value()) && spec.target_mean > 0.0)
        throw std::invalid_argument("SpeciesSpec: target_mean must be below the cutoff");
}

Pmf truncated_poisson(double beta, Cutoff cutoff, double tail_tol) {
    check_finite(beta, "truncated_poisson: beta");
    if (cutoff.is_finite()) {
        const auto t = poisson_log_terms(beta, cutoff);
        const auto s = scaled_sum(t);
        std::vector<double> p(t.size());
        for (std::size_t k = 0; k < t.size(); ++k) p[k] = std::exp(t[k] - s.tmax) / s.full;
        return Pmf(std::move(p), 0.0);
    }
    if (!(tail_tol > 0.0))
        throw std::invalid_argument("truncated_poisson: tail_tol must be > 0 for unbounded support");
    const double lambda = std::exp(-beta);
    if (!(lambda <= static_cast<double>(kMaxSupportEntries)))
        throw std::invalid_argument("truncated_poisson: mean too large for unbounded support");
    std::vector<double> p;
    double cum = 0.0;
    double tail_bound = 1.0;
    for (std::int64_t k = 0;; ++k) {
        const double pk =
            std::exp(-lambda - beta * static_cast<double>(k) - std::lgamma(static_cast<double>(k) + 1.0));
        p.push_back(pk);
        cum += pk;
        if (static_cast<double>(k) >= lambda) {
            // beyond the peak the terms shrink at least geometrically, so
            // the remaining mass is below pk * r/(1-r), r = lambda/(k+2)
            const double r = lambda / (static_cast<double>(k) + 2.0);
            tail_bound = pk * r / (1.0 - r);
            if (tail_bound < tail_tol) break;
        }
        if (k > kMaxSupportEntries)
            throw std::invalid_argument("truncated_poisson: tail tolerance unreachable");
    }
    return Pmf(std::move(p), std::min(std::max(0.0, 1.0 - cum), tail_bound));
}

Pmf truncated_geometric(double beta_w, Cutoff cutoff, double tail_tol) {
    check_finite(beta_w, "truncated_geometric: beta_w");
    if (!cutoff.is_finite()) {
        if (!(beta_w > 0.0))
            throw std::invalid_argument("truncated_geometric: beta_w must be > 0 for unbounded support");
        if (!(tail_tol > 0.0))
            throw std::invalid_argument("truncated_geometric: tail_tol must be > 0 for unbounded support");
        const double r = std::exp(-beta_w);
        std::vector<double> p;
        double term = -std::expm1(-beta_w);  // 1 - r
        double tail = r;                     // exact mass beyond k
        for (std::int64_t k = 0;; ++k) {
            p.push_back(term);
            term *= r;
            if (tail < tail_tol) break;
            tail *= r;
            if (k > kMaxSupportEntries)
                throw std::invalid_argument("truncated_geometric: tail tolerance unreachable");
        }
        return Pmf(std::move(p), tail);
    }
    const std::int64_t lam = cutoff.value();
    // Decreasing terms can be cut early; growing ones (beta_w < 0) cannot.
    std::int64_t last = lam;
    if (beta_w > 0.0 && beta_w * static_cast<double>(lam) > kLogTermFloor)
        last = static_cast<std::int64_t>(kLogTermFloor / beta_w) + 1;
    if (last > kMaxSupportEntries)
        throw std::invalid_argument("truncated_geometric: support too large");
    const double shift = beta_w < 0.0 ? -beta_w * static_cast<double>(last) : 0.0;
    std::vector<double> p(static_cast<std::size_t>(last) + 1);
    double sum = 0.0;
    for (std::int64_t k = 0; k <= last; ++k) {
        const double v = std::exp(-beta_w * static_cast<double>(k) - shift);
        p[static_cast<std::size_t>(k)] = v;
        sum += v;
    }
    for (double& v : p) v /= sum;
    return Pmf(std::move(p), 0.0);
}

Pmf atomic_pmf(AtomicKind kind, double m, double tail_tol) {
    check_finite(m, "atomic_pmf: m");
    if (m < 0.0) throw std::invalid_argument("atomic_pmf: m must be >= 0");
    switch (kind) {
        case AtomicKind::poisson:
            if (m == 0.0) return Pmf::delta(0);
            return truncated_poisson(-std::log(m), Cutoff::unbounded(), tail_tol);
        case AtomicKind::bosonic:
            if (m == 0.0) return Pmf::delta(0);
            return truncated_geometric(std::log1p(1.0 / m), Cutoff::unbounded(), tail_tol);
        case AtomicKind::fermionic:
            if (m > 1.0) throw std::invalid_argument("atomic_pmf: fermionic mean must be <= 1");
            if (m == 0.0) return Pmf::delta(0);
            return Pmf({1.0 - m, m}, 0.0);
    }
    throw std::invalid_argument("atomic_pmf: unknown kind");
}

double truncated_poisson_norm(double beta, Cutoff cutoff) {
    check_finite(beta, "truncated_poisson_norm: beta");
    if (!cutoff.is_finite()) return std::exp(-std::exp(-beta));
    const auto t = poisson_log_terms(beta, cutoff);
    return std::exp(-scaled_sum(t).log_full);
}

double truncated_geometric_norm(double beta_w, Cutoff cutoff) {
    check_finite(beta_w, "truncated_geometric_norm: beta_w");
    if (!cutoff.is_finite()) {
        if (!(beta_w > 0.0))
            throw std::invalid_argument("truncated_geometric_norm: beta_w must be > 0");
        return -std::expm1(-beta_w);
    }
    const double lp1 = static_cast<double>(cutoff.value()) + 1.0;
    if (beta_w == 0.0) return 1.0 / lp1;
    if (beta_w > 0.0) return std::expm1(-beta_w) / std::expm1(-lp1 * beta_w);
    return std::exp(log_expm1(-beta_w) - log_expm1(-lp1 * beta_w));
}

double truncated_poisson_mean(double beta, Cutoff cutoff) {
    check_finite(beta, "truncated_poisson_mean: beta");
    if (!cutoff.is_finite()) return std::exp(-beta);
    // lambda T_{L-1} / T_L, the log-domain equivalent of the closed form
    // (1 - N e^{-beta L}/L!) e^{-beta}.
    const auto t = poisson_log_terms(beta, cutoff);
    const auto s = scaled_sum(t);
    double full_m1 = s.full;
    if (static_cast<std::int64_t>(t.size()) == cutoff.value() + 1)
        full_m1 -= std::exp(t.back() - s.tmax);
    if (full_m1 <= 0.0) return 0.0;  // cutoff 0 cannot occur; guards rounding
    return std::exp(-beta + std::log(full_m1) - std::log(s.full));
}

double truncated_poisson_variance(double beta, Cutoff cutoff) {
    check_finite(beta, "truncated_poisson_variance: beta");
    if (!cutoff.is_finite()) return std::exp(-beta);
    const auto t = poisson_log_terms(beta, cutoff);
    const auto s = scaled_sum(t);
    const std::int64_t last = static_cast<std::int64_t>(t.size()) - 1;
    double full_m1 = s.full;
    double full_m2 = s.full;
    if (last == cutoff.value()) {
        full_m1 -= std::exp(t.back() - s.tmax);
        full_m2 = full_m1;
        if (t.size() >= 2) full_m2 -= std::exp(t[t.size() - 2] - s.tmax);
    } else if (last == cutoff.value() - 1) {
        full_m2 -= std::exp(t.back() - s.tmax);
    }
    // E[k] = lambda T_{L-1}/T_L,  E[k(k-1)] = lambda^2 T_{L-2}/T_L
    const double e1 = full_m1 > 0.0 ? std::exp(-beta + std::log(full_m1) - std::log(s.full)) : 0.0;
    const double e2 =
        full_m2 > 0.0 ? std::exp(-2.0 * beta + std::log(full_m2) - std::log(s.full)) : 0.0;
    return e1 + e2 - e1 * e1;
}

double truncated_geometric_mean(double beta_w, Cutoff cutoff) {
    check_finite(beta_w, "truncated_geometric_mean: beta_w");
    if (!cutoff.is_finite()) {
        if (!(beta_w > 0.0))
            throw std::invalid_argument("truncated_geometric_mean: beta_w must be > 0");
        return 1.0 / std::expm1(beta_w);
    }
    const double lam = static_cast<double>(cutoff.value());
    if (beta_w == 0.0) return lam / 2.0;
    // reflection k -> L - k maps beta_w to -beta_w
    if (beta_w < 0.0) return lam - truncated_geometric_mean(-beta_w, cutoff);
    if (beta_w * (lam + 1.0) < 1e-4)  // near-uniform regime; the closed form cancels
        return lam / 2.0 - beta_w * lam * (lam + 2.0) / 12.0;
    const double num =
        -std::expm1(-lam * beta_w) + lam * std::exp(-lam * beta_w) * std::expm1(-beta_w);
    const double den = std::expm1(beta_w) * (-std::expm1(-(lam + 1.0) * beta_w));
    return num / den;
}

double truncated_geometric_variance(double beta_w, Cutoff cutoff) {
    check_finite(beta_w, "truncated_geometric_variance: beta_w");
    if (!cutoff.is_finite()) {
        if (!(beta_w > 0.0))
            throw std::invalid_argument("truncated_geometric_variance: beta_w must be > 0");
        const double m = 1.0 / std::expm1(beta_w);
        return m * (1.0 + m);
    }
    const double lam = static_cast<double>(cutoff.value());
    const double x = std::abs(beta_w);  // variance is reflection-invariant
    if (x * (lam + 1.0) < 1e-4) return lam * (lam + 2.0) / 12.0;
    const double r = std::exp(-x);
    const double omr = -std::expm1(-x);  // 1 - r
    const double rl = std::exp(-lam * x);
    const double a = 1.0 - (lam + 1.0) * rl + lam * rl * r;
    const double s0 = -std::expm1(-(lam + 1.0) * x) / omr;
    const double s1 = r * a / (omr * omr);
    const double s2 = s1 - lam * (lam + 1.0) * rl * r / omr + 2.0 * r * r * a / (omr * omr * omr);
    const double mean = s1 / s0;
    return s2 / s0 - mean * mean;
}

}  // namespace wealthstat
