// Independent reference implementations used only to cross-check the
// library.  Everything here is brute force on purpose: enumeration,
// literal double sums, and exact rational arithmetic.
#ifndef WEALTHSTAT_TESTS_ORACLES_HPP
#define WEALTHSTAT_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "wealthstat/convolve.hpp"
#include "wealthstat/pmf.hpp"

namespace oracles {

// Total-value law by explicit enumeration of every ownership vector with
// sum w_I k_I <= v_max; independent of weighted_convolve.
inline std::vector<double> brute_value_distribution(
    const std::vector<wealthstat::WeightedPart>& parts, std::int64_t v_max) {
    std::vector<double> dist(static_cast<std::size_t>(v_max) + 1, 0.0);
    std::function<void(std::size_t, std::int64_t, double)> rec = [&](std::size_t i,
                                                                     std::int64_t value,
                                                                     double prob) {
        if (i == parts.size()) {
            dist[static_cast<std::size_t>(value)] += prob;
            return;
        }
        const auto& part = parts[i];
        for (std::size_t k = 0; k < part.pmf.size(); ++k) {
            const std::int64_t v = value + static_cast<std::int64_t>(k) * part.weight;
            if (v > v_max) break;
            rec(i + 1, v, prob * part.pmf[k]);
        }
    };
    rec(0, 0, 1.0);
    return dist;
}

// Number of partitions of v, counted by exhaustive recursion over the
// largest part; no pentagonal recurrence involved.
inline std::uint64_t partitions_by_enumeration(std::int64_t v) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> memo;
    std::function<std::uint64_t(std::int64_t, std::int64_t)> count =
        [&](std::int64_t n, std::int64_t max_part) -> std::uint64_t {
        if (n == 0) return 1;
        if (max_part == 0) return 0;
        const auto key = std::make_pair(n, max_part);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::uint64_t s = 0;
        for (std::int64_t p = std::min(n, max_part); p >= 1; --p) s += count(n - p, p);
        memo[key] = s;
        return s;
    };
    return count(v, v == 0 ? 1 : v);
}

// Literal double-sum Gini: sum_{k,k'} |k-k'| P(k) P(k') / (2m).
inline double gini_double_sum(const wealthstat::Pmf& pmf) {
    const double m = pmf.mean();
    double s = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k)
        for (std::size_t j = 0; j < pmf.size(); ++j)
            s += std::abs(static_cast<double>(k) - static_cast<double>(j)) * pmf[k] * pmf[j];
    return s / (2.0 * m);
}

// Exact single-owner marginal of a uniform weak composition of M over N
// owners: P(k) = C(M-k+N-2, N-2) / C(M+N-1, N-1), in rational arithmetic.
inline wealthstat::Pmf bosonic_finite_marginal(std::int64_t M, std::int64_t N) {
    auto binom = [](std::int64_t n, std::int64_t k) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    };
    const mpq_class denom(binom(M + N - 1, N - 1));
    std::vector<double> p(static_cast<std::size_t>(M) + 1);
    for (std::int64_t k = 0; k <= M; ++k) {
        const mpq_class q(binom(M - k + N - 2, N - 2));
        p[static_cast<std::size_t>(k)] = mpq_class(q / denom).get_d();
    }
    return wealthstat::Pmf(std::move(p), 0.0);
}

// Exact Binomial(M, 1/N) marginal of the distinguishable allocation.
inline wealthstat::Pmf binomial_finite_marginal(std::int64_t M, std::int64_t N) {
    auto binom = [](std::int64_t n, std::int64_t k) {
        mpz_class r;
        mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    };
    std::vector<double> p(static_cast<std::size_t>(M) + 1);
    for (std::int64_t k = 0; k <= M; ++k) {
        mpq_class q(binom(M, k));
        for (std::int64_t i = 0; i < k; ++i) q /= N;
        for (std::int64_t i = 0; i < M - k; ++i) q *= mpq_class(N - 1, N);
        p[static_cast<std::size_t>(k)] = q.get_d();
    }
    return wealthstat::Pmf(std::move(p), 0.0);
}

// Five-point central difference of f at x.
inline double derivative(const std::function<double(double)>& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// Fourth-order one-sided difference for derivatives at a domain boundary
// approached from below.
inline double derivative_backward(const std::function<double(double)>& f, double x, double h) {
    return (25 * f(x) - 48 * f(x - h) + 36 * f(x - 2 * h) - 16 * f(x - 3 * h) + 3 * f(x - 4 * h)) /
           (12 * h);
}

}  // namespace oracles

#endif
