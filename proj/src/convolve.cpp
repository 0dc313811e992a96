#include "wealthstat/convolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wealthstat {

namespace {

constexpr std::int64_t kMaxValueSupport = 50'000'000;

// log(a + b) given la = log a, lb = log b.
double log_add(double la, double lb) {
    if (la == -std::numeric_limits<double>::infinity()) return lb;
    if (lb == -std::numeric_limits<double>::infinity()) return la;
    const double hi = std::max(la, lb), lo = std::min(la, lb);
    return hi + std::log1p(std::exp(lo - hi));
}

void check_tail_tol(double tail_tol, const char* what) {
    if (!(tail_tol > 0.0)) throw std::invalid_argument(std::string(what) + ": tail_tol must be > 0");
}

}  // namespace

ValuePmf weighted_convolve(const std::vector<WeightedPart>& parts, std::int64_t v_max) {
    if (v_max < 0) throw std::invalid_argument("weighted_convolve: v_max must be >= 0");
    if (v_max > kMaxValueSupport)
        throw std::invalid_argument("weighted_convolve: v_max too large");
    const std::size_t n = static_cast<std::size_t>(v_max) + 1;
    std::vector<double> acc(n, 0.0);
    acc[0] = 1.0;
    std::vector<double> next(n);
    for (const WeightedPart& part : parts) {
        if (part.weight < 1) throw std::invalid_argument("weighted_convolve: weights must be >= 1");
        const std::size_t w = static_cast<std::size_t>(part.weight);
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            double s = 0.0;
            for (std::size_t k = 0; k * w <= v && k < part.pmf.size(); ++k)
                s += part.pmf[k] * acc[v - k * w];
            next[v] = s;
        }
        acc.swap(next);
    }
    double total = 0.0;
    for (double p : acc) total += p;
    return ValuePmf(std::move(acc), std::max(0.0, 1.0 - total));
}

std::int64_t default_value_support(const std::vector<WeightedPart>& parts) {
    double mean = 0.0, var = 0.0;
    for (const WeightedPart& part : parts) {
        const double w = static_cast<double>(part.weight);
        mean += w * part.pmf.mean();
        var += w * w * part.pmf.variance();
    }
    const double v = std::ceil(mean + 20.0 * std::sqrt(var));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(v));
}

double generating_function(const WealthSystem& sys, double q) {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("generating_function: q must be in [0, 1]");
    if (!sys.solved) throw std::invalid_argument("generating_function: system is not solved");
    double z = 1.0;
    for (std::size_t i = 0; i < sys.species.size(); ++i) {
        const SpeciesSpec& sp = sys.species[i];
        const double w = static_cast<double>(sp.weight);
        const double qw = std::pow(q, w);
        if (sp.cls == WealthClass::distinguishable) {
            const double beta = sys.solved->beta[i];
            const double lambda = std::exp(-beta);
            if (!sp.cutoff.is_finite()) {
                z *= std::exp(lambda * (qw - 1.0));
            } else {
                // ratio of the truncated exponential sums at lambda q^w and lambda
                const std::int64_t lam = sp.cutoff.value();
                double snum = 0.0, sden = 0.0, tnum = 1.0, tden = 1.0;
                for (std::int64_t k = 0; k <= lam; ++k) {
                    snum += tnum;
                    sden += tden;
                    tnum *= lambda * qw / static_cast<double>(k + 1);
                    tden *= lambda / static_cast<double>(k + 1);
                    if (tden > 1e280) {  // rescale; only the ratio matters
                        tnum *= 1e-280;
                        tden *= 1e-280;
                        snum *= 1e-280;
                        sden *= 1e-280;
                    }
                }
                z *= snum / sden;
            }
        } else {
            if (!sys.solved->betabar)
                throw std::invalid_argument("generating_function: betabar missing");
            const double x = *sys.solved->betabar * w;
            if (!sp.cutoff.is_finite()) {
                // (e^x - 1)/(e^x - q^w)
                z *= std::expm1(x) / (std::expm1(x) + 1.0 - qw);
            } else {
                // finite geometric sums at u = e^{-x} q^w and r = e^{-x}
                const std::int64_t lam = sp.cutoff.value();
                const double u = std::exp(-x) * qw;
                const double r = std::exp(-x);
                double su = 0.0, sr = 0.0, tu = 1.0, tr = 1.0;
                for (std::int64_t k = 0; k <= lam; ++k) {
                    su += tu;
                    sr += tr;
                    tu *= u;
                    tr *= r;
                }
                z *= su / sr;
            }
        }
    }
    return z;
}

Pmf bank_convolution(double m, std::int64_t banks, double tail_tol) {
    if (!(m >= 0.0) || !std::isfinite(m))
        throw std::invalid_argument("bank_convolution: m must be >= 0");
    if (banks < 1) throw std::invalid_argument("bank_convolution: banks must be >= 1");
    check_tail_tol(tail_tol, "bank_convolution");
    if (m == 0.0) return Pmf::delta(0);
    const double d = static_cast<double>(banks);
    const double ratio = m / (m + d);
    std::vector<double> p;
    double term = std::exp(-d * std::log1p(m / d));  // (d/(m+d))^d
    double cum = 0.0;
    for (std::int64_t k = 0;; ++k) {
        p.push_back(term);
        cum += term;
        if (1.0 - cum < tail_tol) break;
        if (k > kMaxValueSupport) throw std::invalid_argument("bank_convolution: support too large");
        term *= ratio * (d + static_cast<double>(k)) / (static_cast<double>(k) + 1.0);
    }
    return Pmf(std::move(p), std::max(0.0, 1.0 - cum));
}

Pmf fermionic_binomial(std::int64_t total, std::int64_t owners, double tail_tol) {
    if (total < 0) throw std::invalid_argument("fermionic_binomial: total must be >= 0");
    if (owners < 1) throw std::invalid_argument("fermionic_binomial: owners must be >= 1");
    check_tail_tol(tail_tol, "fermionic_binomial");
    if (total == 0) return Pmf::delta(0);
    if (owners == 1) return Pmf::delta(static_cast<std::size_t>(total));
    const double prob = 1.0 / static_cast<double>(owners);
    const double odds = prob / (1.0 - prob);
    std::vector<double> p;
    double term = std::exp(static_cast<double>(total) * std::log1p(-prob));
    double cum = 0.0;
    for (std::int64_t k = 0;; ++k) {
        p.push_back(term);
        cum += term;
        if (k == total) break;
        if (1.0 - cum < tail_tol) break;
        term *= odds * static_cast<double>(total - k) / (static_cast<double>(k) + 1.0);
    }
    return Pmf(std::move(p), std::max(0.0, 1.0 - cum));
}

Pmf poisson_geometric_convolve(double m, double mbar, double tail_tol) {
    if (!(m >= 0.0) || !std::isfinite(m))
        throw std::invalid_argument("poisson_geometric_convolve: m must be >= 0");
    if (!(mbar >= 0.0) || !std::isfinite(mbar))
        throw std::invalid_argument("poisson_geometric_convolve: mbar must be >= 0");
    check_tail_tol(tail_tol, "poisson_geometric_convolve");
    // The inner sum degenerates at mbar = 0 and the law is purely Poisson.
    if (mbar == 0.0) return atomic_pmf(AtomicKind::poisson, m, tail_tol);
    if (m == 0.0) return atomic_pmf(AtomicKind::bosonic, mbar, tail_tol);
    const double log_ratio = std::log(mbar) - std::log1p(mbar);   // log(mbar/(1+mbar))
    const double log_c = std::log(m) + std::log1p(1.0 / mbar);    // log(m + m/mbar)
    double log_inner = 0.0;                                       // log sum_{j<=k} c^j/j!
    std::vector<double> p;
    double cum = 0.0;
    double tail_bound = 1.0;
    for (std::int64_t k = 0;; ++k) {
        if (k > 0)
            log_inner = log_add(log_inner, static_cast<double>(k) * log_c -
                                               std::lgamma(static_cast<double>(k) + 1.0));
        const double pk = std::exp(-m - std::log1p(mbar) +
                                   static_cast<double>(k) * log_ratio + log_inner);
        p.push_back(pk);
        cum += pk;
        // p_j <= (e^{m/mbar}/(mbar+1)) r^j with r = mbar/(mbar+1), so the
        // mass beyond k is below e^{m/mbar} r^{k+1}
        tail_bound = std::exp(m / mbar + static_cast<double>(k + 1) * log_ratio);
        if (tail_bound < tail_tol) break;
        if (k > kMaxValueSupport)
            throw std::invalid_argument("poisson_geometric_convolve: support too large");
    }
    return Pmf(std::move(p), std::min(std::max(0.0, 1.0 - cum), tail_bound));
}

SignedPmf net_balance(double m_deposit, double m_debt, std::int64_t banks, double tail_tol) {
    check_tail_tol(tail_tol, "net_balance");
    // Resolve the component laws well below the requested tail so the
    // cross-correlation is limited by the output trimming only.
    const double part_tol = std::min(tail_tol * 1e-3, 1e-15);
    const Pmf dep = bank_convolution(m_deposit, banks, part_tol);
    const Pmf debt = bank_convolution(m_debt, banks, part_tol);
    const std::int64_t lo = -(static_cast<std::int64_t>(debt.size()) - 1);
    const std::int64_t hi = static_cast<std::int64_t>(dep.size()) - 1;
    std::vector<double> probs(static_cast<std::size_t>(hi - lo) + 1, 0.0);
    for (std::size_t j = 0; j < dep.size(); ++j)
        for (std::size_t l = 0; l < debt.size(); ++l) {
            const std::int64_t a = static_cast<std::int64_t>(j) - static_cast<std::int64_t>(l);
            probs[static_cast<std::size_t>(a - lo)] += dep[j] * debt[l];
        }
    // Trim each side until the discarded one-sided tail approaches tail_tol.
    std::size_t first = 0, last = probs.size() - 1;
    double tail_lo = 0.0, tail_hi = 0.0;
    while (first < last && tail_lo + probs[first] < tail_tol) tail_lo += probs[first++];
    while (last > first && tail_hi + probs[last] < tail_tol) tail_hi += probs[last--];
    std::vector<double> trimmed(probs.begin() + static_cast<std::ptrdiff_t>(first),
                                probs.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    double total = 0.0;
    for (double v : trimmed) total += v;
    return SignedPmf(std::move(trimmed), lo + static_cast<std::int64_t>(first),
                     std::max(0.0, 1.0 - total));
}

Pmf poisson_additivity_check(double m1, double m2, double tail_tol) {
    check_tail_tol(tail_tol, "poisson_additivity_check");
    const double part_tol = std::min(tail_tol * 1e-3, 1e-15);
    const Pmf a = atomic_pmf(AtomicKind::poisson, m1, part_tol);
    const Pmf b = atomic_pmf(AtomicKind::poisson, m2, part_tol);
    const std::size_t n = a.size() + b.size() - 1;
    std::vector<double> probs(n, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j)
        for (std::size_t l = 0; l < b.size(); ++l) probs[j + l] += a[j] * b[l];
    double cum = 0.0;
    std::size_t last = 0;
    for (std::size_t k = 0; k < n; ++k) {
        cum += probs[k];
        last = k;
        if (1.0 - cum < tail_tol) break;
    }
    probs.resize(last + 1);
    double total = 0.0;
    for (double v : probs) total += v;
    return Pmf(std::move(probs), std::max(0.0, 1.0 - total));
}

}  // namespace wealthstat
