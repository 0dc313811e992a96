#include "wealthstat/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace wealthstat {

namespace {

constexpr double kMaxLorenzTruncation = 1e-9;

void require_small_truncation(const Pmf& pmf, const char* what) {
    if (pmf.truncation_mass() >= kMaxLorenzTruncation)
        throw std::invalid_argument(std::string(what) +
                                    ": truncation mass too large for an exact result");
}

double require_positive_mean(const Pmf& pmf, const char* what) {
    const double m = pmf.mean();
    if (!(m > 0.0)) throw std::invalid_argument(std::string(what) + ": pmf has zero mean");
    return m;
}

// Upper regularized incomplete gamma, extended continuously to a = 0.
double gamma_q0(double a, double x) {
    if (a <= 0.0) return 0.0;
    return boost::math::gamma_q(a, x);
}

}  // namespace

LorenzCurve lorenz_from_pmf(const Pmf& pmf) {
    require_small_truncation(pmf, "lorenz_from_pmf");
    const double mean = require_positive_mean(pmf, "lorenz_from_pmf");
    LorenzCurve curve;
    curve.points.emplace_back(0.0, 0.0);
    double x = 0.0, wealth = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        x += pmf[k];
        wealth += static_cast<double>(k) * pmf[k];
        const double y = wealth / mean;
        if (curve.points.back().first != x || curve.points.back().second != y)
            curve.points.emplace_back(std::min(x, 1.0), std::min(y, 1.0));
    }
    if (curve.points.back() != std::make_pair(1.0, 1.0)) curve.points.emplace_back(1.0, 1.0);
    curve.gini = gini_from_pmf(pmf);
    return curve;
}

double lorenz_area(const LorenzCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const auto& [x0, y0] = curve.points[i - 1];
        const auto& [x1, y1] = curve.points[i];
        area += 0.5 * (y0 + y1) * (x1 - x0);
    }
    return area;
}

double lorenz_geometric_analytic(double m, double x) {
    if (!(m > 0.0)) throw std::invalid_argument("lorenz_geometric_analytic: m must be > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("lorenz_geometric_analytic: x must be in [0, 1]");
    if (x >= 1.0) return 1.0;  // continuity limit of (1-x)ln(1-x)
    if (x <= 1.0 / (m + 1.0)) return 0.0;
    return x + (1.0 - x) * std::log1p(-x) / (m * std::log1p(1.0 / m));
}

double lorenz_poisson_smooth(double m, double x) {
    if (!(m > 0.0)) throw std::invalid_argument("lorenz_poisson_smooth: m must be > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("lorenz_poisson_smooth: x must be in [0, 1]");
    if (x >= 1.0) return 1.0;
    if (x <= std::exp(-m)) return 0.0;
    // x(kappa) = Q(kappa+1, m) increases in kappa; invert by bisection.
    double lo = 0.0, hi = 1.0;
    while (gamma_q0(hi + 1.0, m) < x) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (gamma_q0(mid + 1.0, m) < x ? lo : hi) = mid;
    }
    return gamma_q0(0.5 * (lo + hi), m);
}

double gini_from_pmf(const Pmf& pmf) {
    require_small_truncation(pmf, "gini_from_pmf");
    const double mean = require_positive_mean(pmf, "gini_from_pmf");
    double cum_wealth = 0.0;
    double g = 1.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        const double kp = static_cast<double>(k) * pmf[k];
        cum_wealth += kp;
        g += pmf[k] * (kp - 2.0 * cum_wealth) / mean;
    }
    return std::clamp(g, 0.0, 1.0);
}

double gini_poisson(double m) {
    if (!(m >= 0.0) || !std::isfinite(m))
        throw std::invalid_argument("gini_poisson: m must be >= 0");
    const auto integrand = [m](double theta) {
        const double c = std::cos(theta);
        return std::exp(-2.0 * m * (1.0 - c)) * (1.0 + c);
    };
    // Composite Simpson, panels doubled until the Richardson estimate of
    // the remaining error is below 1e-9.
    const double pi = std::numbers::pi;
    auto simpson = [&](std::size_t panels) {
        const double h = pi / static_cast<double>(panels);
        double s = integrand(0.0) + integrand(pi);
        for (std::size_t i = 1; i < panels; ++i)
            s += integrand(static_cast<double>(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    std::size_t panels = 64;
    double prev = simpson(panels);
    for (;;) {
        panels *= 2;
        const double cur = simpson(panels);
        if (std::abs(cur - prev) < 1e-9 || panels >= (1u << 24))
            return std::clamp((cur + (cur - prev) / 15.0) / pi, 0.0, 1.0);
        prev = cur;
    }
}

double gini_bosonic(double m) {
    if (!(m >= 0.0)) throw std::invalid_argument("gini_bosonic: m must be >= 0");
    return (1.0 + m) / (1.0 + 2.0 * m);
}

double gini_fermionic(double m) {
    if (!(m >= 0.0 && m <= 1.0))
        throw std::invalid_argument("gini_fermionic: m must be in [0, 1]");
    return 1.0 - m;
}

double gini_bosonic_lorenz(double m) {
    if (!(m > 0.0)) throw std::invalid_argument("gini_bosonic_lorenz: m must be > 0");
    const double f = m / (m + 1.0);
    return f * f *
           (1.0 / (2.0 * m * std::log1p(1.0 / m)) + 1.0 / m + 1.0 / (m * m));
}

double shannon_entropy(const Pmf& pmf) {
    double s = 0.0;
    for (double p : pmf.probs())
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

double entropy_bosonic(double m) {
    if (!(m > 0.0)) throw std::invalid_argument("entropy_bosonic: m must be > 0");
    return (m + 1.0) * std::log1p(m) - m * std::log(m);
}

double entropy_poisson_asymptotic(double m) {
    if (!(m > 0.0)) throw std::invalid_argument("entropy_poisson_asymptotic: m must be > 0");
    return 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * m) - 1.0 / (12.0 * m);
}

double tail_mass_above_mean(AtomicKind kind, double m) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("tail_mass_above_mean: m must be > 0");
    const double k0 = std::floor(m) + 1.0;  // first count strictly above the mean
    switch (kind) {
        case AtomicKind::bosonic:
            // geometric tail: (m/(1+m))^{k0}
            return std::exp(k0 * (std::log(m) - std::log1p(m)));
        case AtomicKind::poisson: {
            // 1 - CDF(k0-1), accumulated in log space against underflow
            double lmax = -std::numeric_limits<double>::infinity();
            double scaled = 0.0;
            const double logm = std::log(m);
            for (double k = 0.0; k < k0; k += 1.0) {
                const double lp = -m + k * logm - std::lgamma(k + 1.0);
                if (lp > lmax) {
                    scaled = scaled * std::exp(lmax - lp) + 1.0;
                    lmax = lp;
                } else {
                    scaled += std::exp(lp - lmax);
                }
            }
            return std::max(0.0, -std::expm1(lmax + std::log(scaled)));
        }
        case AtomicKind::fermionic:
            break;
    }
    throw std::invalid_argument("tail_mass_above_mean: kind must be poisson or bosonic");
}

double pareto_8020_mean(AtomicKind kind) {
    const auto wealth_share = [kind](double m) {
        return kind == AtomicKind::poisson ? lorenz_poisson_smooth(m, 0.8)
                                           : lorenz_geometric_analytic(m, 0.8);
    };
    if (kind == AtomicKind::fermionic)
        throw std::invalid_argument("pareto_8020_mean: kind must be poisson or bosonic");
    // wealth share at x = 0.8 grows with m; bisect on m
    double lo = 1e-3, hi = 20.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (wealth_share(mid) < 0.2 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace wealthstat
