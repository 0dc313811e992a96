#include "wealthstat/solver.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace wealthstat {

namespace {

constexpr int kMaxExpansions = 200;
constexpr int kMaxBisections = 200;

std::string bracket_str(double lo, double hi) {
    return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

// Root of the strictly decreasing f on x > 0: geometric expansion of the
// starting bracket by factors of 8 until it straddles the target, then
// bisection.
double solve_decreasing_positive(const std::function<double(double)>& f, double target,
                                 const char* what) {
    double lo = 1e-12, hi = 1.0;
    int n = 0;
    while (f(hi) > target) {
        lo = hi;
        hi *= 8.0;
        if (++n > kMaxExpansions || !std::isfinite(hi))
            throw SolveError(std::string(what) + ": no sign change up to bracket " +
                             bracket_str(lo, hi));
    }
    n = 0;
    while (f(lo) < target) {
        hi = lo;
        lo /= 8.0;
        if (++n > kMaxExpansions || lo == 0.0)
            throw SolveError(std::string(what) + ": no sign change down to bracket " +
                             bracket_str(lo, hi));
    }
    for (int i = 0; i < kMaxBisections && hi - lo > 1e-16 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Same for f decreasing on the whole real line.
double solve_decreasing_real(const std::function<double(double)>& f, double target,
                             const char* what) {
    double lo = -1.0, hi = 1.0;
    int n = 0;
    while (f(hi) > target) {
        lo = hi;
        hi = hi > 0.0 ? hi * 8.0 : 1.0;
        if (++n > kMaxExpansions)
            throw SolveError(std::string(what) + ": no sign change up to bracket " +
                             bracket_str(lo, hi));
    }
    n = 0;
    while (f(lo) < target) {
        hi = lo;
        lo = lo < 0.0 ? lo * 8.0 : -1.0;
        if (++n > kMaxExpansions)
            throw SolveError(std::string(what) + ": no sign change down to bracket " +
                             bracket_str(lo, hi));
    }
    for (int i = 0; i < kMaxBisections && hi - lo > 1e-15 * (1.0 + std::abs(hi)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// A few Newton steps to sharpen the last digits; falls back to the input
// when a step leaves the convergence basin.
double newton_polish(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double x0, double target) {
    double x = x0;
    double best = x0;
    double best_res = std::abs(f(x0) - target);
    for (int i = 0; i < 4; ++i) {
        const double d = df(x);
        if (!(std::abs(d) > 0.0)) break;
        const double step = (f(x) - target) / d;
        x -= step;
        if (!std::isfinite(x)) break;
        const double res = std::abs(f(x) - target);
        if (res < best_res) {
            best = x;
            best_res = res;
        }
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
    }
    return best;
}

}  // namespace

GentileParams solve_beta_distinguishable(double m, Cutoff cutoff) {
    if (!(m > 0.0) || !std::isfinite(m))
        throw std::invalid_argument("solve_beta_distinguishable: m must be > 0");
    if (cutoff.is_finite() && m >= static_cast<double>(cutoff.value()))
        throw std::invalid_argument("solve_beta_distinguishable: m = " + std::to_string(m) +
                                    " outside attainable range [0, " +
                                    std::to_string(cutoff.value()) + ")");
    if (!cutoff.is_finite()) {
        const double beta = -std::log(m);
        return {beta, truncated_poisson_norm(beta, cutoff)};
    }
    // The mean is increasing in lambda = e^{-beta}; solve in lambda, which
    // keeps the bracket positive, then refine in beta.
    auto mean_of_lambda = [&](double lam) {
        return truncated_poisson_mean(-std::log(lam), cutoff);
    };
    const double lambda = solve_decreasing_positive(
        [&](double lam) { return -mean_of_lambda(lam); }, -m, "solve_beta_distinguishable");
    double beta = -std::log(lambda);
    beta = newton_polish([&](double b) { return truncated_poisson_mean(b, cutoff); },
                         [&](double b) { return -truncated_poisson_variance(b, cutoff); }, beta, m);
    const double residual = std::abs(truncated_poisson_mean(beta, cutoff) - m);
    if (residual > kSolverTol * m)
        throw SolveError("solve_beta_distinguishable: residual " + std::to_string(residual) +
                         " above tolerance");
    return {beta, truncated_poisson_norm(beta, cutoff)};
}

GentileParams solve_betabar(const std::vector<std::pair<std::int64_t, Cutoff>>& identical_species,
                            double total_value_mean) {
    if (identical_species.empty())
        throw std::invalid_argument("solve_betabar: species list is empty");
    if (!(total_value_mean > 0.0) || !std::isfinite(total_value_mean))
        throw std::invalid_argument("solve_betabar: total_value_mean must be > 0");
    bool all_finite = true;
    double supremum = 0.0;
    for (const auto& [w, lam] : identical_species) {
        if (w < 1) throw std::invalid_argument("solve_betabar: weights must be >= 1");
        if (lam.is_finite())
            supremum += static_cast<double>(w) * static_cast<double>(lam.value());
        else
            all_finite = false;
    }
    if (all_finite && total_value_mean >= supremum)
        throw std::invalid_argument("solve_betabar: total_value_mean " +
                                    std::to_string(total_value_mean) + " exceeds the supremum " +
                                    std::to_string(supremum));
    auto value_mean = [&](double bb) {
        double s = 0.0;
        for (const auto& [w, lam] : identical_species)
            s += static_cast<double>(w) * truncated_geometric_mean(bb * static_cast<double>(w), lam);
        return s;
    };
    auto value_slope = [&](double bb) {
        double s = 0.0;
        for (const auto& [w, lam] : identical_species) {
            const double wd = static_cast<double>(w);
            s -= wd * wd * truncated_geometric_variance(bb * wd, lam);
        }
        return s;
    };
    // Any unbounded species pins betabar to the positive axis.
    double betabar = all_finite
                         ? solve_decreasing_real(value_mean, total_value_mean, "solve_betabar")
                         : solve_decreasing_positive(value_mean, total_value_mean, "solve_betabar");
    betabar = newton_polish(value_mean, value_slope, betabar, total_value_mean);
    const double residual = std::abs(value_mean(betabar) - total_value_mean);
    if (residual > kSolverTol * total_value_mean)
        throw SolveError("solve_betabar: residual " + std::to_string(residual) +
                         " above tolerance");
    double norm = 1.0;
    for (const auto& [w, lam] : identical_species)
        norm *= truncated_geometric_norm(betabar * static_cast<double>(w), lam);
    return {betabar, norm};
}

WealthSystem solve_system(WealthSystem sys) {
    if (sys.species.empty()) throw std::invalid_argument("solve_system: no species");
    SolvedMultipliers out;
    out.beta.assign(sys.species.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<std::pair<std::int64_t, Cutoff>> identical;
    for (std::size_t i = 0; i < sys.species.size(); ++i) {
        const SpeciesSpec& sp = sys.species[i];
        try {
            validate(sp);
            if (sp.cls == WealthClass::distinguishable)
                out.beta[i] = solve_beta_distinguishable(sp.target_mean, sp.cutoff).beta;
            else
                identical.emplace_back(sp.weight, sp.cutoff);
        } catch (const SolveError& e) {
            throw SolveError("species " + std::to_string(i) + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("species " + std::to_string(i) + ": " + e.what());
        }
    }
    if (!identical.empty()) out.betabar = solve_betabar(identical, sys.total_value_mean).beta;
    sys.solved = std::move(out);
    return sys;
}

}  // namespace wealthstat
