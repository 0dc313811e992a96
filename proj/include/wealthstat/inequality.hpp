#ifndef WEALTHSTAT_INEQUALITY_HPP
#define WEALTHSTAT_INEQUALITY_HPP

#include <utility>
#include <vector>

#include "wealthstat/core_dist.hpp"
#include "wealthstat/pmf.hpp"

namespace wealthstat {

// Cumulative population share x versus cumulative wealth share y, poorest
// first.  Points run from (0,0) to (1,1); the first segment [0, P(0)] is
// the flat stretch contributed by the empty-handed owners.
struct LorenzCurve {
    std::vector<std::pair<double, double>> points;
    double gini = 0.0;
};

// Exact piecewise-linear Lorenz curve of a discrete pmf, reported at the
// k-indexed breakpoints.  Requires a positive mean and a truncation mass
// below 1e-9.
LorenzCurve lorenz_from_pmf(const Pmf& pmf);

// Trapezoid area under the curve; 1 - 2*area is the Lorenz-integral Gini.
double lorenz_area(const LorenzCurve& curve);

// Analytic Lorenz curve of the bosonic geometric law:
//   y = x + (1-x) ln(1-x) / (m ln(1+1/m))   for x >= 1/(m+1),  else 0.
// x = 1 returns 1 by continuity (the logarithm is singular there).
double lorenz_geometric_analytic(double m, double x);

// Smooth Lorenz curve of the Poisson law, the continuous-k extension
// through the breakpoints via regularized incomplete gamma functions.
double lorenz_poisson_smooth(double m, double x);

// Mean absolute difference of two independent draws over twice the mean,
// evaluated by the single-pass form
//   G = 1 + (1/m) sum_k P(k) [k P(k) - 2 sum_{k'<=k} k' P(k')] .
double gini_from_pmf(const Pmf& pmf);

// Gini of the Poisson law by quadrature of
//   (1/pi) int_0^pi e^{-2m(1-cos t)} (1+cos t) dt
// to absolute accuracy 1e-8 or better.
double gini_poisson(double m);

double gini_bosonic(double m);     // (1+m)/(1+2m)
double gini_fermionic(double m);   // 1-m, requires m <= 1
// Lorenz-integral variant for the geometric law:
//   (m/(m+1))^2 (1/(2m ln(1+1/m)) + 1/m + 1/m^2);
// differs from the summed Gini by at most a couple of percent.
double gini_bosonic_lorenz(double m);

double shannon_entropy(const Pmf& pmf);      // sum -p ln p
double entropy_bosonic(double m);            // (m+1)ln(m+1) - m ln m; maximal at fixed mean
double entropy_poisson_asymptotic(double m); // (1/2)ln(2 pi e m) - 1/(12m)

// Mass above the mean, sum_{k > m} P(k) with k >= floor(m)+1.  Only the
// poisson and bosonic kinds are meaningful here.
double tail_mass_above_mean(AtomicKind kind, double m);

// The mean at which the Lorenz curve passes through (0.8, 0.2): about 0.35
// for the Poisson law and 0.47 for the geometric one.
double pareto_8020_mean(AtomicKind kind);

}  // namespace wealthstat

#endif
