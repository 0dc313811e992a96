// Acceptance suite: one line per criterion, nonzero exit when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wealthstat/bitcoin.hpp"
#include "wealthstat/convolve.hpp"
#include "wealthstat/inequality.hpp"
#include "wealthstat/mc.hpp"
#include "wealthstat/solver.hpp"

using namespace wealthstat;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++failures;
}

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

WealthSystem random_mixed_system(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    WealthSystem sys;
    const int nd = 1 + static_cast<int>(unit(gen) * 2.0);
    const int ni = 1 + static_cast<int>(unit(gen) * 2.0);
    for (int i = 0; i < nd; ++i) {
        SpeciesSpec sp;
        sp.cls = WealthClass::distinguishable;
        sp.weight = 1 + static_cast<std::int64_t>(unit(gen) * 3.0);
        if (unit(gen) < 0.3) sp.cutoff = Cutoff::at(2 + static_cast<std::int64_t>(unit(gen) * 3.0));
        sp.target_mean = 0.2 + unit(gen) * 1.5;
        sys.species.push_back(sp);
    }
    for (int i = 0; i < ni; ++i) {
        SpeciesSpec sp;
        sp.cls = WealthClass::identical;
        sp.weight = 1 + static_cast<std::int64_t>(unit(gen) * 3.0);
        const double roll = unit(gen);
        if (roll < 0.3)
            sp.cutoff = Cutoff::at(1);
        else if (roll < 0.6)
            sp.cutoff = Cutoff::at(2 + static_cast<std::int64_t>(unit(gen) * 3.0));
        sys.species.push_back(sp);
    }
    double cap = 0.0;
    bool bounded = true;
    for (const SpeciesSpec& sp : sys.species)
        if (sp.cls == WealthClass::identical) {
            if (sp.cutoff.is_finite())
                cap += static_cast<double>(sp.weight * sp.cutoff.value());
            else
                bounded = false;
        }
    sys.total_value_mean = bounded ? 0.5 * cap : 0.5 + unit(gen) * 2.0;
    return solve_system(sys);
}

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const double g100 = gini_poisson(100.0);
    const double g1 = gini_poisson(1.0);
    const double g01 = gini_poisson(0.1);
    const double elapsed = seconds_since(start);
    const bool ok = within(g100, 0.056, 0.002) && within(g1, 0.52, 0.005) &&
                    within(g01, 0.91, 0.005) && elapsed < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "poisson gini quadrature: G(100)=%.4f G(1)=%.4f G(0.1)=%.4f in %.3fs", g100, g1,
                  g01, elapsed);
    report(1, ok, buf);
}

void criterion_2() {
    const double gl1 = gini_bosonic_lorenz(1.0);
    const double gl01 = gini_bosonic_lorenz(0.1);
    bool closed_ok = true;
    for (double m = 0.05; m <= 8.0; m += 0.05)
        closed_ok = closed_ok && gini_bosonic(m) == (1.0 + m) / (1.0 + 2.0 * m);
    double max_dev = 0.0, argmax = 0.0;
    for (double m = 0.2; m <= 1.5; m += 0.0005) {
        const double dev = std::abs(gini_bosonic_lorenz(m) - gini_bosonic(m)) / gini_bosonic(m);
        if (dev > max_dev) {
            max_dev = dev;
            argmax = m;
        }
    }
    const bool ok = within(gl1, 0.68, 0.005) && within(gl01, 0.93, 0.005) && closed_ok &&
                    within(max_dev, 0.024, 0.002) && within(argmax, 0.53, 0.05);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "geometric ginis: G'(1)=%.4f G'(0.1)=%.4f max dev %.4f at m=%.3f", gl1, gl01,
                  max_dev, argmax);
    report(2, ok, buf);
}

void criterion_3() {
    const double mp = pareto_8020_mean(AtomicKind::poisson);
    const double mb = pareto_8020_mean(AtomicKind::bosonic);
    const bool ok = within(mp, 0.35, 0.02) && within(mb, 0.47, 0.02) &&
                    within(lorenz_geometric_analytic(mb, 0.8), 0.2, 1e-6);
    char buf[120];
    std::snprintf(buf, sizeof buf, "80/20 means: poisson %.4f, geometric %.4f", mp, mb);
    report(3, ok, buf);
}

void criterion_4() {
    const double tp = tail_mass_above_mean(AtomicKind::poisson, 1e4);
    const double tb = tail_mass_above_mean(AtomicKind::bosonic, 1e4);
    bool order_ok = true;
    for (double m : {0.1, 0.35, 1.0, 3.0, 10.0, 100.0, 1e4})
        order_ok = order_ok && tail_mass_above_mean(AtomicKind::poisson, m) >
                                   tail_mass_above_mean(AtomicKind::bosonic, m);
    const bool ok =
        within(tp, 0.5, 0.01) && within(tb, std::exp(-1.0), 0.01) && order_ok;
    char buf[120];
    std::snprintf(buf, sizeof buf, "tail masses at m=1e4: poisson %.4f, bosonic %.4f", tp, tb);
    report(4, ok, buf);
}

void criterion_5() {
    const OccupancyCensus dist = enumerate_single(2, 2, WealthClass::distinguishable);
    const OccupancyCensus ident = enumerate_single(2, 2, WealthClass::identical);
    bool ok = dist.total == 4 && ident.total == 3;
    ok = ok && dist.entries.size() == 2 && ident.entries.size() == 2;
    for (const auto& e : dist.entries) ok = ok && e.omega == 2;  // tied configurations
    ok = ok && ident.max_omega == 2 && dist.maximizers.size() == 2;
    report(5, ok,
           "intro counting: " + dist.total.get_str() + " distinguishable vs " +
               ident.total.get_str() + " identical configurations");
}

void criterion_6() {
    const auto start = std::chrono::steady_clock::now();
    const std::int64_t scale = 10000;
    const Pmf emp_d =
        sampled_occupancy(SampleKind::distinguishable, scale, scale, scale, 20220901, 4);
    const Pmf emp_b = sampled_occupancy(SampleKind::bosonic, scale, scale, scale, 20220902, 4);
    const double tv_d = tv_distance(emp_d, atomic_pmf(AtomicKind::poisson, 1.0));
    const double tv_b = tv_distance(emp_b, atomic_pmf(AtomicKind::bosonic, 1.0));
    const double elapsed = seconds_since(start);
    const bool ok = tv_d < 0.01 && tv_b < 0.01 && elapsed < 60.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "10^4 samples at N=M=10^4: TV poisson %.5f, TV bosonic %.5f in %.1fs", tv_d,
                  tv_b, elapsed);
    report(6, ok, buf);
}

void criterion_7() {
    const Pmf poisson = atomic_pmf(AtomicKind::poisson, 4.0);
    double prev_tv = 2.0, prev_gini = 2.0, last_tv = 0.0;
    bool ok = true;
    for (std::int64_t d = 1; d <= 4096; d *= 2) {
        const Pmf bank = bank_convolution(4.0, d, 1e-13);
        last_tv = tv_distance(bank, poisson);
        const double g = gini_from_pmf(bank);
        ok = ok && last_tv < prev_tv && g <= prev_gini + 1e-12;
        prev_tv = last_tv;
        prev_gini = g;
    }
    ok = ok && last_tv < 1e-2;
    char buf[120];
    std::snprintf(buf, sizeof buf, "bank interpolation: TV at d=4096 is %.2e, monotone", last_tv);
    report(7, ok, buf);
}

void criterion_8() {
    const double tv = tv_distance(fermionic_binomial(4096, 4096), atomic_pmf(AtomicKind::poisson, 1.0));
    char buf[120];
    std::snprintf(buf, sizeof buf, "fermionic binomial limit: TV to Poisson(1) is %.2e", tv);
    report(8, tv < 5e-4, buf);
}

void criterion_9() {
    const PartitionTable table(30);
    bool parts_ok = true;
    for (std::int64_t v = 0; v <= 30; ++v)
        parts_ok = parts_ok && table.value(v) == oracles::partitions_by_enumeration(v);
    const double integral = std::numbers::pi * std::numbers::pi / 6e-6;
    const double rel =
        std::abs(bitcoin_mean_total_value(1e-3, 10000) - integral) / integral;
    const double approx = betabar_approx(1e6);
    const double cond = condensation_ratio(3.0);
    const bool ok = parts_ok && rel < 1e-3 && within(approx, 1.2825e-3, 1e-7) && cond > 0.9;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "bitcoin: partitions exact, sum/integral dev %.2e, approx %.6e, cond %.3f", rel,
                  approx, cond);
    report(9, ok, buf);
}

void criterion_10() {
    std::mt19937_64 gen(808);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        const WealthSystem sys = random_mixed_system(gen);
        std::vector<WeightedPart> parts;
        for (std::size_t i = 0; i < sys.species.size(); ++i) {
            const SpeciesSpec& sp = sys.species[i];
            if (sp.cls == WealthClass::distinguishable)
                parts.push_back({truncated_poisson(sys.solved->beta[i], sp.cutoff, 1e-14), sp.weight});
            else
                parts.push_back(
                    {truncated_geometric(*sys.solved->betabar * static_cast<double>(sp.weight),
                                         sp.cutoff, 1e-14),
                     sp.weight});
        }
        const ValuePmf dist = weighted_convolve(parts, default_value_support(parts));
        for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double series = 0.0;
            for (std::size_t v = dist.size(); v-- > 0;) series = series * q + dist[v];
            const double gap = std::abs(series - generating_function(sys, q));
            worst = std::max(worst, gap);
            ok = ok && gap < 1e-9;
        }
    }
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "generating-function duality: worst gap %.2e over 3 systems x 5 q", worst);
    report(10, ok, buf);
}

void criterion_11() {
    // The 2022 full-scale figures (N ~ 1e9 addresses, total ~ 1e15 satoshi)
    // are order-of-magnitude inputs; the checked surface is the property
    // suites of criteria 9 and 10 at reachable scales.
    const double mw = 1e6;  // per-address mean implied by those figures
    const double bb = solve_betabar_bitcoin(mw);
    const bool ok = within(bb / betabar_approx(mw), 1.0, 5e-4);
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "full-scale regime is input-only; mw=1e6 gives betabar %.4e (approx within "
                  "%.1e)",
                  bb, std::abs(bb / betabar_approx(mw) - 1.0));
    report(11, ok, buf);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
