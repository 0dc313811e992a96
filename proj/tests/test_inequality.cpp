#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wealthstat/inequality.hpp"

using namespace wealthstat;

TEST_CASE("lorenz curve from a pmf") {
    SUBCASE("a point mass is the perfect-equality corner curve") {
        const LorenzCurve c = lorenz_from_pmf(Pmf::delta(3));
        REQUIRE(c.points.size() == 2);
        CHECK(c.points.front() == std::make_pair(0.0, 0.0));
        CHECK(c.points.back() == std::make_pair(1.0, 1.0));
        CHECK(c.gini == doctest::Approx(0.0));
    }
    SUBCASE("bosonic m=1 breakpoint at k=1 is (3/4, 1/4)") {
        const LorenzCurve c = lorenz_from_pmf(atomic_pmf(AtomicKind::bosonic, 1.0));
        // points: (0,0), (1/2,0) for k=0, then (3/4, 1/4)
        REQUIRE(c.points.size() > 3);
        CHECK(c.points[1].first == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(c.points[1].second == 0.0);
        CHECK(c.points[2].first == doctest::Approx(0.75).epsilon(1e-9));
        CHECK(c.points[2].second == doctest::Approx(0.25).epsilon(1e-9));
    }
    SUBCASE("flat segment has exactly length P(0)") {
        for (double m : {0.3, 1.0, 4.0}) {
            const Pmf p = atomic_pmf(AtomicKind::poisson, m);
            const LorenzCurve c = lorenz_from_pmf(p);
            CHECK(c.points[1].first == doctest::Approx(p[0]).epsilon(1e-12));
            CHECK(c.points[1].second == 0.0);
        }
    }
    SUBCASE("monotone, below the diagonal, pinned endpoints") {
        const LorenzCurve c = lorenz_from_pmf(atomic_pmf(AtomicKind::poisson, 2.3));
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            CHECK(c.points[i].first >= c.points[i - 1].first);
            CHECK(c.points[i].second >= c.points[i - 1].second);
            CHECK(c.points[i].second <= c.points[i].first + 1e-12);
        }
        CHECK(c.points.back() == std::make_pair(1.0, 1.0));
    }
    SUBCASE("zero mean is rejected") {
        CHECK_THROWS_AS(lorenz_from_pmf(Pmf::delta(0)), std::invalid_argument);
    }
}

TEST_CASE("analytic geometric lorenz curve") {
    SUBCASE("flat boundary at x = 1/(m+1)") {
        CHECK(lorenz_geometric_analytic(1.0, 0.5) == 0.0);
        CHECK(lorenz_geometric_analytic(1.0, 0.3) == 0.0);
    }
    SUBCASE("frozen value y(3/4) = 1/4 at m = 1") {
        CHECK(lorenz_geometric_analytic(1.0, 0.75) == doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("x = 1 returns 1 by continuity") {
        CHECK(lorenz_geometric_analytic(1.0, 1.0) == 1.0);
    }
    SUBCASE("passes through the pmf breakpoints") {
        for (double m : {0.4, 1.0, 2.5}) {
            const Pmf p = atomic_pmf(AtomicKind::bosonic, m, 1e-14);
            double x = 0.0, wealth = 0.0;
            for (std::size_t k = 0; k < 30; ++k) {
                x += p[k];
                wealth += static_cast<double>(k) * p[k];
                CHECK(lorenz_geometric_analytic(m, x) ==
                      doctest::Approx(wealth / m).epsilon(1e-9));
            }
        }
    }
    SUBCASE("near (0.8, 0.2) when m is approximately 0.47") {
        CHECK(lorenz_geometric_analytic(0.47, 0.8) == doctest::Approx(0.2).epsilon(2e-3));
    }
}

TEST_CASE("smooth poisson lorenz curve") {
    SUBCASE("flat segment below e^{-m} and fixed endpoints") {
        CHECK(lorenz_poisson_smooth(1.0, 0.2) == 0.0);
        CHECK(lorenz_poisson_smooth(1.0, 1.0) == 1.0);
    }
    SUBCASE("interpolates the k-indexed breakpoints") {
        for (double m : {0.35, 1.0, 3.0}) {
            const Pmf p = atomic_pmf(AtomicKind::poisson, m, 1e-14);
            double x = 0.0, wealth = 0.0;
            for (std::size_t k = 0; k < 12; ++k) {
                x += p[k];
                wealth += static_cast<double>(k) * p[k];
                if (x >= 1.0) break;
                CHECK(lorenz_poisson_smooth(m, x) == doctest::Approx(wealth / m).epsilon(1e-8));
            }
        }
    }
    SUBCASE("near (0.8, 0.2) when m is approximately 0.35") {
        CHECK(lorenz_poisson_smooth(0.35, 0.8) == doctest::Approx(0.2).epsilon(0.1));
    }
}

TEST_CASE("gini from pmf") {
    SUBCASE("point mass gives zero") { CHECK(gini_from_pmf(Pmf::delta(4)) == 0.0); }
    SUBCASE("fermionic law gives 1 - m") {
        for (double m : {0.1, 0.3, 0.8})
            CHECK(gini_from_pmf(atomic_pmf(AtomicKind::fermionic, m)) ==
                  doctest::Approx(1.0 - m).epsilon(1e-12));
    }
    SUBCASE("bosonic m=1 gives 2/3") {
        CHECK(gini_from_pmf(atomic_pmf(AtomicKind::bosonic, 1.0)) ==
              doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    }
    SUBCASE("single pass equals the literal double sum") {
        for (double m : {0.4, 1.7}) {
            const Pmf p = atomic_pmf(AtomicKind::poisson, m);
            CHECK(gini_from_pmf(p) == doctest::Approx(oracles::gini_double_sum(p)).epsilon(1e-10));
            const Pmf b = atomic_pmf(AtomicKind::bosonic, m);
            CHECK(gini_from_pmf(b) == doctest::Approx(oracles::gini_double_sum(b)).epsilon(1e-10));
        }
    }
    SUBCASE("zero mean is rejected") {
        CHECK_THROWS_AS(gini_from_pmf(Pmf::delta(0)), std::invalid_argument);
    }
}

TEST_CASE("poisson gini by quadrature") {
    SUBCASE("reference values") {
        CHECK(gini_poisson(1.0) == doctest::Approx(0.52).epsilon(0.01));
        CHECK(gini_poisson(100.0) == doctest::Approx(0.056).epsilon(0.04));
        CHECK(gini_poisson(0.0) == 1.0);
    }
    SUBCASE("Bessel-function oracle e^{-2m}(I0 + I1)(2m)") {
        for (double m : {0.1, 0.35, 1.0, 2.0}) {
            const double want =
                std::exp(-2.0 * m) * (std::cyl_bessel_i(0.0, 2.0 * m) + std::cyl_bessel_i(1.0, 2.0 * m));
            CHECK(gini_poisson(m) == doctest::Approx(want).epsilon(1e-9));
        }
    }
    SUBCASE("agrees with the summed gini") {
        for (double m : {0.1, 0.35, 1.0, 10.0, 100.0})
            CHECK(gini_poisson(m) ==
                  doctest::Approx(gini_from_pmf(atomic_pmf(AtomicKind::poisson, m))).epsilon(1e-6));
    }
}

TEST_CASE("closed-form ginis") {
    SUBCASE("bosonic, fermionic") {
        CHECK(gini_bosonic(1.0) == doctest::Approx(2.0 / 3.0));
        CHECK(gini_bosonic(1e9) == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(gini_bosonic(0.0) == 1.0);
        CHECK(gini_fermionic(0.3) == doctest::Approx(0.7));
        CHECK_THROWS_AS(gini_fermionic(1.5), std::invalid_argument);
    }
    SUBCASE("lorenz-integral variant") {
        CHECK(gini_bosonic_lorenz(1.0) == doctest::Approx(0.680337).epsilon(1e-5));
        // matches 1 - 2 * area under the analytic curve
        for (double m : {0.5, 1.0, 3.0}) {
            double area = 0.0;
            const int n = 200000;
            for (int i = 0; i < n; ++i) {
                const double x0 = static_cast<double>(i) / n;
                const double x1 = static_cast<double>(i + 1) / n;
                area += 0.5 * (lorenz_geometric_analytic(m, x0) + lorenz_geometric_analytic(m, x1)) /
                        n;
            }
            CHECK(gini_bosonic_lorenz(m) == doctest::Approx(1.0 - 2.0 * area).epsilon(1e-6));
        }
    }
    SUBCASE("largest gap to the summed form is about 2.4% near m = 0.53") {
        double max_dev = 0.0, argmax = 0.0;
        for (double m = 0.2; m <= 1.2; m += 0.001) {
            const double dev = std::abs(gini_bosonic_lorenz(m) - gini_bosonic(m)) / gini_bosonic(m);
            if (dev > max_dev) {
                max_dev = dev;
                argmax = m;
            }
        }
        CHECK(max_dev == doctest::Approx(0.024).epsilon(0.1));
        CHECK(argmax == doctest::Approx(0.53).epsilon(0.1));
    }
    SUBCASE("gini ordering") {
        for (double m : {0.05, 0.3, 0.8}) {
            CHECK(gini_fermionic(m) < gini_poisson(m));
            CHECK(gini_poisson(m) < gini_bosonic(m));
        }
        for (double m : {2.0, 10.0, 50.0}) CHECK(gini_poisson(m) < gini_bosonic(m));
    }
}

TEST_CASE("entropies") {
    SUBCASE("closed forms") {
        CHECK(entropy_bosonic(1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
        CHECK(shannon_entropy(Pmf::delta(0)) == 0.0);
    }
    SUBCASE("asymptotic matches the direct sum at large mean") {
        const double direct = shannon_entropy(atomic_pmf(AtomicKind::poisson, 100.0));
        CHECK(direct == doctest::Approx(entropy_poisson_asymptotic(100.0)).epsilon(1e-4));
    }
    SUBCASE("bosonic law maximizes entropy at fixed mean") {
        for (double m : {0.2, 0.7, 1.0, 3.0}) {
            const double bound = entropy_bosonic(m) + 1e-9;
            CHECK(shannon_entropy(atomic_pmf(AtomicKind::poisson, m)) <= bound);
            if (m <= 1.0) CHECK(shannon_entropy(atomic_pmf(AtomicKind::fermionic, m)) <= bound);
            CHECK(shannon_entropy(atomic_pmf(AtomicKind::bosonic, m)) ==
                  doctest::Approx(entropy_bosonic(m)).epsilon(1e-9));
        }
    }
}

TEST_CASE("tail mass above the mean") {
    SUBCASE("frozen values at m = 1") {
        CHECK(tail_mass_above_mean(AtomicKind::bosonic, 1.0) == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(tail_mass_above_mean(AtomicKind::poisson, 1.0) ==
              doctest::Approx(1.0 - 2.0 * std::exp(-1.0)).epsilon(1e-12));
    }
    SUBCASE("limits 1/2 and e^{-1}") {
        CHECK(tail_mass_above_mean(AtomicKind::poisson, 1e4) == doctest::Approx(0.5).epsilon(0.02));
        CHECK(tail_mass_above_mean(AtomicKind::bosonic, 1e4) ==
              doctest::Approx(std::exp(-1.0)).epsilon(0.02));
    }
    SUBCASE("poisson tail dominates the bosonic tail") {
        for (double m : {0.2, 0.7, 1.0, 3.5, 20.0, 1e3})
            CHECK(tail_mass_above_mean(AtomicKind::poisson, m) >
                  tail_mass_above_mean(AtomicKind::bosonic, m));
    }
    SUBCASE("matches direct pmf sums") {
        for (double m : {0.4, 2.0, 7.3}) {
            const Pmf p = atomic_pmf(AtomicKind::poisson, m, 1e-15);
            double want = 0.0;
            for (std::size_t k = static_cast<std::size_t>(std::floor(m)) + 1; k < p.size(); ++k)
                want += p[k];
            CHECK(tail_mass_above_mean(AtomicKind::poisson, m) ==
                  doctest::Approx(want).epsilon(1e-10));
        }
    }
    SUBCASE("fermionic kind is rejected") {
        CHECK_THROWS_AS(tail_mass_above_mean(AtomicKind::fermionic, 0.3), std::invalid_argument);
    }
}

TEST_CASE("80/20 means") {
    const double poisson_root = pareto_8020_mean(AtomicKind::poisson);
    const double bosonic_root = pareto_8020_mean(AtomicKind::bosonic);
    CHECK(poisson_root == doctest::Approx(0.35).epsilon(0.06));
    CHECK(bosonic_root == doctest::Approx(0.47).epsilon(0.05));
    // the roots really sit on the curves
    CHECK(lorenz_geometric_analytic(bosonic_root, 0.8) == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(lorenz_poisson_smooth(poisson_root, 0.8) == doctest::Approx(0.2).epsilon(1e-6));
}

TEST_CASE("lorenz/gini duality within the discretization bound") {
    for (double m : {0.4, 1.0, 3.0}) {
        const Pmf p = atomic_pmf(AtomicKind::bosonic, m, 1e-13);
        const LorenzCurve c = lorenz_from_pmf(p);
        const double from_area = 1.0 - 2.0 * lorenz_area(c);
        CHECK(std::abs(from_area - c.gini) / c.gini < 0.025);
    }
    for (double m : {0.35, 1.0, 10.0}) {
        const Pmf p = atomic_pmf(AtomicKind::poisson, m, 1e-13);
        const LorenzCurve c = lorenz_from_pmf(p);
        const double from_area = 1.0 - 2.0 * lorenz_area(c);
        CHECK(std::abs(from_area - c.gini) / c.gini < 0.025);
    }
}
