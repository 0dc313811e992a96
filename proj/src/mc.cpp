#include "wealthstat/mc.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>

namespace wealthstat {

namespace {

constexpr std::int64_t kMaxEnumOwners = 12;
constexpr std::int64_t kMaxEnumBudget = 12;

std::vector<std::int64_t> occupancy_of(const std::vector<std::int64_t>& ownership) {
    std::int64_t mx = 0;
    for (std::int64_t k : ownership) mx = std::max(mx, k);
    std::vector<std::int64_t> occ(static_cast<std::size_t>(mx) + 1, 0);
    for (std::int64_t k : ownership) ++occ[static_cast<std::size_t>(k)];
    return occ;
}

void check_counts(std::int64_t total, std::int64_t owners, const char* what) {
    if (total < 0) throw std::invalid_argument(std::string(what) + ": total must be >= 0");
    if (owners < 1) throw std::invalid_argument(std::string(what) + ": owners must be >= 1");
}

}  // namespace

SampleRng::SampleRng(RngStream s) {
    std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                      static_cast<std::uint32_t>(s.stream),
                      static_cast<std::uint32_t>(s.stream >> 32)};
    eng_.seed(seq);
}

std::uint64_t SampleRng::below(std::uint64_t n) {
    // reject draws from the final partial block of size 2^64 mod n
    std::uint64_t x, r;
    do {
        x = eng_();
        r = x % n;
    } while (x - r > std::uint64_t(0) - n);
    return r;
}

AllocationSample sample_distinguishable(std::int64_t total, std::int64_t owners, RngStream rng) {
    check_counts(total, owners, "sample_distinguishable");
    SampleRng gen(rng);
    AllocationSample out;
    out.ownership.assign(static_cast<std::size_t>(owners), 0);
    for (std::int64_t c = 0; c < total; ++c)
        ++out.ownership[gen.below(static_cast<std::uint64_t>(owners))];
    out.occupancy = occupancy_of(out.ownership);
    return out;
}

AllocationSample sample_identical_bosonic(std::int64_t total, std::int64_t owners, RngStream rng) {
    check_counts(total, owners, "sample_identical_bosonic");
    SampleRng gen(rng);
    AllocationSample out;
    out.ownership.reserve(static_cast<std::size_t>(owners));
    // walk the total+owners-1 star/bar slots, picking each as a bar with
    // probability bars_left/slots_left: a uniform bar subset
    std::int64_t bars_left = owners - 1;
    std::int64_t current = 0;
    for (std::int64_t slots_left = total + owners - 1; slots_left > 0; --slots_left) {
        if (bars_left > 0 &&
            gen.below(static_cast<std::uint64_t>(slots_left)) < static_cast<std::uint64_t>(bars_left)) {
            out.ownership.push_back(current);
            current = 0;
            --bars_left;
        } else {
            ++current;
        }
    }
    out.ownership.push_back(current);
    out.occupancy = occupancy_of(out.ownership);
    return out;
}

AllocationSample sample_identical_fermionic(std::int64_t total, std::int64_t owners, RngStream rng) {
    check_counts(total, owners, "sample_identical_fermionic");
    if (total > owners)
        throw std::invalid_argument("sample_identical_fermionic: total must be <= owners");
    SampleRng gen(rng);
    AllocationSample out;
    out.ownership.reserve(static_cast<std::size_t>(owners));
    std::int64_t left = total;
    for (std::int64_t i = 0; i < owners; ++i) {
        const std::int64_t owners_left = owners - i;
        if (left > 0 &&
            gen.below(static_cast<std::uint64_t>(owners_left)) < static_cast<std::uint64_t>(left)) {
            out.ownership.push_back(1);
            --left;
        } else {
            out.ownership.push_back(0);
        }
    }
    out.occupancy = occupancy_of(out.ownership);
    return out;
}

Pmf empirical_occupancy(const std::vector<AllocationSample>& samples) {
    if (samples.empty()) throw std::invalid_argument("empirical_occupancy: no samples");
    const std::size_t owners = samples.front().ownership.size();
    std::vector<std::int64_t> counts;
    for (const AllocationSample& s : samples) {
        if (s.ownership.size() != owners)
            throw std::invalid_argument("empirical_occupancy: inconsistent sample dimensions");
        if (s.occupancy.size() > counts.size()) counts.resize(s.occupancy.size(), 0);
        for (std::size_t k = 0; k < s.occupancy.size(); ++k) counts[k] += s.occupancy[k];
    }
    const double total = static_cast<double>(owners) * static_cast<double>(samples.size());
    std::vector<double> p(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) p[k] = static_cast<double>(counts[k]) / total;
    return Pmf(std::move(p), 0.0);
}

Pmf sampled_occupancy(SampleKind kind, std::int64_t total, std::int64_t owners,
                      std::int64_t n_samples, std::uint64_t seed, int threads) {
    if (n_samples < 1) throw std::invalid_argument("sampled_occupancy: n_samples must be >= 1");
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n_samples)));
    auto draw = [&](std::uint64_t stream) {
        const RngStream rs{seed, stream};
        switch (kind) {
            case SampleKind::distinguishable: return sample_distinguishable(total, owners, rs);
            case SampleKind::bosonic: return sample_identical_bosonic(total, owners, rs);
            case SampleKind::fermionic: return sample_identical_fermionic(total, owners, rs);
        }
        throw std::invalid_argument("sampled_occupancy: unknown kind");
    };
    std::vector<std::vector<std::int64_t>> partial(static_cast<std::size_t>(workers));
    auto work = [&](int w) {
        std::vector<std::int64_t>& counts = partial[static_cast<std::size_t>(w)];
        for (std::int64_t i = w; i < n_samples; i += workers) {
            const AllocationSample s = draw(static_cast<std::uint64_t>(i));
            if (s.occupancy.size() > counts.size()) counts.resize(s.occupancy.size(), 0);
            for (std::size_t k = 0; k < s.occupancy.size(); ++k) counts[k] += s.occupancy[k];
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (std::thread& t : pool) t.join();
    }
    std::size_t width = 0;
    for (const auto& c : partial) width = std::max(width, c.size());
    std::vector<std::int64_t> counts(width, 0);
    for (const auto& c : partial)
        for (std::size_t k = 0; k < c.size(); ++k) counts[k] += c[k];
    const double denom = static_cast<double>(owners) * static_cast<double>(n_samples);
    std::vector<double> p(width);
    for (std::size_t k = 0; k < width; ++k) p[k] = static_cast<double>(counts[k]) / denom;
    return Pmf(std::move(p), 0.0);
}

namespace {

// factorials 0..24 cover every guarded instance
std::vector<mpz_class> factorial_table(std::int64_t n) {
    std::vector<mpz_class> f(static_cast<std::size_t>(n) + 1);
    f[0] = 1;
    for (std::int64_t i = 1; i <= n; ++i)
        f[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i - 1)] * i;
    return f;
}

}  // namespace

OccupancyCensus enumerate_extremum(std::int64_t owners, const std::vector<SpeciesSpec>& species,
                                   const std::vector<std::int64_t>& distinguishable_totals,
                                   std::int64_t identical_total_value) {
    if (owners < 1 || owners > kMaxEnumOwners)
        throw std::invalid_argument("enumerate_extremum: owners must be in [1, " +
                                    std::to_string(kMaxEnumOwners) + "]");
    if (species.empty() || species.size() > 3)
        throw std::invalid_argument("enumerate_extremum: needs 1..3 species");
    std::vector<std::size_t> dist_idx;
    std::vector<std::size_t> ident_idx;
    for (std::size_t i = 0; i < species.size(); ++i)
        (species[i].cls == WealthClass::distinguishable ? dist_idx : ident_idx).push_back(i);
    if (dist_idx.size() != distinguishable_totals.size())
        throw std::invalid_argument(
            "enumerate_extremum: one total per distinguishable species required");
    for (std::int64_t t : distinguishable_totals)
        if (t < 0 || t > kMaxEnumBudget)
            throw std::invalid_argument("enumerate_extremum: species totals must be in [0, 12]");
    if (identical_total_value < 0 || identical_total_value > kMaxEnumBudget)
        throw std::invalid_argument("enumerate_extremum: identical total value must be in [0, 12]");

    // per-species bound on a single ownership entry
    std::vector<std::int64_t> cap(species.size(), 0);
    for (std::size_t i = 0; i < species.size(); ++i) {
        std::int64_t budget;
        if (species[i].cls == WealthClass::distinguishable) {
            const auto pos = std::find(dist_idx.begin(), dist_idx.end(), i) - dist_idx.begin();
            budget = distinguishable_totals[static_cast<std::size_t>(pos)];
        } else {
            budget = identical_total_value / species[i].weight;
        }
        cap[i] = species[i].cutoff.is_finite() ? std::min(species[i].cutoff.value(), budget)
                                               : budget;
    }

    // every nonzero ownership vector within the caps
    std::vector<OccupancyCensus::Ownership> cells;
    OccupancyCensus::Ownership cur(species.size(), 0);
    std::function<void(std::size_t)> gen = [&](std::size_t i) {
        if (i == species.size()) {
            for (std::int64_t k : cur)
                if (k > 0) {
                    cells.push_back(cur);
                    return;
                }
            return;  // the all-zero cell absorbs the remaining owners
        }
        for (std::int64_t k = 0; k <= cap[i]; ++k) {
            cur[i] = k;
            gen(i + 1);
        }
        cur[i] = 0;
    };
    gen(0);

    const auto fact = factorial_table(std::max<std::int64_t>(owners, kMaxEnumBudget));
    OccupancyCensus census;
    OccupancyCensus::Occupancy occupancy;

    std::vector<std::int64_t> count_left = distinguishable_totals;
    std::int64_t value_left = identical_total_value;

    std::function<void(std::size_t, std::int64_t)> dfs = [&](std::size_t ci,
                                                             std::int64_t owners_left) {
        if (ci == cells.size()) {
            for (std::int64_t c : count_left)
                if (c != 0) return;
            if (value_left != 0) return;
            // zero cell takes the rest; compute Omega exactly
            mpz_class upsilon = fact[static_cast<std::size_t>(owners)];
            upsilon /= fact[static_cast<std::size_t>(owners_left)];
            for (const auto& kv : occupancy) upsilon /= fact[static_cast<std::size_t>(kv.second)];
            mpz_class phi = 1;
            for (std::size_t d = 0; d < dist_idx.size(); ++d) {
                phi *= fact[static_cast<std::size_t>(distinguishable_totals[d])];
                for (const auto& kv : occupancy) {
                    const std::int64_t k = kv.first[dist_idx[d]];
                    for (std::int64_t rep = 0; rep < kv.second; ++rep)
                        phi /= fact[static_cast<std::size_t>(k)];
                }
            }
            OccupancyCensus::Occupancy full = occupancy;
            if (owners_left > 0)
                full[OccupancyCensus::Ownership(species.size(), 0)] = owners_left;
            mpz_class omega = upsilon * phi;
            census.total += omega;
            if (omega > census.max_omega) {
                census.max_omega = omega;
                census.maximizers.clear();
            }
            if (omega == census.max_omega) census.maximizers.push_back(full);
            census.entries.push_back({std::move(full), std::move(omega)});
            return;
        }
        const OccupancyCensus::Ownership& cell = cells[ci];
        // highest count this cell can take under the remaining budgets
        std::int64_t n_max = owners_left;
        for (std::size_t d = 0; d < dist_idx.size(); ++d)
            if (cell[dist_idx[d]] > 0)
                n_max = std::min(n_max, count_left[d] / cell[dist_idx[d]]);
        std::int64_t cell_value = 0;
        for (std::size_t j : ident_idx) cell_value += cell[j] * species[j].weight;
        if (cell_value > 0) n_max = std::min(n_max, value_left / cell_value);
        for (std::int64_t n = 0; n <= n_max; ++n) {
            if (n > 0) {
                occupancy[cell] = n;
                for (std::size_t d = 0; d < dist_idx.size(); ++d)
                    count_left[d] -= n * cell[dist_idx[d]];
                value_left -= n * cell_value;
            }
            dfs(ci + 1, owners_left - n);
            if (n > 0) {
                for (std::size_t d = 0; d < dist_idx.size(); ++d)
                    count_left[d] += n * cell[dist_idx[d]];
                value_left += n * cell_value;
            }
        }
        occupancy.erase(cell);
    };
    dfs(0, owners);
    return census;
}

OccupancyCensus enumerate_single(std::int64_t owners, std::int64_t total, WealthClass cls,
                                 Cutoff cutoff) {
    SpeciesSpec sp;
    sp.cls = cls;
    sp.weight = 1;
    sp.cutoff = cutoff;
    if (cls == WealthClass::distinguishable)
        return enumerate_extremum(owners, {sp}, {total}, 0);
    return enumerate_extremum(owners, {sp}, {}, total);
}

}  // namespace wealthstat
