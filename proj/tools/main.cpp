// wealthstat: ownership-based wealth statistics from the command line.
//
// Exit codes: 0 ok, 2 configuration error, 3 numeric non-convergence,
// 4 I/O error.
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wealthstat/bitcoin.hpp"
#include "wealthstat/convolve.hpp"
#include "wealthstat/core_dist.hpp"
#include "wealthstat/inequality.hpp"
#include "wealthstat/mc.hpp"
#include "wealthstat/solver.hpp"
#include "wealthstat/version.hpp"

using json = nlohmann::json;
using namespace wealthstat;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string format_double(double x, int precision = -1) {
    char buf[64];
    const auto res = precision < 0
                         ? std::to_chars(buf, buf + sizeof buf, x)
                         : std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general,
                                         precision);
    return std::string(buf, res.ptr);
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void add_row(std::vector<json> cells) { rows.push_back(std::move(cells)); }
};

struct RunContext {
    std::string output = "-";
    std::string format = "csv";
    std::string command;
    json params = json::object();
    json meta_extra = json::object();
    std::optional<std::uint64_t> seed;

    void param(const std::string& key, const std::string& value) { params[key] = value; }
    void param(const std::string& key, double value) { params[key] = format_double(value); }
    void param(const std::string& key, std::int64_t value) { params[key] = std::to_string(value); }
    void flag(const std::string& key) { params[key] = "true"; }
    void note(const std::string& key, double value) { meta_extra[key] = value; }
    void note(const std::string& key, const std::string& value) { meta_extra[key] = value; }
};

std::string csv_cell(const json& v) {
    if (v.is_number_float()) return format_double(v.get<double>(), 15);
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void write_output(const RunContext& ctx, const Table& table) {
    json meta;
    meta["command"] = ctx.command;
    meta["parameters"] = ctx.params;
    meta["seed"] = ctx.seed ? json(*ctx.seed) : json(nullptr);
    meta["version"] = kVersion;
    for (auto it = ctx.meta_extra.begin(); it != ctx.meta_extra.end(); ++it)
        meta[it.key()] = it.value();

    std::ostringstream body;
    if (ctx.format == "json") {
        json data;
        data["columns"] = table.columns;
        data["rows"] = json::array();
        for (const auto& row : table.rows) data["rows"].push_back(row);
        json out;
        out["meta"] = meta;
        out["data"] = data;
        body << out.dump(2) << '\n';
    } else {
        body << "# command: " << ctx.command << '\n';
        std::string ps;
        for (auto it = ctx.params.begin(); it != ctx.params.end(); ++it) {
            if (!ps.empty()) ps += ' ';
            ps += it.key() + "=" +
                  (it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
        }
        body << "# parameters: " << ps << '\n';
        body << "# seed: " << (ctx.seed ? std::to_string(*ctx.seed) : std::string("none")) << '\n';
        body << "# version: " << kVersion << '\n';
        for (auto it = ctx.meta_extra.begin(); it != ctx.meta_extra.end(); ++it)
            body << "# " << it.key() << ": "
                 << (it.value().is_number_float()
                         ? format_double(it.value().get<double>(), 15)
                         : (it.value().is_string() ? it.value().get<std::string>()
                                                   : it.value().dump()))
                 << '\n';
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            body << table.columns[c] << (c + 1 < table.columns.size() ? "," : "");
        body << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                body << csv_cell(row[c]) << (c + 1 < row.size() ? "," : "");
            body << '\n';
        }
    }
    if (ctx.output == "-") {
        std::cout << body.str();
        return;
    }
    std::ofstream file(ctx.output);
    if (!file) throw IoError("cannot open output path '" + ctx.output + "'");
    file << body.str();
    if (!file.good()) throw IoError("write failed for output path '" + ctx.output + "'");
}

Cutoff cutoff_from(std::int64_t raw) { return raw <= 0 ? Cutoff::unbounded() : Cutoff::at(raw); }

AtomicKind atomic_kind_from(const std::string& name) {
    if (name == "poisson") return AtomicKind::poisson;
    if (name == "bosonic" || name == "geometric") return AtomicKind::bosonic;
    if (name == "fermionic") return AtomicKind::fermionic;
    throw CLI::ValidationError("kind", "unknown kind '" + name + "'");
}

// species grammar: class[:key=value]* with keys m, w, cutoff;
// classes poisson (distinguishable), bosonic, fermionic, gentile
SpeciesSpec parse_species(const std::string& text) {
    SpeciesSpec sp;
    std::stringstream ss(text);
    std::string tok;
    if (!std::getline(ss, tok, ':')) throw CLI::ValidationError("species", "empty species spec");
    if (tok == "poisson") {
        sp.cls = WealthClass::distinguishable;
    } else if (tok == "bosonic") {
        sp.cls = WealthClass::identical;
    } else if (tok == "fermionic") {
        sp.cls = WealthClass::identical;
        sp.cutoff = Cutoff::at(1);
    } else if (tok == "gentile") {
        sp.cls = WealthClass::identical;
    } else {
        throw CLI::ValidationError("species", "unknown species class '" + tok + "'");
    }
    while (std::getline(ss, tok, ':')) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("species", "expected key=value in '" + tok + "'");
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        try {
            if (key == "m")
                sp.target_mean = std::stod(val);
            else if (key == "w")
                sp.weight = std::stoll(val);
            else if (key == "cutoff")
                sp.cutoff = cutoff_from(std::stoll(val));
            else
                throw CLI::ValidationError("species", "unknown species key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw CLI::ValidationError("species", "bad value for species key '" + key + "'");
        }
    }
    return sp;
}

std::vector<double> grid(double lo, double hi, std::int64_t points, bool log_spaced) {
    std::vector<double> xs;
    if (points < 2 || lo == hi) {
        xs.push_back(lo);
        return xs;
    }
    for (std::int64_t j = 0; j < points; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(points - 1);
        xs.push_back(log_spaced ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                                : lo + t * (hi - lo));
    }
    return xs;
}

int effective_threads(int requested) {
    int threads = requested > 0
                      ? requested
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap_env = std::getenv("WEALTHSTAT_THREADS")) {
        const int cap = std::atoi(cap_env);
        if (cap > 0) threads = std::min(threads, cap);
    }
    return std::max(1, threads);
}

std::string occupancy_string(const OccupancyCensus::Occupancy& occ) {
    std::string s;
    for (const auto& [cell, n] : occ) {
        if (!s.empty()) s += ' ';
        std::string ks;
        for (std::size_t i = 0; i < cell.size(); ++i)
            ks += (i ? "/" : "") + std::to_string(cell[i]);
        s += ks + ":" + std::to_string(n);
    }
    return s.empty() ? "all-zero" : s;
}

// ---------------------------------------------------------------- commands

void run_dist(RunContext& ctx, const std::string& kind, double m, double beta,
              std::int64_t cutoff_raw, double tail_tol, std::int64_t kmax, bool tail_above_mean,
              double m_min, double m_max, std::int64_t points) {
    Table table;
    if (tail_above_mean) {
        ctx.flag("tail-above-mean");
        ctx.param("m-min", m_min);
        ctx.param("m-max", m_max);
        ctx.param("points", points);
        table.columns = {"m", "poisson_tail", "bosonic_tail"};
        for (double x : grid(m_min, m_max, points, true))
            table.add_row({x, tail_mass_above_mean(AtomicKind::poisson, x),
                           tail_mass_above_mean(AtomicKind::bosonic, x)});
        write_output(ctx, table);
        return;
    }
    ctx.param("kind", kind);
    ctx.param("tail-tol", tail_tol);
    Pmf pmf;
    if (kind == "tpoisson" || kind == "tgeometric") {
        ctx.param("beta", beta);
        ctx.param("cutoff", cutoff_raw);
        pmf = kind == "tpoisson" ? truncated_poisson(beta, cutoff_from(cutoff_raw), tail_tol)
                                 : truncated_geometric(beta, cutoff_from(cutoff_raw), tail_tol);
    } else {
        ctx.param("m", m);
        pmf = atomic_pmf(atomic_kind_from(kind), m, tail_tol);
    }
    ctx.note("mean", pmf.mean());
    ctx.note("variance", pmf.variance());
    ctx.note("truncation_mass", pmf.truncation_mass());
    table.columns = {"k", "p"};
    const std::size_t last =
        kmax > 0 ? std::min<std::size_t>(pmf.size(), static_cast<std::size_t>(kmax) + 1)
                 : pmf.size();
    for (std::size_t k = 0; k < last; ++k) table.add_row({static_cast<std::int64_t>(k), pmf[k]});
    write_output(ctx, table);
}

void run_gini(RunContext& ctx, const std::string& kind, double m, double m_min, double m_max,
              std::int64_t points, bool log_spaced) {
    ctx.param("kind", kind);
    auto value = [&](double x) {
        if (kind == "poisson") return gini_poisson(x);
        if (kind == "bosonic") return gini_bosonic(x);
        if (kind == "fermionic") return gini_fermionic(x);
        if (kind == "bosonic-lorenz") return gini_bosonic_lorenz(x);
        throw CLI::ValidationError("kind", "unknown kind '" + kind + "'");
    };
    Table table;
    table.columns = {"m", "gini"};
    if (points > 0) {
        ctx.param("m-min", m_min);
        ctx.param("m-max", m_max);
        ctx.param("points", points);
        if (log_spaced) ctx.flag("log");
        for (double x : grid(m_min, m_max, points, log_spaced)) table.add_row({x, value(x)});
    } else {
        ctx.param("m", m);
        table.add_row({m, value(m)});
    }
    write_output(ctx, table);
}

void run_lorenz(RunContext& ctx, const std::string& kind, double m, std::int64_t points,
                double tail_tol) {
    ctx.param("kind", kind);
    ctx.param("m", m);
    Table table;
    table.columns = {"x", "y"};
    if (kind == "geometric") {
        ctx.param("points", points);
        for (std::int64_t j = 0; j <= points; ++j) {
            const double x = static_cast<double>(j) / static_cast<double>(points);
            table.add_row({x, lorenz_geometric_analytic(m, x)});
        }
        ctx.note("gini_closed_form", gini_bosonic(m));
        ctx.note("gini_lorenz_integral", gini_bosonic_lorenz(m));
    } else if (kind == "poisson") {
        const LorenzCurve curve = lorenz_from_pmf(atomic_pmf(AtomicKind::poisson, m, tail_tol));
        for (const auto& [x, y] : curve.points) table.add_row({x, y});
        ctx.note("gini", curve.gini);
    } else {
        throw CLI::ValidationError("kind", "unknown kind '" + kind + "'");
    }
    write_output(ctx, table);
}

void run_entropy(RunContext& ctx, const std::string& kind, double m, double tail_tol) {
    ctx.param("kind", kind);
    ctx.param("m", m);
    const Pmf pmf = atomic_pmf(atomic_kind_from(kind), m, tail_tol);
    Table table;
    table.columns = {"kind", "m", "shannon", "bosonic_max"};
    std::vector<json> row{kind, m, shannon_entropy(pmf), entropy_bosonic(m)};
    if (kind == "poisson") {
        table.columns.push_back("poisson_asymptotic");
        row.push_back(entropy_poisson_asymptotic(m));
    }
    table.add_row(std::move(row));
    write_output(ctx, table);
}

void run_convolve(RunContext& ctx, const std::vector<std::string>& species_text, double mw,
                  std::int64_t vmax, bool check_gf, double tail_tol) {
    if (species_text.empty())
        throw CLI::ValidationError("species", "at least one species required");
    WealthSystem sys;
    json recorded = json::array();
    for (const std::string& text : species_text) {
        sys.species.push_back(parse_species(text));
        recorded.push_back(text);
    }
    ctx.params["species"] = recorded;
    sys.total_value_mean = mw;
    bool any_identical = false;
    for (const SpeciesSpec& sp : sys.species) any_identical |= sp.cls == WealthClass::identical;
    if (any_identical) ctx.param("mw", mw);
    const WealthSystem solved = solve_system(sys);
    std::vector<WeightedPart> parts;
    for (std::size_t i = 0; i < solved.species.size(); ++i) {
        const SpeciesSpec& sp = solved.species[i];
        if (sp.cls == WealthClass::distinguishable) {
            parts.push_back(
                {truncated_poisson(solved.solved->beta[i], sp.cutoff, tail_tol), sp.weight});
            ctx.note("beta_" + std::to_string(i), solved.solved->beta[i]);
        } else {
            parts.push_back(
                {truncated_geometric(*solved.solved->betabar * static_cast<double>(sp.weight),
                                     sp.cutoff, tail_tol),
                 sp.weight});
        }
    }
    if (solved.solved->betabar) ctx.note("betabar", *solved.solved->betabar);
    if (vmax <= 0) vmax = default_value_support(parts);
    ctx.param("vmax", vmax);
    const ValuePmf dist = weighted_convolve(parts, vmax);
    ctx.note("mean", dist.mean());
    ctx.note("truncation_mass", dist.truncation_mass());
    if (check_gf) {
        ctx.flag("check-gf");
        for (double q : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            double series = 0.0;
            for (std::size_t v = dist.size(); v-- > 0;) series = series * q + dist[v];
            ctx.note("z_series_q" + format_double(q), series);
            ctx.note("z_closed_q" + format_double(q), generating_function(solved, q));
        }
    }
    Table table;
    table.columns = {"v", "p"};
    for (std::size_t v = 0; v < dist.size(); ++v)
        table.add_row({static_cast<std::int64_t>(v), dist[v]});
    write_output(ctx, table);
}

void run_banks(RunContext& ctx, double m, std::int64_t banks, double tail_tol) {
    ctx.param("m", m);
    ctx.param("banks", banks);
    const Pmf pmf = bank_convolution(m, banks, tail_tol);
    const Pmf poisson = atomic_pmf(AtomicKind::poisson, m, tail_tol);
    std::size_t argmax = 0;
    for (std::size_t k = 1; k < pmf.size(); ++k)
        if (pmf[k] > pmf[argmax]) argmax = k;
    ctx.note("gini", gini_from_pmf(pmf));
    ctx.note("tv_to_poisson", tv_distance(pmf, poisson));
    ctx.note("mode", static_cast<double>(argmax));
    ctx.note("mode_predicted", (1.0 - 1.0 / static_cast<double>(banks)) * m);
    Table table;
    table.columns = {"k", "p"};
    for (std::size_t k = 0; k < pmf.size(); ++k)
        table.add_row({static_cast<std::int64_t>(k), pmf[k]});
    write_output(ctx, table);
}

void run_bitcoin(RunContext& ctx, double mw, double betabar, std::int64_t dbar,
                 std::int64_t partitions, std::int64_t vmax) {
    ctx.param("dbar", dbar);
    Table table;
    if (partitions >= 0) {
        ctx.param("partitions", partitions);
        const PartitionTable tbl(partitions);
        table.columns = {"v", "partitions"};
        for (std::int64_t v = 0; v <= partitions; ++v) table.add_row({v, tbl.value(v).get_str()});
        write_output(ctx, table);
        return;
    }
    if (!(betabar > 0.0)) {
        if (!(mw > 0.0)) throw CLI::ValidationError("mw", "either --mw or --betabar must be given");
        ctx.param("mw", mw);
        betabar = solve_betabar_bitcoin(mw, dbar);
        ctx.note("betabar_exact", betabar);
        ctx.note("betabar_approx", betabar_approx(mw));
    } else {
        ctx.param("betabar", betabar);
    }
    BitcoinModel model;
    model.betabar = betabar;
    model.denom_cap = dbar;
    model.mean_total_value = bitcoin_mean_total_value(betabar, dbar);
    ctx.note("mean_total_value", model.mean_total_value);
    ctx.note("condensation_ratio", condensation_ratio(betabar, dbar));
    const double mode_domain = 9.869604401089358 / 24.0;  // pi^2/24
    if (betabar < mode_domain) ctx.note("value_mode", value_mode(betabar));
    if (vmax >= 0) {
        ctx.param("vmax", vmax);
        const ValuePmf p = value_distribution(model, vmax);
        ctx.note("truncation_mass", p.truncation_mass());
        table.columns = {"v", "p"};
        for (std::size_t v = 0; v < p.size(); ++v)
            table.add_row({static_cast<std::int64_t>(v), p[v]});
    } else {
        table.columns = {"betabar", "mean_total_value", "condensation_ratio"};
        table.add_row({betabar, model.mean_total_value, condensation_ratio(betabar, dbar)});
    }
    write_output(ctx, table);
}

void run_simulate(RunContext& ctx, const std::string& kind, std::int64_t total,
                  std::int64_t owners, std::int64_t samples, std::uint64_t seed, int threads) {
    ctx.param("kind", kind);
    ctx.param("total", total);
    ctx.param("owners", owners);
    ctx.param("samples", samples);
    ctx.seed = seed;
    const int workers = effective_threads(threads);
    SampleKind sk;
    AtomicKind ak;
    if (kind == "distinguishable") {
        sk = SampleKind::distinguishable;
        ak = AtomicKind::poisson;
    } else if (kind == "bosonic") {
        sk = SampleKind::bosonic;
        ak = AtomicKind::bosonic;
    } else if (kind == "fermionic") {
        sk = SampleKind::fermionic;
        ak = AtomicKind::fermionic;
    } else {
        throw CLI::ValidationError("kind", "unknown kind '" + kind + "'");
    }
    const Pmf empirical = sampled_occupancy(sk, total, owners, samples, seed, workers);
    const double m = static_cast<double>(total) / static_cast<double>(owners);
    const Pmf analytic = atomic_pmf(ak, m);
    ctx.note("tv_to_analytic", tv_distance(empirical, analytic));
    ctx.note("threads", static_cast<double>(workers));
    Table table;
    table.columns = {"k", "empirical", "analytic"};
    const std::size_t width = std::max(empirical.size(), analytic.size());
    for (std::size_t k = 0; k < width; ++k)
        table.add_row({static_cast<std::int64_t>(k), empirical[k], analytic[k]});
    write_output(ctx, table);
}

void run_verify(RunContext& ctx, const std::string& which, std::int64_t owners, std::int64_t total,
                const std::string& cls_name, std::int64_t cutoff_raw) {
    ctx.param("case", which);
    Table table;
    if (which == "intro") {
        table.columns = {"class", "occupancy", "omega"};
        const OccupancyCensus dist = enumerate_single(2, 2, WealthClass::distinguishable);
        for (const auto& e : dist.entries)
            table.add_row({"distinguishable", occupancy_string(e.occupancy), e.omega.get_str()});
        const OccupancyCensus ident = enumerate_single(2, 2, WealthClass::identical);
        for (const auto& e : ident.entries)
            table.add_row({"identical", occupancy_string(e.occupancy), e.omega.get_str()});
        ctx.note("distinguishable_total", dist.total.get_str());
        ctx.note("identical_total", ident.total.get_str());
    } else if (which == "extremum") {
        ctx.param("owners", owners);
        ctx.param("total", total);
        ctx.param("class", cls_name);
        if (cutoff_raw > 0) ctx.param("cutoff", cutoff_raw);
        const WealthClass cls =
            cls_name == "identical" ? WealthClass::identical : WealthClass::distinguishable;
        const OccupancyCensus census = enumerate_single(owners, total, cls, cutoff_from(cutoff_raw));
        table.columns = {"occupancy", "omega"};
        for (const auto& e : census.entries)
            table.add_row({occupancy_string(e.occupancy), e.omega.get_str()});
        ctx.note("total", census.total.get_str());
        ctx.note("max_omega", census.max_omega.get_str());
        ctx.note("maximizers", static_cast<double>(census.maximizers.size()));
    } else {
        throw CLI::ValidationError("case", "unknown case '" + which + "'");
    }
    write_output(ctx, table);
}

// ------------------------------------------------------------ config files

// Accepts either a key=value text file (with a `command` key) or a JSON
// document produced by --format json (command and parameters come from its
// meta block).  Flags given on the command line win over file values.
struct FileConfig {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
};

FileConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw IoError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << file.rdbuf();
    std::string text = buf.str();
    FileConfig cfg;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json doc = json::parse(text);
        if (!doc.contains("meta"))
            throw CLI::ValidationError("config", "JSON config lacks a meta block");
        cfg.command = doc["meta"].value("command", "");
        const json& params = doc["meta"]["parameters"];
        for (auto it = params.begin(); it != params.end(); ++it) {
            if (it.value().is_array())
                for (const auto& v : it.value())
                    cfg.params.emplace_back(it.key(), v.get<std::string>());
            else
                cfg.params.emplace_back(it.key(), it.value().is_string()
                                                      ? it.value().get<std::string>()
                                                      : it.value().dump());
        }
        if (!doc["meta"]["seed"].is_null())
            cfg.params.emplace_back("seed",
                                    std::to_string(doc["meta"]["seed"].get<std::uint64_t>()));
        return cfg;
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        if (key == "command")
            cfg.command = val;
        else
            cfg.params.emplace_back(key, val);
    }
    return cfg;
}

// Splices config-file values into the argument list; explicit flags win.
std::vector<std::string> compose_args(const std::vector<std::string>& cli, const FileConfig& cfg) {
    static const std::vector<std::string> kCommands = {"dist",  "gini",    "lorenz",
                                                       "entropy", "convolve", "banks",
                                                       "bitcoin", "simulate", "verify"};
    std::string subcommand;
    for (const std::string& a : cli)
        if (std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end()) {
            subcommand = a;
            break;
        }
    std::vector<std::string> out;
    if (subcommand.empty()) {
        if (cfg.command.empty())
            throw CLI::ValidationError("config", "config file names no command");
        subcommand = cfg.command;
        out.push_back(subcommand);
    }
    auto cli_has = [&](const std::string& key) {
        const std::string full = "--" + key;
        for (const std::string& a : cli)
            if (a == full || a.rfind(full + "=", 0) == 0) return true;
        return false;
    };
    for (const std::string& a : cli) out.push_back(a);
    if (cfg.command.empty() || subcommand == cfg.command)
        for (const auto& [key, val] : cfg.params) {
            if (cli_has(key)) continue;
            out.push_back("--" + key);
            if (val != "true") out.push_back(val);
        }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ownership-based wealth distribution toolkit"};
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(0, 1);

    RunContext ctx;
    std::string config_path;
    app.add_option("--output,-o", ctx.output, "output path, '-' for stdout");
    app.add_option("--format", ctx.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", config_path, "key=value or JSON config file");

    // dist
    std::string dist_kind = "poisson";
    double dist_m = 1.0, dist_beta = 0.0, dist_tail_tol = kDefaultTailTol;
    std::int64_t dist_cutoff = 0, dist_kmax = 0, dist_points = 50;
    bool dist_tail_flag = false;
    double dist_m_min = 0.1, dist_m_max = 1e4;
    auto* dist = app.add_subcommand("dist", "evaluate an occupation law");
    dist->add_option("--kind", dist_kind, "poisson|bosonic|fermionic|tpoisson|tgeometric");
    dist->add_option("--m", dist_m, "mean (atomic kinds)");
    dist->add_option("--beta", dist_beta, "multiplier (truncated kinds)");
    dist->add_option("--cutoff", dist_cutoff, "maximal count; 0 = unbounded");
    dist->add_option("--tail-tol", dist_tail_tol, "unbounded-support tail tolerance");
    dist->add_option("--kmax", dist_kmax, "cap on printed support");
    dist->add_flag("--tail-above-mean", dist_tail_flag, "emit the above-mean mass curves");
    dist->add_option("--m-min", dist_m_min, "grid start");
    dist->add_option("--m-max", dist_m_max, "grid end");
    dist->add_option("--points", dist_points, "grid size");

    // gini
    std::string gini_kind = "poisson";
    double gini_m = 1.0, gini_m_min = 0.1, gini_m_max = 100.0;
    std::int64_t gini_points = 0;
    bool gini_log = false;
    auto* gini = app.add_subcommand("gini", "Gini coefficients");
    gini->add_option("--kind", gini_kind, "poisson|bosonic|fermionic|bosonic-lorenz");
    gini->add_option("--m", gini_m, "mean");
    gini->add_option("--m-min", gini_m_min, "grid start");
    gini->add_option("--m-max", gini_m_max, "grid end");
    gini->add_option("--points", gini_points, "grid size (0 = single value)");
    gini->add_flag("--log", gini_log, "log-spaced grid");

    // lorenz
    std::string lorenz_kind = "geometric";
    double lorenz_m = 1.0, lorenz_tail_tol = kDefaultTailTol;
    std::int64_t lorenz_points = 100;
    auto* lorenz = app.add_subcommand("lorenz", "Lorenz curves");
    lorenz->add_option("--kind", lorenz_kind, "poisson|geometric");
    lorenz->add_option("--m", lorenz_m, "mean");
    lorenz->add_option("--points", lorenz_points, "x-grid segments (geometric kind)");
    lorenz->add_option("--tail-tol", lorenz_tail_tol, "pmf tail tolerance (poisson kind)");

    // entropy
    std::string entropy_kind = "poisson";
    double entropy_m = 1.0, entropy_tail_tol = kDefaultTailTol;
    auto* entropy = app.add_subcommand("entropy", "Shannon entropies");
    entropy->add_option("--kind", entropy_kind, "poisson|bosonic|fermionic");
    entropy->add_option("--m", entropy_m, "mean");
    entropy->add_option("--tail-tol", entropy_tail_tol, "pmf tail tolerance");

    // convolve
    std::vector<std::string> conv_species;
    double conv_mw = 0.0, conv_tail_tol = kDefaultTailTol;
    std::int64_t conv_vmax = 0;
    bool conv_check_gf = false;
    auto* convolve = app.add_subcommand("convolve", "total-value law of a mixed system");
    convolve->add_option("--species", conv_species,
                         "species spec class[:key=value]*, e.g. poisson:m=1:w=2");
    convolve->add_option("--mw", conv_mw, "mean total value of the identical sector");
    convolve->add_option("--vmax", conv_vmax, "value support (0 = automatic)");
    convolve->add_flag("--check-gf", conv_check_gf, "report generating-function checks");
    convolve->add_option("--tail-tol", conv_tail_tol, "per-species tail tolerance");

    // banks
    double banks_m = 1.0, banks_tail_tol = kDefaultTailTol;
    std::int64_t banks_n = 1;
    auto* banks = app.add_subcommand("banks", "multi-bank deposit law");
    banks->add_option("--m", banks_m, "total deposit mean");
    banks->add_option("--banks", banks_n, "number of banks");
    banks->add_option("--tail-tol", banks_tail_tol, "tail tolerance");

    // bitcoin
    double btc_mw = 0.0, btc_betabar = 0.0;
    std::int64_t btc_dbar = kBitcoinHardCap, btc_partitions = -1, btc_vmax = -1;
    auto* bitcoin = app.add_subcommand("bitcoin", "partition-number total-value model");
    bitcoin->add_option("--mw", btc_mw, "mean total value per address (satoshi)");
    bitcoin->add_option("--betabar", btc_betabar, "multiplier (skips the solve)");
    bitcoin->add_option("--dbar", btc_dbar, "denomination cap");
    bitcoin->add_option("--partitions", btc_partitions, "emit exact partition numbers 0..V");
    bitcoin->add_option("--vmax", btc_vmax, "emit the value distribution 0..V");

    // simulate
    std::string sim_kind = "distinguishable";
    std::int64_t sim_total = 100, sim_owners = 100, sim_samples = 1000;
    std::uint64_t sim_seed = 20240101;
    int sim_threads = 0;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo allocation sampling");
    simulate->add_option("--kind", sim_kind, "distinguishable|bosonic|fermionic");
    simulate->add_option("--total", sim_total, "number of units");
    simulate->add_option("--owners", sim_owners, "number of owners");
    simulate->add_option("--samples", sim_samples, "number of samples");
    simulate->add_option("--seed", sim_seed, "RNG seed");
    simulate->add_option("--threads", sim_threads, "worker threads (0 = automatic)");

    // verify
    std::string verify_case = "intro", verify_class = "distinguishable";
    std::int64_t verify_owners = 4, verify_total = 4, verify_cutoff = 0;
    auto* verify = app.add_subcommand("verify", "exact enumeration checks");
    verify->add_option("--case", verify_case, "intro|extremum");
    verify->add_option("--owners", verify_owners, "owners (extremum case)");
    verify->add_option("--total", verify_total, "units (extremum case)");
    verify->add_option("--class", verify_class, "distinguishable|identical");
    verify->add_option("--cutoff", verify_cutoff, "maximal count; 0 = unbounded");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        // pull --config out first so its values can be spliced in
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) {
                config_path = args[i + 1];
                args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                           args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
                break;
            }
            if (args[i].rfind("--config=", 0) == 0) {
                config_path = args[i].substr(9);
                args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
                break;
            }
        }
        if (!config_path.empty()) args = compose_args(args, load_config(config_path));
        std::vector<const char*> cargs;
        cargs.push_back("wealthstat");
        for (const std::string& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());

        if (dist->parsed()) {
            ctx.command = "dist";
            run_dist(ctx, dist_kind, dist_m, dist_beta, dist_cutoff, dist_tail_tol, dist_kmax,
                     dist_tail_flag, dist_m_min, dist_m_max, dist_points);
        } else if (gini->parsed()) {
            ctx.command = "gini";
            run_gini(ctx, gini_kind, gini_m, gini_m_min, gini_m_max, gini_points, gini_log);
        } else if (lorenz->parsed()) {
            ctx.command = "lorenz";
            run_lorenz(ctx, lorenz_kind, lorenz_m, lorenz_points, lorenz_tail_tol);
        } else if (entropy->parsed()) {
            ctx.command = "entropy";
            run_entropy(ctx, entropy_kind, entropy_m, entropy_tail_tol);
        } else if (convolve->parsed()) {
            ctx.command = "convolve";
            run_convolve(ctx, conv_species, conv_mw, conv_vmax, conv_check_gf, conv_tail_tol);
        } else if (banks->parsed()) {
            ctx.command = "banks";
            run_banks(ctx, banks_m, banks_n, banks_tail_tol);
        } else if (bitcoin->parsed()) {
            ctx.command = "bitcoin";
            run_bitcoin(ctx, btc_mw, btc_betabar, btc_dbar, btc_partitions, btc_vmax);
        } else if (simulate->parsed()) {
            ctx.command = "simulate";
            run_simulate(ctx, sim_kind, sim_total, sim_owners, sim_samples, sim_seed, sim_threads);
        } else if (verify->parsed()) {
            ctx.command = "verify";
            run_verify(ctx, verify_case, verify_owners, verify_total, verify_class, verify_cutoff);
        } else {
            std::cout << app.help();
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 4;
    } catch (const SolveError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
