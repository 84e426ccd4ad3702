// SPDX-License-Identifier: Apache-2.0
//
// cachedof: delivery-time analysis for multi-antenna coded caching
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// cachedof: region | ndt | sweep | simulate | example1
//
// Values resolve as: built-in default, then --config file, then explicit flags.
// Output goes to --out (a file; a directory for `region`) or stdout.

#include "cachedof/caching.hpp"
#include "cachedof/dof_region.hpp"
#include "cachedof/io.hpp"
#include "cachedof/ndt.hpp"
#include "cachedof/phy.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

using namespace cachedof;

namespace
{

struct Options
{
    SystemConfig sys;
    std::uint64_t seed = 1;
    int draws = 200;
    std::string pgrid = "10,20,30,40,50";
    std::string mugrid;
    std::string out;
    std::string format = "csv";
    std::string fixture;
    std::string config;
    std::string source = "inline";
    std::string lengths;
    std::string mode = "decentralized";
    std::string scheme = "all";
    std::string demand;
    bool worst_case = false;
    bool no_stamp = false;
};

void add_common(CLI::App *cmd, Options &o)
{
    cmd->add_option("--k", o.sys.users, "users K")->check(CLI::Range(2, kMaxUsers));
    cmd->add_option("--m", o.sys.tx_antennas, "transmit antennas M")->check(CLI::PositiveNumber);
    cmd->add_option("--n", o.sys.rx_antennas, "receive antennas per user N")->check(CLI::PositiveNumber);
    cmd->add_option("--l", o.sys.library_size, "library size L")->check(CLI::PositiveNumber);
    cmd->add_option("--bits", o.sys.file_bits, "file length F in bits (placement granularity)");
    cmd->add_option("--mu", o.sys.cache_size, "normalized cache size")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--draws", o.draws, "Monte Carlo draws or realizations")->check(CLI::PositiveNumber);
    cmd->add_option("--pgrid", o.pgrid, "power grid in dB, comma separated");
    cmd->add_option("--mugrid", o.mugrid, "cache-size grid, comma separated");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--format", o.format, "csv or json (one object per line)")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--fixture", o.fixture, "length file (source=fixture) or cache table (source=generated)");
    cmd->add_option("--config", o.config, "flat key = value file, keys as flag names");
    cmd->add_flag("--no-timestamp", o.no_stamp, "omit the timestamp line from CSV output");
}

// Config-file keys fill everything not given on the command line.
void apply_config_file(CLI::App *cmd, Options &o)
{
    if (o.config.empty())
        return;
    auto kv = read_key_values_file(o.config);
    for (const char *k : {"k", "m", "n", "l", "mu", "bits"})
        if (cmd->count(std::string("--") + k) > 0)
            kv.erase(k);
    if (auto it = kv.find("bits"); it != kv.end())
    {
        kv["f"] = it->second;
        kv.erase(it);
    }
    o.sys = apply_config(kv, o.sys);
    auto text = [&](const char *key, std::string &field) {
        if (auto it = kv.find(key); it != kv.end() && cmd->count(std::string("--") + key) == 0)
            field = it->second;
    };
    text("pgrid", o.pgrid);
    text("mugrid", o.mugrid);
    text("out", o.out);
    text("format", o.format);
    text("fixture", o.fixture);
    text("source", o.source);
    text("lengths", o.lengths);
    text("mode", o.mode);
    text("scheme", o.scheme);
    text("demand", o.demand);
    if (auto it = kv.find("seed"); it != kv.end() && cmd->count("--seed") == 0)
        o.seed = std::stoull(it->second);
    if (auto it = kv.find("draws"); it != kv.end() && cmd->count("--draws") == 0)
        o.draws = std::stoi(it->second);
}

class Output
{
  public:
    explicit Output(const std::string &path)
    {
        if (!path.empty())
        {
            file_.open(path);
            if (!file_)
                throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream &stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

// Runs fn(i) for i in [0, n) on all hardware threads; results must be stored by index.
template <class Fn> void parallel_for(int n, Fn fn)
{
    const int workers = std::max(1, std::min<int>(n, int(std::thread::hardware_concurrency())));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try
            {
                for (int i = w; i < n; i += workers)
                    fn(i);
            }
            catch (...)
            {
                errors[std::size_t(w)] = std::current_exception();
            }
        });
    for (auto &t : pool)
        t.join();
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
}

std::string num(double v)
{
    return format_number(v);
}

// ---------------------------------------------------------------------------------------------
// region

int cmd_region(Options &o)
{
    o.sys.validate();
    const SystemConfig &c = o.sys;
    const Polytope outer = outer_bound(c);
    const RegionSpec inner = inner_bound(c);
    const CornerPointSet corners = corner_points(inner);
    const GroupIndex g(c.users);

    // K = 2: inner and outer support functions must agree on random directions.
    nlohmann::json checks = {{"corner_count", corners.size()}};
    if (c.users == 2)
    {
        std::mt19937_64 rng(o.seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double worst = 0.0;
        for (int t = 0; t < 100; ++t)
        {
            Eigen::VectorXd w(g.size());
            for (int a = 0; a < g.size(); ++a)
                w[a] = u(rng);
            const double so = support_function(outer, w), si = support_function(corners, w);
            worst = std::max(worst, std::abs(so - si) / std::max(1.0, so));
        }
        checks["support_max_deviation"] = worst;
        checks["support_agree"] = worst <= 1e-9;
    }

    if (o.format == "json")
    {
        Output out(o.out);
        nlohmann::json pts = nlohmann::json::array();
        for (int k = 0; k < corners.size(); ++k)
            pts.push_back({{"source", to_string(corners.sources[std::size_t(k)])},
                           {"point", to_json(corners.points[std::size_t(k)])}});
        out.stream() << nlohmann::json{{"regime", to_string(c.regime())}, {"corners", pts}, {"checks", checks}}.dump()
                     << '\n';
        return 0;
    }

    const bool stamp = !o.no_stamp;
    if (o.out.empty())
    {
        write_corner_points(std::cout, corners, c.users, stamp);
        return 0;
    }
    std::filesystem::create_directories(o.out);
    const std::filesystem::path dir(o.out);
    auto open = [&](const char *name) {
        std::ofstream f(dir / name);
        if (!f)
            throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
        return f;
    };
    {
        auto f = open("outer.csv");
        write_polytope(f, outer, "outer", stamp);
    }
    {
        auto f = open("inner.csv");
        write_polytope(f, inner.primary, inner.is_union() ? "D1" : "inner", stamp);
        if (inner.is_union())
        {
            auto f2 = open("inner_d2.csv");
            write_polytope(f2, inner.d2, "D2", stamp);
        }
    }
    {
        auto f = open("corners.csv");
        write_corner_points(f, corners, c.users, stamp);
    }
    {
        auto f = open("checks.csv");
        write_csv_header(f, "checks", {"check", "value"}, stamp);
        for (auto &[k, v] : checks.items())
            write_csv_row(f, {k, v.dump()});
    }
    return 0;
}

// ---------------------------------------------------------------------------------------------
// ndt

const char *kExample1Lengths = "1/5,1/10,0,3/20,1/4,7/20,0";

LengthVector resolve_lengths(const Options &o)
{
    const SystemConfig &c = o.sys;
    if (o.source == "inline")
    {
        if (o.lengths.empty())
            throw ParseError("source=inline needs --lengths");
        return parse_lengths_inline(o.lengths, c.users);
    }
    if (o.source == "fixture")
    {
        if (o.fixture.empty())
            throw ParseError("source=fixture needs --fixture <length file>");
        return read_lengths_file(o.fixture, c.users);
    }
    // generated
    CacheState cache;
    if (!o.fixture.empty())
        cache = load_cache_fixture(o.fixture, c.users);
    else if (o.mode == "centralized")
        cache = centralized_place(c);
    else
        cache = decentralized_place(c, o.seed, c.file_bits);
    cache.check_partition();
    DemandVector demand;
    if (o.demand.empty())
        demand = worst_case_demand(SystemConfig{c.users, c.tx_antennas, c.rx_antennas, cache.files(), c.file_bits,
                                                c.cache_size, c.power});
    else
        for (double v : parse_list(o.demand))
            demand.push_back(int(v));
    return generate_coded_messages(cache, demand);
}

nlohmann::json ndt_record(const LengthVector &f, const SystemConfig &c)
{
    nlohmann::json rec;
    rec["lengths"] = to_json(f);
    if (f.maxCoeff() <= 0.0)
    {
        rec["bounds"] = {{"tau_a", 0.0}, {"tau_l", 0.0}, {"tau_u", c.regime() == Regime::Mid ? nlohmann::json(0.0) : nlohmann::json(nullptr)}, {"rho", 1.0}};
        rec["plan"] = to_json(DeliveryPlan{0.0, DofTuple::Zero(f.size()), {}});
    }
    else
    {
        rec["bounds"] = to_json(gap(f, c));
        rec["plan"] = to_json(solve_ndt(f, c));
    }
    rec["time_sharing"] = benchmark_time_sharing(f, c);
    rec["group_by_group"] = benchmark_group_by_group(f, c);
    rec["group_by_group_extrapolated"] = group_by_group_extrapolated(c);
    return rec;
}

void write_ndt(const Options &o, const nlohmann::json &rec)
{
    Output out(o.out);
    if (o.format == "json")
    {
        out.stream() << rec.dump() << '\n';
        return;
    }
    auto &s = out.stream();
    write_csv_header(s, "ndt", {"key", "value"}, !o.no_stamp);
    auto value = [](const nlohmann::json &v) { return v.is_number() ? num(v.get<double>()) : v.dump(); };
    for (const char *k : {"tau_a", "tau_l", "tau_u", "rho"})
        write_csv_row(s, {k, value(rec["bounds"][k])});
    write_csv_row(s, {"time_sharing", value(rec["time_sharing"])});
    write_csv_row(s, {"group_by_group", value(rec["group_by_group"])});
    write_csv_row(s, {"group_by_group_extrapolated", rec["group_by_group_extrapolated"].dump()});
    const auto &lengths = rec["lengths"];
    for (std::size_t a = 0; a < lengths.size(); ++a)
        write_csv_row(s, {"f." + std::to_string(a + 1), value(lengths[a])});
    const auto &phases = rec["plan"]["phases"];
    for (std::size_t k = 0; k < phases.size(); ++k)
    {
        const std::string p = "phase" + std::to_string(k + 1);
        write_csv_row(s, {p + ".weight", value(phases[k]["weight"])});
        for (std::size_t a = 0; a < phases[k]["point"].size(); ++a)
            write_csv_row(s, {p + ".d." + std::to_string(a + 1), value(phases[k]["point"][a])});
    }
}

int cmd_ndt(Options &o)
{
    o.sys.validate();
    const LengthVector f = resolve_lengths(o);
    write_ndt(o, ndt_record(f, o.sys));
    return 0;
}

int cmd_example1(Options &o)
{
    o.sys = SystemConfig{3, 5, 3, 4, 100, 0.0, 1000.0};
    o.source = o.fixture.empty() ? "inline" : "generated";
    o.lengths = kExample1Lengths;
    const LengthVector f = resolve_lengths(o);
    nlohmann::json rec = ndt_record(f, o.sys);
    if (!o.fixture.empty())
        rec["source"] = "generated from cache table " + o.fixture;
    write_ndt(o, rec);
    return 0;
}

// ---------------------------------------------------------------------------------------------
// sweep

struct SchemeEval
{
    const char *name;
    double (*fn)(const LengthVector &, const SystemConfig &);
};

double proposed(const LengthVector &f, const SystemConfig &c)
{
    return solve_ndt_tau(f, c);
}

double time_sharing(const LengthVector &f, const SystemConfig &c)
{
    return f.maxCoeff() <= 0.0 ? 0.0 : benchmark_time_sharing(f, c);
}

double group_by_group(const LengthVector &f, const SystemConfig &c)
{
    return f.maxCoeff() <= 0.0 ? 0.0 : benchmark_group_by_group(f, c);
}

std::vector<SchemeEval> selected_schemes(const std::string &scheme)
{
    const std::vector<SchemeEval> all{
        {"proposed", proposed}, {"time-sharing", time_sharing}, {"group-by-group", group_by_group}};
    if (scheme == "all")
        return all;
    for (const auto &s : all)
        if (scheme == s.name)
            return {s};
    throw ParseError("unknown scheme '" + scheme + "'");
}

// All L^K demands in lexicographic order, or `samples` uniform ones when L^K > 65536.
std::vector<DemandVector> demand_set(const SystemConfig &c, int samples, std::uint64_t seed, bool worst_case)
{
    if (worst_case)
        return {worst_case_demand(c)};
    std::vector<DemandVector> out;
    const double total = std::pow(double(c.library_size), c.users);
    if (total <= 65536.0)
    {
        DemandVector d(static_cast<std::size_t>(c.users), 1);
        for (;;)
        {
            out.push_back(d);
            int i = c.users - 1;
            while (i >= 0 && d[std::size_t(i)] == c.library_size)
                d[std::size_t(i--)] = 1;
            if (i < 0)
                break;
            ++d[std::size_t(i)];
        }
        return out;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(1, c.library_size);
    for (int s = 0; s < samples; ++s)
    {
        DemandVector d(static_cast<std::size_t>(c.users));
        for (int &r : d)
            r = pick(rng);
        out.push_back(d);
    }
    return out;
}

int cmd_sweep(Options &o)
{
    o.sys.validate();
    if (o.mode != "centralized" && o.mode != "decentralized")
        throw ParseError("mode must be centralized or decentralized");
    const auto schemes = selected_schemes(o.scheme);
    const int K = o.sys.users;

    std::vector<double> grid;
    if (!o.mugrid.empty())
        grid = parse_list(o.mugrid);
    else if (o.mode == "centralized")
        for (int t = 0; t <= K; ++t)
            grid.push_back(double(t) / K);
    else
        for (int i = 0; i <= 10; ++i)
            grid.push_back(i / 10.0);

    struct Row
    {
        double mu;
        std::vector<double> mean, sd;
        int samples;
    };
    std::vector<Row> rows;
    for (double mu : grid)
    {
        SystemConfig c = o.sys;
        c.cache_size = mu;
        c.validate();
        std::vector<std::vector<double>> values; // [sample][scheme]
        if (o.mode == "centralized")
        {
            const CacheState cache = centralized_place(c);
            const auto demands = demand_set(c, o.draws, o.seed, o.worst_case);
            values.assign(demands.size(), std::vector<double>(schemes.size()));
            parallel_for(int(demands.size()), [&](int i) {
                const LengthVector f = generate_coded_messages(cache, demands[std::size_t(i)]);
                for (std::size_t s = 0; s < schemes.size(); ++s)
                    values[std::size_t(i)][s] = schemes[s].fn(f, c);
            });
        }
        else
        {
            values.assign(std::size_t(o.draws), std::vector<double>(schemes.size()));
            parallel_for(o.draws, [&](int i) {
                std::mt19937_64 rng(o.seed * 0x9E3779B97F4A7C15ULL + std::uint64_t(i) * 7919ULL +
                                    std::uint64_t(std::lround(mu * 1e6)));
                const CacheState cache = decentralized_place(c, rng(), c.file_bits);
                DemandVector demand(static_cast<std::size_t>(K));
                if (o.worst_case)
                    demand = worst_case_demand(c);
                else
                {
                    std::uniform_int_distribution<int> pick(1, c.library_size);
                    for (int &r : demand)
                        r = pick(rng);
                }
                const LengthVector f = generate_coded_messages(cache, demand);
                for (std::size_t s = 0; s < schemes.size(); ++s)
                    values[std::size_t(i)][s] = schemes[s].fn(f, c);
            });
        }
        Row r{mu, std::vector<double>(schemes.size(), 0.0), std::vector<double>(schemes.size(), 0.0),
              int(values.size())};
        for (std::size_t s = 0; s < schemes.size(); ++s)
        {
            for (const auto &v : values)
                r.mean[s] += v[s];
            r.mean[s] /= double(values.size());
            for (const auto &v : values)
                r.sd[s] += (v[s] - r.mean[s]) * (v[s] - r.mean[s]);
            r.sd[s] = values.size() > 1 ? std::sqrt(r.sd[s] / double(values.size() - 1)) : 0.0;
        }
        rows.push_back(std::move(r));
    }

    Output out(o.out);
    auto &s = out.stream();
    const bool extrapolated = group_by_group_extrapolated(o.sys);
    if (o.format == "csv")
        write_csv_header(s, "sweep", {"mode", "scheme", "mu", "ndt_mean", "ndt_std", "samples", "extrapolated"},
                         !o.no_stamp);
    for (const Row &r : rows)
        for (std::size_t k = 0; k < schemes.size(); ++k)
        {
            const bool ext = extrapolated && std::string(schemes[k].name) == "group-by-group";
            if (o.format == "csv")
                write_csv_row(s, {o.mode, schemes[k].name, num(r.mu), num(r.mean[k]), num(r.sd[k]),
                                  std::to_string(r.samples), ext ? "1" : "0"});
            else
                s << nlohmann::json{{"mode", o.mode},       {"scheme", schemes[k].name}, {"mu", r.mu},
                                    {"ndt_mean", r.mean[k]}, {"ndt_std", r.sd[k]},        {"samples", r.samples},
                                    {"extrapolated", ext}}
                         .dump()
                  << '\n';
        }
    return 0;
}

// ---------------------------------------------------------------------------------------------
// simulate

int cmd_simulate(Options &o)
{
    o.sys.validate();
    if (o.lengths.empty() && o.source == "inline")
        o.lengths = kExample1Lengths;
    const LengthVector f = resolve_lengths(o);
    if (f.maxCoeff() <= 0.0)
        throw ParseError("simulate: all message lengths are zero");

    std::vector<double> db = parse_list(o.pgrid), powers;
    for (double x : db)
        powers.push_back(std::pow(10.0, x / 10.0));

    struct Curve
    {
        std::string name;
        DeliveryPlan plan;
        std::vector<SimResult> res;
    };
    std::vector<Curve> curves{{"proposed", solve_ndt(f, o.sys), {}}, {"time-sharing", time_sharing_plan(f, o.sys), {}}};
    for (Curve &cv : curves)
    {
        try
        {
            cv.res = simulate_delivery(cv.plan, f, o.sys, powers, o.draws, o.seed);
        }
        catch (const DesignError &e)
        {
            throw DesignError("simulate (" + cv.name + " plan): " + e.what());
        }
    }

    // Time sharing ahead at the lowest power and behind at the highest.
    const bool crossover = curves[1].res.front().ndt < curves[0].res.front().ndt &&
                           curves[0].res.back().ndt < curves[1].res.back().ndt;

    const GroupIndex g(o.sys.users);
    Output out(o.out);
    auto &s = out.stream();
    if (o.format == "csv")
    {
        write_csv_header(s, "simulate",
                         {"plan", "P_dB", "phase", "group", "rate", "T_k", "NDT_sim", "NDT_asym", "draws"},
                         !o.no_stamp);
        for (const Curve &cv : curves)
            for (std::size_t p = 0; p < powers.size(); ++p)
            {
                const SimResult &r = cv.res[p];
                for (std::size_t k = 0; k < r.phases.size(); ++k)
                    for (int a = 0; a < g.size(); ++a)
                        if (r.phases[k].point[a] > 0.0)
                        {
                            std::string label = g.label(a);
                            std::replace(label.begin(), label.end(), ',', ';');
                            write_csv_row(s, {cv.name, num(db[p]), std::to_string(k + 1), label,
                                              num(r.phases[k].mean_rate[a]), num(r.phases[k].time), num(r.ndt),
                                              num(r.ndt_asymptotic), std::to_string(r.draws)});
                        }
                write_csv_row(s, {cv.name, num(db[p]), "total", "all", "", num(r.time), num(r.ndt),
                                  num(r.ndt_asymptotic), std::to_string(r.draws)});
            }
        s << "# crossover " << (crossover ? "true" : "false") << '\n';
    }
    else
    {
        for (const Curve &cv : curves)
            for (std::size_t p = 0; p < powers.size(); ++p)
            {
                const SimResult &r = cv.res[p];
                nlohmann::json phases = nlohmann::json::array();
                for (const PhaseStats &ph : r.phases)
                    phases.push_back({{"point", to_json(ph.point)},
                                      {"weight", ph.weight},
                                      {"mean_rate", to_json(ph.mean_rate)},
                                      {"T_k", ph.time}});
                s << nlohmann::json{{"plan", cv.name},       {"P_dB", db[p]},           {"NDT_sim", r.ndt},
                                    {"NDT_mean", r.ndt_mean}, {"NDT_std", r.ndt_std},    {"NDT_asym", r.ndt_asymptotic},
                                    {"draws", r.draws},       {"phases", phases}}
                         .dump()
                  << '\n';
            }
        s << nlohmann::json{{"crossover", crossover}}.dump() << '\n';
    }
    if (!o.out.empty())
        std::cout << "crossover " << (crossover ? "true" : "false") << '\n';
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Delivery-time analysis for multi-antenna coded caching"};
    app.require_subcommand(1);
    Options o;

    auto *region = app.add_subcommand("region", "outer/inner DoF regions and their corner points");
    auto *ndt = app.add_subcommand("ndt", "optimal NDT, bounds and the delivery plan for one length vector");
    auto *sweep = app.add_subcommand("sweep", "average NDT versus cache size");
    auto *simulate = app.add_subcommand("simulate", "finite-SNR delivery time of the proposed and time-sharing plans");
    auto *example1 = app.add_subcommand("example1", "the three-user, M=5, N=3 worked example");
    for (auto *cmd : {region, ndt, sweep, simulate, example1})
        add_common(cmd, o);
    for (auto *cmd : {ndt, simulate})
    {
        cmd->add_option("--source", o.source, "inline, fixture or generated")
            ->check(CLI::IsMember({"inline", "fixture", "generated"}));
        cmd->add_option("--lengths", o.lengths, "message lengths in canonical group order, comma separated");
        cmd->add_option("--demand", o.demand, "requested files, comma separated (default 1..K)");
        cmd->add_option("--mode", o.mode, "placement for source=generated: centralized or decentralized");
    }
    sweep->add_option("--mode", o.mode, "centralized or decentralized")
        ->check(CLI::IsMember({"centralized", "decentralized"}));
    sweep->add_option("--scheme", o.scheme, "proposed, time-sharing, group-by-group or all");
    sweep->add_flag("--worst-case", o.worst_case, "only the demand (1, ..., K)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        for (auto *cmd : app.get_subcommands())
            apply_config_file(cmd, o);
        if (region->parsed())
            return cmd_region(o);
        if (ndt->parsed())
            return cmd_ndt(o);
        if (sweep->parsed())
            return cmd_sweep(o);
        if (simulate->parsed())
            return cmd_simulate(o);
        return cmd_example1(o);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
