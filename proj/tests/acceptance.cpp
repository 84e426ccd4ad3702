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

// Acceptance run: one PASS/FAIL line per criterion, tolerances and time limits pinned below.
//
// Exit status is nonzero when a criterion fails, except for those listed in kKnownFailures,
// which still print FAIL with their reason. A listed criterion that passes is also an error.

#include "cachedof/caching.hpp"
#include "cachedof/ndt.hpp"
#include "cachedof/phy.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace cachedof;

namespace
{

constexpr double kTauTol = 1e-9;
constexpr double kDStarTol = 1e-8;
constexpr double kBoundTol = 1e-12;
constexpr double kVertexSetTol = 1e-7;
constexpr double kResidualTol = 1e-8;

// The table1.txt placement with r = (1,2,3) gives a_{1,2,3} = max(0.05, 0.15, 0) = 0.15, not 0.
const std::set<int> kKnownFailures{1};

struct Outcome
{
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok && pass)
            detail << what;
        pass = pass && ok;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------------------------

void criterion1(Outcome &o)
{
    const auto t0 = Clock::now();
    const SystemConfig c = oracle::example1_config();
    const CacheState cache = load_cache_fixture(CACHEDOF_FIXTURES "/table1.txt", 3);
    const LengthVector f = generate_coded_messages(cache, {1, 2, 3});
    const DeliveryPlan p = solve_ndt(f, c);
    const double elapsed = seconds_since(t0);

    DofTuple d(7);
    d << 6.0 / 7, 3.0 / 7, 0, 9.0 / 14, 15.0 / 14, 1.5, 0;
    std::ostringstream got;
    got << "fixture lengths give a_{1,2,3} = " << f[6] << ", tau_a = " << p.tau << "; ";
    o.require(std::abs(p.tau - 7.0 / 30) <= kTauTol, got.str() + "expected 7/30");
    o.require((p.d_star - d).cwiseAbs().maxCoeff() <= kDStarTol, got.str() + "d_star differs");
    bool phases = p.phases.size() == 3;
    const double w[3] = {2.0 / 7, 2.0 / 7, 3.0 / 7};
    for (std::size_t k = 0; phases && k < 3; ++k)
        phases = (p.phases[k].point - oracle::example1_corner(int(k) + 1)).cwiseAbs().maxCoeff() <= kDStarTol &&
                 std::abs(p.phases[k].weight - w[k] * p.tau) <= kTauTol;
    o.require(phases, got.str() + "phase decomposition differs");
    o.require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");

    // The printed length vector, for reference.
    const DeliveryPlan q = solve_ndt(oracle::example1_lengths(), c);
    if (!o.pass)
        o.detail << " (printed lengths: tau_a = " << q.tau << ", d_star error "
                 << (q.d_star - d).cwiseAbs().maxCoeff() << ")";
}

void criterion2(Outcome &o)
{
    const NdtBounds b = gap(oracle::example1_lengths(), oracle::example1_config());
    o.require(std::abs(b.tau_l - 0.21) <= kBoundTol, "tau_l");
    o.require(b.tau_u && std::abs(*b.tau_u - 7.0 / 30) <= kTauTol, "tau_u");
    o.require(std::abs(b.rho - 10.0 / 9) <= kTauTol && b.rho <= 5.0 / 3, "rho");
}

void criterion3(Outcome &o)
{
    const auto t0 = Clock::now();
    o.require(std::abs(benchmark_time_sharing(oracle::example1_lengths(), oracle::example1_config()) - 0.35) <=
                  kBoundTol,
              "Example 1 time sharing");
    std::mt19937_64 rng(301);
    int worst_k = 0;
    double worst = -1e9;
    for (int K = 2; K <= 4; ++K)
    {
        std::vector<SystemConfig> cfgs;
        for (Regime r : {Regime::LowM, Regime::Mid, Regime::HighM})
            for (const auto &[M, N] : oracle::antenna_pairs(K, r, 4))
                cfgs.push_back(oracle::config(K, M, N));
        for (int t = 0; t < 1000; ++t)
        {
            const SystemConfig &c = cfgs[std::size_t(t) % cfgs.size()];
            const LengthVector f = oracle::random_lengths(K, rng);
            const double excess = solve_ndt_tau(f, c) - benchmark_time_sharing(f, c);
            if (excess > worst)
                worst = excess, worst_k = K;
        }
    }
    o.require(worst <= kTauTol, "tau_a exceeds time sharing by " + std::to_string(worst) + " at K = " +
                                    std::to_string(worst_k));
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s");
}

void criterion4(Outcome &o)
{
    std::mt19937_64 rng(401);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int K = 2; K <= 4; ++K)
    {
        auto pairs = oracle::antenna_pairs(K, Regime::LowM, 10);
        for (int N = 1; N <= 5; ++N)
            for (int M : {K * N, K * N + 1})
                pairs.emplace_back(M, N);
        for (const auto &[M, N] : pairs)
        {
            const SystemConfig c = oracle::config(K, M, N);
            for (int t = 0; t < 100; ++t)
            {
                const LengthVector f = oracle::random_lengths(K, rng);
                const double ta = solve_ndt_tau(f, c), tl = lower_bound_ndt(f, c);
                o.require(std::abs(ta - tl) <= kTauTol * std::max(1.0, tl),
                          "tau_a != tau_l at K=" + std::to_string(K) + " M=" + std::to_string(M) +
                              " N=" + std::to_string(N));
            }
        }
    }

    std::vector<std::pair<int, int>> pairs;
    for (int N = 1; N <= 4 && pairs.size() < 20; ++N)
        for (int M = 1; M <= 2 * N + 2 && pairs.size() < 20; ++M)
            pairs.emplace_back(M, N);
    for (const auto &[M, N] : pairs)
    {
        const SystemConfig c = oracle::config(2, M, N);
        const CornerPointSet cp = corner_points(inner_bound(c));
        const Polytope outer = outer_bound(c);
        for (int t = 0; t < 100; ++t)
        {
            Eigen::VectorXd w(3);
            for (int a = 0; a < 3; ++a)
                w[a] = u(rng);
            const double so = support_function(outer, w);
            o.require(std::abs(support_function(cp, w) - so) <= kTauTol * std::max(1.0, so),
                      "K=2 support functions differ at M=" + std::to_string(M) + " N=" + std::to_string(N));
        }
    }
}

void criterion5(Outcome &o)
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(501);
    for (int K = 2; K <= 4; ++K)
    {
        const auto pairs = oracle::antenna_pairs(K, Regime::Mid, 20);
        o.require(pairs.size() == 20, "fewer than 20 Mid pairs");
        for (const auto &[M, N] : pairs)
        {
            const SystemConfig c = oracle::config(K, M, N);
            for (int t = 0; t < 1000; ++t)
            {
                const LengthVector f = oracle::random_lengths(K, rng);
                const double ta = solve_ndt_tau(f, c), tl = lower_bound_ndt(f, c), tu = upper_bound_ndt(f, c);
                const std::string where =
                    " at K=" + std::to_string(K) + " M=" + std::to_string(M) + " N=" + std::to_string(N);
                o.require(tl <= ta + kTauTol && ta <= tu + kTauTol, "sandwich" + where);
                o.require(ta / tl <= c.antenna_ratio() + kTauTol, "ratio" + where);
            }
        }
    }
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 300.0, "runtime " + std::to_string(elapsed) + " s");
}

void criterion6(Outcome &o)
{
    for (int K = 2; K <= 4; ++K)
        for (Regime r : {Regime::LowM, Regime::Mid, Regime::HighM})
            for (const auto &[M, N] : oracle::antenna_pairs(K, r, 10))
                for (int t = 0; t <= K; ++t)
                {
                    const double mu = double(t) / K;
                    const SystemConfig c = oracle::config(K, M, N, mu);
                    const double closed = centralized_worst_ndt(c);
                    const std::string where = " at K=" + std::to_string(K) + " M=" + std::to_string(M) +
                                              " N=" + std::to_string(N) + " t=" + std::to_string(t);
                    const LengthVector f = centralized_symmetric_lengths(K, mu);
                    const double direct = f.maxCoeff() <= 0.0 ? 0.0 : solve_ndt_tau(f, c);
                    o.require(std::abs(closed - direct) <= kTauTol, "solve_ndt mismatch" + where);
                    if (M >= K * N)
                        o.require(closed == (1.0 - mu) / N, "(1 - mu) / N" + where);
                }
}

void criterion7(Outcome &o)
{
    for (int K = 2; K <= 4; ++K)
        for (Regime r : {Regime::LowM, Regime::Mid, Regime::HighM})
            for (const auto &[M, N] : oracle::antenna_pairs(K, r, 3))
                for (int i = 0; i <= 10; ++i)
                {
                    const double mu = i / 10.0;
                    const SystemConfig c = oracle::config(K, M, N, mu);
                    const double closed = decentralized_worst_ndt(c);
                    const LengthVector f = oracle::lln_lengths(K, mu);
                    const double direct = f.maxCoeff() <= 0.0 ? 0.0 : solve_ndt_tau(f, c);
                    const std::string where = " at K=" + std::to_string(K) + " M=" + std::to_string(M) +
                                              " N=" + std::to_string(N) + " mu=" + std::to_string(mu);
                    o.require(std::abs(closed - direct) <= kTauTol, "solve_ndt mismatch" + where);
                    if (r == Regime::LowM)
                    {
                        double sum = 0.0;
                        for (int s = 1; s <= K; ++s)
                            sum += binomial(K, s) * std::pow(mu, s - 1) * std::pow(1.0 - mu, K - s + 1) / M;
                        o.require(std::abs(closed - sum) <= kTauTol, "LowM closed sum" + where);
                    }
                    if (r == Regime::HighM)
                        o.require(std::abs(closed - (1.0 - mu) / N) <= kTauTol, "HighM (1 - mu) / N" + where);
                }
}

CornerPointSet without_origin(const CornerPointSet &s)
{
    CornerPointSet out;
    for (int k = 0; k < s.size(); ++k)
        if (s.points[std::size_t(k)].cwiseAbs().maxCoeff() > kVertexSetTol)
        {
            out.points.push_back(s.points[std::size_t(k)]);
            out.sources.push_back(s.sources[std::size_t(k)]);
        }
    return out;
}

void criterion8(Outcome &o)
{
    int compared = 0;
    for (int K = 2; K <= 3; ++K)
        for (Regime r : {Regime::LowM, Regime::Mid, Regime::HighM})
            for (const auto &[M, N] : oracle::antenna_pairs(K, r, 10))
            {
                const RegionSpec inner = inner_bound(oracle::config(K, M, N));
                std::vector<Polytope> polys{inner.primary};
                if (inner.is_union())
                    polys.push_back(inner.d2.without_indicators());
                for (const Polytope &p : polys)
                {
                    const CornerPointSet got =
                        inner.is_union() ? enumerate_support_vertices(p) : corner_points(inner);
                    o.require(same_points(got, without_origin(brute_force_vertices(p)), kVertexSetTol),
                              "vertex sets differ at K=" + std::to_string(K) + " M=" + std::to_string(M) +
                                  " N=" + std::to_string(N));
                    ++compared;
                }
            }
    o.require(compared >= 2 * 3 * 10, "too few polytopes compared");
}

void criterion9(Outcome &o)
{
    const auto t0 = Clock::now();
    const SystemConfig c = oracle::example1_config();
    double nulling = 0.0, equalization = 0.0, margin = 1.0;
    for (int k = 1; k <= 3; ++k)
    {
        const DofTuple d = oracle::example1_corner(k);
        for (std::uint64_t draw = 0; draw < 100; ++draw)
        {
            const ChannelSet H = sample_channels(c, c.tx_antennas, 9000 + 100 * std::uint64_t(k) + draw);
            const SchemeReport r = verify_scheme(design_scheme(H, d, c, draw), H, d);
            nulling = std::max(nulling, r.nulling);
            equalization = std::max(equalization, r.equalization);
            margin = std::min(margin, r.rank_margin);
        }
    }
    o.require(nulling <= kResidualTol, "nulling residual " + std::to_string(nulling));
    o.require(margin > 0.0, "rank margin " + std::to_string(margin));
    o.require(equalization <= kResidualTol, "equalization deviation " + std::to_string(equalization));
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 30.0, "runtime " + std::to_string(elapsed) + " s");
}

void criterion10(Outcome &o)
{
    const auto t0 = Clock::now();
    const SystemConfig c = oracle::example1_config();
    const LengthVector f = oracle::example1_lengths();
    std::vector<double> powers;
    for (double db : {10.0, 20.0, 30.0, 40.0, 50.0})
        powers.push_back(std::pow(10.0, db / 10.0));
    const struct
    {
        const char *name;
        DeliveryPlan plan;
        double target;
    } curves[2] = {{"proposed", solve_ndt(f, c), 7.0 / 30}, {"time-sharing", time_sharing_plan(f, c), 7.0 / 20}};
    for (const auto &cv : curves)
    {
        const auto res = simulate_delivery(cv.plan, f, c, powers, 200, 1001);
        for (std::size_t p = 1; p < res.size(); ++p)
        {
            o.require(res[p].ndt < res[p - 1].ndt, std::string(cv.name) + ": NDT not decreasing");
            o.require(res[p].ndt_mean < res[p - 1].ndt_mean, std::string(cv.name) + ": per-draw mean not decreasing");
        }
        o.require(std::abs(res[4].ndt - cv.target) < std::abs(res[1].ndt - cv.target),
                  std::string(cv.name) + ": 50 dB not closer than 20 dB");
        o.require(std::abs(res[4].ndt_mean - cv.target) < std::abs(res[1].ndt_mean - cv.target),
                  std::string(cv.name) + ": per-draw mean at 50 dB not closer than 20 dB");
    }
    const double elapsed = seconds_since(t0);
    o.require(elapsed < 300.0, "runtime " + std::to_string(elapsed) + " s");
}

struct SchemeMeans
{
    double proposed = 0.0, time_sharing = 0.0, group_by_group = 0.0;
};

// Mean NDT over decentralized realizations with uniform demands. Realization i uses the same
// seed at every mu and M.
SchemeMeans decentralized_average(const SystemConfig &c, int realizations, std::uint64_t seed)
{
    SchemeMeans m;
    for (int i = 0; i < realizations; ++i)
    {
        std::mt19937_64 rng(seed + std::uint64_t(i));
        const CacheState cache = decentralized_place(c, rng(), c.file_bits);
        DemandVector r(std::size_t(c.users));
        std::uniform_int_distribution<int> pick(1, c.library_size);
        for (int &x : r)
            x = pick(rng);
        const LengthVector f = generate_coded_messages(cache, r);
        if (f.maxCoeff() <= 0.0)
            continue;
        m.proposed += solve_ndt_tau(f, c);
        m.time_sharing += benchmark_time_sharing(f, c);
        m.group_by_group += benchmark_group_by_group(f, c);
    }
    m.proposed /= realizations;
    m.time_sharing /= realizations;
    m.group_by_group /= realizations;
    return m;
}

void criterion11(Outcome &o)
{
    const std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8};
    double prev = 1e9;
    for (double mu : grid)
    {
        const SchemeMeans m = decentralized_average(oracle::config(3, 2, 1, mu), 200, 1101);
        const std::string where = " at mu=" + std::to_string(mu);
        o.require(m.proposed <= m.time_sharing + kTauTol, "K=3 proposed above time sharing" + where);
        o.require(m.proposed <= m.group_by_group + kTauTol, "K=3 proposed above group-by-group" + where);
        o.require(m.proposed <= prev + kTauTol, "K=3 not non-increasing in mu" + where);
        prev = m.proposed;
    }

    std::vector<std::vector<double>> table; // [M][mu]
    for (int M : {3, 6, 12})
    {
        table.emplace_back();
        for (double mu : grid)
            table.back().push_back(decentralized_average(oracle::config(4, M, 3, mu), 200, 1102).proposed);
    }
    for (std::size_t m = 0; m < table.size(); ++m)
        for (std::size_t k = 0; k < grid.size(); ++k)
        {
            if (k > 0)
                o.require(table[m][k] <= table[m][k - 1] + kTauTol, "K=4 not non-increasing in mu");
            if (m > 0)
                o.require(table[m][k] <= table[m - 1][k] + kTauTol, "K=4 not non-increasing in M");
        }
}

} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<void(Outcome &)>>> criteria{
        {"Example 1 NDT from the cache table", criterion1},
        {"Example 1 bounds", criterion2},
        {"time-sharing benchmark", criterion3},
        {"region optimality at the extremes", criterion4},
        {"gap bound in the Mid regime", criterion5},
        {"centralized worst-case closed form", criterion6},
        {"decentralized worst-case closed form", criterion7},
        {"corner points against brute force", criterion8},
        {"scheme construction", criterion9},
        {"finite-SNR convergence", criterion10},
        {"sweep trends", criterion11},
    };

    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i)
    {
        const int id = int(i) + 1;
        Outcome o;
        const auto t0 = Clock::now();
        try
        {
            criteria[i].second(o);
        }
        catch (const std::exception &e)
        {
            o.require(false, std::string("exception: ") + e.what());
        }
        const bool known = kKnownFailures.count(id) > 0;
        std::printf("%s criterion %2d  %-40s %7.2f s", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                    seconds_since(t0));
        if (!o.pass)
            std::printf("  %s%s", known ? "[known] " : "", o.detail.str().c_str());
        if (o.pass && known)
            std::printf("  [listed as a known failure but passed]");
        std::printf("\n");
        std::fflush(stdout);
        unexpected += o.pass == known;
    }
    return unexpected == 0 ? 0 : 1;
}
