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

#include "cachedof/ndt.hpp"
#include "cachedof/simplex.hpp"
#include "combinations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cachedof
{

namespace
{

// Upper limit on candidate index sets tried while canonicalizing a decomposition.
constexpr long kTieBreakBudget = 200000;

int group_count(int users)
{
    return (1 << users) - 1;
}

// P2 restricted to the coordinates where f > 0.
struct ReducedProblem
{
    std::vector<int> keep;           // coordinates with f > 0
    Eigen::MatrixXd E;               // projected corner points as columns, deduplicated
    std::vector<DofTuple> points;    // full-length projected points, same order as E
    Eigen::VectorXd b;               // f on `keep`
};

ReducedProblem reduce(const LengthVector &f, const CornerPointSet &corners)
{
    ReducedProblem rp;
    for (Eigen::Index i = 0; i < f.size(); ++i)
        if (f[i] > 0.0)
            rp.keep.push_back(int(i));

    CornerPointSet projected;
    for (const auto &p : corners.points)
    {
        DofTuple q = DofTuple::Zero(p.size());
        for (int i : rp.keep)
            q[i] = p[i];
        if (q.maxCoeff() > kVertexTol)
        {
            projected.points.push_back(std::move(q));
            projected.sources.push_back(CornerSource::Vertex);
        }
    }
    canonicalize(projected);
    rp.points = std::move(projected.points);

    const int m = int(rp.keep.size()), z = int(rp.points.size());
    rp.E.resize(m, z);
    rp.b.resize(m);
    for (int r = 0; r < m; ++r)
    {
        rp.b[r] = f[rp.keep[std::size_t(r)]];
        for (int j = 0; j < z; ++j)
            rp.E(r, j) = rp.points[std::size_t(j)][rp.keep[std::size_t(r)]];
    }
    return rp;
}

LpSolution solve_reduced(const ReducedProblem &rp)
{
    LpSolution sol = solve_lp(rp.E, rp.b, Eigen::VectorXd::Ones(rp.E.cols()));
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("solve_ndt: the delivery LP did not reach an optimum");
    return sol;
}

void check_lengths(const LengthVector &f, const SystemConfig &cfg)
{
    cfg.validate();
    check_nonnegative(f, group_count(cfg.users), "message lengths");
}

// Optimal decomposition with the fewest phases and the lexicographically smallest index set,
// searched among the columns priced out at zero by the optimal basis.
std::vector<std::pair<int, double>> canonical_decomposition(const ReducedProblem &rp, const LpSolution &sol)
{
    const int m = int(rp.E.rows()), z = int(rp.E.cols());
    const double scale = 1.0 + rp.b.cwiseAbs().maxCoeff();

    std::vector<int> cand;
    std::vector<std::uint32_t> support;
    for (int j = 0; j < z; ++j)
        if (sol.reduced_costs[j] <= 1e-9)
        {
            cand.push_back(j);
            std::uint32_t s = 0;
            for (int r = 0; r < m; ++r)
                if (rp.E(r, j) > kVertexTol)
                    s |= std::uint32_t(1) << r;
            support.push_back(s);
        }
    const std::uint32_t need = m >= 32 ? ~0u : (std::uint32_t(1) << m) - 1;

    std::vector<std::pair<int, double>> best;
    long budget = kTieBreakBudget;
    for (int k = 1; k <= std::min<int>(m, int(cand.size())) && best.empty() && budget > 0; ++k)
    {
        detail::for_each_combination(int(cand.size()), k, [&](const std::vector<int> &pick) -> bool {
            if (--budget < 0)
                return false;
            std::uint32_t cover = 0;
            for (int a : pick)
                cover |= support[std::size_t(a)];
            if (cover != need)
                return true;
            Eigen::MatrixXd S(m, k);
            for (int a = 0; a < k; ++a)
                S.col(a) = rp.E.col(cand[std::size_t(pick[std::size_t(a)])]);
            Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(S);
            qr.setThreshold(1e-10);
            if (qr.rank() < k)
                return true;
            const Eigen::VectorXd beta = qr.solve(rp.b);
            if ((beta.array() < -1e-12 * scale).any())
                return true;
            if ((S * beta - rp.b).cwiseAbs().maxCoeff() > 1e-10 * scale)
                return true;
            if (std::abs(beta.sum() - sol.objective) > 1e-9 * (1.0 + sol.objective))
                return true;
            for (int a = 0; a < k; ++a)
                best.emplace_back(cand[std::size_t(pick[std::size_t(a)])], std::max(0.0, beta[a]));
            return false;
        });
    }
    if (!best.empty())
        return best;

    // Fallback: the simplex basic solution.
    for (int j = 0; j < z; ++j)
        if (sol.x[j] > 0.0)
            best.emplace_back(j, sol.x[j]);
    return best;
}

} // namespace

DeliveryPlan solve_ndt(const LengthVector &f, const SystemConfig &cfg)
{
    check_lengths(f, cfg);
    DeliveryPlan plan;
    plan.d_star = DofTuple::Zero(f.size());
    if (f.maxCoeff() <= 0.0)
        return plan;

    const ReducedProblem rp = reduce(f, corner_points(inner_bound(cfg)));
    const LpSolution sol = solve_reduced(rp);
    plan.tau = sol.objective;
    for (Eigen::Index i = 0; i < f.size(); ++i)
        plan.d_star[i] = f[i] > 0.0 ? f[i] / plan.tau : 0.0;
    for (const auto &[j, w] : canonical_decomposition(rp, sol))
        plan.phases.push_back({rp.points[std::size_t(j)], w});
    return plan;
}

double solve_ndt_tau(const LengthVector &f, const SystemConfig &cfg)
{
    check_lengths(f, cfg);
    if (f.maxCoeff() <= 0.0)
        return 0.0;
    return solve_reduced(reduce(f, corner_points(inner_bound(cfg)))).objective;
}

double lower_bound_ndt(const LengthVector &f, const SystemConfig &cfg)
{
    check_lengths(f, cfg);
    const GroupIndex g(cfg.users);
    double tau = f.sum() / cfg.tx_antennas;
    for (int i = 1; i <= cfg.users; ++i)
    {
        double load = 0.0;
        for (int j = 0; j < g.size(); ++j)
            if (g.contains_user(j, i))
                load += f[j];
        tau = std::max(tau, load / cfg.rx_antennas);
    }
    return tau;
}

double upper_bound_ndt(const LengthVector &f, const SystemConfig &cfg)
{
    check_lengths(f, cfg);
    if (cfg.regime() != Regime::Mid)
        throw RegimeError("upper_bound_ndt: defined only for N < M <= K N, got regime " + to_string(cfg.regime()));
    const Polytope d2 = subspace_region(cfg.users, cfg.tx_antennas, cfg.rx_antennas);
    return (d2.A * f).cwiseQuotient(d2.c).maxCoeff();
}

NdtBounds gap(const LengthVector &f, const SystemConfig &cfg, double eps)
{
    check_lengths(f, cfg);
    if (f.maxCoeff() <= 0.0)
        throw std::invalid_argument("gap: message lengths must not all be zero");

    NdtBounds out;
    out.tau_a = solve_ndt_tau(f, cfg);
    out.tau_l = lower_bound_ndt(f, cfg);
    out.rho = out.tau_a / out.tau_l;
    if (cfg.regime() == Regime::Mid)
        out.tau_u = upper_bound_ndt(f, cfg);

    auto fail = [&](const std::string &what) {
        std::ostringstream os;
        os.precision(17);
        os << "gap: " << what << " (tau_a=" << out.tau_a << ", tau_l=" << out.tau_l;
        if (out.tau_u)
            os << ", tau_u=" << *out.tau_u;
        os << ", f=[" << f.transpose() << "])";
        throw GapViolation(os.str(), f);
    };
    const double tol = eps * (1.0 + out.tau_a);
    if (out.tau_l > out.tau_a + tol)
        fail("lower bound exceeds the achievable NDT");
    if (out.tau_u && out.tau_a > *out.tau_u + tol)
        fail("achievable NDT exceeds the relaxed upper bound");
    if (cfg.regime() == Regime::Mid)
    {
        if (out.rho > cfg.antenna_ratio() + eps)
            fail("ratio exceeds M/N");
    }
    else if (std::abs(out.rho - 1.0) > eps)
        fail("ratio differs from 1 outside the Mid regime");
    return out;
}

double symmetric_group_dof(const SystemConfig &cfg, int s)
{
    cfg.validate();
    const int K = cfg.users;
    if (s < 1 || s > K)
        throw std::out_of_range("symmetric_group_dof: group size must be in [1, K]");
    const double M = cfg.tx_antennas, N = cfg.rx_antennas;
    const double C = binomial(K, s), C1 = binomial(K - 1, s - 1);
    const double ratio = M / N;
    if (ratio <= s * C / (1.0 + (s - 1) * C))
        return M / C;
    if (ratio <= K)
        return std::max(M / (K * C1), s * N / (1.0 + (s - 1) * C));
    return N / C1;
}

LengthVector centralized_symmetric_lengths(int users, double mu)
{
    const double t = users * mu;
    const int ti = int(std::lround(t));
    if (std::abs(t - ti) > 1e-9 || mu < 0.0 || mu > 1.0)
        throw std::invalid_argument("centralized_symmetric_lengths: K mu must be an integer in [0, K]");
    const GroupIndex g(users);
    LengthVector f = LengthVector::Zero(g.size());
    if (ti == users)
        return f;
    for (int j = 0; j < g.size(); ++j)
        if (g.cardinality(j) == ti + 1)
            f[j] = (1.0 - mu) / binomial(users - 1, ti);
    return f;
}

LengthVector decentralized_lln_lengths(int users, double mu)
{
    if (mu < 0.0 || mu > 1.0)
        throw std::invalid_argument("decentralized_lln_lengths: mu must lie in [0, 1]");
    const GroupIndex g(users);
    LengthVector f(g.size());
    for (int j = 0; j < g.size(); ++j)
    {
        const int s = g.cardinality(j);
        f[j] = std::pow(mu, s - 1) * std::pow(1.0 - mu, users - s + 1);
    }
    return f;
}

double centralized_worst_ndt(const SystemConfig &cfg)
{
    cfg.validate();
    const int K = cfg.users;
    auto at_grid = [&](int t) {
        if (t >= K)
            return 0.0;
        const double mu = double(t) / K;
        return ((1.0 - mu) / binomial(K - 1, t)) / symmetric_group_dof(cfg, t + 1);
    };
    const double t = K * cfg.cache_size;
    const int lo = int(std::floor(t + 1e-9));
    if (std::abs(t - lo) <= 1e-9)
        return at_grid(lo);
    const double w = t - lo;
    return (1.0 - w) * at_grid(lo) + w * at_grid(lo + 1);
}

double decentralized_worst_ndt(const SystemConfig &cfg)
{
    cfg.validate();
    const int K = cfg.users;
    const double mu = cfg.cache_size;
    const double M = cfg.tx_antennas, N = cfg.rx_antennas;
    if (mu >= 1.0)
        return 0.0;

    Eigen::VectorXd a(K);
    for (int s = 1; s <= K; ++s)
        a[s - 1] = std::pow(mu, s - 1) * std::pow(1.0 - mu, K - s + 1);

    switch (cfg.regime())
    {
    case Regime::LowM: {
        double total = 0.0;
        for (int s = 1; s <= K; ++s)
            total += binomial(K, s) * a[s - 1];
        return total / M;
    }
    case Regime::HighM:
        return (1.0 - mu) / N;
    case Regime::Mid:
        break;
    }

    // Size-symmetric coordinates d_s, s = 1..K.
    Polytope box;
    box.A.resize(1, K);
    for (int s = 1; s <= K; ++s)
        box.A(0, s - 1) = binomial(K - 1, s - 1);
    box.c = Eigen::VectorXd::Constant(1, M / K);
    box.rows = {{RowKind::UserCut, 1, false}};

    Polytope sub;
    sub.A = Eigen::MatrixXd::Zero(2, K);
    sub.c.resize(2);
    for (int s = 1; s <= K; ++s)
    {
        sub.A(0, s - 1) = binomial(K - 1, s - 1);
        sub.A(1, s - 1) = binomial(K, s);
    }
    sub.c[0] = N;
    sub.c[1] = M;
    sub.rows = {{RowKind::UserCut, 1, false}, {RowKind::BsCut, 0, false}};
    for (int s = 2; s <= K; ++s)
    {
        Eigen::RowVectorXd row(K);
        for (int q = 1; q <= K; ++q)
            row[q - 1] = (s - 1) * binomial(K, q) + (q > s ? binomial(K - s, q - s) : 0.0);
        row[s - 1] += 1.0;
        const Eigen::Index m = sub.A.rows();
        sub.A.conservativeResize(m + 1, K);
        sub.A.row(m) = row;
        sub.c.conservativeResize(m + 1);
        sub.c[m] = s * N;
        sub.rows.push_back({RowKind::Subspace, s - 1, true});
    }

    CornerPointSet corners = enumerate_support_vertices(box, CornerSource::D1);
    const CornerPointSet c2 = enumerate_support_vertices(sub, CornerSource::D2);
    corners.points.insert(corners.points.end(), c2.points.begin(), c2.points.end());
    corners.sources.insert(corners.sources.end(), c2.sources.begin(), c2.sources.end());
    canonicalize(corners);
    return hull_gauge(corners, a);
}

double benchmark_time_sharing(const LengthVector &f, const SystemConfig &cfg)
{
    check_lengths(f, cfg);
    return f.sum() / std::min(cfg.tx_antennas, cfg.rx_antennas);
}

double benchmark_group_by_group(const LengthVector &f, const SystemConfig &cfg)
{
    check_lengths(f, cfg);
    const GroupIndex g(cfg.users);
    double tau = 0.0;
    for (int s = 1; s <= cfg.users; ++s)
    {
        double longest = 0.0;
        for (int j = 0; j < g.size(); ++j)
            if (g.cardinality(j) == s)
                longest = std::max(longest, f[j]);
        if (longest > 0.0)
            tau += longest / symmetric_group_dof(cfg, s);
    }
    return tau;
}

bool group_by_group_extrapolated(const SystemConfig &cfg)
{
    return cfg.rx_antennas > 1;
}

DeliveryPlan time_sharing_plan(const LengthVector &f, const SystemConfig &cfg)
{
    check_lengths(f, cfg);
    const double dof = std::min(cfg.tx_antennas, cfg.rx_antennas);
    DeliveryPlan plan;
    plan.tau = benchmark_time_sharing(f, cfg);
    plan.d_star = DofTuple::Zero(f.size());
    for (Eigen::Index j = 0; j < f.size(); ++j)
    {
        if (f[j] <= 0.0)
            continue;
        plan.d_star[j] = f[j] / plan.tau;
        DofTuple e = DofTuple::Zero(f.size());
        e[j] = dof;
        plan.phases.push_back({e, f[j] / dof});
    }
    return plan;
}

} // namespace cachedof
