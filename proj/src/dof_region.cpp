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

#include "cachedof/dof_region.hpp"
#include "cachedof/simplex.hpp"
#include "combinations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

namespace cachedof
{

std::string describe(const RowTag &tag, const GroupIndex &groups)
{
    switch (tag.kind)
    {
    case RowKind::UserCut:
        return "user " + std::to_string(tag.index);
    case RowKind::BsCut:
        return "bs";
    case RowKind::Subspace:
        return "subspace " + groups.label(tag.index) + (tag.gated ? " if active" : "");
    }
    return "?";
}

std::string to_string(CornerSource s)
{
    switch (s)
    {
    case CornerSource::Axis:
        return "axis";
    case CornerSource::Box:
        return "box";
    case CornerSource::D1:
        return "D1";
    case CornerSource::D2:
        return "D2";
    case CornerSource::Vertex:
        return "vertex";
    }
    return "?";
}

bool Polytope::has_gated_rows() const
{
    return std::any_of(rows.begin(), rows.end(), [](const RowTag &t) { return t.gated; });
}

Polytope Polytope::without_indicators() const
{
    Polytope out = *this;
    for (auto &t : out.rows)
        t.gated = false;
    return out;
}

Eigen::MatrixXd CornerPointSet::matrix() const
{
    if (points.empty())
        return {};
    Eigen::MatrixXd E(points.front().size(), Eigen::Index(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j)
        E.col(Eigen::Index(j)) = points[j];
    return E;
}

// ---------------------------------------------------------------------------------------------
// Region builders

Polytope per_user_box(int users, double rhs)
{
    const GroupIndex g(users);
    Polytope p;
    p.users = users;
    p.A = Eigen::MatrixXd::Zero(users, g.size());
    p.c = Eigen::VectorXd::Constant(users, rhs);
    for (int i = 1; i <= users; ++i)
    {
        for (int j = 0; j < g.size(); ++j)
            if (g.contains_user(j, i))
                p.A(i - 1, j) = 1.0;
        p.rows.push_back({RowKind::UserCut, i, false});
    }
    return p;
}

namespace
{

void append_row(Polytope &p, const Eigen::RowVectorXd &a, double c, RowTag tag)
{
    const Eigen::Index m = p.A.rows();
    p.A.conservativeResize(m + 1, a.size());
    p.A.row(m) = a;
    p.c.conservativeResize(m + 1);
    p.c[m] = c;
    p.rows.push_back(tag);
}

} // namespace

Polytope outer_bound(const SystemConfig &cfg)
{
    cfg.validate();
    Polytope p = per_user_box(cfg.users, cfg.rx_antennas);
    append_row(p, Eigen::RowVectorXd::Ones(p.dimension()), cfg.tx_antennas, {RowKind::BsCut, 0, false});
    return p;
}

Polytope subspace_region(int users, int tx_antennas, int rx_antennas)
{
    const GroupIndex g(users);
    const int n = g.size();
    Polytope p = per_user_box(users, rx_antennas);
    append_row(p, Eigen::RowVectorXd::Ones(n), tx_antennas, {RowKind::BsCut, 0, false});
    for (int a = 0; a < n; ++a)
    {
        const int s = g.cardinality(a);
        if (s < 2)
            continue;
        Eigen::RowVectorXd row = Eigen::RowVectorXd::Constant(n, double(s - 1));
        row[a] += 1.0;
        // strict supersets
        for (int b = 0; b < n; ++b)
            if (b != a && (g.at(b) & g.at(a)) == g.at(a))
                row[b] += 1.0;
        append_row(p, row, double(s) * rx_antennas, {RowKind::Subspace, a, true});
    }
    return p;
}

RegionSpec inner_bound(const SystemConfig &cfg)
{
    cfg.validate();
    RegionSpec r;
    r.regime = cfg.regime();
    r.users = cfg.users;
    r.tx_antennas = cfg.tx_antennas;
    r.rx_antennas = cfg.rx_antennas;
    const int n = GroupIndex(cfg.users).size();
    switch (r.regime)
    {
    case Regime::LowM:
        r.primary.users = cfg.users;
        r.primary.A = Eigen::MatrixXd::Ones(1, n);
        r.primary.c = Eigen::VectorXd::Constant(1, cfg.tx_antennas);
        r.primary.rows = {{RowKind::BsCut, 0, false}};
        break;
    case Regime::HighM:
        r.primary = per_user_box(cfg.users, cfg.rx_antennas);
        break;
    case Regime::Mid:
        r.primary = per_user_box(cfg.users, double(cfg.tx_antennas) / cfg.users);
        r.d2 = subspace_region(cfg.users, cfg.tx_antennas, cfg.rx_antennas);
        break;
    }
    return r;
}

// ---------------------------------------------------------------------------------------------
// Membership

bool contains(const Polytope &poly, const DofTuple &d, double eps)
{
    if (d.size() != poly.dimension())
        throw DimensionMismatch("contains: tuple has " + std::to_string(d.size()) + " entries, region has " +
                                std::to_string(poly.dimension()));
    if ((d.array() < -eps).any())
        return false;
    const Eigen::VectorXd lhs = poly.A * d;
    for (int r = 0; r < poly.row_count(); ++r)
    {
        const RowTag &t = poly.rows[std::size_t(r)];
        if (t.gated && !(d[t.index] > eps))
            continue;
        if (lhs[r] > poly.c[r] + eps)
            return false;
    }
    return true;
}

double hull_gauge(const CornerPointSet &corners, const DofTuple &d)
{
    if (corners.points.empty())
        return d.isZero(0.0) ? 0.0 : std::numeric_limits<double>::infinity();
    const Eigen::Index n = corners.points.front().size();
    if (d.size() != n)
        throw DimensionMismatch("hull_gauge: tuple has " + std::to_string(d.size()) + " entries, corners have " +
                                std::to_string(n));
    std::vector<int> keep;
    for (Eigen::Index i = 0; i < n; ++i)
        if (d[i] > 0.0)
            keep.push_back(int(i));
    if (keep.empty())
        return 0.0;

    const int m = int(keep.size()), z = corners.size();
    Eigen::MatrixXd E(m, z);
    Eigen::VectorXd b(m);
    for (int r = 0; r < m; ++r)
    {
        b[r] = d[keep[std::size_t(r)]];
        for (int j = 0; j < z; ++j)
            E(r, j) = corners.points[std::size_t(j)][keep[std::size_t(r)]];
    }
    const LpSolution sol = solve_lp(E, b, Eigen::VectorXd::Ones(z));
    if (sol.status == LpStatus::Infeasible)
        return std::numeric_limits<double>::infinity();
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("hull_gauge: simplex did not converge");
    return sol.objective;
}

bool contains(const CornerPointSet &corners, const DofTuple &d, double eps)
{
    if ((d.array() < -eps).any())
        return false;
    return hull_gauge(corners, d.cwiseMax(0.0)) <= 1.0 + eps;
}

bool contains(const RegionSpec &region, const DofTuple &d, double eps)
{
    if (!region.is_union())
        return contains(region.primary, d, eps);
    if (d.size() != region.primary.dimension())
        throw DimensionMismatch("contains: tuple has " + std::to_string(d.size()) + " entries, region has " +
                                std::to_string(region.primary.dimension()));
    if (contains(region.primary, d, eps) || contains(region.d2, d, eps))
        return true;
    return contains(corner_points(region), d, eps);
}

// ---------------------------------------------------------------------------------------------
// Point-set utilities

namespace
{

bool lex_greater(const DofTuple &a, const DofTuple &b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            return a[i] > b[i];
    return false;
}

} // namespace

void canonicalize(CornerPointSet &set, double tol)
{
    if (set.sources.size() != set.points.size())
        set.sources.resize(set.points.size(), CornerSource::Vertex);
    std::vector<std::size_t> order(set.points.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lex_greater(set.points[a], set.points[b]); });

    CornerPointSet out;
    for (std::size_t k : order)
    {
        const DofTuple &p = set.points[k];
        bool dup = false;
        // Sorted by first coordinate, so only a trailing window can be within tol.
        for (std::size_t j = out.points.size(); j-- > 0;)
        {
            const DofTuple &q = out.points[j];
            if (q[0] - p[0] > tol)
                break;
            if ((q - p).cwiseAbs().maxCoeff() < tol)
            {
                dup = true;
                break;
            }
        }
        if (!dup)
        {
            out.points.push_back(p);
            out.sources.push_back(set.sources[k]);
        }
    }
    set = std::move(out);
}

bool same_points(const CornerPointSet &a, const CornerPointSet &b, double tol)
{
    auto covered = [tol](const CornerPointSet &x, const CornerPointSet &y) {
        for (const auto &p : x.points)
        {
            const bool hit = std::any_of(y.points.begin(), y.points.end(), [&](const DofTuple &q) {
                return q.size() == p.size() && (q - p).cwiseAbs().maxCoeff() < tol;
            });
            if (!hit)
                return false;
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

std::vector<DofTuple> disjoint_family_points(int users, double value)
{
    const GroupIndex g(users);
    std::vector<DofTuple> out;
    DofTuple cur = DofTuple::Zero(g.size());
    // Families in increasing order of their smallest group index, so each appears once.
    auto rec = [&](auto &&self, int start, UserSet used) -> void {
        for (int j = start; j < g.size(); ++j)
        {
            if (g.at(j) & used)
                continue;
            cur[j] = value;
            out.push_back(cur);
            self(self, j + 1, used | g.at(j));
            cur[j] = 0.0;
        }
    };
    rec(rec, 0, 0);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Support enumeration

namespace
{

// Coordinate images of every user relabeling, when the polytope is invariant under all of them.
std::vector<std::vector<int>> coordinate_symmetries(const Polytope &poly)
{
    if (poly.users < 2)
        return {};
    const GroupIndex g(poly.users);
    const int n = g.size();
    if (poly.dimension() != n)
        return {};

    std::vector<int> perm(static_cast<std::size_t>(poly.users));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> maps;
    do
    {
        std::vector<int> img(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
        {
            UserSet t = 0;
            for (int u = 0; u < poly.users; ++u)
                if ((g.at(j) >> u) & 1u)
                    t |= UserSet(1) << perm[std::size_t(u)];
            img[std::size_t(j)] = g.index_of(t);
        }
        maps.push_back(std::move(img));
    } while (std::next_permutation(perm.begin(), perm.end()));

    // Every relabeled row must be present (same coefficients, right-hand side and gate).
    for (const auto &img : maps)
        for (int r = 0; r < poly.row_count(); ++r)
        {
            Eigen::RowVectorXd moved(n);
            for (int j = 0; j < n; ++j)
                moved[img[std::size_t(j)]] = poly.A(r, j);
            const RowTag &t = poly.rows[std::size_t(r)];
            bool found = false;
            for (int q = 0; q < poly.row_count() && !found; ++q)
            {
                const RowTag &u = poly.rows[std::size_t(q)];
                if (u.gated != t.gated || (t.gated && u.index != img[std::size_t(t.index)]))
                    continue;
                found = std::abs(poly.c[q] - poly.c[r]) <= 1e-12 * (1.0 + std::abs(poly.c[r])) &&
                        (poly.A.row(q) - moved).cwiseAbs().maxCoeff() <= 1e-12;
            }
            if (!found)
                return {};
        }
    return maps;
}

std::uint32_t map_mask(std::uint32_t mask, const std::vector<int> &img)
{
    std::uint32_t out = 0;
    while (mask)
    {
        const int j = std::countr_zero(mask);
        out |= std::uint32_t(1) << img[std::size_t(j)];
        mask &= mask - 1;
    }
    return out;
}

} // namespace

CornerPointSet enumerate_support_vertices(const Polytope &poly, CornerSource tag)
{
    const int n = poly.dimension(), m = poly.row_count();
    if (n > 31)
        throw std::invalid_argument("enumerate_support_vertices: at most 31 coordinates");
    if ((poly.c.array() < 0.0).any())
        throw std::invalid_argument("enumerate_support_vertices: right-hand side must be nonnegative");

    const auto symmetries = coordinate_symmetries(poly);
    const double feas = kMembershipTol * (1.0 + poly.c.cwiseAbs().maxCoeff());

    std::vector<int> always, gated;
    for (int r = 0; r < m; ++r)
        (poly.rows[std::size_t(r)].gated ? gated : always).push_back(r);

    CornerPointSet found;
    std::vector<int> pool;
    Eigen::MatrixXd S;
    Eigen::VectorXd rhs;

    for (int s = 1; s <= std::min(n, m); ++s)
    {
        detail::for_each_combination(n, s, [&](const std::vector<int> &support) {
            std::uint32_t mask = 0;
            for (int j : support)
                mask |= std::uint32_t(1) << j;
            for (const auto &img : symmetries)
                if (map_mask(mask, img) < mask)
                    return;

            pool = always;
            for (int r : gated)
                if ((mask >> poly.rows[std::size_t(r)].index) & 1u)
                    pool.push_back(r);
            const int p = int(pool.size());
            if (p < s)
                return;

            Eigen::MatrixXd Apool(p, s);
            Eigen::VectorXd cpool(p);
            for (int a = 0; a < p; ++a)
            {
                cpool[a] = poly.c[pool[std::size_t(a)]];
                for (int b = 0; b < s; ++b)
                    Apool(a, b) = poly.A(pool[std::size_t(a)], support[std::size_t(b)]);
            }

            detail::for_each_combination(p, s, [&](const std::vector<int> &pick) {
                S.resize(s, s);
                rhs.resize(s);
                for (int a = 0; a < s; ++a)
                {
                    S.row(a) = Apool.row(pick[std::size_t(a)]);
                    rhs[a] = cpool[pick[std::size_t(a)]];
                }
                Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
                lu.setThreshold(1e-10);
                if (!lu.isInvertible())
                    return;
                const Eigen::VectorXd x = lu.solve(rhs);
                if ((x.array() <= kMembershipTol).any())
                    return;
                if (((Apool * x - cpool).array() > feas).any())
                    return;
                DofTuple d = DofTuple::Zero(n);
                for (int b = 0; b < s; ++b)
                    d[support[std::size_t(b)]] = x[b];
                if (symmetries.empty())
                {
                    found.points.push_back(d);
                    found.sources.push_back(tag);
                    return;
                }
                for (const auto &img : symmetries)
                {
                    DofTuple e = DofTuple::Zero(n);
                    for (int j = 0; j < n; ++j)
                        e[img[std::size_t(j)]] = d[j];
                    found.points.push_back(std::move(e));
                    found.sources.push_back(tag);
                }
            });
        });
    }
    canonicalize(found);
    return found;
}

CornerPointSet brute_force_vertices(const Polytope &poly)
{
    if (poly.has_gated_rows())
        throw std::invalid_argument("brute_force_vertices: gated rows are not a polytope; drop the indicators first");
    const int n = poly.dimension(), m = poly.row_count();
    for (int j = 0; j < n; ++j)
        if (!(poly.A.col(j).array() > 0.0).any())
            throw std::domain_error("brute_force_vertices: coordinate " + std::to_string(j + 1) + " is unbounded");

    // Full system: rows of A, then -I for the coordinate planes.
    Eigen::MatrixXd H(m + n, n);
    H << poly.A, -Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd h(m + n);
    h << poly.c, Eigen::VectorXd::Zero(n);
    const double feas = kMembershipTol * (1.0 + poly.c.cwiseAbs().maxCoeff());

    CornerPointSet out;
    Eigen::MatrixXd S(n, n);
    Eigen::VectorXd rhs(n);
    detail::for_each_combination(m + n, n, [&](const std::vector<int> &pick) {
        for (int a = 0; a < n; ++a)
        {
            S.row(a) = H.row(pick[std::size_t(a)]);
            rhs[a] = h[pick[std::size_t(a)]];
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(S);
        lu.setThreshold(1e-10);
        if (!lu.isInvertible())
            return;
        const Eigen::VectorXd x = lu.solve(rhs);
        if (((H * x - h).array() > feas).any())
            return;
        out.points.push_back(x.cwiseMax(0.0));
        out.sources.push_back(CornerSource::Vertex);
    });
    canonicalize(out);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Inner-region corner points

CornerPointSet corner_points(const RegionSpec &region)
{
    using Key = std::tuple<int, int, int, int>;
    static std::mutex mu;
    static std::map<Key, CornerPointSet> memo;
    const Key key{int(region.regime), region.users, region.tx_antennas, region.rx_antennas};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find(key);
        if (it != memo.end())
            return it->second;
    }

    CornerPointSet out;
    const int n = region.primary.dimension();
    switch (region.regime)
    {
    case Regime::LowM:
        for (int j = 0; j < n; ++j)
        {
            DofTuple e = DofTuple::Zero(n);
            e[j] = region.primary.c[0];
            out.points.push_back(e);
            out.sources.push_back(CornerSource::Axis);
        }
        canonicalize(out);
        break;
    case Regime::HighM:
        out = enumerate_support_vertices(region.primary, CornerSource::Box);
        break;
    case Regime::Mid: {
        if (region.users > 4)
            throw RegimeError("corner_points: the Mid regime is enumerated for at most 4 users");
        out = enumerate_support_vertices(region.primary, CornerSource::D1);
        CornerPointSet d2 = enumerate_support_vertices(region.d2, CornerSource::D2);
        out.points.insert(out.points.end(), d2.points.begin(), d2.points.end());
        out.sources.insert(out.sources.end(), d2.sources.begin(), d2.sources.end());
        canonicalize(out);
        break;
    }
    }

    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(key, out);
    return out;
}

double support_function(const Polytope &poly, const Eigen::VectorXd &w)
{
    if (poly.has_gated_rows())
        throw std::invalid_argument("support_function: gated rows; use the corner-point overload");
    if (w.size() != poly.dimension())
        throw DimensionMismatch("support_function: direction has wrong size");
    return maximize_linear(poly.A, poly.c, w);
}

double support_function(const CornerPointSet &corners, const Eigen::VectorXd &w)
{
    double best = 0.0; // origin
    for (const auto &p : corners.points)
    {
        if (p.size() != w.size())
            throw DimensionMismatch("support_function: direction has wrong size");
        best = std::max(best, w.dot(p));
    }
    return best;
}

} // namespace cachedof
