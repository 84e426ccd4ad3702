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

#include "cachedof/phy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>

namespace cachedof
{

namespace
{

using Mat = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
{
    // splitmix64 finalizer over the combined words
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Mat complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng &rng)
{
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    Mat X(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            X(i, j) = {n(rng), n(rng)};
    return X;
}

// rows x cols with orthonormal columns (cols <= rows)
Mat orthonormal_columns(Eigen::Index rows, Eigen::Index cols, Rng &rng)
{
    const Mat X = complex_gaussian(rows, cols, rng);
    Eigen::HouseholderQR<Mat> qr(X);
    return qr.householderQ() * Mat::Identity(rows, cols);
}

Mat orthonormal_rows(Eigen::Index rows, Eigen::Index cols, Rng &rng)
{
    return orthonormal_columns(cols, rows, rng).adjoint();
}

Mat pseudo_inverse(const Mat &A)
{
    Eigen::CompleteOrthogonalDecomposition<Mat> cod(A);
    cod.setThreshold(kRankTol);
    return cod.pseudoInverse();
}

int numerical_rank(const Mat &A)
{
    if (A.size() == 0)
        return 0;
    Eigen::JacobiSVD<Mat> svd(A);
    const auto &s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > kRankTol * s[0])
            ++r;
    return r;
}

// Columns spanning { x : A x = 0 }.
Mat null_space(const Mat &A)
{
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > kRankTol * s[0])
            ++r;
    return svd.matrixV().rightCols(A.cols() - r);
}

Mat kron_identity(int kappa, const Mat &H)
{
    Mat out = Mat::Zero(kappa * H.rows(), kappa * H.cols());
    for (int t = 0; t < kappa; ++t)
        out.block(t * H.rows(), t * H.cols(), H.rows(), H.cols()) = H;
    return out;
}

void normalize_columns(Mat &U)
{
    for (Eigen::Index j = 0; j < U.cols(); ++j)
    {
        const double n = U.col(j).norm();
        if (n > 0.0)
            U.col(j) /= n;
    }
}

Mat activation(int physical, int virtual_inputs, Rng &rng)
{
    if (physical == virtual_inputs)
        return Mat::Identity(physical, physical);
    return orthonormal_columns(physical, virtual_inputs, rng);
}

} // namespace

std::string to_string(SchemeKind k)
{
    switch (k)
    {
    case SchemeKind::ReceiveZeroForcing:
        return "receive-zf";
    case SchemeKind::MetaSignal:
        return "meta-signal";
    case SchemeKind::Equalized:
        return "equalized";
    }
    return "?";
}

int LinearScheme::streams() const
{
    int n = 0;
    for (const auto &g : groups)
        n += g.streams;
    return n;
}

ChannelSet sample_channels(const SystemConfig &cfg, int active_antennas, std::uint64_t seed)
{
    cfg.validate();
    if (active_antennas < 1 || active_antennas > cfg.tx_antennas)
        throw std::invalid_argument("sample_channels: active antennas must lie in [1, M]");
    Rng rng(seed);
    ChannelSet out;
    for (int i = 0; i < cfg.users; ++i)
        out.H.push_back(complex_gaussian(cfg.rx_antennas, active_antennas, rng));
    return out;
}

int extension_factor(const DofTuple &d)
{
    for (int kappa = 1; kappa <= 16; ++kappa)
    {
        const Eigen::ArrayXd x = kappa * d.array();
        if (((x - x.round()).abs() <= 1e-9 * kappa).all())
            return kappa;
    }
    throw DesignError("no symbol extension up to 16 makes the DoF tuple integral");
}

Eigen::MatrixXcd extended_channel(const Eigen::MatrixXcd &H, const LinearScheme &scheme)
{
    if (H.cols() < scheme.active_antennas)
        throw DimensionMismatch("extended_channel: channel has fewer inputs than the scheme activates");
    return kron_identity(scheme.kappa, H.leftCols(scheme.active_antennas)) * scheme.T;
}

namespace
{

void design_receive_zf(LinearScheme &s, const ChannelSet &H, const SystemConfig &cfg, const GroupIndex &g,
                       const std::vector<int> &n, Rng &rng)
{
    const int kappa = s.kappa, N = cfg.rx_antennas, D = std::accumulate(n.begin(), n.end(), 0);
    s.active_antennas = cfg.tx_antennas;
    s.T = activation(kappa * cfg.tx_antennas, D, rng);
    const int used = std::min(cfg.tx_antennas, N);

    // Virtual input k carries stream k.
    int offset = 0;
    std::vector<int> first(n.size());
    for (std::size_t a = 0; a < n.size(); ++a)
    {
        first[a] = offset;
        offset += n[a];
    }

    std::vector<Mat> combiner(static_cast<std::size_t>(cfg.users));
    for (int i = 0; i < cfg.users; ++i)
    {
        const Mat Hx = extended_channel(H.H[std::size_t(i)], s);
        std::vector<Eigen::Index> rows;
        for (int t = 0; t < kappa; ++t)
            for (int a = 0; a < used; ++a)
                rows.push_back(t * N + a);
        Mat Hsel(Eigen::Index(rows.size()), D);
        for (std::size_t r = 0; r < rows.size(); ++r)
            Hsel.row(Eigen::Index(r)) = Hx.row(rows[r]);
        if (numerical_rank(Hsel) < D)
            throw DesignError("receive zero forcing: user " + std::to_string(i + 1) + " cannot separate " +
                              std::to_string(D) + " streams");
        const Mat Z = pseudo_inverse(Hsel);
        Mat full = Mat::Zero(D, kappa * N);
        for (std::size_t r = 0; r < rows.size(); ++r)
            full.col(rows[r]) = Z.col(Eigen::Index(r));
        combiner[std::size_t(i)] = full;
    }

    for (std::size_t a = 0; a < n.size(); ++a)
    {
        if (n[a] == 0)
            continue;
        GroupStreams gs;
        gs.group = int(a);
        gs.streams = n[a];
        gs.U = Mat::Identity(D, D).middleCols(first[a], n[a]);
        gs.users = g.members(int(a));
        for (int u : gs.users)
            gs.V.push_back(combiner[std::size_t(u - 1)].middleRows(first[a], n[a]));
        s.groups.push_back(std::move(gs));
    }
}

void design_meta_signal(LinearScheme &s, const ChannelSet &H, const SystemConfig &cfg, const GroupIndex &g,
                        const std::vector<int> &n, Rng &rng)
{
    const int kappa = s.kappa, N = cfg.rx_antennas, K = cfg.users;
    s.active_antennas = std::min(cfg.tx_antennas, K * N);
    s.T = Mat::Identity(kappa * s.active_antennas, kappa * s.active_antennas);

    // Row slots of each (user, group) inside the user's meta-signal.
    std::vector<int> load(static_cast<std::size_t>(K), 0);
    std::vector<std::vector<int>> slot(n.size(), std::vector<int>(std::size_t(K), -1));
    for (std::size_t a = 0; a < n.size(); ++a)
        for (int u : g.members(int(a)))
        {
            slot[a][std::size_t(u - 1)] = load[std::size_t(u - 1)];
            load[std::size_t(u - 1)] += n[a];
        }

    int total = 0;
    std::vector<int> offset(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
    {
        if (load[std::size_t(i)] > kappa * N)
            throw DesignError("meta-signal: user " + std::to_string(i + 1) + " needs " +
                              std::to_string(load[std::size_t(i)]) + " streams but has " + std::to_string(kappa * N) +
                              " receive dimensions");
        offset[std::size_t(i)] = total;
        total += load[std::size_t(i)];
    }
    if (total > s.T.cols())
        throw DesignError("meta-signal: " + std::to_string(total) + " meta-streams exceed " +
                          std::to_string(s.T.cols()) + " transmit dimensions");

    std::vector<Mat> R(static_cast<std::size_t>(K));
    Mat F(total, s.T.cols());
    for (int i = 0; i < K; ++i)
    {
        R[std::size_t(i)] = orthonormal_rows(load[std::size_t(i)], kappa * N, rng);
        F.middleRows(offset[std::size_t(i)], load[std::size_t(i)]) =
            R[std::size_t(i)] * extended_channel(H.H[std::size_t(i)], s);
    }
    if (numerical_rank(F) < total)
        throw DesignError("meta-signal: stacked user channels are rank deficient");
    const Mat W = pseudo_inverse(F);

    for (std::size_t a = 0; a < n.size(); ++a)
    {
        if (n[a] == 0)
            continue;
        GroupStreams gs;
        gs.group = int(a);
        gs.streams = n[a];
        gs.users = g.members(int(a));
        gs.U = Mat::Zero(W.rows(), n[a]);
        for (int u : gs.users)
        {
            const int row = offset[std::size_t(u - 1)] + slot[a][std::size_t(u - 1)];
            gs.U += W.middleCols(row, n[a]);
            gs.V.push_back(R[std::size_t(u - 1)].middleRows(slot[a][std::size_t(u - 1)], n[a]));
        }
        normalize_columns(gs.U);
        s.groups.push_back(std::move(gs));
    }
}

struct Overload
{
    int group;
    double need, budget;
};

std::optional<Overload> first_overload(const DofTuple &d, const SystemConfig &cfg)
{
    const GroupIndex g(cfg.users);
    check_nonnegative(d, g.size(), "overloaded_subgroup: DoF tuple");
    const double total = d.sum(), N = cfg.rx_antennas;
    const double r = std::min(N, total); // receive dimensions per slot after reduction
    for (int a = 0; a < g.size(); ++a)
    {
        const int s = g.cardinality(a);
        if (s < 2)
            continue;
        double need = 0.0;
        for (int b = 0; b < g.size(); ++b)
            if ((g.at(b) & g.at(a)) == g.at(a))
                need += d[b];
        const double budget = std::max(0.0, s * r - (s - 1) * total);
        if (need > budget + 1e-9)
            return Overload{a, need, budget};
    }
    return std::nullopt;
}

void design_equalized(LinearScheme &s, const ChannelSet &H, const SystemConfig &cfg, const GroupIndex &g,
                      const std::vector<int> &n, Rng &rng)
{
    const int kappa = s.kappa, N = cfg.rx_antennas, K = cfg.users, D = std::accumulate(n.begin(), n.end(), 0);
    if (const auto hit = first_overload(s.d, cfg))
        throw DesignError("equalized: groups containing " + g.label(hit->group) + " carry " +
                          std::to_string(hit->need) + " streams per slot but their common channel space has " +
                          std::to_string(hit->budget) + " dimensions");

    s.active_antennas = int(std::ceil(s.d.sum() - 1e-9));
    if (s.active_antennas > cfg.tx_antennas)
        throw DesignError("equalized: needs " + std::to_string(s.active_antennas) + " transmit antennas");
    s.T = activation(kappa * s.active_antennas, D, rng);

    // Users keep at most D receive dimensions so that V H~ = 0 forces V = 0.
    const int r = std::min(kappa * N, D);
    std::vector<Mat> R(static_cast<std::size_t>(K)), Hr(static_cast<std::size_t>(K));
    for (int i = 0; i < K; ++i)
    {
        R[std::size_t(i)] = r == kappa * N ? Mat::Identity(r, r) : orthonormal_rows(r, kappa * N, rng);
        Hr[std::size_t(i)] = R[std::size_t(i)] * extended_channel(H.H[std::size_t(i)], s);
    }

    Mat Gstack(D, D);
    int row = 0;
    for (std::size_t a = 0; a < n.size(); ++a)
    {
        if (n[a] == 0)
            continue;
        GroupStreams gs;
        gs.group = int(a);
        gs.streams = n[a];
        gs.users = g.members(int(a));
        const int sz = int(gs.users.size());
        if (sz == 1)
        {
            const int u = gs.users.front() - 1;
            const Mat v = orthonormal_rows(n[a], r, rng);
            gs.G = v * Hr[std::size_t(u)];
            gs.V.push_back(v * R[std::size_t(u)]);
        }
        else
        {
            // [g, v_1, ..., v_s] with g^T = Hr_j^T v_j^T for every member j.
            Mat Q = Mat::Zero(Eigen::Index(sz) * D, D + Eigen::Index(sz) * r);
            for (int j = 0; j < sz; ++j)
            {
                Q.block(j * D, 0, D, D).setIdentity();
                Q.block(j * D, D + j * r, D, r) = -Hr[std::size_t(gs.users[std::size_t(j)] - 1)].transpose();
            }
            const Mat Z = null_space(Q);
            if (Z.cols() < n[a])
                throw DesignError("equalized: group " + g.label(int(a)) + " has a " + std::to_string(Z.cols()) +
                                  "-dimensional common channel space but needs " + std::to_string(n[a]) +
                                  " streams; the intersection budget d_A + sum_{B > A} d_B <= M_a + sN - sM_a fails");
            const Mat X = Z * orthonormal_columns(Z.cols(), n[a], rng);
            gs.G = X.topRows(D).transpose();
            for (int j = 0; j < sz; ++j)
                gs.V.push_back(X.middleRows(D + j * r, r).transpose() *
                               R[std::size_t(gs.users[std::size_t(j)] - 1)]);
        }
        Gstack.middleRows(row, n[a]) = gs.G;
        row += n[a];
        s.groups.push_back(std::move(gs));
    }

    if (numerical_rank(Gstack) < D)
        throw DesignError("equalized: effective channels of the active groups are linearly dependent");
    const Mat U = pseudo_inverse(Gstack);
    row = 0;
    for (auto &gs : s.groups)
    {
        gs.U = U.middleCols(row, gs.streams);
        normalize_columns(gs.U);
        row += gs.streams;
    }
}

} // namespace

int overloaded_subgroup(const DofTuple &d, const SystemConfig &cfg)
{
    const auto hit = first_overload(d, cfg);
    return hit ? hit->group : -1;
}

LinearScheme design_scheme(const ChannelSet &H, const DofTuple &d, const SystemConfig &cfg, std::uint64_t seed)
{
    cfg.validate();
    const GroupIndex g(cfg.users);
    check_nonnegative(d, g.size(), "design_scheme: DoF tuple");
    if (int(H.H.size()) != cfg.users)
        throw DimensionMismatch("design_scheme: channel set has the wrong number of users");
    if (d.maxCoeff() <= 0.0)
        throw DesignError("design_scheme: the DoF tuple is zero");

    LinearScheme s;
    s.d = d;
    s.kappa = extension_factor(d);
    std::vector<int> n(static_cast<std::size_t>(g.size()));
    for (int a = 0; a < g.size(); ++a)
        n[std::size_t(a)] = int(std::lround(s.kappa * d[a]));

    Rng rng(seed);
    const double tol = 1e-9;
    switch (cfg.regime())
    {
    case Regime::LowM:
        if (d.sum() > cfg.tx_antennas + tol)
            throw InfeasibleDesign("design_scheme: tuple outside the inner region (sum exceeds M)");
        s.kind = SchemeKind::ReceiveZeroForcing;
        design_receive_zf(s, H, cfg, g, n, rng);
        break;
    case Regime::HighM:
        if (!contains(per_user_box(cfg.users, cfg.rx_antennas), d, tol))
            throw InfeasibleDesign("design_scheme: tuple outside the inner region (per-user load exceeds N)");
        s.kind = SchemeKind::MetaSignal;
        design_meta_signal(s, H, cfg, g, n, rng);
        break;
    case Regime::Mid:
        if (contains(subspace_region(cfg.users, cfg.tx_antennas, cfg.rx_antennas), d, tol) &&
            (overloaded_subgroup(d, cfg) < 0 ||
             !contains(per_user_box(cfg.users, double(cfg.tx_antennas) / cfg.users), d, tol)))
        {
            s.kind = SchemeKind::Equalized;
            design_equalized(s, H, cfg, g, n, rng);
        }
        else if (contains(per_user_box(cfg.users, double(cfg.tx_antennas) / cfg.users), d, tol))
        {
            s.kind = SchemeKind::MetaSignal;
            design_meta_signal(s, H, cfg, g, n, rng);
        }
        else
            throw InfeasibleDesign("design_scheme: tuple lies in neither D1 nor D2; split it into corner points first");
        break;
    }
    return s;
}

SchemeReport verify_scheme(const LinearScheme &scheme, const ChannelSet &H, const DofTuple &d)
{
    SchemeReport rep;
    rep.rank_margin = std::numeric_limits<double>::infinity();
    bool streams_match = d.size() == scheme.d.size();
    for (const auto &gs : scheme.groups)
    {
        if (streams_match && std::abs(gs.streams - scheme.kappa * d[gs.group]) > 1e-9 * scheme.kappa)
            streams_match = false;
        for (std::size_t j = 0; j < gs.users.size(); ++j)
        {
            const Mat Hx = extended_channel(H.H[std::size_t(gs.users[j] - 1)], scheme);
            const Mat &V = gs.V[j];
            const Mat VH = V * Hx;
            const double scale = V.norm() * Hx.norm();
            for (const auto &other : scheme.groups)
            {
                if (other.group == gs.group)
                    continue;
                rep.nulling = std::max(rep.nulling, (VH * other.U).norm() / (scale * other.U.norm()));
            }
            Eigen::JacobiSVD<Mat> svd(VH * gs.U);
            const auto &sv = svd.singularValues();
            const double margin = sv.size() == gs.streams && sv[0] > 0.0 ? sv[sv.size() - 1] / sv[0] : 0.0;
            rep.rank_margin = std::min(rep.rank_margin, margin);
            if (scheme.kind == SchemeKind::Equalized)
                rep.equalization = std::max(rep.equalization, (VH - gs.G).norm() / gs.G.norm());
        }
    }
    if (scheme.groups.empty())
        rep.rank_margin = 0.0;
    rep.nulling_ok = rep.nulling <= kSchemeTol;
    rep.rank_ok = streams_match && rep.rank_margin > kRankTol;
    rep.equalization_ok = rep.equalization <= kSchemeTol;
    return rep;
}

Eigen::VectorXd phase_rates(const LinearScheme &scheme, const ChannelSet &H, double P)
{
    if (!(P >= 0.0))
        throw std::invalid_argument("phase_rates: power must be nonnegative");
    Eigen::VectorXd rate = Eigen::VectorXd::Zero(scheme.d.size());
    const double per_stream = P / scheme.d.sum();
    for (const auto &gs : scheme.groups)
    {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < gs.users.size(); ++j)
        {
            const Mat &V = gs.V[j];
            const Mat Kd = V * extended_channel(H.H[std::size_t(gs.users[j] - 1)], scheme) * gs.U;
            // Whiten the combined noise V V^H.
            Eigen::LLT<Mat> noise(V * V.adjoint());
            const Mat W = noise.matrixL().solve(Kd);
            const Mat S = Mat::Identity(gs.streams, gs.streams) + per_stream * W * W.adjoint();
            Eigen::LLT<Mat> chol(S);
            double logdet = 0.0;
            for (Eigen::Index k = 0; k < S.rows(); ++k)
                logdet += 2.0 * std::log2(chol.matrixL()(k, k).real());
            best = std::min(best, logdet / scheme.kappa);
        }
        rate[gs.group] = best;
    }
    return rate;
}

std::vector<SimResult> simulate_delivery(const DeliveryPlan &plan, const LengthVector &f, const SystemConfig &cfg,
                                         const std::vector<double> &powers, int draws, std::uint64_t seed)
{
    cfg.validate();
    const int groups = (1 << cfg.users) - 1;
    check_nonnegative(f, groups, "simulate_delivery: message lengths");
    if (draws < 1)
        throw std::invalid_argument("simulate_delivery: draws must be at least 1");
    for (double P : powers)
        if (!(P > 1.0))
            throw std::invalid_argument("simulate_delivery: powers must exceed 1 (log2 P normalizes the NDT)");
    LengthVector covered = LengthVector::Zero(groups);
    for (const auto &ph : plan.phases)
        covered += ph.weight * ph.point;
    if ((covered - f).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + f.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("simulate_delivery: plan phases do not add up to the message lengths");

    const std::size_t np = powers.size(), nk = plan.phases.size();
    std::vector<SimResult> out(np);
    std::vector<std::vector<Eigen::VectorXd>> rate_sum(np, std::vector<Eigen::VectorXd>(nk, Eigen::VectorXd::Zero(groups)));
    std::vector<std::vector<double>> per_draw(np);

    for (int t = 0; t < draws; ++t)
    {
        const ChannelSet H = sample_channels(cfg, cfg.tx_antennas, mix_seed(seed, std::uint64_t(t)));
        std::vector<double> T(np, 0.0);
        for (std::size_t k = 0; k < nk; ++k)
        {
            const Phase &ph = plan.phases[k];
            if (ph.weight <= 0.0)
                continue;
            LinearScheme scheme;
            try
            {
                scheme = design_scheme(H, ph.point, cfg, mix_seed(seed, std::uint64_t(t), k + 1));
            }
            catch (const DesignError &e)
            {
                throw DesignError("phase " + std::to_string(k + 1) + ": " + e.what());
            }
            for (std::size_t p = 0; p < np; ++p)
            {
                const Eigen::VectorXd R = phase_rates(scheme, H, powers[p]);
                rate_sum[p][k] += R;
                double Tk = 0.0;
                for (int a = 0; a < groups; ++a)
                    if (ph.point[a] > 0.0)
                        Tk = std::max(Tk, ph.weight * ph.point[a] / R[a]);
                T[p] += Tk;
            }
        }
        for (std::size_t p = 0; p < np; ++p)
            per_draw[p].push_back(T[p] * std::log2(powers[p]));
    }

    for (std::size_t p = 0; p < np; ++p)
    {
        SimResult &r = out[p];
        r.power = powers[p];
        r.draws = draws;
        r.ndt_asymptotic = plan.tau;
        for (std::size_t k = 0; k < nk; ++k)
        {
            const Phase &ph = plan.phases[k];
            PhaseStats st;
            st.point = ph.point;
            st.weight = ph.weight;
            st.mean_rate = rate_sum[p][k] / draws;
            for (int a = 0; a < groups; ++a)
                if (ph.point[a] > 0.0 && ph.weight > 0.0)
                    st.time = std::max(st.time, ph.weight * ph.point[a] / st.mean_rate[a]);
            r.time += st.time;
            r.phases.push_back(std::move(st));
        }
        r.ndt = r.time * std::log2(powers[p]);
        const auto &v = per_draw[p];
        double mean = 0.0;
        for (double x : v)
            mean += x;
        mean /= double(v.size());
        double var = 0.0;
        for (double x : v)
            var += (x - mean) * (x - mean);
        r.ndt_mean = mean;
        r.ndt_std = v.size() > 1 ? std::sqrt(var / double(v.size() - 1)) : 0.0;
    }
    return out;
}

SimResult simulate_delivery(const DeliveryPlan &plan, const LengthVector &f, const SystemConfig &cfg, double power,
                            int draws, std::uint64_t seed)
{
    return simulate_delivery(plan, f, cfg, std::vector<double>{power}, draws, seed).front();
}

} // namespace cachedof
