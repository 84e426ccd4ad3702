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

#include "cachedof/caching.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace cachedof
{

Eigen::VectorXd CacheState::memory_usage() const
{
    Eigen::VectorXd use = Eigen::VectorXd::Zero(users);
    for (Eigen::Index s = 1; s < lengths.cols(); ++s)
    {
        const double col = lengths.col(s).sum();
        for (int u = 0; u < users; ++u)
            if ((s >> u) & 1)
                use[u] += col;
    }
    return use;
}

void CacheState::check_partition(double eps) const
{
    for (int l = 0; l < files(); ++l)
    {
        const auto row = lengths.row(l);
        if ((row.array() < -eps).any() || (row.array() > 1.0 + eps).any())
            throw CacheValidationError("cache state: file " + std::to_string(l + 1) + " has a length outside [0, 1]");
        const double total = row.sum();
        if (std::abs(total - 1.0) > eps)
            throw CacheValidationError("cache state: subfiles of file " + std::to_string(l + 1) + " sum to " +
                                       std::to_string(total) + ", expected 1");
    }
}

void CacheState::check_memory(double mu, double eps) const
{
    const Eigen::VectorXd use = memory_usage();
    for (int u = 0; u < users; ++u)
        if (use[u] > mu * files() + eps)
            throw CacheValidationError("cache state: user " + std::to_string(u + 1) + " stores " +
                                       std::to_string(use[u]) + " files, capacity " + std::to_string(mu * files()));
}

CacheState centralized_place(const SystemConfig &cfg)
{
    cfg.validate();
    const int K = cfg.users;
    const double t = K * cfg.cache_size;
    const int ti = int(std::lround(t));
    if (std::abs(t - ti) > 1e-9)
        throw std::invalid_argument("centralized_place: K mu must be an integer, got " + std::to_string(t));

    CacheState c;
    c.users = K;
    c.kind = PlacementKind::Centralized;
    c.lengths = Eigen::MatrixXd::Zero(cfg.library_size, Eigen::Index(1) << K);
    const double piece = 1.0 / binomial(K, ti);
    for (UserSet s = 0; s < (UserSet(1) << K); ++s)
        if (std::popcount(s) == ti)
            c.lengths.col(s).setConstant(piece);
    return c;
}

CacheState decentralized_place(const SystemConfig &cfg, std::uint64_t seed, long bits)
{
    cfg.validate();
    if (bits < 0)
        throw std::invalid_argument("decentralized_place: bits must be nonnegative");
    const int K = cfg.users;
    const double mu = cfg.cache_size;

    CacheState c;
    c.users = K;
    c.kind = PlacementKind::Decentralized;
    c.lengths = Eigen::MatrixXd::Zero(cfg.library_size, Eigen::Index(1) << K);

    if (bits == 0)
    {
        for (UserSet s = 0; s < (UserSet(1) << K); ++s)
        {
            const int k = std::popcount(s);
            c.lengths.col(s).setConstant(std::pow(mu, k) * std::pow(1.0 - mu, K - k));
        }
        return c;
    }

    const long cached = long(std::floor(mu * double(bits) + 1e-9));
    std::mt19937_64 rng(seed);
    std::vector<UserSet> owner(static_cast<std::size_t>(bits));
    std::vector<long> units(static_cast<std::size_t>(bits));
    for (int l = 0; l < cfg.library_size; ++l)
    {
        std::fill(owner.begin(), owner.end(), 0);
        for (int u = 0; u < K; ++u)
        {
            // Partial Fisher-Yates: the first `cached` entries are a uniform sample.
            std::iota(units.begin(), units.end(), 0L);
            for (long i = 0; i < cached; ++i)
            {
                std::uniform_int_distribution<long> pick(i, bits - 1);
                std::swap(units[std::size_t(i)], units[std::size_t(pick(rng))]);
                owner[std::size_t(units[std::size_t(i)])] |= UserSet(1) << u;
            }
        }
        for (UserSet s : owner)
            c.lengths(l, s) += 1.0;
    }
    c.lengths /= double(bits);
    return c;
}

double parse_fraction(const std::string &token)
{
    const auto slash = token.find('/');
    std::size_t used = 0;
    try
    {
        if (slash == std::string::npos)
        {
            const double v = std::stod(token, &used);
            if (used == token.size())
                return v;
        }
        else
        {
            const std::string num = token.substr(0, slash), den = token.substr(slash + 1);
            std::size_t un = 0, ud = 0;
            const double a = std::stod(num, &un), b = std::stod(den, &ud);
            if (un == num.size() && ud == den.size() && b != 0.0)
                return a / b;
        }
    }
    catch (const std::logic_error &)
    {
    }
    throw std::invalid_argument("cannot parse '" + token + "' as a decimal or a fraction");
}

CacheState load_cache_fixture(std::istream &in, int users)
{
    if (users < 2 || users > kMaxUsers)
        throw InvalidConfig("load_cache_fixture: unsupported user count");
    const std::size_t cells = std::size_t(1) << users;

    std::vector<UserSet> columns;
    std::vector<std::vector<double>> rows;
    std::vector<int> file_ids;
    std::string line;
    while (std::getline(in, line))
    {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;)
            tok.push_back(t);
        if (columns.empty())
        {
            if (tok.front() != "file")
                throw std::invalid_argument("cache fixture: header must start with 'file'");
            for (std::size_t i = 1; i < tok.size(); ++i)
                columns.push_back(parse_set_label(tok[i], users));
            std::vector<UserSet> sorted = columns;
            std::sort(sorted.begin(), sorted.end());
            if (sorted.size() != cells || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw std::invalid_argument("cache fixture: header must list each of the " + std::to_string(cells) +
                                            " user sets exactly once");
            continue;
        }
        if (tok.size() != columns.size() + 1)
            throw std::invalid_argument("cache fixture: row '" + tok.front() + "' has " +
                                        std::to_string(tok.size() - 1) + " entries, expected " +
                                        std::to_string(columns.size()));
        file_ids.push_back(std::stoi(tok.front()));
        std::vector<double> v;
        for (std::size_t i = 1; i < tok.size(); ++i)
            v.push_back(parse_fraction(tok[i]));
        rows.push_back(std::move(v));
    }
    if (columns.empty() || rows.empty())
        throw std::invalid_argument("cache fixture: no header or no rows");

    CacheState c;
    c.users = users;
    c.kind = PlacementKind::Fixture;
    c.lengths = Eigen::MatrixXd::Zero(Eigen::Index(rows.size()), Eigen::Index(cells));
    for (std::size_t r = 0; r < rows.size(); ++r)
    {
        if (file_ids[r] != int(r) + 1)
            throw std::invalid_argument("cache fixture: files must be listed as 1, 2, ... in order");
        for (std::size_t k = 0; k < columns.size(); ++k)
            c.lengths(Eigen::Index(r), Eigen::Index(columns[k])) = rows[r][k];
    }
    c.check_partition();
    return c;
}

CacheState load_cache_fixture(const std::string &path, int users)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open cache fixture '" + path + "'");
    return load_cache_fixture(in, users);
}

LengthVector generate_coded_messages(const CacheState &cache, const DemandVector &demand)
{
    const int K = cache.users;
    if (int(demand.size()) != K)
        throw DimensionMismatch("generate_coded_messages: demand has " + std::to_string(demand.size()) +
                                " entries, expected " + std::to_string(K));
    for (int r : demand)
        if (r < 1 || r > cache.files())
            throw std::invalid_argument("generate_coded_messages: requested file " + std::to_string(r) +
                                        " is not in the library");

    const GroupIndex g(K);
    LengthVector a = LengthVector::Zero(g.size());
    for (int j = 0; j < g.size(); ++j)
    {
        const UserSet A = g.at(j);
        for (int i = 1; i <= K; ++i)
            if ((A >> (i - 1)) & 1u)
                a[j] = std::max(a[j], cache.length(demand[std::size_t(i - 1)], A & ~(UserSet(1) << (i - 1))));
    }
    return a;
}

DemandVector worst_case_demand(const SystemConfig &cfg)
{
    if (cfg.library_size < cfg.users)
        throw InvalidConfig("worst_case_demand: needs at least as many files as users");
    DemandVector r(std::size_t(cfg.users));
    std::iota(r.begin(), r.end(), 1);
    return r;
}

} // namespace cachedof
