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

#include <doctest.h>

#include "cachedof/caching.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace cachedof;

namespace
{

const std::string kTable1 = CACHEDOF_FIXTURES "/table1.txt";

// Relabels users by perm (perm[u-1] = new 1-based label of user u).
UserSet relabel(UserSet s, const std::vector<int> &perm)
{
    UserSet out = 0;
    for (int u = 1; u <= int(perm.size()); ++u)
        if (s >> (u - 1) & 1u)
            out |= UserSet(1) << (perm[std::size_t(u - 1)] - 1);
    return out;
}

} // namespace

TEST_CASE("centralized_place - K = 3, mu = 1/3 splits into three thirds")
{
    const CacheState c = centralized_place(oracle::config(3, 2, 1, 1.0 / 3));
    CHECK(c.kind == PlacementKind::Centralized);
    for (int l = 1; l <= 4; ++l)
        for (UserSet s = 0; s < 8; ++s)
            CHECK(c.length(l, s) == doctest::Approx(popcount(s) == 1 ? 1.0 / 3 : 0.0));
    CHECK_NOTHROW(c.check_partition());
    CHECK_NOTHROW(c.check_memory(1.0 / 3));
    CHECK(c.memory_usage().isApprox(Eigen::VectorXd::Constant(3, 4.0 / 3)));
}

TEST_CASE("centralized_place - empty and full caches, non-integer K mu")
{
    const CacheState none = centralized_place(oracle::config(3, 2, 1, 0.0));
    CHECK(none.length(1, 0) == 1.0);
    const CacheState full = centralized_place(oracle::config(3, 2, 1, 1.0));
    CHECK(full.length(2, 0b111) == 1.0);
    CHECK_THROWS_AS(centralized_place(oracle::config(3, 2, 1, 0.5)), std::invalid_argument);
}

TEST_CASE("decentralized_place - large-file limit is the product formula")
{
    const CacheState c = decentralized_place(oracle::config(3, 2, 1, 0.4), 1, 0);
    // 0.4^2 * 0.6
    CHECK(c.length(1, 0b011) == doctest::Approx(0.096).epsilon(1e-15));
    CHECK_NOTHROW(c.check_partition());

    const CacheState empty = decentralized_place(oracle::config(3, 2, 1, 0.0), 5, 1000);
    CHECK(empty.length(3, 0) == 1.0);
}

TEST_CASE("decentralized_place - partition exact, memory at capacity, reproducible")
{
    for (std::uint64_t seed : {1u, 2u, 3u})
    {
        const CacheState c = decentralized_place(oracle::config(4, 2, 1, 0.3), seed, 1000);
        CHECK_NOTHROW(c.check_partition(1e-12));
        CHECK_NOTHROW(c.check_memory(0.3, 1e-12));
        // floor(0.3 * 1000) units of each of the 4 files per user
        CHECK(c.memory_usage().isApprox(Eigen::VectorXd::Constant(4, 1.2)));
    }
    const CacheState a = decentralized_place(oracle::config(3, 2, 1, 0.5), 9, 500);
    const CacheState b = decentralized_place(oracle::config(3, 2, 1, 0.5), 9, 500);
    CHECK(a.lengths == b.lengths);
    CHECK_THROWS_AS(decentralized_place(oracle::config(3, 2, 1, 0.5), 9, -1), std::invalid_argument);
}

TEST_CASE("decentralized_place - subfile fractions approach the product formula")
{
    // Each entry is a mean of F indicators; over 40 seeds the mean should sit within 3 sigma.
    const int K = 3, seeds = 40, bits = 2000;
    const double mu = 0.4;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(4, 8), sq = Eigen::MatrixXd::Zero(4, 8);
    for (int s = 0; s < seeds; ++s)
    {
        const CacheState c = decentralized_place(oracle::config(K, 2, 1, mu), std::uint64_t(100 + s), bits);
        sum += c.lengths;
        sq += c.lengths.cwiseProduct(c.lengths);
    }
    const Eigen::MatrixXd mean = sum / seeds;
    const Eigen::MatrixXd var = (sq / seeds - mean.cwiseProduct(mean)) * (double(seeds) / (seeds - 1));
    for (int l = 0; l < 4; ++l)
        for (UserSet S = 0; S < 8; ++S)
        {
            const double p = std::pow(mu, popcount(S)) * std::pow(1 - mu, K - popcount(S));
            const double se = std::sqrt(std::max(var(l, S), 1e-12) / seeds);
            CHECK(std::abs(mean(l, S) - p) <= 3.0 * se + 1e-12);
        }
}

TEST_CASE("load_cache_fixture - table1.txt rows and memory")
{
    const CacheState c = load_cache_fixture(kTable1, 3);
    REQUIRE(c.files() == 4);
    CHECK(c.kind == PlacementKind::Fixture);
    // row 1: {1} {2} {3} {1,2} {1,3} {2,3} {1,2,3} {}
    const double row1[8] = {0.05, 0.1, 0.25, 0.25, 0.1, 0.05, 0.0, 0.2};
    const UserSet cols[8] = {0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111, 0};
    for (int k = 0; k < 8; ++k)
        CHECK(c.length(1, cols[k]) == doctest::Approx(row1[k]));
    CHECK(c.lengths.row(0).sum() == doctest::Approx(1.0));

    // user 1 stores the {1}, {1,2}, {1,3}, {1,2,3} columns of every file
    double user1 = 0.0;
    for (int l = 1; l <= 4; ++l)
        for (UserSet s : {0b001u, 0b011u, 0b101u, 0b111u})
            user1 += c.length(l, s);
    CHECK(c.memory_usage()[0] == doctest::Approx(user1));
    CHECK(user1 <= 1.6 + 1e-12);
    CHECK_NOTHROW(c.check_memory(0.4));
}

TEST_CASE("load_cache_fixture - malformed tables")
{
    std::istringstream short_sum("file {1} {2} {1,2} {}\n1 0.2 0.2 0.2 0.3\n");
    CHECK_THROWS_AS(load_cache_fixture(short_sum, 2), CacheValidationError);
    try
    {
        std::istringstream again("file {1} {2} {1,2} {}\n1 0.2 0.2 0.2 0.3\n");
        load_cache_fixture(again, 2);
    }
    catch (const CacheValidationError &e)
    {
        CHECK(std::string(e.what()).find("file 1") != std::string::npos);
    }

    std::istringstream missing("file {1} {2} {}\n1 0.5 0.5 0\n");
    CHECK_THROWS_AS(load_cache_fixture(missing, 2), std::invalid_argument);
    std::istringstream ragged("file {1} {2} {1,2} {}\n1 0.5 0.5 0\n");
    CHECK_THROWS_AS(load_cache_fixture(ragged, 2), std::invalid_argument);
    std::istringstream fractions("# comment\nfile {} {1,2} {2} {1}\n1 1/2 1/4 1/8 1/8\n");
    CHECK(load_cache_fixture(fractions, 2).length(1, 0b11) == doctest::Approx(0.25));
    CHECK_THROWS(load_cache_fixture(std::string("/nonexistent/table.txt"), 2));
}

TEST_CASE("generate_coded_messages - table1.txt under demand (1,2,3)")
{
    const CacheState c = load_cache_fixture(kTable1, 3);
    const LengthVector a = generate_coded_messages(c, {1, 2, 3});
    const LengthVector f = oracle::example1_lengths();
    // the six groups below the full set match the Example 1 lengths
    CHECK((a.head(6) - f.head(6)).cwiseAbs().maxCoeff() < 1e-12);
    // max(W_{1,{2,3}}, W_{2,{1,3}}, W_{3,{1,2}}) = max(0.05, 0.15, 0) under zero padding
    CHECK(a[6] == doctest::Approx(0.15));
}

TEST_CASE("generate_coded_messages - no side information and bad demands")
{
    const CacheState c = centralized_place(oracle::config(3, 2, 1, 0.0));
    const LengthVector a = generate_coded_messages(c, {1, 2, 3});
    CHECK(a.head(3).isApprox(Eigen::VectorXd::Ones(3)));
    CHECK(a.tail(4).isZero());
    CHECK_THROWS_AS(generate_coded_messages(c, {1, 2}), DimensionMismatch);
    CHECK_THROWS_AS(generate_coded_messages(c, {1, 2, 5}), std::invalid_argument);
}

TEST_CASE("generate_coded_messages - centralized worst case gives the symmetric lengths")
{
    for (int K = 2; K <= 4; ++K)
        for (int t = 0; t < K; ++t)
        {
            const double mu = double(t) / K;
            const SystemConfig cfg = oracle::config(K, 2, 1, mu);
            const LengthVector a = generate_coded_messages(centralized_place(cfg), worst_case_demand(cfg));
            const GroupIndex g(K);
            for (int j = 0; j < g.size(); ++j)
                CHECK(a[j] == doctest::Approx(g.cardinality(j) == t + 1 ? (1 - mu) / binomial(K - 1, t) : 0.0)
                                  .epsilon(1e-15));
        }
}

TEST_CASE("generate_coded_messages - equivariant under relabeling users")
{
    const int K = 3;
    const CacheState c = decentralized_place(oracle::config(K, 2, 1, 0.4), 17, 300);
    const DemandVector r{2, 4, 1};
    const LengthVector a = generate_coded_messages(c, r);
    const GroupIndex g(K);

    std::vector<int> perm{1, 2, 3};
    while (std::next_permutation(perm.begin(), perm.end()))
    {
        CacheState pc = c;
        for (UserSet s = 0; s < 8; ++s)
            pc.lengths.col(relabel(s, perm)) = c.lengths.col(s);
        DemandVector pr(3);
        for (int u = 1; u <= K; ++u)
            pr[std::size_t(perm[std::size_t(u - 1)] - 1)] = r[std::size_t(u - 1)];
        const LengthVector pa = generate_coded_messages(pc, pr);
        for (int j = 0; j < g.size(); ++j)
            CHECK(pa[g.index_of(relabel(g.at(j), perm))] == doctest::Approx(a[j]).epsilon(1e-15));
    }
}

TEST_CASE("worst_case_demand - distinct files and library guard")
{
    CHECK(worst_case_demand(oracle::config(3, 2, 1)) == DemandVector{1, 2, 3});
    CHECK(worst_case_demand(oracle::config(2, 2, 1)) == DemandVector{1, 2});
    CHECK(worst_case_demand(oracle::config(4, 2, 1)) == DemandVector{1, 2, 3, 4});
    SystemConfig small = oracle::config(3, 2, 1);
    small.library_size = 2;
    CHECK_THROWS_AS(worst_case_demand(small), InvalidConfig);
}

TEST_CASE("parse_fraction - decimals and fractions")
{
    CHECK(parse_fraction("3/20") == doctest::Approx(0.15));
    CHECK(parse_fraction("0.25") == 0.25);
    CHECK(parse_fraction("1") == 1.0);
    CHECK_THROWS_AS(parse_fraction("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fraction("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fraction("0.5x"), std::invalid_argument);
}
