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

#pragma once

#include "cachedof/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cachedof
{

struct CacheValidationError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

enum class PlacementKind
{
    Centralized,
    Decentralized,
    Fixture
};

// Subfile lengths as fractions of F. Row = file (0-based), column = user-set bitmask,
// column 0 being the part cached nowhere.
struct CacheState
{
    int users = 0;
    Eigen::MatrixXd lengths;
    PlacementKind kind = PlacementKind::Centralized;

    int files() const { return int(lengths.rows()); }

    // file is 1-based
    double length(int file, UserSet cachers) const { return lengths(file - 1, Eigen::Index(cachers)); }

    // Per-user total cached fraction, sum over files and over sets containing the user.
    Eigen::VectorXd memory_usage() const;

    // Every row sums to 1 and all entries lie in [0, 1]; throws CacheValidationError naming the file.
    void check_partition(double eps = 1e-9) const;
    // memory_usage() <= mu L + eps for every user.
    void check_memory(double mu, double eps = 1e-9) const;
};

// 1-based file index requested by each user.
using DemandVector = std::vector<int>;

/// Each file split into C(K, K mu) equal subfiles, one per user set of size K mu.
/// Throws std::invalid_argument when K mu is not an integer.
CacheState centralized_place(const SystemConfig &cfg);

/// Each user caches floor(mu * bits) of the `bits` units of every file, chosen uniformly
/// without replacement, independently across users and files. bits = 0 returns the
/// large-file limit mu^|S| (1-mu)^(K-|S|) exactly.
CacheState decentralized_place(const SystemConfig &cfg, std::uint64_t seed, long bits = 10000);

/// Reads a whitespace table: a header `file <set> ... <set>` with set labels such as {1,2}
/// and {} for the uncached part, then one row per file. Entries are decimals or fractions
/// like 3/20. Lines starting with '#' are ignored. Every cell must be present.
CacheState load_cache_fixture(std::istream &in, int users);
CacheState load_cache_fixture(const std::string &path, int users);

/// Zero-padded XOR combining: a_A = max_{i in A} |W_{r_i, A \ {i}}|, in canonical group order.
LengthVector generate_coded_messages(const CacheState &cache, const DemandVector &demand);

/// (1, 2, ..., K); requires L >= K.
DemandVector worst_case_demand(const SystemConfig &cfg);

/// Parses "0.25", "3/20" or "1".
double parse_fraction(const std::string &token);

} // namespace cachedof
