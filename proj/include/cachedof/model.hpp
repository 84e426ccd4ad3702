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

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cachedof
{

// Error types shared by all modules
struct InvalidConfig : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct RegimeError : std::logic_error
{
    using std::logic_error::logic_error;
};

// Largest user count supported by the dense group indexing.
inline constexpr int kMaxUsers = 5;

// Antenna regime by ratio M/N: LowM (M/N <= 1), Mid (1 < M/N <= K), HighM (M/N > K).
enum class Regime
{
    LowM,
    Mid,
    HighM
};

std::string to_string(Regime r);

// Channel and caching dimensions. Field meaning follows the usual notation:
// users = K, tx_antennas = M, rx_antennas = N, library_size = L, file_bits = F, cache_size = mu, power = P.
struct SystemConfig
{
    int users = 3;
    int tx_antennas = 5;
    int rx_antennas = 3;
    int library_size = 4;
    long file_bits = 100;
    double cache_size = 0.0;
    double power = 1000.0;

    // Throws InvalidConfig when an invariant is violated.
    void validate() const;

    Regime regime() const;

    // M / N
    double antenna_ratio() const { return double(tx_antennas) / double(rx_antennas); }
};

// Bitmask over users: bit (u-1) set when user u (1-based) belongs to the set.
using UserSet = std::uint32_t;

/// Canonical ordering of the 2^K - 1 multicast groups: ascending cardinality, ties broken
/// lexicographically on the sorted member lists. Positions are 0-based in memory and
/// 1-based whenever written out.
class GroupIndex
{
  public:
    explicit GroupIndex(int users);

    int users() const { return users_; }
    int size() const { return int(order_.size()); }

    UserSet at(int index) const { return order_.at(std::size_t(index)); }
    int index_of(UserSet group) const;

    int cardinality(int index) const;
    bool contains_user(int index, int user) const { return (at(index) >> (user - 1)) & 1u; }
    std::vector<int> members(int index) const;

    // "{1,2}" style label
    std::string label(int index) const;

    const std::vector<UserSet> &order() const { return order_; }

  private:
    int users_;
    std::vector<UserSet> order_;
    std::vector<int> position_; // indexed by mask
};

GroupIndex canonical_groups(int users);

int popcount(UserSet s);
std::string set_label(UserSet s);
// Inverse of set_label; throws std::invalid_argument on a malformed label or a user outside 1..users.
UserSet parse_set_label(const std::string &label, int users);

// Dense vectors over the canonical group order. A DoF tuple counts data streams per group;
// a message length vector holds fractions of F per group. Zero entries mean "absent".
using DofTuple = Eigen::VectorXd;
using LengthVector = Eigen::VectorXd;

// Checks size, finiteness and nonnegativity; throws DimensionMismatch / std::invalid_argument.
void check_nonnegative(const Eigen::VectorXd &v, int expected_size, const char *what);

double binomial(int n, int k);

} // namespace cachedof
