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

#include "cachedof/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace cachedof
{

std::string to_string(Regime r)
{
    switch (r)
    {
    case Regime::LowM:
        return "low";
    case Regime::Mid:
        return "mid";
    case Regime::HighM:
        return "high";
    }
    return "?";
}

void SystemConfig::validate() const
{
    if (users < 2 || users > kMaxUsers)
        throw InvalidConfig("user count must be in [2, " + std::to_string(kMaxUsers) + "], got " + std::to_string(users));
    if (tx_antennas < 1 || rx_antennas < 1)
        throw InvalidConfig("antenna counts must be positive");
    if (library_size < users)
        throw InvalidConfig("library size L must be at least the user count K");
    if (file_bits < 1)
        throw InvalidConfig("file length F must be positive");
    if (!(cache_size >= 0.0 && cache_size <= 1.0))
        throw InvalidConfig("normalized cache size must lie in [0,1]");
    if (!(power > 0.0) || !std::isfinite(power))
        throw InvalidConfig("transmit power must be positive");
}

Regime SystemConfig::regime() const
{
    if (tx_antennas <= rx_antennas)
        return Regime::LowM;
    if (tx_antennas <= users * rx_antennas)
        return Regime::Mid;
    return Regime::HighM;
}

int popcount(UserSet s)
{
    return std::popcount(s);
}

std::string set_label(UserSet s)
{
    std::string out = "{";
    bool first = true;
    for (int u = 1; s >> (u - 1); ++u)
    {
        if ((s >> (u - 1)) & 1u)
        {
            if (!first)
                out += ',';
            out += std::to_string(u);
            first = false;
        }
    }
    return out + "}";
}

GroupIndex::GroupIndex(int users) : users_(users)
{
    if (users < 2 || users > kMaxUsers)
        throw InvalidConfig("canonical_groups: user count must be in [2, " + std::to_string(kMaxUsers) + "]");

    const UserSet full = (UserSet(1) << users) - 1;
    order_.reserve(full);
    for (UserSet s = 1; s <= full; ++s)
        order_.push_back(s);

    // Members listed ascending; bit-reversed order of the mask ranks sorted member lists.
    auto member_list = [](UserSet s) {
        std::vector<int> m;
        for (int u = 0; u < 32; ++u)
            if ((s >> u) & 1u)
                m.push_back(u);
        return m;
    };
    std::sort(order_.begin(), order_.end(), [&](UserSet a, UserSet b) {
        const int ca = std::popcount(a), cb = std::popcount(b);
        if (ca != cb)
            return ca < cb;
        return member_list(a) < member_list(b);
    });

    position_.assign(full + 1, -1);
    for (int i = 0; i < int(order_.size()); ++i)
        position_[order_[i]] = i;
}

int GroupIndex::index_of(UserSet group) const
{
    if (group == 0 || group >= position_.size())
        throw std::out_of_range("group " + set_label(group) + " is not a nonempty subset of [K]");
    return position_[group];
}

int GroupIndex::cardinality(int index) const
{
    return std::popcount(at(index));
}

std::vector<int> GroupIndex::members(int index) const
{
    std::vector<int> out;
    const UserSet s = at(index);
    for (int u = 1; u <= users_; ++u)
        if ((s >> (u - 1)) & 1u)
            out.push_back(u);
    return out;
}

std::string GroupIndex::label(int index) const
{
    return set_label(at(index));
}

GroupIndex canonical_groups(int users)
{
    return GroupIndex(users);
}

void check_nonnegative(const Eigen::VectorXd &v, int expected_size, const char *what)
{
    if (v.size() != expected_size)
        throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(expected_size) + " entries, got " +
                                std::to_string(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]) || v[i] < 0.0)
            throw std::invalid_argument(std::string(what) + ": entry " + std::to_string(i + 1) +
                                        " must be finite and nonnegative");
}

double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * double(n - k + i) / double(i);
    return std::round(r);
}

UserSet parse_set_label(const std::string &label, int users)
{
    if (label.size() < 2 || label.front() != '{' || label.back() != '}')
        throw std::invalid_argument("bad user-set label '" + label + "'");
    UserSet s = 0;
    std::stringstream body(label.substr(1, label.size() - 2));
    std::string item;
    while (std::getline(body, item, ','))
    {
        if (item.empty())
            continue;
        const int u = std::stoi(item);
        if (u < 1 || u > users)
            throw std::invalid_argument("user " + item + " in label '" + label + "' is out of range");
        s |= UserSet(1) << (u - 1);
    }
    return s;
}

} // namespace cachedof
