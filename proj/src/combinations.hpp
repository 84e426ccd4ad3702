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

#include <numeric>
#include <type_traits>
#include <vector>

namespace cachedof::detail
{

// Calls fn(choice) for every k-subset of {0..n-1} in lexicographic order.
// fn may return false to stop early (void-returning callables never stop).
template <class Fn> bool for_each_combination(int n, int k, Fn &&fn)
{
    if (k > n || k < 0)
        return true;
    std::vector<int> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), 0);
    while (true)
    {
        if constexpr (std::is_same_v<decltype(fn(idx)), bool>)
        {
            if (!fn(idx))
                return false;
        }
        else
            fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[std::size_t(i)] == n - k + i)
            --i;
        if (i < 0)
            return true;
        ++idx[std::size_t(i)];
        for (int j = i + 1; j < k; ++j)
            idx[std::size_t(j)] = idx[std::size_t(j - 1)] + 1;
    }
}

} // namespace cachedof::detail
