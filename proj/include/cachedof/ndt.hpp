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

#include "cachedof/dof_region.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace cachedof
{

// One time-sharing phase: the corner point used and the time spent on it.
struct Phase
{
    DofTuple point;
    double weight = 0.0;
};

struct DeliveryPlan
{
    double tau = 0.0;
    DofTuple d_star;            // f / tau where f > 0
    std::vector<Phase> phases;  // weights sum to tau; sum of weight * point equals f
};

struct NdtBounds
{
    double tau_a = 0.0;
    double tau_l = 0.0;
    std::optional<double> tau_u; // Mid regime only
    double rho = 1.0;            // tau_a / tau_l
};

// Raised when a solved instance breaks the sandwich or gap guarantees.
struct GapViolation : std::runtime_error
{
    GapViolation(const std::string &what, LengthVector witness)
        : std::runtime_error(what), f(std::move(witness))
    {
    }
    LengthVector f;
};

/// Minimum delivery time for message lengths f: the least tau with f / tau in the inner region,
/// found as min sum(beta) s.t. sum_j beta_j e_j = f over the corner points e_j.
///
/// Coordinates with f_A = 0 are dropped and the corner points projected before solving.
/// Points are ranked in descending lexicographic order; among optimal decompositions the one
/// with the fewest phases and, within that, the lexicographically smallest index set is
/// returned. The search is capped; past the cap the simplex basis is returned as is.
DeliveryPlan solve_ndt(const LengthVector &f, const SystemConfig &cfg);

/// Same optimum as solve_ndt without the phase decomposition.
double solve_ndt_tau(const LengthVector &f, const SystemConfig &cfg);

/// max( sum f / M, max_i sum_{A : i in A} f_A / N )
double lower_bound_ndt(const LengthVector &f, const SystemConfig &cfg);

/// max over the indicator-free D2 rows of (a_r . f) / c_r. Mid regime only; RegimeError otherwise.
double upper_bound_ndt(const LengthVector &f, const SystemConfig &cfg);

/// tau_a, tau_l, tau_u and their ratio, with the guarantees checked:
/// tau_l <= tau_a (<= tau_u), rho <= M/N in the Mid regime and rho = 1 otherwise.
/// Throws std::invalid_argument for f = 0 and GapViolation on a broken guarantee.
NdtBounds gap(const LengthVector &f, const SystemConfig &cfg, double eps = 1e-9);

/// Per-group DoF when every group of size s carries the same number of streams.
double symmetric_group_dof(const SystemConfig &cfg, int s);

/// Worst-case NDT under centralized placement. Non-integer K mu interpolates linearly
/// between the neighbouring grid points.
double centralized_worst_ndt(const SystemConfig &cfg);

/// Worst-case NDT under decentralized placement with the large-file lengths
/// a_A = mu^(|A|-1) (1-mu)^(K-|A|+1). The Mid regime solves the K-dimensional problem over
/// size-symmetric tuples.
double decentralized_worst_ndt(const SystemConfig &cfg);

/// Lengths of the coded messages for the centralized worst-case demand at integer K mu.
LengthVector centralized_symmetric_lengths(int users, double mu);

/// Lengths of the coded messages for the decentralized worst-case demand in the large-file limit.
LengthVector decentralized_lln_lengths(int users, double mu);

/// One message at a time with min(M, N) streams.
double benchmark_time_sharing(const LengthVector &f, const SystemConfig &cfg);

/// Messages batched by group size, each batch zero-padded to its longest message and sent at
/// symmetric_group_dof. For N > 1 this is an extrapolated baseline, see group_by_group_extrapolated.
double benchmark_group_by_group(const LengthVector &f, const SystemConfig &cfg);
bool group_by_group_extrapolated(const SystemConfig &cfg);

/// The time-sharing benchmark as a plan: one phase per message at min(M, N) streams.
DeliveryPlan time_sharing_plan(const LengthVector &f, const SystemConfig &cfg);

} // namespace cachedof
