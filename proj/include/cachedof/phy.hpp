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

/**
 * @file phy.hpp
 * @brief Linear precoders and combiners achieving a DoF tuple, their verification, and the
 *        finite-SNR delivery simulation.
 *
 * Fractional tuples use a kappa-symbol extension: each H_i is replicated on the diagonal of
 * kron(I_kappa, H_i) and kappa * d_A streams are sent per group. An activation matrix T with
 * orthonormal columns maps the D = kappa * sum(d) virtual inputs onto the kappa * M_a physical
 * inputs, so every scheme below works on H~_i = kron(I_kappa, H_i) T.
 *
 * Constructions by regime:
 *   LowM       random orthonormal precoders; user i inverts H~_i U with min(M, N) antennas.
 *   HighM, D1  meta-signal zero forcing: user i gets n_i = sum_{A : i in A} kappa d_A rows of a
 *              random combiner, the stacked rows are inverted at the transmitter, and a group
 *              precoder is the sum of its members' columns.
 *   D2         equalized channels: for every |A| >= 2 a null-space basis of the stacked system
 *              yields G_A and V^i_A with V^i_A H~_i = G_A; unicast combiners are random;
 *              U = pinv([G_A1; G_A2; ...]).
 */

#pragma once

#include "cachedof/model.hpp"
#include "cachedof/ndt.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cachedof
{

struct DesignError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

// The DoF tuple lies outside every piece of the inner region the constructions cover.
struct InfeasibleDesign : DesignError
{
    using DesignError::DesignError;
};

// Relative check tolerance for nulling and equalization.
inline constexpr double kSchemeTol = 1e-8;
// Singular values below this fraction of the largest are treated as zero.
inline constexpr double kRankTol = 1e-10;

struct ChannelSet
{
    std::vector<Eigen::MatrixXcd> H; // one N x M_a matrix per user
};

/// K i.i.d. CN(0,1) matrices of shape N x M_a, reproducible per seed.
ChannelSet sample_channels(const SystemConfig &cfg, int active_antennas, std::uint64_t seed);

enum class SchemeKind
{
    ReceiveZeroForcing, // LowM
    MetaSignal,         // HighM and D1
    Equalized           // D2
};

std::string to_string(SchemeKind k);

struct GroupStreams
{
    int group = 0;        // canonical position
    int streams = 0;      // kappa * d_A
    Eigen::MatrixXcd U;   // D x streams, unit-norm columns
    Eigen::MatrixXcd G;   // streams x D, equalized schemes only
    std::vector<int> users;                // 1-based members
    std::vector<Eigen::MatrixXcd> V;       // per member, streams x (kappa N)
};

struct LinearScheme
{
    SchemeKind kind = SchemeKind::Equalized;
    int kappa = 1;
    int active_antennas = 0;   // M_a physical inputs used
    Eigen::MatrixXcd T;        // (kappa M_a) x D activation, orthonormal columns
    DofTuple d;
    std::vector<GroupStreams> groups; // active groups in canonical order

    int streams() const;
};

/// Smallest kappa in [1, 16] with kappa * d integral; throws DesignError otherwise.
int extension_factor(const DofTuple &d);

/// kron(I_kappa, H_i[:, 0:M_a]) T
Eigen::MatrixXcd extended_channel(const Eigen::MatrixXcd &H, const LinearScheme &scheme);

/// Equalized construction budget: every group A with |A| = s >= 2, active or not, needs
/// sum_{B >= A} d_B <= s min(N, sum d) - (s - 1) sum d, because the channels of all groups
/// containing A share the common row space of the members of A.
/// Returns the canonical position of the first group that breaks it, or -1.
int overloaded_subgroup(const DofTuple &d, const SystemConfig &cfg);

/// Builds the linear scheme for d. Throws InfeasibleDesign if d lies in none of the pieces the
/// constructions cover, DesignError if a null space or a stacked channel is too small.
LinearScheme design_scheme(const ChannelSet &H, const DofTuple &d, const SystemConfig &cfg, std::uint64_t seed);

struct SchemeReport
{
    double nulling = 0.0;        // max ||V^i_A H~_i U_B|| / (||V^i_A|| ||H~_i|| ||U_B||), B != A
    double rank_margin = 0.0;    // min sigma_min / sigma_max of V^i_A H~_i U_A
    double equalization = 0.0;   // max ||V^i_A H~_i - G_A|| / ||G_A||, equalized schemes only
    bool nulling_ok = false;
    bool rank_ok = false;
    bool equalization_ok = false;

    bool ok() const { return nulling_ok && rank_ok && equalization_ok; }
};

SchemeReport verify_scheme(const LinearScheme &scheme, const ChannelSet &H, const DofTuple &d);

/// Per-group rate in bits per channel use, indexed by canonical position (0 for inactive groups).
/// Each stream gets power P / sum(d); noise is whitened through V^i_A; multicast takes the
/// minimum over members; the kappa slots are averaged.
Eigen::VectorXd phase_rates(const LinearScheme &scheme, const ChannelSet &H, double P);

struct PhaseStats
{
    DofTuple point;
    double weight = 0.0;
    Eigen::VectorXd mean_rate; // per group, averaged over draws
    double time = 0.0;         // T_k / F from the mean rates
};

struct SimResult
{
    double power = 0.0;
    int draws = 0;
    std::vector<PhaseStats> phases;
    double time = 0.0;     // sum of phase times, in units of F
    double ndt = 0.0;      // time * log2(P)
    double ndt_mean = 0.0; // per-draw NDT, mean
    double ndt_std = 0.0;  // per-draw NDT, standard deviation
    double ndt_asymptotic = 0.0;
};

/// Monte Carlo delivery time of a plan: per draw and phase k, T_k = max_A f_k(A) / R_A with
/// f_k = beta_k e_k. `ndt` uses draw-averaged rates; `ndt_mean` averages per-draw NDTs.
/// One result per power in `powers` (linear scale); channels and designs are shared across them.
std::vector<SimResult> simulate_delivery(const DeliveryPlan &plan, const LengthVector &f, const SystemConfig &cfg,
                                         const std::vector<double> &powers, int draws, std::uint64_t seed);

SimResult simulate_delivery(const DeliveryPlan &plan, const LengthVector &f, const SystemConfig &cfg, double power,
                            int draws, std::uint64_t seed);

} // namespace cachedof
