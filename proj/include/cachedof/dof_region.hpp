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
 * @file dof_region.hpp
 * @brief Outer and inner DoF regions of the K-user (M,N) MIMO broadcast channel with
 *        general message sets, membership tests and corner-point enumeration.
 *
 * Regions live in R^(2^K-1), one coordinate per multicast group in canonical order.
 *
 * - Outer bound: per-user cut-set rows  sum_{A : i in A} d_A <= N  and the BS row  sum_A d_A <= M.
 * - Inner bound by regime:
 *     LowM  (M <= N):       sum_A d_A <= M
 *     HighM (M > K N):      sum_{A : i in A} d_A <= N  for every user
 *     Mid   (otherwise):    conv(D1 u D2), where D1 is the per-user box with right-hand side M/K
 *                           and D2 adds, for every group A with |A| >= 2, the subspace row
 *                           (|A|-1) sum_B d_B + d_A + sum_{B > A} d_B <= |A| N,
 *                           enforced only when d_A > 0.
 *
 * The Mid-regime hull is never written as half-spaces. It is carried by its corner points;
 * membership and support functions go through the simplex over those points.
 */

#pragma once

#include "cachedof/model.hpp"

#include <string>
#include <vector>

namespace cachedof
{

// Membership tolerance on unit-scale constraints.
inline constexpr double kMembershipTol = 1e-9;
// Two corner points closer than this in the infinity norm are the same point.
inline constexpr double kVertexTol = 1e-7;

enum class RowKind
{
    UserCut,  // per-user stream budget
    BsCut,    // total stream budget
    Subspace  // intersection-dimension row of group `index`
};

struct RowTag
{
    RowKind kind = RowKind::UserCut;
    int index = 0;      // user (1-based) for UserCut, group position for Subspace, unused for BsCut
    bool gated = false; // enforced only when d_index > 0
};

std::string describe(const RowTag &tag, const GroupIndex &groups);

/// { d >= 0 : A d <= c }, with optional indicator-gated rows.
struct Polytope
{
    Eigen::MatrixXd A;
    Eigen::VectorXd c;
    std::vector<RowTag> rows;
    int users = 0; // K when the coordinates are the canonical groups; 0 for a free-standing polytope

    int dimension() const { return int(A.cols()); }
    int row_count() const { return int(A.rows()); }
    bool has_gated_rows() const;

    // Same rows with every indicator dropped (the relaxation used for the NDT upper bound).
    Polytope without_indicators() const;
};

struct RegionSpec
{
    Regime regime = Regime::LowM;
    int users = 0;
    int tx_antennas = 0;
    int rx_antennas = 0;
    // LowM / HighM: the inner region. Mid: D1.
    Polytope primary;
    // Mid only: D2 with gated subspace rows.
    Polytope d2;

    bool is_union() const { return regime == Regime::Mid; }
};

enum class CornerSource
{
    Axis,
    Box,
    D1,
    D2,
    Vertex
};

std::string to_string(CornerSource s);

/// Corner points of a region, sorted in descending lexicographic order (canonical group order)
/// and deduplicated at kVertexTol. The origin is not listed.
struct CornerPointSet
{
    std::vector<DofTuple> points;
    std::vector<CornerSource> sources;

    int size() const { return int(points.size()); }
    // Points as columns.
    Eigen::MatrixXd matrix() const;
};

Polytope outer_bound(const SystemConfig &cfg);
RegionSpec inner_bound(const SystemConfig &cfg);

// Per-user box sum_{A : i in A} d_A <= rhs, i = 1..K.
Polytope per_user_box(int users, double rhs);

// Mid-regime D2 with indicator-gated subspace rows.
Polytope subspace_region(int users, int tx_antennas, int rx_antennas);

/// Plain polytopes: A d <= c + eps and d >= -eps; gated rows only where d_gate > eps.
bool contains(const Polytope &poly, const DofTuple &d, double eps = kMembershipTol);

/// Inner-region membership. The Mid regime is decided by LP feasibility over the corner points.
bool contains(const RegionSpec &region, const DofTuple &d, double eps = kMembershipTol);

/// Membership in conv(corners u {0}) via the hull gauge.
bool contains(const CornerPointSet &corners, const DofTuple &d, double eps = kMembershipTol);

/// Minkowski gauge of conv(corners u {0}) at d: the least t >= 0 with d / t in the hull.
/// Coordinates where d is zero are projected away first, which is exact because every region
/// here is closed under lowering coordinates. Returns +inf if d is not in the cone.
double hull_gauge(const CornerPointSet &corners, const DofTuple &d);

/// Corner points of an inner region. LowM uses the closed form (M on one axis). HighM and D1
/// use support enumeration of the per-user box. D2 corner points come from the support
/// enumeration with indicator rows admitted only for groups in the support.
/// Results are memoized per (regime, K, M, N). The Mid regime is limited to K <= 4.
CornerPointSet corner_points(const RegionSpec &region);

/// Support enumeration on a single polytope: for every support set, the coordinates outside it
/// are zeroed and every square subsystem of admissible rows is solved (rank-revealing LU).
/// A gated row is admissible only when its group is in the support. Solutions that are
/// strictly positive on the support and satisfy all admissible rows are kept, so each vertex is
/// found under exactly its own support. The origin is excluded.
/// When the rows are invariant under relabeling users, only one support per orbit is solved
/// and the vertices found are expanded over all relabelings.
CornerPointSet enumerate_support_vertices(const Polytope &poly, CornerSource tag = CornerSource::Vertex);

/// Independent oracle: every choice of `dimension` constraints among the rows and the coordinate
/// planes is intersected; feasible intersections are the vertices. The origin is included.
/// Throws std::invalid_argument on gated rows and std::domain_error on unbounded polytopes.
CornerPointSet brute_force_vertices(const Polytope &poly);

/// Disjoint-family points for the HighM box: one value on each group of a
/// pairwise-disjoint family. These are vertices of the per-user box but not all of them.
std::vector<DofTuple> disjoint_family_points(int users, double value);

/// max_{d in region} w^T d
double support_function(const Polytope &poly, const Eigen::VectorXd &w);
double support_function(const CornerPointSet &corners, const Eigen::VectorXd &w);

/// Removes points within `tol` (infinity norm) of an earlier point and sorts the rest in
/// descending lexicographic order.
void canonicalize(CornerPointSet &set, double tol = kVertexTol);

/// True when both sets hold the same points at `tol`.
bool same_points(const CornerPointSet &a, const CornerPointSet &b, double tol = kVertexTol);

} // namespace cachedof
