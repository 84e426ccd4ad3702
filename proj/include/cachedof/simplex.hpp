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

#include <vector>

namespace cachedof
{

enum class LpStatus
{
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit
};

struct LpSolution
{
    LpStatus status = LpStatus::Infeasible;
    double objective = 0.0;
    Eigen::VectorXd x;              // primal solution, one entry per column of A
    Eigen::VectorXd reduced_costs;  // c_j - y^T A_j at the final basis
    std::vector<int> basis;         // basic column per surviving row
    int iterations = 0;
};

/// Dense two-phase primal simplex for
///
///     min c^T x   s.t.   A x = b,  x >= 0.
///
/// Entering and leaving variables follow Bland's rule (lowest index), so the method
/// terminates on degenerate problems and is deterministic. Rows of A that turn out to be
/// linearly dependent are dropped after phase one.
LpSolution solve_lp(const Eigen::MatrixXd &A, const Eigen::VectorXd &b, const Eigen::VectorXd &c,
                    double tol = 1e-10);

/// max w^T d over { d >= 0 : A d <= rhs } with rhs >= 0 (origin feasible).
/// Returns +inf when unbounded.
double maximize_linear(const Eigen::MatrixXd &A, const Eigen::VectorXd &rhs, const Eigen::VectorXd &w,
                       Eigen::VectorXd *argmax = nullptr);

} // namespace cachedof
