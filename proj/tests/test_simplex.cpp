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

#include "cachedof/simplex.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace cachedof;

namespace
{

// Best basic feasible solution by trying every column subset of size rank(A) = rows.
double brute_force_lp(const Eigen::MatrixXd &A, const Eigen::VectorXd &b, const Eigen::VectorXd &c)
{
    const int m = int(A.rows()), n = int(A.cols());
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << n); ++mask)
    {
        if (__builtin_popcount(mask) != m)
            continue;
        std::vector<int> cols;
        for (int j = 0; j < n; ++j)
            if (mask >> j & 1u)
                cols.push_back(j);
        const Eigen::MatrixXd B = A(Eigen::all, cols);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (lu.rank() < m)
            continue;
        const Eigen::VectorXd xb = lu.solve(b);
        if (xb.minCoeff() < -1e-12)
            continue;
        best = std::min(best, c(cols).dot(xb));
    }
    return best;
}

} // namespace

TEST_CASE("solve_lp - small problem with a known optimum")
{
    // min -x1 - 2 x2  s.t.  x1 + x2 + s1 = 4,  x2 + s2 = 3   ->  x = (1, 3), objective -7
    Eigen::MatrixXd A(2, 4);
    A << 1, 1, 1, 0, 0, 1, 0, 1;
    Eigen::VectorXd b(2), c(4);
    b << 4, 3;
    c << -1, -2, 0, 0;
    const LpSolution s = solve_lp(A, b, c);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(-7.0).epsilon(1e-12));
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.x[1] == doctest::Approx(3.0));
    CHECK((A * s.x - b).norm() < 1e-12);
    CHECK(s.reduced_costs.minCoeff() > -1e-9);
}

TEST_CASE("solve_lp - infeasible and unbounded")
{
    Eigen::MatrixXd A(1, 2);
    A << 1, 1;
    Eigen::VectorXd b(1), c(2);
    b << -1;
    c << 1, 1;
    CHECK(solve_lp(A, b, c).status == LpStatus::Infeasible);

    // x1 - x2 = 1, min -x1 is unbounded along x1 = x2 + 1
    A << 1, -1;
    b << 1;
    c << -1, 0;
    CHECK(solve_lp(A, b, c).status == LpStatus::Unbounded);
}

TEST_CASE("solve_lp - redundant rows are dropped")
{
    Eigen::MatrixXd A(3, 3);
    A << 1, 1, 1, 2, 2, 2, 1, 0, 0;
    Eigen::VectorXd b(3), c(3);
    b << 1, 2, 0.25;
    c << 0, 1, 2;
    const LpSolution s = solve_lp(A, b, c);
    REQUIRE(s.status == LpStatus::Optimal);
    // x1 = 1/4 fixed, the remaining 3/4 goes to x2
    CHECK(s.objective == doctest::Approx(0.75));
}

TEST_CASE("solve_lp - degenerate cycling example terminates under Bland's rule")
{
    // Beale's example in equality form; optimum at x1 = x3 = 1, slack x5 = 3/4: -3/4 - 1/2 = -5/4
    Eigen::MatrixXd A(3, 7);
    A << 0.25, -8, -1, 9, 1, 0, 0, 0.5, -12, -0.5, 3, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
    Eigen::VectorXd b(3), c(7);
    b << 0, 0, 1;
    c << -0.75, 20, -0.5, 6, 0, 0, 0;
    const LpSolution s = solve_lp(A, b, c);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective == doctest::Approx(-1.25).epsilon(1e-12));
}

TEST_CASE("solve_lp - agrees with exhaustive basis search on random problems")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int solved = 0;
    for (int t = 0; t < 200; ++t)
    {
        const int m = 3, n = 8;
        Eigen::MatrixXd A(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                A(i, j) = u(rng);
        Eigen::VectorXd x0(n), c(n);
        for (int j = 0; j < n; ++j)
        {
            x0[j] = u(rng);
            c[j] = u(rng) - 0.2;
        }
        const Eigen::VectorXd b = A * x0; // feasible by construction
        const LpSolution s = solve_lp(A, b, c);
        const double ref = brute_force_lp(A, b, c);
        if (s.status == LpStatus::Unbounded)
            continue;
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.objective == doctest::Approx(ref).epsilon(1e-9));
        ++solved;
    }
    CHECK(solved > 50);
}

TEST_CASE("maximize_linear - box and unbounded direction")
{
    Eigen::MatrixXd A(2, 2);
    A << 1, 0, 0, 1;
    Eigen::VectorXd rhs(2), w(2), arg;
    rhs << 2, 3;
    w << 1, 1;
    CHECK(maximize_linear(A, rhs, w, &arg) == doctest::Approx(5.0));
    CHECK(arg[0] == doctest::Approx(2.0));

    Eigen::MatrixXd B(1, 2);
    B << 1, 0;
    Eigen::VectorXd r1(1);
    r1 << 1;
    CHECK(std::isinf(maximize_linear(B, r1, w)));
}
