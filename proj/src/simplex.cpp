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

#include "cachedof/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cachedof
{

namespace
{

using Tableau = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Tableau layout: rows 0..m-1 constraints, row m objective (reduced costs, last entry = -objective).
// Columns 0..n-1 structural, n..n+m-1 artificial, n+m right-hand side.
class Tableau_solver
{
  public:
    Tableau_solver(const Eigen::MatrixXd &A, const Eigen::VectorXd &b, double tol)
        : m_(int(A.rows())), n_(int(A.cols())), tol_(tol)
    {
        T_.setZero(m_ + 1, n_ + m_ + 1);
        for (int i = 0; i < m_; ++i)
        {
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            T_.row(i).head(n_) = sign * A.row(i);
            T_(i, n_ + i) = 1.0;
            T_(i, n_ + m_) = sign * b[i];
        }
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i)
            basis_[i] = n_ + i;
        active_.assign(m_, true);
    }

    int rhs_col() const { return n_ + m_; }

    void pivot(int row, int col)
    {
        T_.row(row) /= T_(row, col);
        for (int i = 0; i <= m_; ++i)
        {
            if (i == row)
                continue;
            const double f = T_(i, col);
            if (f != 0.0)
                T_.row(i) -= f * T_.row(row);
        }
        basis_[row] = col;
        ++iterations_;
    }

    // Runs Bland pivots on the current objective row over columns [0, ncols).
    LpStatus iterate(int ncols, int max_iter)
    {
        const double cost_tol = tol_;
        for (int it = 0; it < max_iter; ++it)
        {
            int enter = -1;
            for (int j = 0; j < ncols; ++j)
                if (T_(m_, j) < -cost_tol)
                {
                    enter = j;
                    break;
                }
            if (enter < 0)
                return LpStatus::Optimal;

            int leave = -1;
            double best = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m_; ++i)
            {
                if (!active_[i])
                    continue;
                const double a = T_(i, enter);
                if (a <= pivot_tol_)
                    continue;
                const double ratio = T_(i, rhs_col()) / a;
                if (leave < 0 || ratio < best - 1e-12 || (ratio <= best + 1e-12 && basis_[i] < basis_[leave]))
                {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0)
                return LpStatus::Unbounded;
            pivot(leave, enter);
        }
        return LpStatus::IterationLimit;
    }

    Tableau T_;
    int m_, n_;
    double tol_;
    double pivot_tol_ = 1e-9;
    std::vector<int> basis_;
    std::vector<bool> active_;
    int iterations_ = 0;
};

} // namespace

LpSolution solve_lp(const Eigen::MatrixXd &A, const Eigen::VectorXd &b, const Eigen::VectorXd &c, double tol)
{
    if (A.rows() != b.size() || A.cols() != c.size())
        throw std::invalid_argument("solve_lp: inconsistent dimensions");

    const int m = int(A.rows()), n = int(A.cols());
    LpSolution out;
    Tableau_solver s(A, b, tol);
    const int max_iter = 50 * (m + n) + 1000;

    // Phase one: minimize the sum of artificials.
    for (int i = 0; i < m; ++i)
    {
        s.T_.row(m).head(n) -= s.T_.row(i).head(n);
        s.T_(m, s.rhs_col()) -= s.T_(i, s.rhs_col());
    }
    LpStatus st = s.iterate(n + m, max_iter);
    if (st == LpStatus::IterationLimit)
    {
        out.status = st;
        return out;
    }
    const double scale = 1.0 + b.cwiseAbs().sum();
    if (-s.T_(m, s.rhs_col()) > 1e-9 * scale)
    {
        out.status = LpStatus::Infeasible;
        out.iterations = s.iterations_;
        return out;
    }

    // Drive remaining artificials out of the basis; rows that cannot be pivoted are redundant.
    for (int i = 0; i < m; ++i)
    {
        if (s.basis_[i] < n)
            continue;
        int col = -1;
        double best = 1e-9;
        for (int j = 0; j < n; ++j)
            if (std::abs(s.T_(i, j)) > best)
            {
                best = std::abs(s.T_(i, j));
                col = j;
            }
        if (col >= 0)
            s.pivot(i, col);
        else
            s.active_[i] = false;
    }

    // Phase two objective row.
    s.T_.row(m).setZero();
    s.T_.row(m).head(n) = c.transpose();
    for (int i = 0; i < m; ++i)
    {
        if (!s.active_[i])
            continue;
        const double cb = c[s.basis_[i]];
        if (cb != 0.0)
        {
            s.T_.row(m).head(n) -= cb * s.T_.row(i).head(n);
            s.T_(m, s.rhs_col()) -= cb * s.T_(i, s.rhs_col());
        }
    }
    st = s.iterate(n, max_iter);
    out.status = st;
    out.iterations = s.iterations_;
    if (st != LpStatus::Optimal)
        return out;

    out.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (s.active_[i])
        {
            out.x[s.basis_[i]] = std::max(0.0, s.T_(i, s.rhs_col()));
            out.basis.push_back(s.basis_[i]);
        }
    out.objective = c.dot(out.x);
    out.reduced_costs = s.T_.row(m).head(n).transpose();
    return out;
}

double maximize_linear(const Eigen::MatrixXd &A, const Eigen::VectorXd &rhs, const Eigen::VectorXd &w,
                       Eigen::VectorXd *argmax)
{
    const int m = int(A.rows()), n = int(A.cols());
    if (rhs.size() != m || w.size() != n)
        throw std::invalid_argument("maximize_linear: inconsistent dimensions");
    if ((rhs.array() < 0.0).any())
        throw std::invalid_argument("maximize_linear: right-hand side must be nonnegative");

    // Slack form [A I][d; s] = rhs.
    Eigen::MatrixXd S(m, n + m);
    S << A, Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd cost = Eigen::VectorXd::Zero(n + m);
    cost.head(n) = -w;
    const LpSolution sol = solve_lp(S, rhs, cost);
    if (sol.status == LpStatus::Unbounded)
        return std::numeric_limits<double>::infinity();
    if (sol.status != LpStatus::Optimal)
        throw std::runtime_error("maximize_linear: simplex did not converge");
    if (argmax)
        *argmax = sol.x.head(n);
    return -sol.objective;
}

} // namespace cachedof
