// Copyright 2026 The nonlocal_lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nonlocal/lp.h"

#include "nonlocal/error.h"

namespace nonlocal {

namespace {

class Tableau {
   public:
    Tableau(const LinearProgram &lp) : m_(lp.b.size()), n_(lp.c.size()) {
        rows_.assign(m_, std::vector<Rational>(n_ + m_, 0));
        rhs_.resize(m_);
        sign_.assign(m_, 1);
        for (std::size_t i = 0; i < m_; i++) {
            require(lp.a[i].size() == n_, ErrorKind::kLengthMismatch, "constraint row length != variable count");
            sign_[i] = lp.b[i] < 0 ? -1 : 1;
            for (std::size_t j = 0; j < n_; j++) {
                rows_[i][j] = sign_[i] * lp.a[i][j];
            }
            rows_[i][n_ + i] = 1;
            rhs_[i] = sign_[i] * lp.b[i];
        }
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; i++) {
            basis_[i] = n_ + i;
        }
    }

    /// Recomputes reduced costs z_j = c_B B^-1 A_j - c_j for the given costs.
    void load_objective(const std::vector<Rational> &cost) {
        cost_ = cost;
        reduced_.assign(n_ + m_, 0);
        value_ = 0;
        for (std::size_t j = 0; j < n_ + m_; j++) {
            reduced_[j] = -cost_[j];
        }
        for (std::size_t i = 0; i < m_; i++) {
            const Rational &cb = cost_[basis_[i]];
            if (cb == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n_ + m_; j++) {
                if (rows_[i][j] != 0) {
                    reduced_[j] += cb * rows_[i][j];
                }
            }
            value_ += cb * rhs_[i];
        }
    }

    /// Runs Bland's rule until optimal (true) or unbounded (false). Columns at
    /// or beyond `column_limit` never enter.
    bool optimize(std::size_t column_limit, std::uint64_t &pivots) {
        while (true) {
            std::size_t enter = column_limit;
            for (std::size_t j = 0; j < column_limit; j++) {
                if (reduced_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == column_limit) {
                return true;
            }
            std::size_t leave = m_;
            Rational best_ratio;
            for (std::size_t i = 0; i < m_; i++) {
                if (rows_[i][enter] <= 0) {
                    continue;
                }
                Rational ratio = rhs_[i] / rows_[i][enter];
                if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == m_) {
                return false;
            }
            pivot(leave, enter);
            pivots++;
        }
    }

    void pivot(std::size_t r, std::size_t s) {
        Rational p = rows_[r][s];
        for (auto &v : rows_[r]) {
            if (v != 0) {
                v /= p;
            }
        }
        rhs_[r] /= p;
        for (std::size_t i = 0; i < m_; i++) {
            if (i == r || rows_[i][s] == 0) {
                continue;
            }
            Rational f = rows_[i][s];
            for (std::size_t j = 0; j < n_ + m_; j++) {
                if (rows_[r][j] != 0) {
                    rows_[i][j] -= f * rows_[r][j];
                }
            }
            rhs_[i] -= f * rhs_[r];
        }
        if (reduced_[s] != 0) {
            Rational f = reduced_[s];
            for (std::size_t j = 0; j < n_ + m_; j++) {
                if (rows_[r][j] != 0) {
                    reduced_[j] -= f * rows_[r][j];
                }
            }
            value_ -= f * rhs_[r];
        }
        basis_[r] = s;
    }

    /// Pivots zero-level artificials out of the basis where an original column
    /// allows it; rows where none does are redundant and keep their artificial.
    void drive_out_artificials(std::uint64_t &pivots) {
        for (std::size_t i = 0; i < m_; i++) {
            if (basis_[i] < n_) {
                continue;
            }
            for (std::size_t j = 0; j < n_; j++) {
                if (rows_[i][j] != 0) {
                    pivot(i, j);
                    pivots++;
                    break;
                }
            }
        }
    }

    const Rational &value() const {
        return value_;
    }

    std::vector<Rational> primal() const {
        std::vector<Rational> x(n_, 0);
        for (std::size_t i = 0; i < m_; i++) {
            if (basis_[i] < n_) {
                x[basis_[i]] = rhs_[i];
            }
        }
        return x;
    }

    /// y_i = (c_B B^-1)_i, read off the artificial columns and undone for the
    /// row sign normalization.
    std::vector<Rational> dual() const {
        std::vector<Rational> y(m_);
        for (std::size_t i = 0; i < m_; i++) {
            y[i] = sign_[i] * (reduced_[n_ + i] + cost_[n_ + i]);
        }
        return y;
    }

   private:
    std::size_t m_;
    std::size_t n_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> rhs_;
    std::vector<int> sign_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> cost_;
    std::vector<Rational> reduced_;
    Rational value_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram &lp) {
    require(lp.a.size() == lp.b.size(), ErrorKind::kLengthMismatch, "row count != rhs length");
    std::size_t m = lp.b.size();
    std::size_t n = lp.c.size();
    Tableau t(lp);
    LpSolution sol;

    std::vector<Rational> phase1(n + m, 0);
    for (std::size_t i = 0; i < m; i++) {
        phase1[n + i] = -1;
    }
    t.load_objective(phase1);
    t.optimize(n, sol.pivots);
    if (t.value() != 0) {
        sol.status = LpStatus::kInfeasible;
        return sol;
    }
    t.drive_out_artificials(sol.pivots);

    std::vector<Rational> phase2(n + m, 0);
    for (std::size_t j = 0; j < n; j++) {
        phase2[j] = lp.c[j];
    }
    t.load_objective(phase2);
    if (!t.optimize(n, sol.pivots)) {
        sol.status = LpStatus::kUnbounded;
        return sol;
    }
    sol.status = LpStatus::kOptimal;
    sol.x = t.primal();
    sol.objective = t.value();
    sol.dual = t.dual();
    return sol;
}

}  // namespace nonlocal
