#pragma once
// Exact rational linear programming: revised two-phase simplex over
//   minimise c·x  subject to  A x = b,  x >= 0,
// with Bland's rule for entering and leaving variables (no cycling).
// Columns are stored sparsely; the basis inverse is kept dense since the
// problems built by this library have few rows and many columns.

#include "adhesive/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace adhesive::lp {

struct SparseColumn {
    std::vector<std::pair<std::uint32_t, Rational>> entries; // (row, value), value != 0

    void add(std::uint32_t row, const Rational& v) {
        if (!v.is_zero()) entries.emplace_back(row, v);
    }
};

struct Problem {
    std::size_t rows = 0;
    std::vector<SparseColumn> columns;
    RationalVector rhs;  // size rows
    RationalVector cost; // size columns; empty means "find any feasible point"

    std::size_t add_column(SparseColumn c, const Rational& cst = Rational(0)) {
        columns.push_back(std::move(c));
        if (!cost.empty() || !cst.is_zero()) {
            cost.resize(columns.size() - 1);
            cost.push_back(cst);
        }
        return columns.size() - 1;
    }
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
    Status status = Status::infeasible;
    Rational objective;
    RationalVector x; // values of the structural columns (empty unless optimal)
    // Row multipliers. Optimal: c_j - y·A_j >= 0 for every column.
    // Infeasible: y·A_j <= 0 for every column and y·b > 0 (a Farkas ray).
    RationalVector y;
};

namespace detail {

class Simplex {
public:
    explicit Simplex(const Problem& p) : p_(p), m_(p.rows), n_(p.columns.size()) {
        if (p.rhs.size() != m_) throw std::invalid_argument("lp: rhs size mismatch");
        if (!p.cost.empty() && p.cost.size() != n_) throw std::invalid_argument("lp: cost size mismatch");
        flip_.assign(m_, false);
        for (std::size_t i = 0; i < m_; ++i) flip_[i] = p.rhs[i].sign() < 0;
        binv_.assign(m_, RationalVector(m_));
        xb_.resize(m_);
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            binv_[i][i] = Rational(1);
            xb_[i] = flip_[i] ? -p.rhs[i] : p.rhs[i];
            basis_[i] = n_ + i; // artificial
        }
        in_basis_.assign(n_ + m_, -1);
        for (std::size_t i = 0; i < m_; ++i) in_basis_[n_ + i] = static_cast<long>(i);
    }

    Solution run() {
        Solution sol;
        // Phase 1: minimise the sum of artificials.
        std::vector<Rational> c1(n_ + m_);
        for (std::size_t i = 0; i < m_; ++i) c1[n_ + i] = Rational(1);
        if (!optimise(c1, true)) throw std::logic_error("lp: phase 1 unbounded");
        Rational infeas;
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] >= n_) infeas += xb_[i];
        if (infeas.sign() > 0) {
            sol.status = Status::infeasible;
            sol.y = duals(c1);
            return sol;
        }
        drive_out_artificials();
        std::vector<Rational> c2(n_ + m_);
        for (std::size_t j = 0; j < n_ && !p_.cost.empty(); ++j) c2[j] = p_.cost[j];
        if (!optimise(c2, false)) {
            sol.status = Status::unbounded;
            return sol;
        }
        sol.status = Status::optimal;
        sol.x.assign(n_, Rational(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) sol.x[basis_[i]] = xb_[i];
        for (std::size_t j = 0; j < n_ && !p_.cost.empty(); ++j)
            if (!sol.x[j].is_zero()) sol.objective += p_.cost[j] * sol.x[j];
        sol.y = duals(c2);
        return sol;
    }

private:
    // c_B B^{-1}, mapped back to the unflipped rows.
    RationalVector duals(const std::vector<Rational>& c) const {
        RationalVector y(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const Rational& cb = c[basis_[i]];
            if (cb.is_zero()) continue;
            for (std::size_t k = 0; k < m_; ++k)
                if (!binv_[i][k].is_zero()) y[k] += cb * binv_[i][k];
        }
        for (std::size_t k = 0; k < m_; ++k)
            if (flip_[k]) y[k] = -y[k];
        return y;
    }

    // B^{-1} A_j for a structural or artificial column.
    RationalVector column(std::size_t j) const {
        RationalVector out(m_);
        if (j >= n_) {
            std::size_t r = j - n_;
            for (std::size_t i = 0; i < m_; ++i) out[i] = binv_[i][r];
            return out;
        }
        for (const auto& [r, v] : p_.columns[j].entries) {
            Rational val = flip_[r] ? -v : v;
            for (std::size_t i = 0; i < m_; ++i)
                if (!binv_[i][r].is_zero()) out[i] += binv_[i][r] * val;
        }
        return out;
    }

    Rational reduced_cost(std::size_t j, const std::vector<Rational>& c, const RationalVector& y) const {
        Rational d = c[j];
        if (j >= n_) return d - y[j - n_];
        for (const auto& [r, v] : p_.columns[j].entries) {
            if (y[r].is_zero()) continue;
            if (flip_[r])
                d += y[r] * v;
            else
                d -= y[r] * v;
        }
        return d;
    }

    void pivot(std::size_t row, std::size_t entering, const RationalVector& col) {
        Rational inv = Rational(1) / col[row];
        for (auto& x : binv_[row])
            if (!x.is_zero()) x *= inv;
        xb_[row] *= inv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || col[i].is_zero()) continue;
            const Rational f = col[i];
            for (std::size_t k = 0; k < m_; ++k)
                if (!binv_[row][k].is_zero()) binv_[i][k] -= f * binv_[row][k];
            if (!xb_[row].is_zero()) xb_[i] -= f * xb_[row];
        }
        in_basis_[basis_[row]] = -1;
        basis_[row] = entering;
        in_basis_[entering] = static_cast<long>(row);
    }

    // Returns false if unbounded.
    bool optimise(const std::vector<Rational>& c, bool phase1) {
        std::size_t limit = phase1 ? n_ + m_ : n_;
        while (true) {
            // y = c_B B^{-1}
            RationalVector y(m_);
            for (std::size_t i = 0; i < m_; ++i) {
                const Rational& cb = c[basis_[i]];
                if (cb.is_zero()) continue;
                for (std::size_t k = 0; k < m_; ++k)
                    if (!binv_[i][k].is_zero()) y[k] += cb * binv_[i][k];
            }
            std::size_t entering = limit;
            for (std::size_t j = 0; j < limit; ++j) {
                if (in_basis_[j] >= 0) continue;
                if (reduced_cost(j, c, y).sign() < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == limit) return true;
            RationalVector col = column(entering);
            std::size_t leave = m_;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (col[i].sign() <= 0) continue;
                Rational ratio = xb_[i] / col[i];
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, entering, col);
        }
    }

    // After a feasible phase 1, replace zero-valued basic artificials by
    // structural columns where possible; the rest sit in redundant rows.
    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (in_basis_[j] >= 0) continue;
                // row i of B^{-1} A_j
                Rational v;
                for (const auto& [r, a] : p_.columns[j].entries)
                    if (!binv_[i][r].is_zero()) v += binv_[i][r] * (flip_[r] ? -a : a);
                if (!v.is_zero()) {
                    pivot(i, j, column(j));
                    break;
                }
            }
        }
    }

    const Problem& p_;
    std::size_t m_, n_;
    std::vector<bool> flip_;
    std::vector<RationalVector> binv_;
    RationalVector xb_;
    std::vector<std::size_t> basis_;
    std::vector<long> in_basis_;
};

} // namespace detail

inline Solution solve(const Problem& p) {
    if (p.rows == 0) {
        Solution s;
        s.status = Status::optimal;
        s.x.assign(p.columns.size(), Rational(0));
        for (std::size_t j = 0; j < p.cost.size(); ++j)
            if (p.cost[j].sign() < 0) {
                s.status = Status::unbounded;
                s.x.clear();
                break;
            }
        return s;
    }
    return detail::Simplex(p).run();
}

} // namespace adhesive::lp
