#pragma once

// Dense two-phase simplex for small LPs:
//   maximize c.x  subject to  A x <= b,  x >= 0.
// Bland's rule throughout, so pivoting is deterministic and cycle-free.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace ifccr {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    std::vector<double> x;
};

struct DenseLp {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    std::vector<double> c;
};

namespace detail {

class Tableau {
public:
    Tableau(const DenseLp& lp, double eps) : m_(lp.b.size()), n_(lp.c.size()), eps_(eps) {
        // Columns: n originals, m slacks, one artificial column per negative row, rhs.
        for (std::size_t i = 0; i < m_; ++i) {
            if (lp.b[i] < 0.0) art_rows_.push_back(i);
        }
        cols_ = n_ + m_ + art_rows_.size();
        t_.assign(m_, std::vector<double>(cols_ + 1, 0.0));
        basis_.assign(m_, 0);
        std::size_t art = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = lp.b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = sign * lp.a[i][j];
            t_[i][n_ + i] = sign;
            t_[i][cols_] = sign * lp.b[i];
            if (sign < 0.0) {
                t_[i][n_ + m_ + art] = 1.0;
                basis_[i] = n_ + m_ + art;
                ++art;
            } else {
                basis_[i] = n_ + i;
            }
        }
    }

    // Returns false when the objective is unbounded.
    bool optimize(const std::vector<double>& cost, std::size_t usable_cols) {
        for (int guard = 0; guard < 10000; ++guard) {
            // Reduced costs r_j = cost_j - cost_B . column_j ; enter smallest j with r_j > eps.
            std::size_t enter = usable_cols;
            for (std::size_t j = 0; j < usable_cols; ++j) {
                if (is_basic(j)) continue;
                double r = cost[j];
                for (std::size_t i = 0; i < m_; ++i) r -= cost[basis_[i]] * t_[i][j];
                if (r > eps_) {
                    enter = j;
                    break;
                }
            }
            if (enter == usable_cols) return true;
            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][enter] > eps_) {
                    const double ratio = t_[i][cols_] / t_[i][enter];
                    if (leave == m_ || ratio < best - eps_ ||
                        (std::abs(ratio - best) <= eps_ && basis_[i] < basis_[leave])) {
                        best = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
        return true;
    }

    double value(const std::vector<double>& cost) const {
        double v = 0.0;
        for (std::size_t i = 0; i < m_; ++i) v += cost[basis_[i]] * t_[i][cols_];
        return v;
    }

    // Drive zero-level artificials out of the basis after phase 1.
    void expel_artificials() {
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_ + m_) continue;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (!is_basic(j) && std::abs(t_[i][j]) > eps_) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::vector<double> primal() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, t_[i][cols_]);
        }
        return x;
    }

    std::size_t cols() const { return cols_; }
    std::size_t structural_cols() const { return n_ + m_; }
    std::size_t n() const { return n_; }

private:
    bool is_basic(std::size_t j) const {
        for (std::size_t b : basis_) {
            if (b == j) return true;
        }
        return false;
    }

    void pivot(std::size_t r, std::size_t c) {
        const double p = t_[r][c];
        for (double& v : t_[r]) v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = t_[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) t_[i][j] -= f * t_[r][j];
        }
        basis_[r] = c;
    }

    std::size_t m_, n_, cols_ = 0;
    double eps_;
    std::vector<std::size_t> art_rows_;
    std::vector<std::vector<double>> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Solves the LP; `feas_tol` bounds the phase-1 infeasibility accepted as
/// feasible.
inline LpSolution solve_lp(const DenseLp& lp, double feas_tol = 1e-9) {
    constexpr double kPivotEps = 1e-12;
    detail::Tableau tab(lp, kPivotEps);
    LpSolution out;

    if (tab.cols() > tab.structural_cols()) {
        std::vector<double> phase1(tab.cols(), 0.0);
        for (std::size_t j = tab.structural_cols(); j < tab.cols(); ++j) phase1[j] = -1.0;
        tab.optimize(phase1, tab.cols());
        if (tab.value(phase1) < -feas_tol) {
            out.status = LpStatus::infeasible;
            return out;
        }
        tab.expel_artificials();
    }

    std::vector<double> cost(tab.cols(), 0.0);
    for (std::size_t j = 0; j < tab.n(); ++j) cost[j] = lp.c[j];
    if (!tab.optimize(cost, tab.structural_cols())) {
        out.status = LpStatus::unbounded;
        return out;
    }
    out.status = LpStatus::optimal;
    out.x = tab.primal();
    out.value = 0.0;
    for (std::size_t j = 0; j < out.x.size(); ++j) out.value += lp.c[j] * out.x[j];
    return out;
}

}  // namespace ifccr
