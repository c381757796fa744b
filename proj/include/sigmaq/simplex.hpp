#pragma once

#include <cmath>
#include <vector>

#include "sigmaq/errors.hpp"
#include "sigmaq/rational.hpp"

namespace sigmaq {

enum class LpStatus { optimal, infeasible, unbounded };

template <class T>
struct LpResult {
  LpStatus status;
  std::vector<T> x;
  T objective;
};

/// Dense two-phase primal simplex for min c.x s.t. A x = b, x >= 0, with
/// Bland's anti-cycling rule (lowest-index entering and leaving variable).
/// Deterministic: the returned vertex depends only on the input ordering.
template <class T>
class Simplex {
  using tr = scalar_traits<T>;

 public:
  LpResult<T> solve(std::vector<std::vector<T>> a, std::vector<T> b, std::vector<T> c) {
    m_ = static_cast<int>(a.size());
    n_ = m_ ? static_cast<int>(a[0].size()) : 0;
    // make b nonnegative so phase-1 artificials start feasible
    for (int i = 0; i < m_; ++i) {
      if (tr::to_double(b[i]) < 0.0) {
        for (auto& v : a[i]) v = -v;
        b[i] = -b[i];
      }
    }
    // tableau columns: n structural + m artificial + rhs
    tab_.assign(m_, std::vector<T>(n_ + m_ + 1, tr::zero()));
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) tab_[i][j] = a[i][j];
      tab_[i][n_ + i] = tr::one();
      tab_[i][n_ + m_] = b[i];
      basis_[i] = n_ + i;
    }

    // phase 1: minimize the sum of artificials
    std::vector<T> cost1(n_ + m_, tr::zero());
    for (int i = 0; i < m_; ++i) cost1[n_ + i] = tr::one();
    T phase1 = run(cost1, n_ + m_);
    if (tr::to_double(phase1) > feas_tol()) return {LpStatus::infeasible, {}, phase1};
    drive_out_artificials();

    // phase 2 over structural columns only
    std::vector<T> cost2(n_, tr::zero());
    for (int j = 0; j < n_; ++j) cost2[j] = c[j];
    T obj = run(cost2, n_);
    if (unbounded_) return {LpStatus::unbounded, {}, tr::zero()};

    std::vector<T> x(n_, tr::zero());
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = tab_[i][n_ + m_];
    return {LpStatus::optimal, std::move(x), obj};
  }

 private:
  static double feas_tol() { return tr::is_exact ? 0.0 : 1e-9; }

  T run(const std::vector<T>& cost, int ncols) {
    unbounded_ = false;
    for (;;) {
      // Bland: lowest-index column with negative reduced cost
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (is_basic(j)) continue;
        T r = cost[j];
        for (int i = 0; i < m_; ++i) {
          int bi = basis_[i];
          T cb = bi < ncols ? cost[bi] : tr::zero();
          if (tr::to_double(cb) != 0.0) r -= cb * tab_[i][j];
        }
        if (tr::to_double(r) < -opt_tol()) {
          enter = j;
          break;
        }
      }
      if (enter < 0) break;
      // ratio test, Bland tie-break on lowest basis index
      int leave = -1;
      T best_ratio = tr::zero();
      for (int i = 0; i < m_; ++i) {
        double aij = tr::to_double(tab_[i][enter]);
        if (aij <= piv_tol()) continue;
        T ratio = tab_[i][n_ + m_] / tab_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) {
        unbounded_ = true;
        break;
      }
      pivot(leave, enter);
    }
    T obj = tr::zero();
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < ncols) obj += cost[basis_[i]] * tab_[i][n_ + m_];
    return obj;
  }

  static double opt_tol() { return tr::is_exact ? 0.0 : 1e-10; }
  static double piv_tol() { return tr::is_exact ? 0.0 : 1e-10; }

  bool is_basic(int j) const {
    for (int i = 0; i < m_; ++i)
      if (basis_[i] == j) return true;
    return false;
  }

  void pivot(int row, int col) {
    T inv = tr::one() / tab_[row][col];
    for (auto& v : tab_[row]) v *= inv;
    tab_[row][col] = tr::one();  // guard against roundoff drift
    for (int i = 0; i < m_; ++i) {
      if (i == row) continue;
      T f = tab_[i][col];
      if (tr::to_double(f) == 0.0) continue;
      for (int j = 0; j <= n_ + m_; ++j) tab_[i][j] -= f * tab_[row][j];
      tab_[i][col] = tr::zero();
    }
    basis_[row] = col;
  }

  // after phase 1, pivot any artificial still in the basis onto a structural
  // column; a row with no structural entry is redundant and can stay (rhs 0)
  void drive_out_artificials() {
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (int j = 0; j < n_; ++j) {
        if (std::fabs(tr::to_double(tab_[i][j])) > piv_tol() && !is_basic(j)) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  int m_ = 0, n_ = 0;
  std::vector<std::vector<T>> tab_;
  std::vector<int> basis_;
  bool unbounded_ = false;
};

template <class T>
LpResult<T> lp_solve(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                     const std::vector<T>& c) {
  return Simplex<T>().solve(a, b, c);
}

}  // namespace sigmaq
