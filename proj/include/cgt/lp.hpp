// Copyright 2026 The cgt Authors
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

#ifndef CGT_LP_HPP
#define CGT_LP_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cgt {

/// Dense linear program: minimize objective . x subject to
///   coeffs . x >= bound   for every geq row,
///   coeffs . x == bound   for every eq row.
/// Variables are free unless flagged nonnegative.
struct LinearProgram {
  struct Row {
    std::vector<double> coeffs;
    double bound = 0.0;
  };

  std::vector<double> objective;
  std::vector<Row> geq_rows;
  std::vector<Row> eq_rows;
  /// Per-variable sign restriction; empty means all variables are free.
  std::vector<bool> nonnegative;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;         // present iff optimal
  double objective_value = 0.0;  // valid iff optimal
  int iterations = 0;            // simplex pivots across both phases
};

/// Entries smaller than this are treated as zero during pivoting.
inline constexpr double kLpPivotTol = 1e-10;
/// Constraint satisfaction tolerance for solutions and phase-1 feasibility.
inline constexpr double kLpFeasTol = 1e-7;

namespace lp_detail {

/// Dense simplex tableau over standard-form columns. Free variables are split
/// into positive and negative parts, every geq row gets a surplus column, and
/// phase 1 starts from an all-artificial basis. Bland's rule (lowest eligible
/// index, ties in the ratio test broken by lowest basic variable) keeps the
/// pivoting deterministic and cycle-free.
class SimplexTableau {
 public:
  explicit SimplexTableau(const LinearProgram& lp) {
    const std::size_t nv = lp.objective.size();
    validate(lp, nv);

    // Column layout: split/plain structural columns, then surpluses, then
    // artificials, then the RHS.
    col_plus_.resize(nv);
    col_minus_.assign(nv, kNoColumn);
    std::size_t col = 0;
    for (std::size_t j = 0; j < nv; ++j) {
      col_plus_[j] = col++;
      const bool nonneg = !lp.nonnegative.empty() && lp.nonnegative[j];
      if (!nonneg) col_minus_[j] = col++;
    }
    num_structural_ = col;
    const std::size_t ns = lp.geq_rows.size();
    num_rows_ = lp.geq_rows.size() + lp.eq_rows.size();
    surplus_begin_ = num_structural_;
    artificial_begin_ = num_structural_ + ns;
    num_cols_ = artificial_begin_ + num_rows_;  // + RHS held separately

    rows_.assign(num_rows_, std::vector<double>(num_cols_, 0.0));
    rhs_.assign(num_rows_, 0.0);
    basis_.assign(num_rows_, 0);

    std::size_t r = 0;
    for (std::size_t k = 0; k < lp.geq_rows.size(); ++k, ++r) {
      fill_structural(r, lp.geq_rows[k].coeffs);
      rows_[r][surplus_begin_ + k] = -1.0;
      rhs_[r] = lp.geq_rows[k].bound;
    }
    for (const auto& row : lp.eq_rows) {
      fill_structural(r, row.coeffs);
      rhs_[r] = row.bound;
      ++r;
    }
    for (r = 0; r < num_rows_; ++r) {
      if (rhs_[r] < 0.0) {
        for (double& a : rows_[r]) a = -a;
        rhs_[r] = -rhs_[r];
      }
      rows_[r][artificial_begin_ + r] = 1.0;
      basis_[r] = artificial_begin_ + r;
    }

    objective_ = standard_costs(lp.objective);
  }

  LpSolution solve() {
    LpSolution sol;

    // Phase 1: minimize the sum of artificials.
    std::vector<double> phase1(num_cols_, 0.0);
    for (std::size_t a = artificial_begin_; a < num_cols_; ++a) phase1[a] = 1.0;
    reduce_costs(phase1);
    if (!pivot_until_optimal(phase1, /*allow_artificials=*/true, sol))
      throw std::logic_error("simplex: phase 1 cannot be unbounded");
    if (phase1_value() > kLpFeasTol) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    purge_artificials();

    // Phase 2: minimize the original objective over the feasible basis.
    std::vector<double> cost = objective_;
    reduce_costs(cost);
    if (!pivot_until_optimal(cost, /*allow_artificials=*/false, sol)) {
      sol.status = LpStatus::kUnbounded;
      return sol;
    }

    sol.status = LpStatus::kOptimal;
    sol.x = extract_solution();
    sol.objective_value = 0.0;
    for (std::size_t j = 0; j < sol.x.size(); ++j)
      sol.objective_value += original_objective_[j] * sol.x[j];
    return sol;
  }

 private:
  static constexpr std::size_t kNoColumn = static_cast<std::size_t>(-1);

  void validate(const LinearProgram& lp, std::size_t nv) {
    if (!lp.nonnegative.empty() && lp.nonnegative.size() != nv)
      throw std::invalid_argument("lp: nonnegative flags length mismatch");
    auto check_row = [&](const LinearProgram::Row& row) {
      if (row.coeffs.size() != nv)
        throw std::invalid_argument("lp: row dimension mismatch");
      for (double a : row.coeffs)
        if (!std::isfinite(a))
          throw std::invalid_argument("lp: non-finite coefficient");
      if (!std::isfinite(row.bound))
        throw std::invalid_argument("lp: non-finite bound");
    };
    for (const auto& row : lp.geq_rows) check_row(row);
    for (const auto& row : lp.eq_rows) check_row(row);
    for (double c : lp.objective)
      if (!std::isfinite(c))
        throw std::invalid_argument("lp: non-finite objective");
    original_objective_ = lp.objective;
  }

  void fill_structural(std::size_t r, const std::vector<double>& coeffs) {
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      rows_[r][col_plus_[j]] = coeffs[j];
      if (col_minus_[j] != kNoColumn) rows_[r][col_minus_[j]] = -coeffs[j];
    }
  }

  std::vector<double> standard_costs(const std::vector<double>& c) const {
    std::vector<double> out(num_cols_, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      out[col_plus_[j]] = c[j];
      if (col_minus_[j] != kNoColumn) out[col_minus_[j]] = -c[j];
    }
    return out;
  }

  /// Turns a raw cost vector into reduced costs w.r.t. the current basis.
  void reduce_costs(std::vector<double>& cost) const {
    for (std::size_t r = 0; r < num_rows_; ++r) {
      const double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < num_cols_; ++j) cost[j] -= cb * rows_[r][j];
    }
  }

  double phase1_value() const {
    double v = 0.0;
    for (std::size_t r = 0; r < num_rows_; ++r)
      if (basis_[r] >= artificial_begin_) v += rhs_[r];
    return v;
  }

  /// Returns false when the problem is unbounded in the pivot direction.
  bool pivot_until_optimal(std::vector<double>& cost, bool allow_artificials,
                           LpSolution& sol) {
    const long max_iters =
        10000 + 50L * static_cast<long>(num_rows_ + 1) *
                    static_cast<long>(num_cols_ + 1);
    for (;;) {
      std::size_t entering = kNoColumn;
      const std::size_t limit =
          allow_artificials ? num_cols_ : artificial_begin_;
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost[j] < -kLpPivotTol) {
          entering = j;
          break;  // Bland: lowest index
        }
      }
      if (entering == kNoColumn) return true;

      std::size_t leaving = kNoColumn;
      double best_ratio = 0.0;
      for (std::size_t r = 0; r < num_rows_; ++r) {
        const double a = rows_[r][entering];
        if (a <= kLpPivotTol) continue;
        const double ratio = rhs_[r] / a;
        if (leaving == kNoColumn || ratio < best_ratio - kLpPivotTol ||
            (std::abs(ratio - best_ratio) <= kLpPivotTol &&
             basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (leaving == kNoColumn) return false;

      pivot(leaving, entering, cost);
      if (++sol.iterations > max_iters)
        throw std::runtime_error("simplex: iteration limit exceeded");
    }
  }

  void pivot(std::size_t r, std::size_t c, std::vector<double>& cost) {
    const double p = rows_[r][c];
    for (double& a : rows_[r]) a /= p;
    rhs_[r] /= p;
    rows_[r][c] = 1.0;  // kill roundoff on the pivot element
    for (std::size_t i = 0; i < num_rows_; ++i) {
      if (i == r) continue;
      const double f = rows_[i][c];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < num_cols_; ++j)
        rows_[i][j] -= f * rows_[r][j];
      rows_[i][c] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    const double f = cost[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < num_cols_; ++j) cost[j] -= f * rows_[r][j];
      cost[c] = 0.0;
    }
    basis_[r] = c;
  }

  /// After phase 1, pivot artificial variables out of the basis; rows where
  /// that is impossible are redundant and get dropped.
  void purge_artificials() {
    std::vector<double> dummy(num_cols_, 0.0);
    for (std::size_t r = 0; r < num_rows_;) {
      if (basis_[r] < artificial_begin_) {
        ++r;
        continue;
      }
      std::size_t c = kNoColumn;
      for (std::size_t j = 0; j < artificial_begin_; ++j) {
        if (std::abs(rows_[r][j]) > kLpPivotTol) {
          c = j;
          break;
        }
      }
      if (c != kNoColumn) {
        pivot(r, c, dummy);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --num_rows_;
      }
    }
  }

  std::vector<double> extract_solution() const {
    std::vector<double> std_x(num_cols_, 0.0);
    for (std::size_t r = 0; r < num_rows_; ++r) std_x[basis_[r]] = rhs_[r];
    std::vector<double> x(original_objective_.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = std_x[col_plus_[j]];
      if (col_minus_[j] != kNoColumn) x[j] -= std_x[col_minus_[j]];
    }
    return x;
  }

  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<std::size_t> basis_;
  std::vector<double> objective_;           // standard-form columns
  std::vector<double> original_objective_;  // user variables
  std::vector<std::size_t> col_plus_, col_minus_;
  std::size_t num_structural_ = 0, surplus_begin_ = 0, artificial_begin_ = 0;
  std::size_t num_rows_ = 0, num_cols_ = 0;
};

inline void verify_solution(const LinearProgram& lp, const LpSolution& sol) {
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s;
  };
  for (const auto& row : lp.geq_rows)
    if (dot(row.coeffs, sol.x) < row.bound - kLpFeasTol)
      throw std::logic_error("lp: optimal solution violates a >= constraint");
  for (const auto& row : lp.eq_rows)
    if (std::abs(dot(row.coeffs, sol.x) - row.bound) >
        kLpFeasTol * std::max(1.0, std::abs(row.bound)))
      throw std::logic_error("lp: optimal solution violates an == constraint");
  if (!lp.nonnegative.empty())
    for (std::size_t j = 0; j < sol.x.size(); ++j)
      if (lp.nonnegative[j] && sol.x[j] < -kLpFeasTol)
        throw std::logic_error("lp: optimal solution violates a sign bound");
}

}  // namespace lp_detail

/// Two-phase dense simplex. Deterministic: identical programs produce
/// identical vertices. Optimal solutions are re-checked against every
/// constraint before being returned.
inline LpSolution solve_lp(const LinearProgram& lp) {
  lp_detail::SimplexTableau tableau(lp);
  LpSolution sol = tableau.solve();
  if (sol.status == LpStatus::kOptimal) lp_detail::verify_solution(lp, sol);
  return sol;
}

}  // namespace cgt

#endif  // CGT_LP_HPP
