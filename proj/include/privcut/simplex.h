//
// Copyright 2026 The privcut Authors
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
//

#ifndef PRIVCUT_SIMPLEX_H_
#define PRIVCUT_SIMPLEX_H_

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace privcut {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

inline std::string LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

// Standard-form linear program: minimize c'x subject to A x = b, x >= 0.
template <typename Scalar>
struct StandardFormLp {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  Matrix a;
  Vector b;
  Vector c;
  // Optional starting basis: basis[i] is the column basic in row i.
  std::vector<int> basis;
};

template <typename Scalar>
struct SimplexResult {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar objective = Scalar(0);
  long iterations = 0;
};

// Dense tableau simplex with Bland's rule: the entering column is the lowest
// index with a negative reduced cost and ratio-test ties leave by the lowest
// basic index. Deterministic and cycle-free.
template <typename Scalar>
class DenseSimplex {
 public:
  using Tableau =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit DenseSimplex(Scalar tolerance = Scalar(1e-9),
                        long max_iterations = 5'000'000)
      : tol_(tolerance), max_iterations_(max_iterations) {}

  SimplexResult<Scalar> Solve(const StandardFormLp<Scalar>& lp) {
    const int m = static_cast<int>(lp.a.rows());
    const int n = static_cast<int>(lp.a.cols());
    SimplexResult<Scalar> result;
    iterations_ = 0;

    // Rows are flipped so that b >= 0.
    Tableau t(m + 1, n + 1);
    t.setZero();
    for (int i = 0; i < m; ++i) {
      const Scalar sign = lp.b[i] < Scalar(0) ? Scalar(-1) : Scalar(1);
      t.row(i).head(n) = sign * lp.a.row(i);
      t(i, n) = sign * lp.b[i];
    }
    basis_.assign(m, -1);

    bool have_basis = false;
    if (static_cast<int>(lp.basis.size()) == m) {
      have_basis = TryBasis(t, lp.basis, n);
    }
    if (!have_basis) {
      // Phase one: artificial columns n .. n+m-1.
      Tableau p(m + 1, n + m + 1);
      p.setZero();
      p.topLeftCorner(m, n) = t.topLeftCorner(m, n);
      p.col(n + m).head(m) = t.col(n).head(m);
      for (int i = 0; i < m; ++i) {
        p(i, n + i) = Scalar(1);
        basis_[i] = n + i;
      }
      for (int i = 0; i < m; ++i) p.row(m) -= p.row(i);
      for (int i = 0; i < m; ++i) p(m, n + i) = Scalar(0);
      const LpStatus phase_one = Iterate(p, n + m);
      if (phase_one == LpStatus::kIterationLimit) {
        result.status = phase_one;
        result.iterations = iterations_;
        return result;
      }
      if (-p(m, n + m) > tol_ * (Scalar(1) + lp.b.cwiseAbs().sum())) {
        result.status = LpStatus::kInfeasible;
        result.iterations = iterations_;
        return result;
      }
      // Drive artificial columns out of the basis where possible.
      for (int i = 0; i < m; ++i) {
        if (basis_[i] < n) continue;
        for (int j = 0; j < n; ++j) {
          if (Abs(p(i, j)) > tol_) {
            Pivot(p, i, j);
            break;
          }
        }
      }
      t.leftCols(n) = p.leftCols(n);
      t.col(n) = p.col(n + m);
      for (int i = 0; i < m; ++i) {
        if (basis_[i] >= n) {
          t.row(i).setZero();  // redundant row
          basis_[i] = -1;
        }
      }
    }

    // Phase two objective row: reduced costs of c.
    t.row(m).setZero();
    t.row(m).head(n) = lp.c.transpose();
    for (int i = 0; i < m; ++i) {
      const int j = basis_[i];
      if (j >= 0 && j < n && t(m, j) != Scalar(0)) {
        t.row(m) -= t(m, j) * t.row(i);
      }
    }
    const LpStatus status = Iterate(t, n);
    result.status = status;
    result.iterations = iterations_;
    if (status != LpStatus::kOptimal) return result;
    result.x = Vector::Zero(n);
    for (int i = 0; i < m; ++i) {
      if (basis_[i] >= 0) result.x[basis_[i]] = t(i, n);
    }
    result.objective = lp.c.dot(result.x);
    return result;
  }

 private:
  static Scalar Abs(Scalar x) { return x < Scalar(0) ? -x : x; }

  // Gauss-Jordan onto the requested basis; true if the result is feasible.
  bool TryBasis(Tableau& t, const std::vector<int>& basis, int rhs) {
    const int m = static_cast<int>(basis.size());
    Tableau copy = t;
    for (int i = 0; i < m; ++i) {
      const int j = basis[i];
      if (j < 0 || j >= rhs || Abs(copy(i, j)) <= tol_) return false;
      Pivot(copy, i, j);
    }
    for (int i = 0; i < m; ++i) {
      if (copy(i, rhs) < -tol_) return false;
      if (copy(i, rhs) < Scalar(0)) copy(i, rhs) = Scalar(0);
    }
    t = copy;
    return true;
  }

  void Pivot(Tableau& t, int row, int col) {
    t.row(row) /= t(row, col);
    Vector column = t.col(col);
    column[row] = Scalar(0);
    for (int i = 0; i < t.rows(); ++i) {
      if (column[i] != Scalar(0)) t.row(i) -= column[i] * t.row(row);
    }
    t(row, col) = Scalar(1);
    basis_[row] = col;
  }

  // Runs Bland's rule over columns [0, limit). The right-hand side sits in
  // the last column and the reduced costs in the last row.
  LpStatus Iterate(Tableau& t, int limit) {
    const int m = static_cast<int>(t.rows()) - 1;
    const int rhs = static_cast<int>(t.cols()) - 1;
    while (true) {
      int enter = -1;
      for (int j = 0; j < limit; ++j) {
        if (t(m, j) < -tol_) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (int i = 0; i < m; ++i) {
        const Scalar a = t(i, enter);
        if (a <= tol_) continue;
        const Scalar ratio = t(i, rhs) / a;
        if (ratio < best - tol_ ||
            (Abs(ratio - best) <= tol_ && basis_[i] < basis_[leave])) {
          if (ratio < best) best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      if (++iterations_ > max_iterations_) return LpStatus::kIterationLimit;
      Pivot(t, leave, enter);
      for (int i = 0; i < m; ++i) {
        if (t(i, rhs) < Scalar(0) && t(i, rhs) > -tol_) t(i, rhs) = Scalar(0);
      }
    }
  }

  Scalar tol_;
  long max_iterations_;
  long iterations_ = 0;
  std::vector<int> basis_;
};

}  // namespace privcut

#endif  // PRIVCUT_SIMPLEX_H_
