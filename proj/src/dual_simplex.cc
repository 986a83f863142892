// Copyright 2026 The mcftopo Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dual_simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace mcftopo::internal {
namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kDualTol = 1e-9;
constexpr double kPivotTol = 1e-7;
constexpr double kDropTol = 1e-13;
constexpr double kResidualTol = 1e-9;
constexpr int kCheckEvery = 100;
constexpr int kStallLimit = 500;
constexpr long kIterationLimit = 500000;
constexpr int kMaxRecoveries = 20;

double Clamp(double v) {
  return std::clamp(v, -kBigBound, kBigBound);
}

}  // namespace

DualSimplex::DualSimplex(const MilpProblem& problem) : problem_(problem) {
  m_ = problem.num_rows();
  n_ = problem.num_columns();
  width_ = n_ + m_;
  const double sign = problem.sense() == ObjectiveSense::kMinimize ? 1.0 : -1.0;
  cost_.assign(width_, 0.0);
  lo_.assign(width_, 0.0);
  hi_.assign(width_, 0.0);
  for (int j = 0; j < n_; ++j) {
    cost_[j] = sign * problem.objective(j);
    lo_[j] = Clamp(problem.lower(j));
    hi_[j] = Clamp(problem.upper(j));
  }
  for (int i = 0; i < m_; ++i) {
    const Row& row = problem.row(i);
    double low = 0.0;
    double high = 0.0;
    for (const Term& t : row.terms) {
      if (t.coefficient > 0) {
        low += t.coefficient * lo_[t.column];
        high += t.coefficient * hi_[t.column];
      } else {
        low += t.coefficient * hi_[t.column];
        high += t.coefficient * lo_[t.column];
      }
    }
    double l = low;
    double h = high;
    switch (row.relation) {
      case Relation::kLessEqual: h = std::min(h, row.rhs); break;
      case Relation::kGreaterEqual: l = std::max(l, row.rhs); break;
      case Relation::kEqual: l = h = row.rhs; break;
    }
    if (row.relation == Relation::kEqual &&
        (row.rhs < low - kPrimalTol || row.rhs > high + kPrimalTol)) {
      trivially_infeasible_ = true;
    }
    if (l > h + kPrimalTol) trivially_infeasible_ = true;
    lo_[n_ + i] = l;
    hi_[n_ + i] = std::max(l, h);
  }
  value_.assign(width_, 0.0);
  ResetToSlackBasis();
}

void DualSimplex::ResetToSlackBasis() {
  tab_.assign(static_cast<size_t>(m_) * width_, 0.0);
  for (int i = 0; i < m_; ++i) {
    for (const Term& t : problem_.row(i).terms) T(i, t.column) -= t.coefficient;
    T(i, n_ + i) = 1.0;
  }
  reduced_ = cost_;
  basis_.resize(m_);
  position_.assign(width_, -1);
  for (int i = 0; i < m_; ++i) {
    basis_[i] = n_ + i;
    position_[n_ + i] = i;
  }
}

// Rebuilds the tableau for the current basis, or restarts from the slack
// basis when the basis has become numerically singular. Either way the
// nonbasic variables are re-placed so the basis stays dual feasible.
bool DualSimplex::Recover() {
  if (++recoveries_ > kMaxRecoveries) return false;
  if (!Refactor()) ResetToSlackBasis();
  RecomputeReducedCosts();
  PlaceNonbasic();
  RecomputeBasicValues();
  return true;
}

void DualSimplex::SetColumnBounds(int column, double lower, double upper) {
  lo_[column] = Clamp(lower);
  hi_[column] = Clamp(upper);
}

void DualSimplex::PlaceNonbasic() {
  for (int j = 0; j < width_; ++j) {
    if (position_[j] >= 0) continue;
    value_[j] = reduced_[j] >= 0.0 ? lo_[j] : hi_[j];
  }
}

void DualSimplex::RecomputeBasicValues() {
  std::vector<int> active;
  for (int j = 0; j < width_; ++j) {
    if (position_[j] < 0 && value_[j] != 0.0) active.push_back(j);
  }
  for (int r = 0; r < m_; ++r) {
    double v = 0.0;
    for (int j : active) v -= T(r, j) * value_[j];
    value_[basis_[r]] = v;
  }
}

void DualSimplex::RecomputeReducedCosts() {
  reduced_ = cost_;
  for (int r = 0; r < m_; ++r) {
    const double cb = cost_[basis_[r]];
    if (cb == 0.0) continue;
    for (int j = 0; j < width_; ++j) reduced_[j] -= cb * T(r, j);
  }
  for (int r = 0; r < m_; ++r) reduced_[basis_[r]] = 0.0;
}

bool DualSimplex::Refactor() {
  if (m_ == 0) return true;
  // Column j of [A | -I].
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m_, width_);
  for (int i = 0; i < m_; ++i) {
    for (const Term& t : problem_.row(i).terms) full(i, t.column) += t.coefficient;
    full(i, n_ + i) = -1.0;
  }
  Eigen::MatrixXd basis(m_, m_);
  for (int r = 0; r < m_; ++r) basis.col(r) = full.col(basis_[r]);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
  if (!std::isfinite(lu.rcond()) || lu.rcond() < 1e-14) return false;
  const Eigen::MatrixXd t = lu.solve(full);
  for (int r = 0; r < m_; ++r) {
    for (int j = 0; j < width_; ++j) {
      const double v = t(r, j);
      T(r, j) = std::abs(v) < kDropTol ? 0.0 : v;
    }
  }
  for (int r = 0; r < m_; ++r) {
    for (int s = 0; s < m_; ++s) T(s, basis_[r]) = s == r ? 1.0 : 0.0;
  }
  return true;
}

double DualSimplex::Residual() const {
  double worst = 0.0;
  for (int i = 0; i < m_; ++i) {
    double activity = -value_[n_ + i];
    for (const Term& t : problem_.row(i).terms) {
      activity += t.coefficient * value_[t.column];
    }
    worst = std::max(worst, std::abs(activity));
  }
  return worst;
}

void DualSimplex::Pivot(int row, int entering) {
  const int leaving = basis_[row];
  const double target =
      value_[leaving] < lo_[leaving] ? lo_[leaving] : hi_[leaving];
  const double alpha = -T(row, entering);
  const double delta = (target - value_[leaving]) / alpha;
  for (int r = 0; r < m_; ++r) {
    const double f = T(r, entering);
    if (f != 0.0) value_[basis_[r]] -= f * delta;
  }
  value_[entering] += delta;
  value_[leaving] = target;

  const double inv = 1.0 / T(row, entering);
  std::vector<int> nz;
  for (int j = 0; j < width_; ++j) {
    double& v = T(row, j);
    if (v == 0.0) continue;
    v *= inv;
    nz.push_back(j);
  }
  T(row, entering) = 1.0;
  for (int r = 0; r < m_; ++r) {
    if (r == row) continue;
    const double f = T(r, entering);
    if (f == 0.0) continue;
    for (int j : nz) {
      double& v = T(r, j);
      v -= f * T(row, j);
      if (std::abs(v) < kDropTol) v = 0.0;
    }
    T(r, entering) = 0.0;
  }
  const double dq = reduced_[entering];
  if (dq != 0.0) {
    for (int j : nz) reduced_[j] -= dq * T(row, j);
  }
  reduced_[entering] = 0.0;
  basis_[row] = entering;
  position_[entering] = row;
  position_[leaving] = -1;
  ++iterations_;
}

double DualSimplex::Objective() const {
  double sum = 0.0;
  for (int j = 0; j < n_; ++j) sum += cost_[j] * value_[j];
  return sum;
}

std::vector<double> DualSimplex::ColumnValues() const {
  return {value_.begin(), value_.begin() + n_};
}

DualSimplex::Status DualSimplex::Solve(double cutoff, Clock::time_point deadline) {
  if (trivially_infeasible_) return Status::kInfeasible;
  recoveries_ = 0;
  PlaceNonbasic();
  RecomputeBasicValues();
  long local = 0;
  int stall = 0;
  double last_objective = -std::numeric_limits<double>::infinity();
  bool bland = false;
  for (;;) {
    if (local % 32 == 0 && Clock::now() > deadline) return Status::kTimeLimit;
    if (local > kIterationLimit) return Status::kIterationLimit;
    if (local > 0 && local % kCheckEvery == 0 && Residual() > kResidualTol) {
      if (!Recover()) return Status::kIterationLimit;
    }
    const double objective = Objective();
    if (objective > cutoff) return Status::kCutoff;
    if (objective > last_objective + 1e-12) {
      last_objective = objective;
      stall = 0;
      bland = false;
    } else if (++stall > kStallLimit) {
      bland = true;
    }

    int row = -1;
    double worst = kPrimalTol;
    for (int r = 0; r < m_; ++r) {
      const int var = basis_[r];
      const double infeas =
          std::max(lo_[var] - value_[var], value_[var] - hi_[var]);
      if (infeas <= kPrimalTol) continue;
      if (bland) {
        if (row < 0 || var < basis_[row]) row = r;
      } else if (infeas > worst) {
        worst = infeas;
        row = r;
      }
    }
    if (row < 0) {
      if (Residual() > kResidualTol) {
        if (!Recover()) return Status::kIterationLimit;
        ++local;
        continue;
      }
      return Status::kOptimal;
    }

    const int leaving = basis_[row];
    const bool increase = value_[leaving] < lo_[leaving];
    // Harris ratio test: bound the step with relaxed reduced costs, then
    // take the largest pivot among candidates within that bound.
    double theta_max = std::numeric_limits<double>::infinity();
    for (int j = 0; j < width_; ++j) {
      if (position_[j] >= 0 || lo_[j] == hi_[j]) continue;
      const double alpha = -T(row, j);
      if (std::abs(alpha) <= kPivotTol) continue;
      const bool at_lower = value_[j] == lo_[j];
      if ((alpha > 0) != (increase == at_lower)) continue;
      const double dj = std::max(0.0, at_lower ? reduced_[j] : -reduced_[j]);
      theta_max = std::min(theta_max, (dj + kDualTol) / std::abs(alpha));
    }
    if (theta_max == std::numeric_limits<double>::infinity()) {
      return Status::kInfeasible;
    }
    int entering = -1;
    double best = -1.0;
    for (int j = 0; j < width_; ++j) {
      if (position_[j] >= 0 || lo_[j] == hi_[j]) continue;
      const double alpha = -T(row, j);
      if (std::abs(alpha) <= kPivotTol) continue;
      const bool at_lower = value_[j] == lo_[j];
      if ((alpha > 0) != (increase == at_lower)) continue;
      const double dj = std::max(0.0, at_lower ? reduced_[j] : -reduced_[j]);
      const double ratio = dj / std::abs(alpha);
      if (ratio > theta_max) continue;
      if (bland) {
        if (entering < 0 || ratio < best) {
          entering = j;
          best = ratio;
        }
      } else if (std::abs(alpha) > best) {
        entering = j;
        best = std::abs(alpha);
      }
    }
    Pivot(row, entering);
    ++local;
  }
}

}  // namespace mcftopo::internal
