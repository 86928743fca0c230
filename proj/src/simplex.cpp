#include "capplan/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace capplan {
namespace {

constexpr double kPivotTolerance = 1e-9;
constexpr double kReducedCostTolerance = 1e-11;
constexpr double kFeasibilityTolerance = 1e-9;
constexpr int kRefactorInterval = 64;
constexpr int kDegenerateBeforeBland = 50;

}  // namespace

RevisedSimplex::RevisedSimplex(std::vector<double> rhs) : rhs_(std::move(rhs)) {}

int RevisedSimplex::add_column(double cost, std::vector<Entry> entries) {
  for (const auto& [row, v] : entries) {
    if (row < 0 || row >= row_count()) throw std::out_of_range("column row index");
    (void)v;
  }
  cost_.push_back(cost);
  columns_.push_back(std::move(entries));
  position_.push_back(-1);
  return column_count() - 1;
}

void RevisedSimplex::set_basis(const std::vector<int>& basic) {
  if (static_cast<int>(basic.size()) != row_count()) {
    throw std::invalid_argument("basis size must equal the row count");
  }
  std::fill(position_.begin(), position_.end(), -1);
  basis_ = basic;
  for (int r = 0; r < row_count(); ++r) {
    if (position_.at(basic[r]) != -1) throw std::invalid_argument("duplicate basic column");
    position_[basic[r]] = r;
  }
  refactor();
  for (double x : xb_) {
    if (x < -kFeasibilityTolerance * 1e3) {
      throw std::runtime_error("starting basis is not primal feasible");
    }
  }
}

void RevisedSimplex::refactor() {
  const int m = row_count();
  // Gauss-Jordan on [B | I].
  std::vector<double> b(static_cast<std::size_t>(m) * m, 0.0);
  for (int r = 0; r < m; ++r) {
    for (const auto& [row, v] : columns_[basis_[r]]) b[row * m + r] = v;
  }
  binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) binv_[i * m + i] = 1.0;
  for (int col = 0; col < m; ++col) {
    int pivot = col;
    for (int r = col + 1; r < m; ++r) {
      if (std::abs(b[r * m + col]) > std::abs(b[pivot * m + col])) pivot = r;
    }
    if (std::abs(b[pivot * m + col]) < 1e-12) {
      throw std::runtime_error("singular basis matrix");
    }
    if (pivot != col) {
      for (int k = 0; k < m; ++k) {
        std::swap(b[pivot * m + k], b[col * m + k]);
        std::swap(binv_[pivot * m + k], binv_[col * m + k]);
      }
    }
    const double inv = 1.0 / b[col * m + col];
    for (int k = 0; k < m; ++k) {
      b[col * m + k] *= inv;
      binv_[col * m + k] *= inv;
    }
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      const double f = b[r * m + col];
      if (f == 0.0) continue;
      for (int k = 0; k < m; ++k) {
        b[r * m + k] -= f * b[col * m + k];
        binv_[r * m + k] -= f * binv_[col * m + k];
      }
    }
  }
  xb_.assign(m, 0.0);
  for (int r = 0; r < m; ++r) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += binv_[r * m + k] * rhs_[k];
    xb_[r] = s;
  }
  since_refactor_ = 0;
}

void RevisedSimplex::compute_duals(std::vector<double>& y) const {
  const int m = row_count();
  y.assign(m, 0.0);
  for (int r = 0; r < m; ++r) {
    const double c = cost_[basis_[r]];
    if (c == 0.0) continue;
    const double* row = &binv_[static_cast<std::size_t>(r) * m];
    for (int k = 0; k < m; ++k) y[k] += c * row[k];
  }
}

std::vector<double> RevisedSimplex::duals() const {
  std::vector<double> y;
  compute_duals(y);
  return y;
}

double RevisedSimplex::reduced_cost(int column, const std::vector<double>& y) const {
  double d = cost_[column];
  for (const auto& [row, v] : columns_[column]) d -= y[row] * v;
  return d;
}

RevisedSimplex::Status RevisedSimplex::optimize(int max_pivots) {
  const int m = row_count();
  const int n = column_count();
  std::vector<double> y;
  std::vector<double> alpha(m);
  int degenerate_streak = 0;

  for (int iter = 0; iter < max_pivots; ++iter) {
    compute_duals(y);
    const bool bland = degenerate_streak >= kDegenerateBeforeBland;
    int entering = -1;
    double best = -kReducedCostTolerance;
    for (int j = 0; j < n; ++j) {
      if (position_[j] != -1) continue;
      const double d = reduced_cost(j, y);
      const double scaled = d / (1.0 + std::abs(cost_[j]));
      if (scaled < best) {
        entering = j;
        if (bland) break;
        best = scaled;
      }
    }
    if (entering == -1) return Status::kOptimal;

    std::fill(alpha.begin(), alpha.end(), 0.0);
    for (const auto& [row, v] : columns_[entering]) {
      for (int r = 0; r < m; ++r) alpha[r] += binv_[static_cast<std::size_t>(r) * m + row] * v;
    }

    int leaving = -1;
    double ratio = 0.0;
    for (int r = 0; r < m; ++r) {
      if (alpha[r] <= kPivotTolerance) continue;
      const double q = std::max(xb_[r], 0.0) / alpha[r];
      if (leaving == -1 || q < ratio - 1e-12) {
        leaving = r;
        ratio = q;
      } else if (q <= ratio + 1e-12) {
        const bool prefer = bland ? basis_[r] < basis_[leaving] : alpha[r] > alpha[leaving];
        if (prefer) {
          leaving = r;
          ratio = std::min(ratio, q);
        }
      }
    }
    if (leaving == -1) return Status::kUnbounded;

    degenerate_streak = ratio <= 1e-12 ? degenerate_streak + 1 : 0;

    const double pivot = alpha[leaving];
    for (int r = 0; r < m; ++r) {
      if (r == leaving) continue;
      xb_[r] -= ratio * alpha[r];
      if (xb_[r] < 0.0 && xb_[r] > -kFeasibilityTolerance) xb_[r] = 0.0;
    }
    xb_[leaving] = ratio;

    double* prow = &binv_[static_cast<std::size_t>(leaving) * m];
    for (int k = 0; k < m; ++k) prow[k] /= pivot;
    for (int r = 0; r < m; ++r) {
      if (r == leaving || alpha[r] == 0.0) continue;
      double* row = &binv_[static_cast<std::size_t>(r) * m];
      const double f = alpha[r];
      for (int k = 0; k < m; ++k) row[k] -= f * prow[k];
    }

    position_[basis_[leaving]] = -1;
    basis_[leaving] = entering;
    position_[entering] = leaving;
    ++total_pivots_;
    if (++since_refactor_ >= kRefactorInterval) {
      refactor();
      for (double& x : xb_) {
        if (x < 0.0 && x > -kFeasibilityTolerance) x = 0.0;
      }
    }
  }
  return Status::kIterationLimit;
}

double RevisedSimplex::objective() const {
  double z = 0.0;
  for (int r = 0; r < row_count(); ++r) z += cost_[basis_[r]] * xb_[r];
  return z;
}

double RevisedSimplex::value(int column) const {
  const int r = position_.at(column);
  return r == -1 ? 0.0 : xb_[r];
}

}  // namespace capplan
