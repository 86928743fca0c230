#pragma once

#include <utility>
#include <vector>

namespace capplan {

// Primal revised simplex for   min c'x  s.t.  Ax = b, x >= 0
// with a dense explicit basis inverse. Meant for small row counts and a
// growing set of sparse columns (column generation). The caller supplies a
// primal feasible starting basis; columns may be appended between solves.
class RevisedSimplex {
 public:
  using Entry = std::pair<int, double>;  // (row, coefficient)

  enum class Status { kOptimal, kUnbounded, kIterationLimit };

  explicit RevisedSimplex(std::vector<double> rhs);

  int add_column(double cost, std::vector<Entry> entries);
  int row_count() const { return static_cast<int>(rhs_.size()); }
  int column_count() const { return static_cast<int>(cost_.size()); }

  // One column per row. Throws std::runtime_error when the basis matrix is
  // singular or the basic solution is infeasible.
  void set_basis(const std::vector<int>& basic);

  Status optimize(int max_pivots = 200000);

  double objective() const;
  double value(int column) const;
  // Simplex multipliers y = c_B' B^-1.
  std::vector<double> duals() const;
  double reduced_cost(int column, const std::vector<double>& duals) const;
  int pivots() const { return total_pivots_; }

 private:
  void refactor();
  void compute_duals(std::vector<double>& y) const;

  std::vector<double> rhs_;
  std::vector<double> cost_;
  std::vector<std::vector<Entry>> columns_;

  std::vector<int> basis_;      // column per row position
  std::vector<int> position_;   // row position per column, -1 if nonbasic
  std::vector<double> binv_;    // row-major m x m
  std::vector<double> xb_;
  int since_refactor_ = 0;
  int total_pivots_ = 0;
};

}  // namespace capplan
