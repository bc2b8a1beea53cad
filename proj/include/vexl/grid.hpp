#pragma once

#include <memory>
#include <span>
#include <vector>

#include "vexl/errors.hpp"

namespace vexl {

/// Integration domain reduced to what the formulas need: a finite list of
/// cells identified by their positive measures. Geometry never enters any
/// modular, so none is stored. Cells partition a box of finite total measure.
class Grid {
 public:
  /// dimension must be 1, 2 or 3; every measure must be positive and finite.
  static std::shared_ptr<const Grid> create(int dimension,
                                            std::vector<double> cell_measures);

  int dimension() const { return dimension_; }
  std::size_t cell_count() const { return measures_.size(); }
  std::span<const double> measures() const { return measures_; }
  double total_measure() const { return total_; }

  /// Structural equality: same dimension, same cell measures.
  bool same_as(const Grid& other) const;

 private:
  Grid(int dimension, std::vector<double> measures, double total)
      : dimension_(dimension), measures_(std::move(measures)), total_(total) {}

  int dimension_;
  std::vector<double> measures_;
  double total_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Throws GridMismatchError unless a and b are the same grid (pointer or
/// structural equality). `what` names the operands in the message.
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what);

/// A variable exponent sampled per cell, plus its attained bounds.
/// Normable fields satisfy 1 < min <= max < inf and support genuine norms;
/// the relaxed construction admits any finite min > 0 and is flagged
/// non-normable (solver results are then quasi-norm values).
class ExponentField {
 public:
  /// Rejects values with min <= 1.
  static ExponentField normable(GridPtr grid, std::vector<double> values);

  /// Quasi-norm experiments: rejects only values with min <= 0.
  static ExponentField relaxed(GridPtr grid, std::vector<double> values);

  /// Constant exponent on every cell; dispatches on value > 1.
  static ExponentField constant(GridPtr grid, double value);

  double lower_bound() const { return lower_; }
  double upper_bound() const { return upper_; }
  bool is_normable() const { return lower_ > 1.0; }

  std::span<const double> values() const { return values_; }
  const GridPtr& grid() const { return grid_; }

 private:
  ExponentField(GridPtr grid, std::vector<double> values, double lo, double hi)
      : grid_(std::move(grid)), values_(std::move(values)), lower_(lo), upper_(hi) {}

  static ExponentField make(GridPtr grid, std::vector<double> values,
                            double min_allowed, const char* mode);

  GridPtr grid_;
  std::vector<double> values_;
  double lower_;
  double upper_;
};

/// Piecewise-constant function: one finite real per cell. All modulars over
/// these are exact finite sums, so discretization introduces no error.
class SimpleFunction {
 public:
  static SimpleFunction create(GridPtr grid, std::vector<double> values);
  static SimpleFunction zero(GridPtr grid);
  static SimpleFunction constant(GridPtr grid, double value);

  std::span<const double> values() const { return values_; }
  const GridPtr& grid() const { return grid_; }

  bool is_zero() const;
  double max_abs() const;

  /// Cellwise f * c.
  SimpleFunction scaled(double c) const;

 private:
  SimpleFunction(GridPtr grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {}

  GridPtr grid_;
  std::vector<double> values_;
};

/// Cellwise a + b on a shared grid.
SimpleFunction add(const SimpleFunction& a, const SimpleFunction& b);

/// Finite sequence (f_1, ..., f_N) of simple functions on one grid.
/// The tail beyond N is identically zero, which keeps every truncated
/// component sum exact.
class FunctionSequence {
 public:
  static FunctionSequence create(GridPtr grid,
                                 std::vector<SimpleFunction> components);

  std::size_t size() const { return components_.size(); }
  const SimpleFunction& component(std::size_t nu) const { return components_[nu]; }
  const std::vector<SimpleFunction>& components() const { return components_; }
  const GridPtr& grid() const { return grid_; }

  bool is_zero() const;
  double max_abs() const;

  FunctionSequence scaled(double c) const;

  /// Same sequence extended with zero components up to n.
  FunctionSequence padded_to(std::size_t n) const;

 private:
  FunctionSequence(GridPtr grid, std::vector<SimpleFunction> components)
      : grid_(std::move(grid)), components_(std::move(components)) {}

  GridPtr grid_;
  std::vector<SimpleFunction> components_;
};

/// Componentwise a + b; the shorter sequence is padded with zeros.
FunctionSequence add(const FunctionSequence& a, const FunctionSequence& b);

}  // namespace vexl
