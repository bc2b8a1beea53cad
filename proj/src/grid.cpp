#include "vexl/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vexl {

std::shared_ptr<const Grid> Grid::create(int dimension,
                                         std::vector<double> cell_measures) {
  if (dimension < 1 || dimension > 3) {
    throw ValidationError("grid dimension must be 1, 2 or 3, got " +
                          std::to_string(dimension));
  }
  if (cell_measures.empty()) {
    throw ValidationError("grid needs at least one cell");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < cell_measures.size(); ++i) {
    const double m = cell_measures[i];
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw ValidationError("cell measure [" + std::to_string(i) +
                            "] must be a positive finite real, got " +
                            std::to_string(m));
    }
    total += m;
  }
  if (!std::isfinite(total)) {
    throw ValidationError("total grid measure is not finite");
  }
  return std::shared_ptr<const Grid>(
      new Grid(dimension, std::move(cell_measures), total));
}

bool Grid::same_as(const Grid& other) const {
  if (this == &other) return true;
  return dimension_ == other.dimension_ && measures_ == other.measures_;
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* what) {
  if (a == b) return;
  if (a && b && a->same_as(*b)) return;
  throw GridMismatchError(std::string("grid mismatch between ") + what);
}

ExponentField ExponentField::make(GridPtr grid, std::vector<double> values,
                                  double min_allowed, const char* mode) {
  if (!grid) throw ValidationError("exponent field needs a grid");
  if (values.size() != grid->cell_count()) {
    throw ValidationError("exponent field has " + std::to_string(values.size()) +
                          " values for a grid of " +
                          std::to_string(grid->cell_count()) + " cells");
  }
  double lo = values[0], hi = values[0];
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      throw ValidationError("exponent value [" + std::to_string(i) +
                            "] is not finite");
    }
    if (!(v > min_allowed)) {
      throw ValidationError("exponent value [" + std::to_string(i) + "] = " +
                            std::to_string(v) + " must exceed " +
                            std::to_string(min_allowed) + " (" + mode + " mode)");
    }
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return ExponentField(std::move(grid), std::move(values), lo, hi);
}

ExponentField ExponentField::normable(GridPtr grid, std::vector<double> values) {
  return make(std::move(grid), std::move(values), 1.0, "normable");
}

ExponentField ExponentField::relaxed(GridPtr grid, std::vector<double> values) {
  return make(std::move(grid), std::move(values), 0.0, "relaxed");
}

ExponentField ExponentField::constant(GridPtr grid, double value) {
  if (!grid) throw ValidationError("exponent field needs a grid");
  std::vector<double> values(grid->cell_count(), value);
  return value > 1.0 ? normable(std::move(grid), std::move(values))
                     : relaxed(std::move(grid), std::move(values));
}

SimpleFunction SimpleFunction::create(GridPtr grid, std::vector<double> values) {
  if (!grid) throw ValidationError("simple function needs a grid");
  if (values.size() != grid->cell_count()) {
    throw ValidationError("simple function has " + std::to_string(values.size()) +
                          " values for a grid of " +
                          std::to_string(grid->cell_count()) + " cells");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw ValidationError("function value [" + std::to_string(i) +
                            "] is not finite");
    }
  }
  return SimpleFunction(std::move(grid), std::move(values));
}

SimpleFunction SimpleFunction::zero(GridPtr grid) {
  if (!grid) throw ValidationError("simple function needs a grid");
  std::vector<double> values(grid->cell_count(), 0.0);
  return SimpleFunction(std::move(grid), std::move(values));
}

SimpleFunction SimpleFunction::constant(GridPtr grid, double value) {
  if (!grid) throw ValidationError("simple function needs a grid");
  std::vector<double> values(grid->cell_count(), value);
  return create(std::move(grid), std::move(values));
}

bool SimpleFunction::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

double SimpleFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

SimpleFunction SimpleFunction::scaled(double c) const {
  std::vector<double> values(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) values[i] = values_[i] * c;
  return create(grid_, std::move(values));
}

SimpleFunction add(const SimpleFunction& a, const SimpleFunction& b) {
  require_same_grid(a.grid(), b.grid(), "summands");
  std::vector<double> values(a.values().size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = a.values()[i] + b.values()[i];
  }
  return SimpleFunction::create(a.grid(), std::move(values));
}

FunctionSequence FunctionSequence::create(GridPtr grid,
                                          std::vector<SimpleFunction> components) {
  if (!grid) throw ValidationError("function sequence needs a grid");
  if (components.empty()) {
    throw ValidationError("function sequence needs at least one component");
  }
  for (std::size_t nu = 0; nu < components.size(); ++nu) {
    require_same_grid(grid, components[nu].grid(), "sequence and component");
  }
  return FunctionSequence(std::move(grid), std::move(components));
}

bool FunctionSequence::is_zero() const {
  return std::all_of(components_.begin(), components_.end(),
                     [](const SimpleFunction& f) { return f.is_zero(); });
}

double FunctionSequence::max_abs() const {
  double m = 0.0;
  for (const auto& f : components_) m = std::max(m, f.max_abs());
  return m;
}

FunctionSequence FunctionSequence::scaled(double c) const {
  std::vector<SimpleFunction> components;
  components.reserve(components_.size());
  for (const auto& f : components_) components.push_back(f.scaled(c));
  return FunctionSequence(grid_, std::move(components));
}

FunctionSequence FunctionSequence::padded_to(std::size_t n) const {
  if (n <= components_.size()) return *this;
  std::vector<SimpleFunction> components = components_;
  while (components.size() < n) components.push_back(SimpleFunction::zero(grid_));
  return FunctionSequence(grid_, std::move(components));
}

FunctionSequence add(const FunctionSequence& a, const FunctionSequence& b) {
  require_same_grid(a.grid(), b.grid(), "sequence summands");
  const std::size_t n = std::max(a.size(), b.size());
  const FunctionSequence ap = a.padded_to(n);
  const FunctionSequence bp = b.padded_to(n);
  std::vector<SimpleFunction> components;
  components.reserve(n);
  for (std::size_t nu = 0; nu < n; ++nu) {
    components.push_back(add(ap.component(nu), bp.component(nu)));
  }
  return FunctionSequence::create(a.grid(), std::move(components));
}

}  // namespace vexl
