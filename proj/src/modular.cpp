#include "vexl/modular.hpp"

#include <cmath>
#include <string>

namespace vexl {

double modular_p(const SimpleFunction& f, const ExponentField& p,
                 kernels::Exec exec) {
  require_same_grid(f.grid(), p.grid(), "function and exponent field");
  const auto m = f.grid()->measures();
  const double sum = kernels::modular_sum(f.values(), p.values(), m, 1.0, exec);
  if (!std::isfinite(sum)) {
    const std::size_t cell =
        kernels::first_nonfinite_term(f.values(), p.values(), m, 1.0);
    throw OverflowError("modular overflowed at cell " + std::to_string(cell),
                        cell);
  }
  return sum;
}

double scaled_component_modular(const SimpleFunction& f, const ExponentField& p,
                                const ExponentField& q, double lambda,
                                kernels::Exec exec) {
  require_same_grid(f.grid(), p.grid(), "function and exponent field p");
  require_same_grid(f.grid(), q.grid(), "function and exponent field q");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("lambda must be a positive finite real, got " +
                          std::to_string(lambda));
  }
  const auto m = f.grid()->measures();
  const double sum = kernels::scaled_modular_sum(f.values(), p.values(),
                                                 q.values(), m, 1.0, lambda, exec);
  if (!std::isfinite(sum)) {
    const std::size_t cell = kernels::first_nonfinite_scaled_term(
        f.values(), p.values(), q.values(), m, 1.0, lambda);
    throw OverflowError("component modular overflowed at cell " +
                            std::to_string(cell) + " (lambda = " +
                            std::to_string(lambda) + ")",
                        cell);
  }
  return sum;
}

}  // namespace vexl
