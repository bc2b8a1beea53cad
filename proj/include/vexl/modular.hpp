#pragma once

#include "vexl/grid.hpp"
#include "vexl/kernels.hpp"

namespace vexl {

/// The elementary variable-exponent modular
///   rho_p(f) = sum_cells |f|^{p} * measure,
/// an exact finite sum for simple functions. Zero exactly when f is zero.
/// Throws OverflowError naming the first offending cell if any term is
/// non-finite, and GridMismatchError if f and p live on different grids.
double modular_p(const SimpleFunction& f, const ExponentField& p,
                 kernels::Exec exec = kernels::Exec::Auto);

/// The lambda-weighted component modular
///   sum_cells |f|^{p} * lambda^{-p/q} * measure,
/// i.e. rho_p(f / lambda^{1/q(.)}). Strictly decreasing and continuous in
/// lambda when f != 0, diverging as lambda -> 0+ and vanishing as
/// lambda -> inf. Throws on grid mismatch, lambda <= 0, or overflow (the
/// message reports the lambda and the cell).
double scaled_component_modular(const SimpleFunction& f, const ExponentField& p,
                                const ExponentField& q, double lambda,
                                kernels::Exec exec = kernels::Exec::Auto);

}  // namespace vexl
