#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace vexl::kernels {

/// Kernel execution policy. Auto picks the parallel path for large spans
/// when OpenMP is available, the serial reference otherwise. Both paths
/// evaluate the identical per-cell expression and accumulate in fixed cell
/// order, so results are bitwise equal regardless of policy or thread count.
enum class Exec { Auto, Serial, Parallel };

/// Cell count at or above which Auto dispatches to the parallel path.
inline constexpr std::size_t parallel_threshold = 8192;

/// One cell of a variable-exponent power sum:
///   |v * scale|^p * m,  evaluated as exp(p * log(|v| * scale)) * m,
/// with v == 0 short-circuited to 0. Overflow yields +inf, never a clamp.
inline double power_term(double v, double p, double m, double scale) {
  const double av = std::abs(v);
  if (av == 0.0) return 0.0;
  return std::exp(p * std::log(av * scale)) * m;
}

/// One cell of the lambda-weighted power sum:
///   |v * scale|^p * lambda^{-p/q} * m,
/// evaluated as exp(p * log(|v| * scale) - (p/q) * log_lambda) * m.
/// Passing log_lambda == 0 reproduces power_term bit for bit.
inline double scaled_power_term(double v, double p, double q, double m,
                                double scale, double log_lambda) {
  const double av = std::abs(v);
  if (av == 0.0) return 0.0;
  return std::exp(p * std::log(av * scale) - (p / q) * log_lambda) * m;
}

/// sum_i |v_i * scale|^{p_i} * m_i over all cells.
double modular_sum(std::span<const double> v, std::span<const double> p,
                   std::span<const double> m, double scale,
                   Exec exec = Exec::Auto);

/// sum_i |v_i * scale|^{p_i} * lambda^{-p_i/q_i} * m_i over all cells.
double scaled_modular_sum(std::span<const double> v, std::span<const double> p,
                          std::span<const double> q, std::span<const double> m,
                          double scale, double lambda, Exec exec = Exec::Auto);

/// Index of the first cell whose term is non-finite, or SIZE_MAX if none.
/// Serial by construction; used only on error-reporting paths.
std::size_t first_nonfinite_term(std::span<const double> v,
                                 std::span<const double> p,
                                 std::span<const double> m, double scale);
std::size_t first_nonfinite_scaled_term(std::span<const double> v,
                                        std::span<const double> p,
                                        std::span<const double> q,
                                        std::span<const double> m, double scale,
                                        double lambda);

}  // namespace vexl::kernels
