#include "vexl/kernels.hpp"

#include <cstdint>
#include <limits>
#include <vector>

#ifdef VEXL_HAVE_OPENMP
#include <omp.h>
#endif

namespace vexl::kernels {

namespace {

bool use_parallel(std::size_t n, Exec exec) {
#ifdef VEXL_HAVE_OPENMP
  if (exec == Exec::Parallel) return true;
  if (exec == Exec::Serial) return false;
  return n >= parallel_threshold && omp_get_max_threads() > 1;
#else
  (void)n;
  (void)exec;
  return false;
#endif
}

// Parallel fill of per-cell terms, then an ordered serial sum. The ordered
// sum keeps the addition sequence identical to the serial reference.
template <typename Term>
double parallel_ordered_sum(std::size_t n, Term term) {
  std::vector<double> terms(n);
#ifdef VEXL_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    terms[static_cast<std::size_t>(i)] = term(static_cast<std::size_t>(i));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += terms[i];
  return sum;
}

}  // namespace

double modular_sum(std::span<const double> v, std::span<const double> p,
                   std::span<const double> m, double scale, Exec exec) {
  const std::size_t n = v.size();
  if (use_parallel(n, exec)) {
    return parallel_ordered_sum(
        n, [&](std::size_t i) { return power_term(v[i], p[i], m[i], scale); });
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += power_term(v[i], p[i], m[i], scale);
  return sum;
}

double scaled_modular_sum(std::span<const double> v, std::span<const double> p,
                          std::span<const double> q, std::span<const double> m,
                          double scale, double lambda, Exec exec) {
  const std::size_t n = v.size();
  const double log_lambda = std::log(lambda);
  if (use_parallel(n, exec)) {
    return parallel_ordered_sum(n, [&](std::size_t i) {
      return scaled_power_term(v[i], p[i], q[i], m[i], scale, log_lambda);
    });
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += scaled_power_term(v[i], p[i], q[i], m[i], scale, log_lambda);
  }
  return sum;
}

std::size_t first_nonfinite_term(std::span<const double> v,
                                 std::span<const double> p,
                                 std::span<const double> m, double scale) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(power_term(v[i], p[i], m[i], scale))) return i;
  }
  return std::numeric_limits<std::size_t>::max();
}

std::size_t first_nonfinite_scaled_term(std::span<const double> v,
                                        std::span<const double> p,
                                        std::span<const double> q,
                                        std::span<const double> m, double scale,
                                        double lambda) {
  const double log_lambda = std::log(lambda);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(scaled_power_term(v[i], p[i], q[i], m[i], scale, log_lambda))) {
      return i;
    }
  }
  return std::numeric_limits<std::size_t>::max();
}

}  // namespace vexl::kernels
