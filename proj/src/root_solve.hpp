#pragma once

// Internal root-finding machinery shared by the norm and weight solvers.
// Not installed; include only from library sources.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "vexl/errors.hpp"
#include "vexl/solver.hpp"

namespace vexl::detail {

struct SolveStats {
  int iterations = 0;
  int evaluations = 0;
};

// Clamp a log-scale magnitude into safely representable territory before
// exponentiating, so a wild initial guess degrades into bracket work
// instead of an immediate inf or 0.
inline double exp_clamped(double log_x) {
  return std::exp(std::clamp(log_x, -690.0, 690.0));
}

// Solves h(x) = 1 for strictly decreasing h on (0, inf) that is squeezed
// between two power scalings with exponents 0 < e_min <= e_max, meaning
// for every s >= 1
//
//   h(x) * s^(-e_max) <= h(s * x) <= h(x) * s^(-e_min).
//
// One finite evaluation v = h(x) then pins the root inside
// x * [v^(1/e_max), v^(1/e_min)] (endpoints sorted), and log-space
// bisection finishes the job. Evaluations may return +inf (treated as
// above 1) or 0 (below 1); the bracket is nudged geometrically until a
// finite positive value appears. Returns x with relative bracket width
// at most cfg.rel_tolerance.
template <typename H>
double solve_unit_crossing(H&& h, double x0, double e_min, double e_max,
                           const SolverConfig& cfg, SolveStats* stats,
                           const std::string& label) {
  SolveStats local;
  SolveStats& st = stats ? *stats : local;

  auto eval = [&](double x) {
    ++st.evaluations;
    return h(x);
  };

  double x = x0;
  double v = eval(x);

  // Walk off any overflow or underflow plateau. h decreasing: +inf means
  // x is too small, 0 means x is too large.
  int moves = 0;
  while (!std::isfinite(v) || v == 0.0) {
    if (++moves > cfg.max_bracket_expansions) {
      throw NonConvergenceError(label +
                                ": no finite evaluation within bracket "
                                "expansion budget (pathological magnitudes)");
    }
    x = std::isfinite(v) ? x / cfg.bracket_growth : x * cfg.bracket_growth;
    v = eval(x);
  }
  if (v == 1.0) return x;

  // Analytic jump from the power-scaling envelope.
  const double log_v = std::log(v);
  const double jump_a = x * exp_clamped(log_v / e_max);
  const double jump_b = x * exp_clamped(log_v / e_min);
  double lo = std::min(jump_a, jump_b);
  double hi = std::max(jump_a, jump_b);

  // The envelope argument is exact in real arithmetic; re-check under
  // rounding and repair geometrically if an endpoint landed on the wrong
  // side. An endpoint that failed one side is still a valid bound for the
  // other (+inf counts as above 1, underflow to 0 as below).
  double v_lo = eval(lo);
  if (v_lo == 1.0) return lo;
  int repairs = 0;
  while (!(v_lo > 1.0)) {
    if (v_lo < 1.0) hi = std::min(hi, lo);
    if (++repairs > cfg.max_bracket_expansions) {
      throw NonConvergenceError(label + ": could not bracket the crossing "
                                        "from below");
    }
    lo /= cfg.bracket_growth;
    v_lo = eval(lo);
    if (v_lo == 1.0) return lo;
  }
  double v_hi = eval(hi);
  if (v_hi == 1.0) return hi;
  repairs = 0;
  while (!(v_hi < 1.0)) {
    if (v_hi > 1.0) lo = std::max(lo, hi);
    if (++repairs > cfg.max_bracket_expansions) {
      throw NonConvergenceError(label + ": could not bracket the crossing "
                                        "from above");
    }
    hi *= cfg.bracket_growth;
    v_hi = eval(hi);
    if (v_hi == 1.0) return hi;
  }

  // Geometric bisection: halve the log-width until the relative width
  // meets tolerance or the floating-point grid runs out.
  while (hi - lo > cfg.rel_tolerance * lo) {
    if (++st.iterations > cfg.max_bisection_iters) {
      throw NonConvergenceError(label + ": bisection iteration budget "
                                        "exhausted");
    }
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (mid <= lo || mid >= hi) break;
    const double v_mid = eval(mid);
    if (v_mid == 1.0) return mid;
    if (v_mid > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo) * std::sqrt(hi);
}

// Sum of power terms c_i * x^(-e_i), held as (log c_i, e_i) pairs so the
// solver can evaluate cheaply and start from an analytically sound guess.
// Terms with c_i = 0 are never added. An empty sum is identically zero.
class PowerSum {
 public:
  void reserve(std::size_t n) {
    log_c_.reserve(n);
    e_.reserve(n);
  }

  void add_term(double log_c, double e) {
    log_c_.push_back(log_c);
    e_.push_back(e);
  }

  bool empty() const { return log_c_.empty(); }
  std::size_t size() const { return log_c_.size(); }

  double operator()(double x) const {
    const double log_x = std::log(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < log_c_.size(); ++i) {
      sum += std::exp(log_c_[i] - e_[i] * log_x);
    }
    return sum;
  }

  // x where the largest single term equals one, so the full sum lies in
  // [1, size()] and the first evaluation is always finite.
  double initial_guess() const {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < log_c_.size(); ++i) {
      best = std::max(best, log_c_[i] / e_[i]);
    }
    return exp_clamped(best);
  }

  double e_min() const { return *std::min_element(e_.begin(), e_.end()); }
  double e_max() const { return *std::max_element(e_.begin(), e_.end()); }

 private:
  std::vector<double> log_c_;
  std::vector<double> e_;
};

inline double solve_power_sum_unit_crossing(const PowerSum& sum,
                                            const SolverConfig& cfg,
                                            SolveStats* stats,
                                            const std::string& label) {
  return solve_unit_crossing(sum, sum.initial_guess(), sum.e_min(),
                             sum.e_max(), cfg, stats, label);
}

// Solves h(x) = 1 for decreasing h when a lower endpoint with h(lo) > 1 is
// already known (caller-checked) and hi is a hint for the other side. The
// hint is grown geometrically until h drops below 1, then log-space
// bisection runs as above. For probe maps that are monotone but not pure
// power sums, so no envelope jump is available.
template <typename H>
double solve_decreasing_crossing(H&& h, double lo, double hi,
                                 const SolverConfig& cfg, SolveStats* stats,
                                 const std::string& label) {
  SolveStats local;
  SolveStats& st = stats ? *stats : local;

  double v_hi;
  int grows = 0;
  for (;;) {
    ++st.evaluations;
    v_hi = h(hi);
    if (v_hi == 1.0) return hi;
    if (v_hi < 1.0) break;
    lo = hi;
    hi *= cfg.bracket_growth;
    if (++grows > cfg.max_bracket_expansions) {
      throw NonConvergenceError(label + ": could not bracket the crossing "
                                        "from above");
    }
  }

  while (hi - lo > cfg.rel_tolerance * lo) {
    if (++st.iterations > cfg.max_bisection_iters) {
      throw NonConvergenceError(label + ": bisection iteration budget "
                                        "exhausted");
    }
    const double mid = std::sqrt(lo) * std::sqrt(hi);
    if (mid <= lo || mid >= hi) break;
    ++st.evaluations;
    const double v_mid = h(mid);
    if (v_mid == 1.0) return mid;
    if (v_mid > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::sqrt(lo) * std::sqrt(hi);
}

}  // namespace vexl::detail
