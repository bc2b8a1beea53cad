#pragma once

#include <span>
#include <vector>

#include "vexl/grid.hpp"
#include "vexl/modular.hpp"

namespace vexl {

/// Root-finding knobs shared by every norm and weight solver.
struct SolverConfig {
  double rel_tolerance = 1e-12;
  int max_bisection_iters = 200;
  double bracket_growth = 2.0;
  int max_bracket_expansions = 200;

  /// Throws ValidationError on out-of-range values.
  void validate() const;

  /// Config for nested solves: one decade tighter, so inner error cannot
  /// flip the outer bisection branch near the root.
  SolverConfig inner() const {
    SolverConfig c = *this;
    c.rel_tolerance = rel_tolerance / 10.0;
    return c;
  }
};

/// Per-component nonnegative weights plus their sum.
class ComponentWeights {
 public:
  /// Total computed from the weights.
  static ComponentWeights from_weights(std::vector<double> weights);

  /// Total supplied externally; rejected unless it matches the recomputed
  /// sum to 1e-15 relative.
  static ComponentWeights checked(std::vector<double> weights, double total);

  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t nu) const { return weights_[nu]; }
  double total() const { return total_; }
  std::size_t size() const { return weights_.size(); }

 private:
  ComponentWeights(std::vector<double> weights, double total)
      : weights_(std::move(weights)), total_(total) {}

  std::vector<double> weights_;
  double total_;
};

/// Counters and flags a solve leaves behind for diagnostics output.
struct NormDiagnostics {
  int outer_iterations = 0;
  int evaluations = 0;
  bool relaxed_exponents = false;
};

/// Luxemburg norm inf{mu > 0 : rho_p(f/mu) <= 1}. For finite exponent
/// bounds the infimum is the unique root of rho_p(f/mu) = 1, located to
/// relative tolerance cfg.rel_tolerance. Zero for f = 0. Non-normable
/// exponents are accepted and flagged in diagnostics (quasi-norm value).
double luxemburg_norm(const SimpleFunction& f, const ExponentField& p,
                      const SolverConfig& cfg = {},
                      NormDiagnostics* diag = nullptr);

/// Per-component weight inf{lambda > 0 : rho_p(f_nu / lambda^{1/q(.)}) <= 1},
/// the unique root of the lambda-weighted component modular. Zero for
/// f_nu = 0.
double component_weight(const SimpleFunction& f_nu, const ExponentField& p,
                        const ExponentField& q, const SolverConfig& cfg = {},
                        NormDiagnostics* diag = nullptr);

/// Mixed modular: the sum of component weights over the sequence, exact
/// under zero-tail truncation since zero components contribute nothing.
/// Component solver failures are rethrown naming the failing index.
double mixed_modular(const FunctionSequence& f, const ExponentField& p,
                     const ExponentField& q, const SolverConfig& cfg = {});

/// Mixed norm inf{mu > 0 : mixed_modular(f/mu) <= 1} via an outer root
/// solve whose inner weight solves run one decade tighter. Zero for f = 0.
double mixed_norm(const FunctionSequence& f, const ExponentField& p,
                  const ExponentField& q, const SolverConfig& cfg = {},
                  NormDiagnostics* diag = nullptr);

/// The witness weights zeta_nu = component_weight(f_nu) for a sequence
/// inside the unit ball of the mixed modular. Requires
/// mixed_modular(f) <= 1 + cfg.rel_tolerance, else throws PremiseError
/// carrying the measured value. With positive_floor, zero weights are
/// replaced by 1e-300 so probes may divide by zeta_nu^{1/q(.)}.
ComponentWeights witness_decomposition(const FunctionSequence& f,
                                       const ExponentField& p,
                                       const ExponentField& q,
                                       const SolverConfig& cfg = {},
                                       bool positive_floor = false);

}  // namespace vexl
