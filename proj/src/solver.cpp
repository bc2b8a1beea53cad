#include "vexl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "root_solve.hpp"
#include "vexl/errors.hpp"

namespace vexl {

namespace {

constexpr double kZetaFloor = 1e-300;

// rho_p(scale * f / mu) as a power sum in mu. Coefficients are assembled
// in log space so extreme amplitudes cannot overflow before the solve
// even starts.
detail::PowerSum norm_sum(const SimpleFunction& f, const ExponentField& p,
                          double scale) {
  const auto values = f.values();
  const auto exponents = p.values();
  const auto measures = f.grid()->measures();
  const double log_scale = std::log(scale);
  detail::PowerSum sum;
  sum.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double av = std::fabs(values[i]);
    if (av == 0.0) continue;
    sum.add_term(
        exponents[i] * (std::log(av) + log_scale) + std::log(measures[i]),
        exponents[i]);
  }
  return sum;
}

// The lambda-weighted component modular of scale * f_nu as a power sum in
// lambda; exponents p(x)/q(x) per cell.
detail::PowerSum weight_sum(const SimpleFunction& f_nu, const ExponentField& p,
                            const ExponentField& q, double scale) {
  const auto values = f_nu.values();
  const auto pe = p.values();
  const auto qe = q.values();
  const auto measures = f_nu.grid()->measures();
  const double log_scale = std::log(scale);
  detail::PowerSum sum;
  sum.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double av = std::fabs(values[i]);
    if (av == 0.0) continue;
    sum.add_term(pe[i] * (std::log(av) + log_scale) + std::log(measures[i]),
                 pe[i] / qe[i]);
  }
  return sum;
}

double solve_weight(const SimpleFunction& f_nu, const ExponentField& p,
                    const ExponentField& q, double scale,
                    const SolverConfig& cfg, detail::SolveStats* stats,
                    const std::string& label) {
  const auto sum = weight_sum(f_nu, p, q, scale);
  return detail::solve_power_sum_unit_crossing(sum, cfg, stats, label);
}

void require_fields(const FunctionSequence& f, const ExponentField& p,
                    const ExponentField& q, const char* what) {
  require_same_grid(f.grid(), p.grid(), what);
  require_same_grid(f.grid(), q.grid(), what);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(rel_tolerance > 0.0) || !(rel_tolerance < 1.0)) {
    throw ValidationError("SolverConfig: rel_tolerance must lie in (0, 1)");
  }
  if (max_bisection_iters < 1) {
    throw ValidationError("SolverConfig: max_bisection_iters must be >= 1");
  }
  if (!(bracket_growth > 1.0) || !std::isfinite(bracket_growth)) {
    throw ValidationError(
        "SolverConfig: bracket_growth must be finite and > 1");
  }
  if (max_bracket_expansions < 1) {
    throw ValidationError(
        "SolverConfig: max_bracket_expansions must be >= 1");
  }
}

ComponentWeights ComponentWeights::from_weights(std::vector<double> weights) {
  double total = 0.0;
  for (std::size_t nu = 0; nu < weights.size(); ++nu) {
    const double w = weights[nu];
    if (!std::isfinite(w) || w < 0.0) {
      throw ValidationError("ComponentWeights: weight " + std::to_string(nu) +
                            " must be finite and nonnegative");
    }
    total += w;
  }
  return ComponentWeights(std::move(weights), total);
}

ComponentWeights ComponentWeights::checked(std::vector<double> weights,
                                           double total) {
  ComponentWeights built = from_weights(std::move(weights));
  const double reference = std::max(1.0, std::fabs(built.total_));
  if (std::fabs(total - built.total_) > 1e-15 * reference) {
    throw ValidationError(
        "ComponentWeights: stated total disagrees with the recomputed sum");
  }
  built.total_ = total;
  return built;
}

double luxemburg_norm(const SimpleFunction& f, const ExponentField& p,
                      const SolverConfig& cfg, NormDiagnostics* diag) {
  cfg.validate();
  require_same_grid(f.grid(), p.grid(), "luxemburg_norm");
  if (diag) {
    *diag = NormDiagnostics{};
    diag->relaxed_exponents = !p.is_normable();
  }
  if (f.is_zero()) return 0.0;

  detail::SolveStats stats;
  const auto sum = norm_sum(f, p, 1.0);
  const double mu =
      detail::solve_power_sum_unit_crossing(sum, cfg, &stats, "luxemburg_norm");
  if (diag) {
    diag->outer_iterations = stats.iterations;
    diag->evaluations = stats.evaluations;
  }
  return mu;
}

double component_weight(const SimpleFunction& f_nu, const ExponentField& p,
                        const ExponentField& q, const SolverConfig& cfg,
                        NormDiagnostics* diag) {
  cfg.validate();
  require_same_grid(f_nu.grid(), p.grid(), "component_weight");
  require_same_grid(f_nu.grid(), q.grid(), "component_weight");
  if (diag) {
    *diag = NormDiagnostics{};
    diag->relaxed_exponents = !p.is_normable() || !q.is_normable();
  }
  if (f_nu.is_zero()) return 0.0;

  detail::SolveStats stats;
  const double lambda =
      solve_weight(f_nu, p, q, 1.0, cfg, &stats, "component_weight");
  if (diag) {
    diag->outer_iterations = stats.iterations;
    diag->evaluations = stats.evaluations;
  }
  return lambda;
}

double mixed_modular(const FunctionSequence& f, const ExponentField& p,
                     const ExponentField& q, const SolverConfig& cfg) {
  cfg.validate();
  require_fields(f, p, q, "mixed_modular");
  double total = 0.0;
  for (std::size_t nu = 0; nu < f.size(); ++nu) {
    const SimpleFunction& comp = f.component(nu);
    if (comp.is_zero()) continue;
    total += solve_weight(comp, p, q, 1.0, cfg, nullptr,
                          "mixed_modular: component " + std::to_string(nu));
  }
  return total;
}

double mixed_norm(const FunctionSequence& f, const ExponentField& p,
                  const ExponentField& q, const SolverConfig& cfg,
                  NormDiagnostics* diag) {
  cfg.validate();
  require_fields(f, p, q, "mixed_norm");
  if (diag) {
    *diag = NormDiagnostics{};
    diag->relaxed_exponents = !p.is_normable() || !q.is_normable();
  }
  if (f.is_zero()) return 0.0;

  const SolverConfig inner = cfg.inner();
  int inner_evals = 0;
  auto h = [&](double mu) {
    double total = 0.0;
    for (std::size_t nu = 0; nu < f.size(); ++nu) {
      const SimpleFunction& comp = f.component(nu);
      if (comp.is_zero()) continue;
      detail::SolveStats stats;
      total +=
          solve_weight(comp, p, q, 1.0 / mu, inner, &stats,
                       "mixed_norm: component " + std::to_string(nu));
      inner_evals += stats.evaluations;
    }
    return total;
  };

  // Start where the largest single cell term of any component norm equals
  // one: every inner weight is then >= 1 for at least one component and
  // bounded above, so the first outer evaluation is finite and nonzero.
  double guess_log = -std::numeric_limits<double>::infinity();
  for (std::size_t nu = 0; nu < f.size(); ++nu) {
    const SimpleFunction& comp = f.component(nu);
    if (comp.is_zero()) continue;
    const auto sum = norm_sum(comp, p, 1.0);
    guess_log = std::max(guess_log, std::log(sum.initial_guess()));
  }
  const double mu0 = detail::exp_clamped(guess_log);

  const auto qe = q.values();
  const auto [q_lo, q_hi] = std::minmax_element(qe.begin(), qe.end());

  detail::SolveStats stats;
  const double mu = detail::solve_unit_crossing(h, mu0, *q_lo, *q_hi, cfg,
                                                &stats, "mixed_norm");
  if (diag) {
    diag->outer_iterations = stats.iterations;
    diag->evaluations = stats.evaluations + inner_evals;
  }
  return mu;
}

ComponentWeights witness_decomposition(const FunctionSequence& f,
                                       const ExponentField& p,
                                       const ExponentField& q,
                                       const SolverConfig& cfg,
                                       bool positive_floor) {
  cfg.validate();
  require_fields(f, p, q, "witness_decomposition");
  std::vector<double> weights(f.size(), 0.0);
  double total = 0.0;
  for (std::size_t nu = 0; nu < f.size(); ++nu) {
    const SimpleFunction& comp = f.component(nu);
    if (comp.is_zero()) continue;
    weights[nu] =
        solve_weight(comp, p, q, 1.0, cfg, nullptr,
                     "witness_decomposition: component " + std::to_string(nu));
    total += weights[nu];
  }
  if (total > 1.0 + cfg.rel_tolerance) {
    throw PremiseError(
        "witness_decomposition: mixed modular exceeds the unit ball", total);
  }
  if (positive_floor) {
    for (double& w : weights) {
      if (w == 0.0) w = kZetaFloor;
    }
  }
  return ComponentWeights::from_weights(std::move(weights));
}

}  // namespace vexl
