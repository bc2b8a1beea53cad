#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vexl/grid.hpp"
#include "vexl/solver.hpp"

namespace vexl {

/// Recipe for one deterministic random instance family.
struct InstanceSpec {
  std::uint64_t seed = 1;
  int dimension = 1;
  std::size_t cell_count = 8;
  std::size_t component_count = 2;
  std::pair<double, double> p_range{1.5, 4.0};
  std::pair<double, double> q_range{1.5, 4.0};
  double amplitude = 1.0;
  bool allow_quasi = false;

  /// Throws ValidationError: ranges must be ordered with lows above 1
  /// (above 0 when allow_quasi), amplitude positive, counts nonzero.
  void validate() const;
};

struct Instance {
  FunctionSequence f;
  ExponentField p;
  ExponentField q;
};

struct InstancePair {
  FunctionSequence f;
  FunctionSequence g;
  ExponentField p;
  ExponentField q;
};

/// Stable per-trial sub-seed, so concurrent trial execution reproduces the
/// sequential results exactly.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic in spec.seed. Cell measures uniform in [0.05, 1.05],
/// exponents uniform in their ranges, values uniform in
/// [-amplitude, amplitude]; at least one nonzero component guaranteed.
Instance random_instance(const InstanceSpec& spec);

/// Two sequences over one shared grid and exponent pair, same draws for
/// the shared parts followed by the second value set.
InstancePair random_instance_pair(const InstanceSpec& spec);

/// One row of evidence. The claim is always phrased as lhs <= rhs with
/// margin = rhs - lhs at full precision; the probe string names the check
/// and, where a probe has branches, the branch taken. finding marks rows
/// that record a noteworthy branch (counted separately from failures).
struct ProbeReport {
  long long trial = 0;
  std::string probe;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::optional<double> r_star;
  bool pass = true;
  bool finding = false;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> series;
  std::string note;
};

/// lhs = |f+g| norm, rhs = |f| + |g|; pass iff lhs <= rhs within 10x
/// relative tolerance. Sequences of different lengths are zero-padded.
ProbeReport triangle_check(const FunctionSequence& f, const FunctionSequence& g,
                           const ExponentField& p, const ExponentField& q,
                           const SolverConfig& cfg = {});

/// Midpoint modular m of the two normalized inputs: m < 1 strictly for
/// non-proportional f, g; m = 1 within tolerance when g is a positive
/// multiple of f. Rejects zero inputs.
ProbeReport strict_convexity_probe(const FunctionSequence& f,
                                   const FunctionSequence& g,
                                   const ExponentField& p,
                                   const ExponentField& q,
                                   const SolverConfig& cfg = {});

/// Locates r* with the symmetric component modular equal to 1 and checks
/// the asymmetric one strictly exceeds 1 there. Requires mu1 <= mu2,
/// cellwise nonnegative f and g, and the premise modular above 1 (else
/// PremiseError). Branches: lemma-crossing (normal), lemma-contradiction
/// (r* beyond mu2 - mu1, reported as a finding), lemma-degenerate
/// (mu1 == mu2).
ProbeReport lemma_crossing_probe(const FunctionSequence& f,
                                 const FunctionSequence& g,
                                 const ComponentWeights& zeta, std::size_t nu,
                                 double mu1, double mu2,
                                 const ExponentField& p,
                                 const ExponentField& q,
                                 const SolverConfig& cfg = {});

/// Repeats the crossing stagewise, shrinking the interval by each r_n.
/// Stops on stage premise failure, interval exhaustion (a finding when
/// the terminal modular is still at or above 1), stagnation, or the
/// stage cap. Reports partial sum (lhs) against mu2 - mu1 (rhs), the r_n
/// series, and the terminal two-sided modular in the note. The limit of
/// the series is recorded, never asserted.
ProbeReport iterated_crossing_search(const FunctionSequence& f,
                                     const FunctionSequence& g,
                                     const ComponentWeights& zeta,
                                     std::size_t nu, double mu1, double mu2,
                                     const ExponentField& p,
                                     const ExponentField& q,
                                     const SolverConfig& cfg = {});

/// Compares mixed_norm against the classical constant-exponent closed form
/// (sum of q-th powers of the p-norms, q-th root). lhs = computed,
/// rhs = closed form.
ProbeReport constant_exponent_oracle(const FunctionSequence& f, double p_const,
                                     double q_const,
                                     const SolverConfig& cfg = {});

/// Best-effort search for triangle violations with relaxed exponents.
/// Violations are findings; per-trial solver breakdowns are recorded, not
/// thrown. Exit-level semantics are up to the caller.
std::vector<ProbeReport> quasi_norm_boundary_scan(const InstanceSpec& spec,
                                                  std::size_t trials,
                                                  const SolverConfig& cfg = {});

/// A fully assembled input for the lemma and iteration probes: normalized
/// nonnegative pair, witness weights off the midpoint, and the probed
/// component's weight placed just above the value that would put the
/// crossing exactly at the interval end, so the premise holds with margin
/// and the crossing lands inside (0, mu2 - mu1).
struct LemmaInstance {
  FunctionSequence f;
  FunctionSequence g;
  ExponentField p;
  ExponentField q;
  ComponentWeights zeta;
  std::size_t nu;
  double mu1;
  double mu2;
};

LemmaInstance make_lemma_instance(const InstanceSpec& spec,
                                  const SolverConfig& cfg = {});

struct SuiteResult {
  std::vector<ProbeReport> rows;

  std::size_t passed() const;
  std::size_t findings() const;
  bool all_pass() const;
};

/// Bulk runners: trial i uses derive_seed(spec.seed, i) and lands in row i
/// regardless of execution order.
SuiteResult triangle_suite(const InstanceSpec& spec, std::size_t trials,
                           const SolverConfig& cfg = {});
SuiteResult convexity_suite(const InstanceSpec& spec, std::size_t trials,
                            const SolverConfig& cfg = {});
SuiteResult oracle_suite(const InstanceSpec& spec,
                         std::size_t trials_per_exponent,
                         const SolverConfig& cfg = {});
SuiteResult quasi_suite(const InstanceSpec& spec, std::size_t trials,
                        const SolverConfig& cfg = {});
SuiteResult lemma_suite(const InstanceSpec& spec, std::size_t trials,
                        const SolverConfig& cfg = {});
SuiteResult iterate_suite(const InstanceSpec& spec, std::size_t trials,
                          const SolverConfig& cfg = {});

}  // namespace vexl
