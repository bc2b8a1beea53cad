#include <cstdio>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "vexl/errors.hpp"
#include "vexl/instance_io.hpp"
#include "vexl/report.hpp"
#include "vexl/solver.hpp"
#include "vexl/verify.hpp"

namespace {

double parse_double(const std::string& text, const std::string& flag) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw vexl::ValidationError(flag + ": expected a number, got \"" + text +
                                "\"");
  }
  if (pos != text.size()) {
    throw vexl::ValidationError(flag + ": trailing characters in \"" + text +
                                "\"");
  }
  return v;
}

std::pair<double, double> parse_range(const std::string& text,
                                      const std::string& flag) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) {
    const double v = parse_double(text, flag);
    return {v, v};
  }
  return {parse_double(text.substr(0, colon), flag),
          parse_double(text.substr(colon + 1), flag)};
}

// --tol beats VEXL_REL_TOL beats the built-in default; an environment
// override is echoed so reports stay auditable.
vexl::SolverConfig resolve_config(const std::optional<double>& tol_flag) {
  vexl::SolverConfig cfg;
  if (tol_flag) {
    cfg.rel_tolerance = *tol_flag;
  } else if (const char* env = std::getenv("VEXL_REL_TOL")) {
    cfg.rel_tolerance = parse_double(env, "VEXL_REL_TOL");
    std::fprintf(stderr, "tolerance %.17g taken from VEXL_REL_TOL\n",
                 cfg.rel_tolerance);
  }
  cfg.validate();
  return cfg;
}

void warn_if_relaxed(const vexl::InstanceFile& file) {
  if (!file.instance.p.is_normable() || !file.instance.q.is_normable()) {
    std::fprintf(stderr,
                 "warning: exponents below the normable floor; values are "
                 "quasi-norm quantities\n");
  }
}

void require_matching_exponents(const vexl::InstanceFile& a,
                                const vexl::InstanceFile& b) {
  vexl::require_same_grid(a.instance.f.grid(), b.instance.f.grid(),
                          "probe inputs");
  const auto pa = a.instance.p.values();
  const auto pb = b.instance.p.values();
  const auto qa = a.instance.q.values();
  const auto qb = b.instance.q.values();
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (pa[i] != pb[i] || qa[i] != qb[i]) {
      throw vexl::ValidationError(
          "probe inputs: the two instance files disagree on the exponents "
          "at cell " +
          std::to_string(i));
    }
  }
}

int finish_suite(const vexl::SuiteResult& result, const std::string& suite,
                 double tolerance, std::uint64_t master_seed,
                 const std::string& out_path) {
  vexl::write_report_file(result.rows, suite, tolerance, master_seed,
                          out_path);
  std::fprintf(stderr, "%s: %zu of %zu rows passed, %zu findings -> %s\n",
               suite.c_str(), result.passed(), result.rows.size(),
               result.findings(), out_path.c_str());
  return result.all_pass() ? 0 : 1;
}

struct SuiteFlags {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::size_t cells = 8;
  std::size_t components = 2;
  int dimension = 1;
  double amplitude = 1.0;
  std::string p_range;
  std::string q_range;
  std::string out = "vexl-report.csv";
};

void add_suite_flags(CLI::App* sub, SuiteFlags& flags) {
  sub->add_option("--seed", flags.seed, "master seed (default 1)");
  sub->add_option("--trials", flags.trials,
                  "trial count; for the oracle suite, trials per exponent "
                  "pair (default 100)");
  sub->add_option("--cells", flags.cells, "cells per grid (default 8)");
  sub->add_option("--components", flags.components,
                  "components per sequence (default 2)");
  sub->add_option("--dimension", flags.dimension,
                  "grid dimension 1..3 (default 1)");
  sub->add_option("--amplitude", flags.amplitude,
                  "value amplitude (default 1)");
  sub->add_option("--p", flags.p_range, "p exponent range lo:hi");
  sub->add_option("--q", flags.q_range, "q exponent range lo:hi");
  sub->add_option("--out", flags.out,
                  "report destination (default vexl-report.csv)");
}

vexl::InstanceSpec make_spec(const SuiteFlags& flags, bool quasi) {
  vexl::InstanceSpec spec;
  spec.seed = flags.seed;
  spec.dimension = flags.dimension;
  spec.cell_count = flags.cells;
  spec.component_count = flags.components;
  spec.amplitude = flags.amplitude;
  spec.allow_quasi = quasi;
  if (!flags.p_range.empty()) spec.p_range = parse_range(flags.p_range, "--p");
  if (!flags.q_range.empty()) {
    spec.q_range = parse_range(flags.q_range, "--q");
  } else if (quasi) {
    // without an explicit range, scan where the triangle inequality
    // actually has room to fail
    spec.q_range = {0.4, 0.9};
  }
  return spec;
}

int run(int argc, char** argv) {
  CLI::App app{
      "modulars, Luxemburg norms and structure probes for variable exponent "
      "sequence spaces"};
  app.require_subcommand(1);

  std::optional<double> tol_flag;
  app.add_option("--tol", tol_flag,
                 "relative root tolerance (default 1e-12; VEXL_REL_TOL "
                 "overrides the default, --tol overrides both)");

  std::string instance_path;
  std::size_t nu = 0;

  CLI::App* cmd_modular =
      app.add_subcommand("modular", "print the mixed modular of an instance");
  cmd_modular->add_option("--instance", instance_path, "instance file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* cmd_norm =
      app.add_subcommand("norm", "print the mixed norm of an instance");
  cmd_norm->add_option("--instance", instance_path, "instance file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* cmd_weight = app.add_subcommand(
      "component-weight", "print the weight of one component of an instance");
  cmd_weight->add_option("--instance", instance_path, "instance file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd_weight->add_option("--nu", nu, "component index")->required();

  SuiteFlags verify_flags;
  std::string verify_mode;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "run a bulk property suite and write a report");
  cmd_verify
      ->add_option("mode", verify_mode,
                   "one of triangle, convexity, oracle, quasi-scan")
      ->required()
      ->check(CLI::IsMember({"triangle", "convexity", "oracle", "quasi-scan"}));
  add_suite_flags(cmd_verify, verify_flags);

  SuiteFlags probe_flags;
  std::string probe_kind;
  std::string probe_g_path;
  double mu1 = 0.0;
  double mu2 = 0.0;
  std::vector<double> zeta_values;
  CLI::App* cmd_probe = app.add_subcommand(
      "probe", "run the crossing probes, seeded in bulk or on given files");
  cmd_probe->add_option("kind", probe_kind, "one of lemma, iterate")
      ->required()
      ->check(CLI::IsMember({"lemma", "iterate"}));
  add_suite_flags(cmd_probe, probe_flags);
  CLI::Option* probe_instance =
      cmd_probe
          ->add_option("--instance", instance_path,
                       "explicit mode: instance file holding f")
          ->check(CLI::ExistingFile);
  CLI::Option* probe_g =
      cmd_probe
          ->add_option("--g-instance", probe_g_path,
                       "explicit mode: instance file holding g")
          ->check(CLI::ExistingFile);
  CLI::Option* probe_nu =
      cmd_probe->add_option("--nu", nu, "explicit mode: probed component");
  CLI::Option* probe_mu1 =
      cmd_probe->add_option("--mu1", mu1, "explicit mode: smaller scale");
  CLI::Option* probe_mu2 =
      cmd_probe->add_option("--mu2", mu2, "explicit mode: larger scale");
  cmd_probe
      ->add_option("--zeta", zeta_values,
                   "explicit mode: comma separated component weights "
                   "(default: witness of the midpoint)")
      ->delimiter(',');
  probe_instance->needs(probe_g, probe_nu, probe_mu1, probe_mu2);
  probe_g->needs(probe_instance);

  SuiteFlags generate_flags;
  bool generate_quasi = false;
  std::string generate_description;
  CLI::App* cmd_generate = app.add_subcommand(
      "generate", "write a seeded random instance file");
  add_suite_flags(cmd_generate, generate_flags);
  cmd_generate->get_option("--out")->description("instance destination")
      ->required();
  cmd_generate->add_flag("--allow-quasi", generate_quasi,
                         "admit exponents in (0, 1]");
  cmd_generate->add_option("--description", generate_description,
                           "metadata description");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const vexl::SolverConfig cfg = resolve_config(tol_flag);

  if (cmd_modular->parsed()) {
    const vexl::InstanceFile file = vexl::load_instance_file(instance_path);
    warn_if_relaxed(file);
    const double value =
        vexl::mixed_modular(file.instance.f, file.instance.p, file.instance.q,
                            cfg);
    std::printf("%.17g\n", value);
    return 0;
  }

  if (cmd_norm->parsed()) {
    const vexl::InstanceFile file = vexl::load_instance_file(instance_path);
    warn_if_relaxed(file);
    vexl::NormDiagnostics diag;
    const double value = vexl::mixed_norm(file.instance.f, file.instance.p,
                                          file.instance.q, cfg, &diag);
    std::fprintf(stderr, "outer iterations %d, evaluations %d\n",
                 diag.outer_iterations, diag.evaluations);
    std::printf("%.17g\n", value);
    return 0;
  }

  if (cmd_weight->parsed()) {
    const vexl::InstanceFile file = vexl::load_instance_file(instance_path);
    warn_if_relaxed(file);
    if (nu >= file.instance.f.size()) {
      throw vexl::ValidationError("component index " + std::to_string(nu) +
                                  " out of range, instance has " +
                                  std::to_string(file.instance.f.size()) +
                                  " components");
    }
    const double value = vexl::component_weight(
        file.instance.f.component(nu), file.instance.p, file.instance.q, cfg);
    std::printf("%.17g\n", value);
    return 0;
  }

  if (cmd_verify->parsed()) {
    const bool quasi = verify_mode == "quasi-scan";
    const vexl::InstanceSpec spec = make_spec(verify_flags, quasi);
    vexl::SuiteResult result;
    if (verify_mode == "triangle") {
      result = vexl::triangle_suite(spec, verify_flags.trials, cfg);
    } else if (verify_mode == "convexity") {
      result = vexl::convexity_suite(spec, verify_flags.trials, cfg);
    } else if (verify_mode == "oracle") {
      result = vexl::oracle_suite(spec, verify_flags.trials, cfg);
    } else {
      result = vexl::quasi_suite(spec, verify_flags.trials, cfg);
    }
    return finish_suite(result, verify_mode, cfg.rel_tolerance, spec.seed,
                        verify_flags.out);
  }

  if (cmd_probe->parsed()) {
    if (*probe_instance) {
      const vexl::InstanceFile ff = vexl::load_instance_file(instance_path);
      const vexl::InstanceFile gf = vexl::load_instance_file(probe_g_path);
      require_matching_exponents(ff, gf);
      vexl::ComponentWeights zeta =
          zeta_values.empty()
              ? vexl::witness_decomposition(
                    vexl::add(ff.instance.f.scaled(1.0 / (2.0 * mu1)),
                              gf.instance.f.scaled(1.0 / (2.0 * mu2))),
                    ff.instance.p, ff.instance.q, cfg, true)
              : vexl::ComponentWeights::from_weights(zeta_values);
      if (zeta_values.empty()) {
        std::fprintf(stderr, "weights taken from the midpoint witness\n");
      }
      vexl::ProbeReport row =
          probe_kind == "lemma"
              ? vexl::lemma_crossing_probe(ff.instance.f, gf.instance.f, zeta,
                                           nu, mu1, mu2, ff.instance.p,
                                           ff.instance.q, cfg)
              : vexl::iterated_crossing_search(ff.instance.f, gf.instance.f,
                                               zeta, nu, mu1, mu2,
                                               ff.instance.p, ff.instance.q,
                                               cfg);
      if (!row.note.empty()) std::fprintf(stderr, "%s\n", row.note.c_str());
      vexl::SuiteResult result;
      result.rows.push_back(std::move(row));
      return finish_suite(result, probe_kind, cfg.rel_tolerance, 0,
                          probe_flags.out);
    }
    const vexl::InstanceSpec spec = make_spec(probe_flags, false);
    const vexl::SuiteResult result =
        probe_kind == "lemma"
            ? vexl::lemma_suite(spec, probe_flags.trials, cfg)
            : vexl::iterate_suite(spec, probe_flags.trials, cfg);
    return finish_suite(result, probe_kind, cfg.rel_tolerance, spec.seed,
                        probe_flags.out);
  }

  // generate
  const vexl::InstanceSpec spec = make_spec(generate_flags, generate_quasi);
  vexl::Instance instance = vexl::random_instance(spec);
  vexl::InstanceFile file{std::move(instance), generate_quasi,
                          vexl::InstanceMetadata{spec.seed,
                                                 generate_description}};
  vexl::save_instance_file(file, generate_flags.out);
  std::fprintf(stderr, "instance written to %s\n", generate_flags.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const vexl::NonConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const vexl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 2;
  }
}
