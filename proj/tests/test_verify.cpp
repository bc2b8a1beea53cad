#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "vexl/grid.hpp"
#include "vexl/modular.hpp"
#include "vexl/solver.hpp"
#include "vexl/verify.hpp"

using namespace vexl;

namespace {

bool note_contains(const ProbeReport& rep, const char* needle) {
  return rep.note.find(needle) != std::string::npos;
}

// Unit cell, constant exponent 2 on both layers, one component each for
// f and g. The crossing solves in closed form, so every branch of the
// lemma probes can be pinned by hand.
struct HandSetup {
  GridPtr grid = Grid::create(1, {1.0});
  ExponentField p = ExponentField::constant(grid, 2.0);
  ExponentField q = ExponentField::constant(grid, 2.0);
  FunctionSequence f =
      FunctionSequence::create(grid, {SimpleFunction::constant(grid, 1.0)});
  FunctionSequence g =
      FunctionSequence::create(grid, {SimpleFunction::constant(grid, 1.0)});
  ComponentWeights zeta = ComponentWeights::from_weights({1.0});
};

}  // namespace

TEST_CASE("instance specs validate their fields") {
  InstanceSpec spec;
  CHECK_NOTHROW(spec.validate());

  InstanceSpec bad = spec;
  bad.amplitude = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = spec;
  bad.p_range = {0.9, 2.0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad.allow_quasi = true;
  CHECK_NOTHROW(bad.validate());
  bad.p_range = {0.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = spec;
  bad.q_range = {3.0, 2.0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = spec;
  bad.cell_count = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = spec;
  bad.component_count = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);

  bad = spec;
  bad.dimension = 4;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("derived seeds are stable and distinct") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  CHECK(derive_seed(0, 0) != 0);
}

TEST_CASE("random instances are deterministic and in range") {
  InstanceSpec spec;
  spec.seed = 77;
  spec.cell_count = 6;
  spec.component_count = 3;
  spec.amplitude = 2.5;

  const Instance a = random_instance(spec);
  const Instance b = random_instance(spec);

  CHECK(a.f.size() == 3);
  CHECK(a.f.grid()->cell_count() == 6);
  CHECK_FALSE(a.f.is_zero());

  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(a.f.grid()->measures()[i] >= 0.05);
    CHECK(a.f.grid()->measures()[i] <= 1.05);
    CHECK(a.p.values()[i] >= spec.p_range.first);
    CHECK(a.p.values()[i] <= spec.p_range.second);
    CHECK(a.q.values()[i] >= spec.q_range.first);
    CHECK(a.q.values()[i] <= spec.q_range.second);
    CHECK(b.f.grid()->measures()[i] == a.f.grid()->measures()[i]);
    CHECK(b.p.values()[i] == a.p.values()[i]);
  }
  for (std::size_t nu = 0; nu < 3; ++nu) {
    for (std::size_t i = 0; i < 6; ++i) {
      const double x = a.f.component(nu).values()[i];
      CHECK(std::fabs(x) <= 2.5);
      CHECK(b.f.component(nu).values()[i] == x);
    }
  }

  const InstancePair pair = random_instance_pair(spec);
  CHECK(pair.f.grid()->same_as(*pair.g.grid()));
  CHECK(pair.f.component(0).values()[0] == a.f.component(0).values()[0]);

  InstanceSpec other = spec;
  other.seed = 78;
  const Instance c = random_instance(other);
  CHECK(c.f.component(0).values()[0] != a.f.component(0).values()[0]);
}

TEST_CASE("triangle check measures both sides") {
  auto unit = Grid::create(1, {1.0});
  auto p2 = ExponentField::constant(unit, 2.0);
  auto q2 = ExponentField::constant(unit, 2.0);

  // Disjoint components: |f+g| = (3, 4) has norm 5 against 3 + 4.
  auto f = FunctionSequence::create(
      unit, {SimpleFunction::constant(unit, 3.0), SimpleFunction::zero(unit)});
  auto g = FunctionSequence::create(
      unit, {SimpleFunction::zero(unit), SimpleFunction::constant(unit, 4.0)});
  const ProbeReport rep = triangle_check(f, g, p2, q2);
  CHECK(rep.probe == "triangle");
  CHECK(rep.pass);
  CHECK(rep.lhs == doctest::Approx(5.0).epsilon(1e-11));
  CHECK(rep.rhs == doctest::Approx(7.0).epsilon(1e-11));
  CHECK(rep.margin == doctest::Approx(2.0).epsilon(1e-10));

  // g = f degenerates to equality.
  const ProbeReport eq = triangle_check(f, f, p2, q2);
  CHECK(eq.pass);
  CHECK(eq.lhs == doctest::Approx(eq.rhs).epsilon(1e-11));

  // Sequences of different lengths are padded, not rejected.
  auto shorter = FunctionSequence::create(
      unit, {SimpleFunction::constant(unit, 1.0)});
  CHECK_NOTHROW(triangle_check(f, shorter, p2, q2));
}

TEST_CASE("triangle holds across a random batch") {
  InstanceSpec spec;
  spec.seed = 2024;
  const SuiteResult suite = triangle_suite(spec, 25);
  REQUIRE(suite.rows.size() == 25);
  CHECK(suite.all_pass());
  CHECK(suite.passed() == 25);
  CHECK(suite.findings() == 0);
  for (std::size_t i = 0; i < suite.rows.size(); ++i) {
    CHECK(suite.rows[i].trial == static_cast<long long>(i));
    CHECK(suite.rows[i].seed == derive_seed(spec.seed, i));
    CHECK(suite.rows[i].probe == "triangle");
  }
}

TEST_CASE("strict convexity shows up at the midpoint") {
  auto unit = Grid::create(1, {1.0});
  auto p2 = ExponentField::constant(unit, 2.0);
  auto q2 = ExponentField::constant(unit, 2.0);

  // Unit vectors on disjoint components: the midpoint modular is 1/2.
  auto e1 = FunctionSequence::create(
      unit, {SimpleFunction::constant(unit, 1.0), SimpleFunction::zero(unit)});
  auto e2 = FunctionSequence::create(
      unit, {SimpleFunction::zero(unit), SimpleFunction::constant(unit, 1.0)});
  const ProbeReport rep = strict_convexity_probe(e1, e2, p2, q2);
  CHECK(rep.probe == "convexity");
  CHECK(rep.pass);
  CHECK(rep.lhs == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(rep.rhs == 1.0);

  // A positive multiple is flagged as the proportional branch, where the
  // midpoint modular sits exactly at 1.
  const ProbeReport prop = strict_convexity_probe(e1, e1.scaled(2.0), p2, q2);
  CHECK(prop.probe == "convexity-proportional");
  CHECK(prop.pass);
  CHECK(prop.lhs == doctest::Approx(1.0).epsilon(1e-10));

  auto zero = FunctionSequence::create(unit, {SimpleFunction::zero(unit)});
  CHECK_THROWS_AS(strict_convexity_probe(zero, e1, p2, q2), ValidationError);
  CHECK_THROWS_AS(strict_convexity_probe(e1, zero, p2, q2), ValidationError);
}

TEST_CASE("convexity holds across a random batch") {
  InstanceSpec spec;
  spec.seed = 31337;
  const SuiteResult suite = convexity_suite(spec, 25);
  REQUIRE(suite.rows.size() == 25);
  CHECK(suite.all_pass());
  for (const auto& row : suite.rows) {
    CHECK(row.probe == "convexity");
    CHECK(row.margin > 0.0);
  }
}

TEST_CASE("lemma crossing branches are pinned by hand values") {
  HandSetup h;

  // mu1 = 0.5, mu2 = 0.8: the symmetric map is (2/t)^2, so t* = 2 and
  // r* = 0.7 lies beyond delta = 0.3. The reductio branch closes.
  const ProbeReport contra =
      lemma_crossing_probe(h.f, h.g, h.zeta, 0, 0.5, 0.8, h.p, h.q);
  CHECK(contra.probe == "lemma-contradiction");
  CHECK_FALSE(contra.pass);
  CHECK(contra.finding);
  REQUIRE(contra.r_star.has_value());
  CHECK(*contra.r_star == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(contra.lhs == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(contra.rhs == doctest::Approx(0.3).epsilon(1e-12));

  // mu1 = 1.0, mu2 = 1.2: the premise modular (2/2.2)^2 < 1 fails.
  try {
    lemma_crossing_probe(h.f, h.g, h.zeta, 0, 1.0, 1.2, h.p, h.q);
    FAIL("expected a premise failure");
  } catch (const PremiseError& e) {
    CHECK(e.measured() ==
          doctest::Approx((2.0 / 2.2) * (2.0 / 2.2)).epsilon(1e-14));
  }

  // mu1 = mu2 = 0.4: degenerate interval, premise (2/0.8)^2 = 6.25.
  const ProbeReport degen =
      lemma_crossing_probe(h.f, h.g, h.zeta, 0, 0.4, 0.4, h.p, h.q);
  CHECK(degen.probe == "lemma-degenerate");
  CHECK(degen.pass);
  CHECK(degen.lhs == doctest::Approx(6.25).epsilon(1e-14));

  // mu2 below mu1 is rejected outright.
  CHECK_THROWS_AS(lemma_crossing_probe(h.f, h.g, h.zeta, 0, 0.8, 0.5, h.p, h.q),
                  ValidationError);
  // Component index beyond both sequences is rejected.
  CHECK_THROWS_AS(lemma_crossing_probe(h.f, h.g, h.zeta, 3, 0.5, 0.8, h.p, h.q),
                  ValidationError);
}

TEST_CASE("engineered lemma instances cross inside the interval") {
  InstanceSpec spec;
  spec.seed = 404;
  const LemmaInstance li = make_lemma_instance(spec);

  CHECK(li.mu1 < li.mu2);
  CHECK(li.mu1 > 1.0);
  CHECK(li.nu < li.f.size());
  for (std::size_t k = 0; k < li.zeta.size(); ++k) {
    CHECK(li.zeta.weight(k) > 0.0);
  }

  const ProbeReport rep = lemma_crossing_probe(li.f, li.g, li.zeta, li.nu,
                                               li.mu1, li.mu2, li.p, li.q);
  CHECK(rep.probe == "lemma-crossing");
  CHECK(rep.pass);
  CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.rhs > 1.0);
  REQUIRE(rep.r_star.has_value());
  CHECK(*rep.r_star > 0.0);
  CHECK(*rep.r_star <= li.mu2 - li.mu1);
}

TEST_CASE("lemma suite stays on the crossing branch") {
  InstanceSpec spec;
  spec.seed = 5150;
  const SuiteResult suite = lemma_suite(spec, 10);
  REQUIRE(suite.rows.size() == 10);
  CHECK(suite.all_pass());
  for (const auto& row : suite.rows) {
    CHECK(row.probe == "lemma-crossing");
  }
}

TEST_CASE("iterated crossing stops with an honest reason") {
  HandSetup h;

  // Premise already below 1: no stage runs, the partial sum is zero.
  const ProbeReport stop =
      iterated_crossing_search(h.f, h.g, h.zeta, 0, 1.0, 1.2, h.p, h.q);
  CHECK(stop.probe == "iterate-premise-stop");
  CHECK(stop.pass);
  CHECK(stop.series.empty());
  CHECK(stop.lhs == 0.0);
  CHECK(stop.rhs == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(note_contains(stop, "premise-stop"));
  CHECK(note_contains(stop, "terminal modular"));

  // Empty interval short-circuits before any stage.
  const ProbeReport degen =
      iterated_crossing_search(h.f, h.g, h.zeta, 0, 0.4, 0.4, h.p, h.q);
  CHECK(degen.probe == "iterate-degenerate");
  CHECK(degen.pass);
  CHECK(degen.series.empty());
}

TEST_CASE("iterated crossing on engineered instances exhausts the interval") {
  InstanceSpec spec;
  spec.seed = 8080;
  const LemmaInstance li = make_lemma_instance(spec);
  const ProbeReport rep = iterated_crossing_search(
      li.f, li.g, li.zeta, li.nu, li.mu1, li.mu2, li.p, li.q);

  const double delta = li.mu2 - li.mu1;
  CHECK(rep.lhs <= delta + 1e-11);
  CHECK(rep.rhs == doctest::Approx(delta).epsilon(1e-15));
  for (double r : rep.series) CHECK(r > 0.0);
  CHECK(note_contains(rep, "stages"));

  // The engineered premise holds with margin, so at least one stage runs.
  CHECK_FALSE(rep.series.empty());
}

TEST_CASE("constant exponent oracle agrees with the closed form") {
  auto unit = Grid::create(1, {1.0});
  auto f = FunctionSequence::create(
      unit,
      {SimpleFunction::constant(unit, 3.0), SimpleFunction::constant(unit, 4.0)});
  const ProbeReport rep = constant_exponent_oracle(f, 2.0, 2.0);
  CHECK(rep.probe == "oracle");
  CHECK(rep.pass);
  CHECK(rep.lhs == doctest::Approx(5.0).epsilon(1e-11));
  CHECK(rep.rhs == doctest::Approx(5.0).epsilon(1e-14));

  auto zero = FunctionSequence::create(unit, {SimpleFunction::zero(unit)});
  const ProbeReport zrep = constant_exponent_oracle(zero, 2.0, 2.0);
  CHECK(zrep.pass);
  CHECK(zrep.lhs == 0.0);
  CHECK(zrep.rhs == 0.0);

  CHECK_THROWS_AS(constant_exponent_oracle(f, 1.0, 2.0), ValidationError);
  CHECK_THROWS_AS(constant_exponent_oracle(f, 2.0, 0.5), ValidationError);
}

TEST_CASE("oracle suite sweeps the exponent lattice") {
  InstanceSpec spec;
  spec.seed = 616;
  const SuiteResult suite = oracle_suite(spec, 2);
  REQUIRE(suite.rows.size() == 32);
  CHECK(suite.all_pass());
  for (const auto& row : suite.rows) CHECK(row.probe == "oracle");
}

TEST_CASE("quasi scan needs the relaxed regime and finds violations there") {
  InstanceSpec normable;
  normable.seed = 9;
  CHECK_THROWS_AS(quasi_norm_boundary_scan(normable, 3), ValidationError);

  InstanceSpec spec;
  spec.seed = 9;
  spec.allow_quasi = true;
  spec.q_range = {0.4, 0.9};

  CHECK(quasi_norm_boundary_scan(spec, 0).empty());

  const std::vector<ProbeReport> rows = quasi_norm_boundary_scan(spec, 10);
  REQUIRE(rows.size() == 10);
  std::size_t violations = 0;
  for (const auto& row : rows) {
    if (row.probe == "quasi-violation") {
      ++violations;
      CHECK_FALSE(row.pass);
      CHECK(row.finding);
      CHECK(row.lhs > row.rhs);
    }
  }
  CHECK(violations >= 1);

  // Identical spec, identical rows.
  const std::vector<ProbeReport> again = quasi_norm_boundary_scan(spec, 10);
  REQUIRE(again.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(again[i].probe == rows[i].probe);
    CHECK(again[i].lhs == rows[i].lhs);
    CHECK(again[i].rhs == rows[i].rhs);
  }

  // With genuinely normable exponent draws the scan never flags anything,
  // even though the relaxed gate is open.
  InstanceSpec tame;
  tame.seed = 12;
  tame.allow_quasi = true;
  const std::vector<ProbeReport> calm = quasi_norm_boundary_scan(tame, 10);
  for (const auto& row : calm) {
    CHECK(row.probe == "quasi-triangle");
    CHECK(row.pass);
  }
}

TEST_CASE("quasi suite mirrors the scan with summary counts") {
  InstanceSpec spec;
  spec.seed = 9;
  spec.allow_quasi = true;
  spec.q_range = {0.4, 0.9};
  const SuiteResult suite = quasi_suite(spec, 10);
  REQUIRE(suite.rows.size() == 10);
  CHECK(suite.findings() >= 1);
  CHECK_FALSE(suite.all_pass());
  CHECK(suite.passed() == suite.rows.size() - suite.findings());
}

TEST_CASE("iterate suite reports structural rows") {
  InstanceSpec spec;
  spec.seed = 2600;
  const SuiteResult suite = iterate_suite(spec, 5);
  REQUIRE(suite.rows.size() == 5);
  for (const auto& row : suite.rows) {
    CHECK(row.probe.rfind("iterate-", 0) == 0);
    CHECK(row.lhs <= row.rhs + 1e-11);
    CHECK(row.tolerance > 0.0);
  }
}
