#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "vexl/grid.hpp"
#include "vexl/modular.hpp"

using namespace vexl;

namespace {

struct Draw {
  GridPtr grid;
  ExponentField p;
  ExponentField q;
  SimpleFunction f;
  SimpleFunction g;
};

Draw random_draw(std::uint64_t seed, std::size_t cells) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> meas(0.05, 1.0);
  std::uniform_real_distribution<double> expo(1.3, 4.0);
  std::uniform_real_distribution<double> value(-2.0, 2.0);

  std::vector<double> m, pv, qv, fv, gv;
  for (std::size_t i = 0; i < cells; ++i) m.push_back(meas(eng));
  auto grid = Grid::create(1, m);
  for (std::size_t i = 0; i < cells; ++i) pv.push_back(expo(eng));
  for (std::size_t i = 0; i < cells; ++i) qv.push_back(expo(eng));
  for (std::size_t i = 0; i < cells; ++i) fv.push_back(value(eng));
  for (std::size_t i = 0; i < cells; ++i) gv.push_back(value(eng));
  fv[0] = 1.0;  // keep f away from zero so strictness claims apply

  return Draw{grid, ExponentField::normable(grid, pv),
              ExponentField::normable(grid, qv),
              SimpleFunction::create(grid, fv),
              SimpleFunction::create(grid, gv)};
}

}  // namespace

TEST_CASE("elementary modular reproduces hand values") {
  auto unit = Grid::create(1, {1.0});
  auto p2 = ExponentField::constant(unit, 2.0);

  CHECK(modular_p(SimpleFunction::zero(unit), p2) == 0.0);
  CHECK(modular_p(SimpleFunction::constant(unit, 3.0), p2) ==
        doctest::Approx(9.0).epsilon(1e-14));

  auto halves = Grid::create(1, {0.5, 0.5});
  auto p23 = ExponentField::normable(halves, {2.0, 3.0});
  CHECK(modular_p(SimpleFunction::constant(halves, 2.0), p23) ==
        doctest::Approx(6.0).epsilon(1e-14));

  // Sign never matters.
  CHECK(modular_p(SimpleFunction::create(halves, {-2.0, 2.0}), p23) ==
        doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("modular rejects mismatched grids and overflow names the cell") {
  auto a = Grid::create(1, {1.0});
  auto b = Grid::create(1, {2.0});
  auto p = ExponentField::constant(a, 2.0);
  CHECK_THROWS_AS(modular_p(SimpleFunction::constant(b, 1.0), p),
                  GridMismatchError);

  auto two = Grid::create(1, {1.0, 1.0});
  auto wild = ExponentField::normable(two, {2.0, 300.0});
  auto f = SimpleFunction::create(two, {1.0, 1e300});
  try {
    modular_p(f, wild);
    FAIL("expected overflow");
  } catch (const OverflowError& e) {
    CHECK(e.cell() == 1);
  }
}

TEST_CASE("weighted component modular reproduces hand values") {
  auto unit = Grid::create(1, {1.0});
  auto p2 = ExponentField::constant(unit, 2.0);
  auto q2 = ExponentField::constant(unit, 2.0);

  auto one = SimpleFunction::constant(unit, 1.0);
  // |1|^2 * 4^{-2/2} * 1 = 1/4.
  CHECK(scaled_component_modular(one, p2, q2, 4.0) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(scaled_component_modular(SimpleFunction::zero(unit), p2, q2, 7.0) ==
        0.0);

  CHECK_THROWS_AS(scaled_component_modular(one, p2, q2, 0.0), ValidationError);
  CHECK_THROWS_AS(scaled_component_modular(one, p2, q2, -1.0), ValidationError);

  auto two = Grid::create(1, {1.0, 1.0});
  auto p = ExponentField::constant(two, 2.0);
  auto q = ExponentField::constant(two, 1.0);
  auto big = SimpleFunction::create(two, {1.0, 1e300});
  auto wild = ExponentField::relaxed(two, {2.0, 300.0});
  try {
    scaled_component_modular(big, wild, q, 1.0);
    FAIL("expected overflow");
  } catch (const OverflowError& e) {
    CHECK(e.cell() == 1);
  }
  (void)p;
}

TEST_CASE("unit weight collapses to the plain modular") {
  for (std::uint64_t seed : {3u, 17u, 91u}) {
    const Draw d = random_draw(seed, 6);
    CHECK(scaled_component_modular(d.f, d.p, d.q, 1.0) ==
          modular_p(d.f, d.p));
  }
}

TEST_CASE("modular grows with scale and respects domination") {
  for (std::uint64_t seed : {5u, 23u, 77u, 131u}) {
    const Draw d = random_draw(seed, 8);

    const double at1 = modular_p(d.f, d.p);
    const double at2 = modular_p(d.f.scaled(2.0), d.p);
    const double at_half = modular_p(d.f.scaled(0.5), d.p);
    CHECK(at_half < at1);
    CHECK(at1 < at2);

    // Shrinking every cell value cannot increase the modular.
    std::vector<double> shrunk(d.f.values().begin(), d.f.values().end());
    std::mt19937_64 eng(seed ^ 0xabcdef);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (auto& x : shrunk) x *= unit(eng);
    const double dominated =
        modular_p(SimpleFunction::create(d.f.grid(), shrunk), d.p);
    CHECK(dominated <= at1);
  }
}

TEST_CASE("modular is convex along segments") {
  for (std::uint64_t seed : {7u, 29u, 101u}) {
    const Draw d = random_draw(seed, 8);
    for (double theta : {0.25, 0.5, 0.75}) {
      const SimpleFunction mix =
          add(d.f.scaled(theta), d.g.scaled(1.0 - theta));
      const double lhs = modular_p(mix, d.p);
      const double rhs =
          theta * modular_p(d.f, d.p) + (1.0 - theta) * modular_p(d.g, d.p);
      CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("weighted modular is strictly decreasing in lambda") {
  for (std::uint64_t seed : {9u, 41u}) {
    const Draw d = random_draw(seed, 6);
    double prev = scaled_component_modular(d.f, d.p, d.q, 0.25);
    for (double lambda : {0.5, 1.0, 2.0, 4.0, 16.0}) {
      const double cur = scaled_component_modular(d.f, d.p, d.q, lambda);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}
