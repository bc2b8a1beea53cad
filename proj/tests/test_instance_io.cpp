#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "vexl/instance_io.hpp"
#include "vexl/solver.hpp"
#include "vexl/verify.hpp"

using namespace vexl;

namespace {

const char* kMinimal = R"({
  "grid": {"dimension": 1, "cell_measures": [1.0]},
  "p": [2.0],
  "q": [2.0],
  "components": [[3.0]]
})";

bool parse_fails_mentioning(const std::string& text, const char* needle) {
  try {
    parse_instance_text(text);
    return false;
  } catch (const ParseError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() / "vexl-io-test";
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("a minimal instance file parses") {
  const InstanceFile file = parse_instance_text(kMinimal);
  CHECK(file.instance.f.size() == 1);
  CHECK(file.instance.f.component(0).values()[0] == 3.0);
  CHECK(file.instance.p.values()[0] == 2.0);
  CHECK_FALSE(file.allow_quasi);
  CHECK_FALSE(file.metadata.seed.has_value());
  CHECK(file.metadata.description.empty());
}

TEST_CASE("parse errors name the offending entry") {
  CHECK(parse_fails_mentioning(R"({
    "grid": {"dimension": 1, "cell_measures": [1.0]},
    "p": [1.0], "q": [2.0], "components": [[3.0]]
  })", "p[0]"));

  CHECK(parse_fails_mentioning(R"({
    "grid": {"dimension": 1, "cell_measures": [1.0, 0.0]},
    "p": [2.0, 2.0], "q": [2.0, 2.0], "components": [[3.0, 1.0]]
  })", "cell_measures[1]"));

  CHECK(parse_fails_mentioning(R"({
    "grid": {"dimension": 1, "cell_measures": [1.0]},
    "p": [2.0], "q": [2.0], "components": [[3.0], [1.0, 2.0]]
  })", "components[1]"));

  CHECK(parse_fails_mentioning(R"({
    "grid": {"dimension": 4, "cell_measures": [1.0]},
    "p": [2.0], "q": [2.0], "components": [[3.0]]
  })", "dimension"));

  // Unknown keys are a hard error, not silently dropped.
  CHECK(parse_fails_mentioning(R"({
    "grid": {"dimension": 1, "cell_measures": [1.0]},
    "p": [2.0], "q": [2.0], "components": [[3.0]], "extra": 1
  })", "extra"));

  CHECK(parse_fails_mentioning(R"({
    "grid": {"dimension": 1, "cell_measures": [1.0]},
    "p": [2.0], "q": [2.0], "components": [[3.0]], "allow_quasi": "yes"
  })", "allow_quasi"));

  CHECK(parse_fails_mentioning(R"({
    "grid": {"dimension": 1, "cell_measures": [1.0]},
    "p": [2.0], "q": [2.0], "components": [[3.0]],
    "metadata": {"seed": -4}
  })", "seed"));

  // Syntax errors surface the parser's line/column diagnostics.
  CHECK(parse_fails_mentioning("{\n  \"grid\": [,]\n}", "line"));
}

TEST_CASE("sub-unit exponents require the relaxed gate") {
  const std::string relaxed = R"({
    "grid": {"dimension": 1, "cell_measures": [1.0]},
    "p": [2.0],
    "q": [0.5],
    "components": [[3.0]],
    "allow_quasi": true
  })";
  const InstanceFile file = parse_instance_text(relaxed);
  CHECK(file.allow_quasi);
  CHECK_FALSE(file.instance.q.is_normable());

  CHECK(parse_fails_mentioning(R"({
    "grid": {"dimension": 1, "cell_measures": [1.0]},
    "p": [2.0], "q": [0.5], "components": [[3.0]]
  })", "q[0]"));
}

TEST_CASE("serialization round-trips bit for bit") {
  InstanceSpec spec;
  spec.seed = 99;
  spec.cell_count = 5;
  spec.component_count = 3;
  Instance inst = random_instance(spec);

  InstanceFile file{inst, false, {42, "round trip probe"}};
  const std::string text = serialize_instance(file);
  const InstanceFile back = parse_instance_text(text);

  CHECK(back.metadata.seed.has_value());
  CHECK(*back.metadata.seed == 42);
  CHECK(back.metadata.description == "round trip probe");

  REQUIRE(back.instance.f.size() == inst.f.size());
  for (std::size_t nu = 0; nu < inst.f.size(); ++nu) {
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(back.instance.f.component(nu).values()[i] ==
            inst.f.component(nu).values()[i]);
    }
  }
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(back.instance.p.values()[i] == inst.p.values()[i]);
    CHECK(back.instance.q.values()[i] == inst.q.values()[i]);
    CHECK(back.instance.f.grid()->measures()[i] ==
          inst.f.grid()->measures()[i]);
  }

  // The solved norm is a function of the parsed doubles alone, so the
  // round trip preserves it exactly.
  CHECK(mixed_norm(back.instance.f, back.instance.p, back.instance.q) ==
        mixed_norm(inst.f, inst.p, inst.q));

  // Serialization itself is deterministic.
  CHECK(serialize_instance(back) == text);
}

TEST_CASE("files land on disk atomically") {
  TempDir tmp;
  const std::string path = (tmp.path / "inst.json").string();

  InstanceSpec spec;
  spec.seed = 7;
  InstanceFile file{random_instance(spec), false, {{}, "disk probe"}};
  save_instance_file(file, path);

  CHECK(std::filesystem::exists(path));
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));

  const InstanceFile back = load_instance_file(path);
  CHECK(back.metadata.description == "disk probe");
  CHECK(serialize_instance(back) == serialize_instance(file));

  // Overwriting an existing file works the same way.
  save_instance_file(file, path);
  CHECK(std::filesystem::exists(path));

  try {
    load_instance_file((tmp.path / "missing.json").string());
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("missing.json") != std::string::npos);
  }
}
