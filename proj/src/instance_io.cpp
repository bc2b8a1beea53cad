#include "vexl/instance_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vexl/errors.hpp"

namespace vexl {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) {
  throw ParseError("instance file: " + message);
}

const json& member(const json& obj, const char* key, const char* where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(std::string(where) + " is missing key \"" + key + "\"");
  }
  return *it;
}

// Typos in keys should not silently pass as defaults.
void reject_unknown_keys(const json& obj,
                         std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& item : obj.items()) {
    bool recognized = false;
    for (const char* key : known) recognized = recognized || item.key() == key;
    if (!recognized) {
      fail(std::string(where) + " has unknown key \"" + item.key() + "\"");
    }
  }
}

double number_at(const json& node, const std::string& entry) {
  if (!node.is_number()) fail(entry + " must be a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) fail(entry + " must be finite");
  return v;
}

std::vector<double> number_array(
    const json& node, const std::string& name,
    std::optional<std::size_t> expected = std::nullopt) {
  if (!node.is_array()) fail(name + " must be an array");
  if (expected && node.size() != *expected) {
    fail(name + " must have " + std::to_string(*expected) + " entries, got " +
         std::to_string(node.size()));
  }
  std::vector<double> out;
  out.reserve(node.size());
  std::size_t i = 0;
  for (const json& item : node) {
    out.push_back(number_at(item, name + "[" + std::to_string(i) + "]"));
    ++i;
  }
  return out;
}

void check_exponents(const std::vector<double>& values, bool allow_quasi,
                     const std::string& name) {
  const double floor = allow_quasi ? 0.0 : 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > floor)) {
      fail(name + "[" + std::to_string(i) + "] must exceed " +
           (allow_quasi ? "0" : "1 (set allow_quasi to admit it)") + ", got " +
           std::to_string(values[i]));
    }
  }
}

std::vector<double> to_vector(std::span<const double> values) {
  return std::vector<double>(values.begin(), values.end());
}

}  // namespace

InstanceFile parse_instance_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // the library message already names line and column
    fail(e.what());
  }
  if (!doc.is_object()) fail("top level must be an object");
  reject_unknown_keys(
      doc, {"grid", "p", "q", "components", "allow_quasi", "metadata"},
      "top level");

  bool allow_quasi = false;
  if (doc.contains("allow_quasi")) {
    const json& node = doc["allow_quasi"];
    if (!node.is_boolean()) fail("allow_quasi must be a boolean");
    allow_quasi = node.get<bool>();
  }

  const json& grid_node = member(doc, "grid", "top level");
  if (!grid_node.is_object()) fail("grid must be an object");
  reject_unknown_keys(grid_node, {"dimension", "cell_measures"}, "grid");
  const json& dim_node = member(grid_node, "dimension", "grid");
  if (!dim_node.is_number_integer()) fail("grid.dimension must be an integer");
  const long long dimension = dim_node.get<long long>();
  if (dimension < 1 || dimension > 3) fail("grid.dimension must be 1, 2 or 3");
  std::vector<double> measures = number_array(
      member(grid_node, "cell_measures", "grid"), "grid.cell_measures");
  if (measures.empty()) fail("grid.cell_measures must not be empty");
  for (std::size_t i = 0; i < measures.size(); ++i) {
    if (!(measures[i] > 0.0)) {
      fail("grid.cell_measures[" + std::to_string(i) + "] must be positive");
    }
  }
  const std::size_t cells = measures.size();

  std::vector<double> p_values =
      number_array(member(doc, "p", "top level"), "p", cells);
  std::vector<double> q_values =
      number_array(member(doc, "q", "top level"), "q", cells);
  check_exponents(p_values, allow_quasi, "p");
  check_exponents(q_values, allow_quasi, "q");

  const json& components_node = member(doc, "components", "top level");
  if (!components_node.is_array()) fail("components must be an array");
  if (components_node.empty()) {
    fail("components must hold at least one component");
  }

  InstanceMetadata metadata;
  if (doc.contains("metadata")) {
    const json& meta = doc["metadata"];
    if (!meta.is_object()) fail("metadata must be an object");
    reject_unknown_keys(meta, {"seed", "description"}, "metadata");
    if (meta.contains("seed")) {
      const json& seed = meta["seed"];
      if (!seed.is_number_unsigned() &&
          !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
        fail("metadata.seed must be a nonnegative integer");
      }
      metadata.seed = seed.get<std::uint64_t>();
    }
    if (meta.contains("description")) {
      const json& description = meta["description"];
      if (!description.is_string()) fail("metadata.description must be a string");
      metadata.description = description.get<std::string>();
    }
  }

  GridPtr grid = Grid::create(static_cast<int>(dimension), std::move(measures));
  std::vector<SimpleFunction> components;
  components.reserve(components_node.size());
  for (std::size_t nu = 0; nu < components_node.size(); ++nu) {
    std::vector<double> values =
        number_array(components_node[nu],
                     "components[" + std::to_string(nu) + "]", cells);
    components.push_back(SimpleFunction::create(grid, std::move(values)));
  }

  ExponentField p = allow_quasi
                        ? ExponentField::relaxed(grid, std::move(p_values))
                        : ExponentField::normable(grid, std::move(p_values));
  ExponentField q = allow_quasi
                        ? ExponentField::relaxed(grid, std::move(q_values))
                        : ExponentField::normable(grid, std::move(q_values));
  FunctionSequence f = FunctionSequence::create(grid, std::move(components));
  return InstanceFile{Instance{std::move(f), std::move(p), std::move(q)},
                      allow_quasi, std::move(metadata)};
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("instance file: cannot open \"" + path +
                     "\" for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw ParseError("instance file: read failure on \"" + path + "\"");
  }
  try {
    return parse_instance_text(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " (in " + path + ")");
  }
}

std::string serialize_instance(const InstanceFile& file) {
  const Instance& inst = file.instance;
  const GridPtr& grid = inst.f.grid();
  ordered_json doc;
  doc["grid"]["dimension"] = grid->dimension();
  doc["grid"]["cell_measures"] = to_vector(grid->measures());
  doc["p"] = to_vector(inst.p.values());
  doc["q"] = to_vector(inst.q.values());
  ordered_json components = ordered_json::array();
  for (std::size_t nu = 0; nu < inst.f.size(); ++nu) {
    components.push_back(to_vector(inst.f.component(nu).values()));
  }
  doc["components"] = std::move(components);
  doc["allow_quasi"] = file.allow_quasi;
  if (file.metadata.seed || !file.metadata.description.empty()) {
    ordered_json meta;
    if (file.metadata.seed) meta["seed"] = *file.metadata.seed;
    if (!file.metadata.description.empty()) {
      meta["description"] = file.metadata.description;
    }
    doc["metadata"] = std::move(meta);
  }
  return doc.dump(2) + "\n";
}

void save_instance_file(const InstanceFile& file, const std::string& path) {
  const std::string text = serialize_instance(file);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("instance file: cannot open \"" + tmp + "\" for writing");
    }
    out << text;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error("instance file: write failure on \"" + tmp + "\"");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("instance file: cannot move \"" + tmp + "\" into place at \"" +
                path + "\"");
  }
}

}  // namespace vexl
