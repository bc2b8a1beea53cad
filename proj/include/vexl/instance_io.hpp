#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "vexl/verify.hpp"

namespace vexl {

/// Optional provenance block of an instance file.
struct InstanceMetadata {
  std::optional<std::uint64_t> seed;
  std::string description;
};

/// One instance file: a sequence with its exponent fields, whether the
/// exponents were admitted below the normable floor, and metadata.
struct InstanceFile {
  Instance instance;
  bool allow_quasi = false;
  InstanceMetadata metadata;
};

/// Parses the JSON text of an instance file.
///
/// The document is an object with keys "grid" ({"dimension", "cell_measures"}),
/// "p", "q" (per-cell exponent arrays), "components" (array of per-cell value
/// arrays), optional "allow_quasi" and optional "metadata" ({"seed",
/// "description"}). Malformed documents raise ParseError with the offending
/// entry spelled out ("p[2]", "components[1][4]", line and column for syntax
/// errors). Unknown keys are rejected rather than ignored.
InstanceFile parse_instance_text(const std::string& text);

/// Reads and parses an instance file from disk. ParseError on unreadable
/// files, with the path in the message.
InstanceFile load_instance_file(const std::string& path);

/// Renders an instance file as JSON. Values round-trip exactly through
/// parse_instance_text; key order and formatting are deterministic.
std::string serialize_instance(const InstanceFile& file);

/// Writes the serialized form, through a temporary followed by a rename so
/// a crash never leaves a half-written file at the destination.
void save_instance_file(const InstanceFile& file, const std::string& path);

}  // namespace vexl
