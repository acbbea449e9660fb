#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "rcq/brickwork.hpp"

namespace rcq {

/// Seeded code descriptor: enough to regenerate the code deterministically.
struct CodeDescriptor {
  CodeParams params;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

nlohmann::json code_descriptor_to_json(const CodeDescriptor& desc);
CodeDescriptor code_descriptor_from_json(const nlohmann::json& j);

/// Regenerates the code a descriptor identifies.
CircuitCode code_from_descriptor(const CodeDescriptor& desc);

/// Explicit generator dump (hex-packed x|z bit rows plus sign bits) for
/// cross-implementation comparisons.
nlohmann::json generator_dump(const CircuitCode& code);

/// Hex row for one Pauli: x bits then z bits, 4 bits per hex digit,
/// little-endian within the row.
std::string pauli_hex_row(const PauliOperator& p);

}  // namespace rcq
