#include "rcq/code_json.hpp"

namespace rcq {

nlohmann::json code_descriptor_to_json(const CodeDescriptor& desc) {
  return nlohmann::json{
      {"schema", 1},
      {"n", desc.params.n_core},
      {"rate", desc.params.rate},
      {"d", desc.params.depth},
      {"boundary", desc.params.boundary == Boundary::open ? "open" : "periodic"},
      {"css", desc.params.css},
      {"seed", desc.seed},
      {"stream", desc.stream},
  };
}

CodeDescriptor code_descriptor_from_json(const nlohmann::json& j) {
  CodeDescriptor desc;
  desc.params.n_core = j.at("n").get<std::size_t>();
  desc.params.rate = j.at("rate").get<double>();
  desc.params.depth = j.at("d").get<std::size_t>();
  const std::string boundary = j.at("boundary").get<std::string>();
  if (boundary == "open") {
    desc.params.boundary = Boundary::open;
  } else if (boundary == "periodic") {
    desc.params.boundary = Boundary::periodic;
  } else {
    throw std::invalid_argument("bad boundary in code descriptor");
  }
  desc.params.css = j.at("css").get<bool>();
  desc.seed = j.at("seed").get<std::uint64_t>();
  desc.stream = j.at("stream").get<std::uint64_t>();
  return desc;
}

CircuitCode code_from_descriptor(const CodeDescriptor& desc) {
  Rng rng(desc.seed, desc.stream);
  return sample_circuit_code(desc.params, rng);
}

std::string pauli_hex_row(const PauliOperator& p) {
  const std::size_t n = p.num_qubits();
  std::string out;
  out.reserve((2 * n + 3) / 4);
  unsigned nibble = 0;
  int bits = 0;
  auto push_bit = [&](bool b) {
    nibble |= (b ? 1u : 0u) << bits;
    if (++bits == 4) {
      out += "0123456789abcdef"[nibble];
      nibble = 0;
      bits = 0;
    }
  };
  for (std::size_t q = 0; q < n; ++q) {
    push_bit(p.x(q));
  }
  for (std::size_t q = 0; q < n; ++q) {
    push_bit(p.z(q));
  }
  if (bits) {
    out += "0123456789abcdef"[nibble];
  }
  return out;
}

nlohmann::json generator_dump(const CircuitCode& code) {
  nlohmann::json dump;
  dump["schema"] = 1;
  dump["n"] = code.num_qubits();
  dump["k"] = code.num_logicals();
  auto rows = [&](const std::vector<PauliOperator>& ops) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : ops) {
      arr.push_back(nlohmann::json{{"bits", pauli_hex_row(p)},
                                   {"sign", p.sign_bit() ? 1 : 0}});
    }
    return arr;
  };
  dump["stabilizers"] = rows(code.stabilizers);
  dump["logical_x"] = rows(code.logical_x);
  dump["logical_z"] = rows(code.logical_z);
  nlohmann::json types = nlohmann::json::array();
  for (auto t : code.stabilizer_is_x) {
    types.push_back(t != 0);
  }
  dump["stabilizer_is_x"] = types;
  return dump;
}

}  // namespace rcq
