#include "rcq/brickwork.hpp"

#include <cmath>
#include <stdexcept>

#include "rcq/clifford_sampling.hpp"

namespace rcq {

void BrickworkCircuit::conjugate_through(PauliOperator& p) const {
  for (const auto& layer : layers) {
    for (const auto& g : layer) {
      conjugate_inplace_2q(p, g.gate_id, g.a, g.b);
    }
  }
}

BrickworkCircuit build_brickwork_circuit(std::size_t n, std::size_t depth,
                                         Boundary boundary, bool css, Rng& rng) {
  if (n < 2) {
    throw std::invalid_argument("brickwork circuit needs n >= 2");
  }
  if (depth < 1) {
    throw std::invalid_argument("brickwork circuit needs d >= 1");
  }
  BrickworkCircuit c;
  c.n = n;
  c.depth = depth;
  c.boundary = boundary;
  c.css = css;
  c.layers.resize(depth);
  const bool rotate = boundary == Boundary::periodic && (n % 2) == 1;
  for (std::size_t layer = 0; layer < depth; ++layer) {
    auto& gates = c.layers[layer];
    auto sample = [&]() {
      return css ? sample_css_two_qubit_gate_id(rng)
                 : sample_two_qubit_clifford_id(rng);
    };
    if (rotate) {
      const std::size_t start = layer % n;
      for (std::size_t m = 0; m + 1 < n; m += 2) {
        const std::uint32_t a = static_cast<std::uint32_t>((start + m) % n);
        const std::uint32_t b = static_cast<std::uint32_t>((start + m + 1) % n);
        gates.push_back({sample(), a, b});
      }
    } else {
      const std::size_t start = layer % 2;
      for (std::size_t i = start; i + 1 < n; i += 2) {
        gates.push_back({sample(), static_cast<std::uint32_t>(i),
                         static_cast<std::uint32_t>(i + 1)});
      }
      if (boundary == Boundary::periodic && start == 1 && n % 2 == 0) {
        gates.push_back({sample(), static_cast<std::uint32_t>(n - 1), 0});
      }
    }
  }
  return c;
}

InputLayout assign_inputs(std::size_t n, double rate, std::size_t depth,
                          Boundary boundary, bool css) {
  const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n) * rate));
  if (k < 1 || k > n) {
    throw std::invalid_argument("rate not expressible on n qubits");
  }
  InputLayout layout;
  layout.k = k;
  layout.padding = boundary == Boundary::open ? 2 * depth : 0;

  std::vector<bool> is_logical(n, false);
  for (std::size_t j = 0; j < k; ++j) {
    is_logical[(2 * j + 1) * n / (2 * k)] = true;
  }

  layout.roles.reserve(n + 2 * layout.padding);
  bool next_is_x = css;
  auto push_stabilizer = [&]() {
    layout.roles.push_back(next_is_x ? Role::x_stabilizer : Role::z_stabilizer);
    if (css) {
      next_is_x = !next_is_x;
    }
  };
  for (std::size_t i = 0; i < layout.padding; ++i) {
    push_stabilizer();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (is_logical[i]) {
      layout.roles.push_back(Role::logical);
    } else {
      push_stabilizer();
    }
  }
  for (std::size_t i = 0; i < layout.padding; ++i) {
    push_stabilizer();
  }
  return layout;
}

CircuitCode derive_code(const BrickworkCircuit& circuit, const InputLayout& layout) {
  if (layout.total_qubits() != circuit.n) {
    throw std::invalid_argument("layout/circuit size mismatch");
  }
  CircuitCode code;
  code.circuit = circuit;
  code.layout = layout;
  const std::size_t n = circuit.n;
  for (std::size_t i = 0; i < n; ++i) {
    switch (layout.roles[i]) {
      case Role::z_stabilizer: {
        PauliOperator g = PauliOperator::single(n, i, 'Z');
        circuit.conjugate_through(g);
        code.stabilizers.push_back(std::move(g));
        code.stabilizer_is_x.push_back(0);
        break;
      }
      case Role::x_stabilizer: {
        PauliOperator g = PauliOperator::single(n, i, 'X');
        circuit.conjugate_through(g);
        code.stabilizers.push_back(std::move(g));
        code.stabilizer_is_x.push_back(1);
        break;
      }
      case Role::logical: {
        PauliOperator gx = PauliOperator::single(n, i, 'X');
        PauliOperator gz = PauliOperator::single(n, i, 'Z');
        circuit.conjugate_through(gx);
        circuit.conjugate_through(gz);
        code.logical_x.push_back(std::move(gx));
        code.logical_z.push_back(std::move(gz));
        break;
      }
    }
  }

  // Syndrome partners: solve T v_i = e_i where row j of T is (z_j | x_j) of
  // stabilizer j, so that v_i anticommutes with stabilizer i only. One
  // augmented elimination serves every i: with R T in reduced echelon form
  // (pivot columns p_j), v_i is supported on the pivots with v_i[p_j] =
  // R[j][i].
  const std::size_t m = code.stabilizers.size();
  std::vector<BitVec> rows;
  rows.reserve(m);
  for (const auto& s : code.stabilizers) {
    BitVec row(2 * n + m);
    for (std::size_t q = 0; q < n; ++q) {
      if (s.z(q)) {
        row.set(q, true);
      }
      if (s.x(q)) {
        row.set(n + q, true);
      }
    }
    rows.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < m; ++j) {
    rows[j].set(2 * n + j, true);
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < 2 * n && row < m; ++col) {
    std::size_t pivot = row;
    while (pivot < m && !rows[pivot].get(col)) {
      ++pivot;
    }
    if (pivot == m) {
      continue;
    }
    std::swap(rows[row], rows[pivot]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r != row && rows[r].get(col)) {
        rows[r] ^= rows[row];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  if (row != m) {
    throw std::logic_error("dependent stabilizer generators");
  }
  code.syndrome_partners.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    PauliOperator d(n);
    for (std::size_t j = 0; j < m; ++j) {
      if (rows[j].get(2 * n + i)) {
        const std::size_t col = pivots[j];
        if (col < n) {
          d.set_x(col, true);
        } else {
          d.set_z(col - n, true);
        }
      }
    }
    d.set_sign_bit(false);
    code.syndrome_partners.push_back(std::move(d));
  }
  return code;
}

BitVec syndrome(const CircuitCode& code, const PauliOperator& e) {
  BitVec s(code.stabilizers.size());
  for (std::size_t i = 0; i < code.stabilizers.size(); ++i) {
    if (anticommutes(code.stabilizers[i], e)) {
      s.set(i, true);
    }
  }
  return s;
}

PauliOperator canonical_error(const CircuitCode& code, const BitVec& s) {
  if (s.size() != code.stabilizers.size()) {
    throw std::invalid_argument("syndrome length mismatch");
  }
  PauliOperator e(code.num_qubits());
  s.for_each_set([&](std::size_t i) { e *= code.syndrome_partners[i]; });
  e.set_sign_bit(false);
  return e;
}

std::vector<std::pair<bool, bool>> logical_class_bits(const CircuitCode& code,
                                                      const PauliOperator& q) {
  std::vector<std::pair<bool, bool>> bits;
  bits.reserve(code.num_logicals());
  for (std::size_t j = 0; j < code.num_logicals(); ++j) {
    bits.emplace_back(anticommutes(q, code.logical_z[j]),
                      anticommutes(q, code.logical_x[j]));
  }
  return bits;
}

CircuitCode sample_circuit_code(const CodeParams& params, Rng& rng) {
  InputLayout layout = assign_inputs(params.n_core, params.rate, params.depth,
                                     params.boundary, params.css);
  BrickworkCircuit circuit = build_brickwork_circuit(
      layout.total_qubits(), params.depth, params.boundary, params.css, rng);
  return derive_code(circuit, layout);
}

}  // namespace rcq
