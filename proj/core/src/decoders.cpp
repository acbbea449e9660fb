#include "rcq/decoders.hpp"

#include <stdexcept>

#include "rcq/spin_model.hpp"

namespace rcq {

PauliOperator logical_representative(const CircuitCode& code, std::size_t j,
                                     LogicalClass c) {
  PauliOperator rep(code.num_qubits());
  switch (c) {
    case LogicalClass::I:
      break;
    case LogicalClass::X:
      rep = code.logical_x[j];
      break;
    case LogicalClass::Y:
      rep = code.logical_x[j] * code.logical_z[j];
      break;
    case LogicalClass::Z:
      rep = code.logical_z[j];
      break;
  }
  rep.set_sign_bit(false);
  return rep;
}

MarginalDecodeResult marginal_decode(const CircuitCode& code, const BitVec& s,
                                     double p) {
  const double beta_j = nishimori_beta(p);
  const PauliOperator base = canonical_error(code, s);
  MarginalDecodeResult result;
  const std::size_t k = code.num_logicals();
  result.classes.resize(k, LogicalClass::I);
  result.log_weights.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::uint8_t c = 0; c < 4; ++c) {
      PauliOperator e = logical_representative(code, j, static_cast<LogicalClass>(c));
      e *= base;
      SpinModel model =
          build_spin_model(code, e, SpinModelMode::exclude_logical, j);
      LatticeTensorNetwork net =
          build_tensor_network(model, Semiring::real_log_domain);
      result.log_weights[j][c] = contract_partition(net, beta_j);
    }
    std::uint8_t best = 0;
    for (std::uint8_t c = 1; c < 4; ++c) {
      if (result.log_weights[j][c] > result.log_weights[j][best]) {
        best = c;
      }
    }
    result.classes[j] = static_cast<LogicalClass>(best);
  }
  return result;
}

MinWeightDecodeResult minimum_weight_decode(const CircuitCode& code, const BitVec& s) {
  const PauliOperator base = canonical_error(code, s);
  SpinModel model = build_spin_model(code, base, SpinModelMode::all_generators);
  LatticeTensorNetwork net = build_tensor_network(model, Semiring::tropical);
  TropicalResult ground = contract_tropical(net);
  MinWeightDecodeResult result;
  result.ground_energy = ground.energy;
  result.spin_values = ground.spin_values;
  PauliOperator correction = base;
  for (std::size_t i = 0; i < model.generators.size(); ++i) {
    if (ground.spin_values[i] < 0) {
      correction *= model.generators[i];
    }
  }
  correction.set_sign_bit(false);
  result.correction = std::move(correction);
  return result;
}

}  // namespace rcq
