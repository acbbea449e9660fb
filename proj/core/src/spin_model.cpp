#include "rcq/spin_model.hpp"

#include <cmath>
#include <stdexcept>

namespace rcq {

double nishimori_beta(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("depolarizing rate must lie in (0, 1)");
  }
  return -0.25 * std::log(3.0 * (1.0 - p) / p);
}

SpinModel build_spin_model(const CircuitCode& code, const PauliOperator& e,
                           SpinModelMode mode, std::size_t excluded_logical) {
  const std::size_t n = code.num_qubits();
  if (e.num_qubits() != n) {
    throw std::invalid_argument("error size mismatch");
  }
  SpinModel model;
  model.generators = code.stabilizers;
  switch (mode) {
    case SpinModelMode::stabilizers_only:
      break;
    case SpinModelMode::exclude_logical:
      if (excluded_logical >= code.num_logicals()) {
        throw std::invalid_argument("excluded logical index out of range");
      }
      for (std::size_t j = 0; j < code.num_logicals(); ++j) {
        if (j != excluded_logical) {
          model.generators.push_back(code.logical_x[j]);
        }
      }
      for (std::size_t j = 0; j < code.num_logicals(); ++j) {
        if (j != excluded_logical) {
          model.generators.push_back(code.logical_z[j]);
        }
      }
      break;
    case SpinModelMode::all_generators:
      for (const auto& lx : code.logical_x) {
        model.generators.push_back(lx);
      }
      for (const auto& lz : code.logical_z) {
        model.generators.push_back(lz);
      }
      break;
  }
  model.num_spins = model.generators.size();

  model.terms.reserve(3 * n);
  static const char paulis[3] = {'X', 'Y', 'Z'};
  for (std::size_t q = 0; q < n; ++q) {
    for (std::uint8_t pi = 0; pi < 3; ++pi) {
      SpinTerm term;
      term.qubit = static_cast<std::uint32_t>(q);
      term.pauli = pi;
      // Incidence of a single-weight sigma depends only on the generator's
      // bits at q: X sees z, Z sees x, Y sees x xor z.
      for (std::size_t i = 0; i < model.generators.size(); ++i) {
        const auto& g = model.generators[i];
        const bool hit = pi == 0 ? g.z(q) : pi == 2 ? g.x(q) : g.x(q) != g.z(q);
        if (hit) {
          term.spins.push_back(static_cast<std::uint32_t>(i));
        }
      }
      const bool anti =
          pi == 0 ? e.z(q) : pi == 2 ? e.x(q) : e.x(q) != e.z(q);
      term.sign = anti ? -1 : 1;
      (void)paulis;
      model.terms.push_back(std::move(term));
    }
  }
  return model;
}

double spin_model_energy(const SpinModel& model, const std::vector<int>& config) {
  double energy = 0.0;
  for (const auto& term : model.terms) {
    int prod = term.sign;
    for (auto s : term.spins) {
      prod *= config[s];
    }
    energy += model.coupling * prod;
  }
  return energy;
}

}  // namespace rcq
