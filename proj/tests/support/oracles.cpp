#include "support/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "rcq/decoders.hpp"

namespace rcq::test {

std::vector<PauliOperator> enumerate_group(const std::vector<PauliOperator>& gens) {
  if (gens.size() > 20) {
    throw std::invalid_argument("group too large to enumerate");
  }
  const std::size_t n = gens.empty() ? 0 : gens[0].num_qubits();
  std::vector<PauliOperator> elements;
  elements.reserve(std::size_t{1} << gens.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
    PauliOperator prod(n);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if ((mask >> i) & 1) {
        prod *= gens[i];
      }
    }
    elements.push_back(std::move(prod));
  }
  return elements;
}

long double error_probability(const PauliOperator& e, double p) {
  const std::size_t n = e.num_qubits();
  const std::size_t w = e.weight();
  return std::pow(static_cast<long double>(1.0 - p), static_cast<long double>(n - w)) *
         std::pow(static_cast<long double>(p) / 3.0L, static_cast<long double>(w));
}

double brute_force_log_partition(const SpinModel& model, double beta_j) {
  if (model.num_spins > 24) {
    throw std::invalid_argument("too many spins for brute force");
  }
  long double peak = -1e30L;
  std::vector<long double> exponents;
  exponents.reserve(std::size_t{1} << model.num_spins);
  for (std::size_t mask = 0; mask < (std::size_t{1} << model.num_spins); ++mask) {
    long double h = 0.0L;
    for (const auto& term : model.terms) {
      int prod = term.sign;
      for (auto spin : term.spins) {
        if ((mask >> spin) & 1) {
          prod = -prod;
        }
      }
      h += prod;
    }
    const long double expo = -static_cast<long double>(beta_j) * h;
    exponents.push_back(expo);
    peak = std::max(peak, expo);
  }
  long double sum = 0.0L;
  for (long double expo : exponents) {
    sum += std::exp(expo - peak);
  }
  return static_cast<double>(peak + std::log(sum));
}

BruteGround brute_force_ground(const SpinModel& model) {
  if (model.num_spins > 24) {
    throw std::invalid_argument("too many spins for brute force");
  }
  BruteGround best;
  best.energy = 1e300;
  for (std::size_t mask = 0; mask < (std::size_t{1} << model.num_spins); ++mask) {
    double h = 0.0;
    for (const auto& term : model.terms) {
      int prod = term.sign;
      for (auto spin : term.spins) {
        if ((mask >> spin) & 1) {
          prod = -prod;
        }
      }
      h -= prod;  // ground problem minimizes -H
    }
    if (h < best.energy) {
      best.energy = h;
      best.config.assign(model.num_spins, 1);
      for (std::size_t i = 0; i < model.num_spins; ++i) {
        if ((mask >> i) & 1) {
          best.config[i] = -1;
        }
      }
    }
  }
  return best;
}

std::size_t brute_force_min_coset_weight(const CircuitCode& code, const BitVec& s) {
  std::vector<PauliOperator> gens = code.stabilizers;
  for (const auto& lx : code.logical_x) {
    gens.push_back(lx);
  }
  for (const auto& lz : code.logical_z) {
    gens.push_back(lz);
  }
  const PauliOperator base = canonical_error(code, s);
  std::size_t best = base.num_qubits() + 1;
  for (const auto& g : enumerate_group(gens)) {
    best = std::min(best, (base * g).weight());
  }
  return best;
}

std::array<long double, 4> brute_force_marginal(const CircuitCode& code,
                                                const BitVec& s, double p,
                                                std::size_t j) {
  const std::size_t k = code.num_logicals();
  std::vector<PauliOperator> others;
  for (std::size_t jj = 0; jj < k; ++jj) {
    if (jj != j) {
      others.push_back(code.logical_x[jj]);
      others.push_back(code.logical_z[jj]);
    }
  }
  const PauliOperator base = canonical_error(code, s);
  const auto stabilizer_elems = enumerate_group(code.stabilizers);
  const auto other_logicals = enumerate_group(others);
  std::array<long double, 4> probs{0.0L, 0.0L, 0.0L, 0.0L};
  for (std::uint8_t c = 0; c < 4; ++c) {
    const PauliOperator rep =
        logical_representative(code, j, static_cast<LogicalClass>(c));
    for (const auto& sa : stabilizer_elems) {
      for (const auto& lo : other_logicals) {
        probs[c] += error_probability(sa * lo * rep * base, p);
      }
    }
  }
  return probs;
}

PauliOperator random_pauli(std::size_t n, Rng& rng) {
  PauliOperator p(n);
  for (std::size_t q = 0; q < n; ++q) {
    const auto bits = rng.bounded(4);
    p.set_x(q, bits & 1);
    p.set_z(q, (bits >> 1) & 1);
  }
  p.set_sign_bit(false);
  return p;
}

PauliOperator random_depolarizing(std::size_t n, double p, Rng& rng) {
  PauliOperator e(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (!rng.bernoulli(p)) {
      continue;
    }
    switch (rng.bounded(3)) {
      case 0:
        e.set_x(q, true);
        break;
      case 1:
        e.set_x(q, true);
        e.set_z(q, true);
        break;
      default:
        e.set_z(q, true);
        break;
    }
  }
  e.set_sign_bit(false);
  return e;
}

}  // namespace rcq::test
