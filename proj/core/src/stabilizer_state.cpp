#include "rcq/stabilizer_state.hpp"

#include <stdexcept>
#include <string>

#include "rcq/clifford_sampling.hpp"

namespace rcq {

std::vector<PauliOperator> canonicalize(std::vector<PauliOperator> gens) {
  if (gens.empty()) {
    return gens;
  }
  const std::size_t n = gens[0].num_qubits();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].num_qubits() != n || !gens[i].is_hermitian()) {
      throw std::invalid_argument("canonicalize: malformed generator");
    }
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (anticommutes(gens[i], gens[j])) {
        throw std::invalid_argument("canonicalize: anticommuting generators");
      }
    }
  }
  std::size_t row = 0;
  auto bit_at = [&](const PauliOperator& p, std::size_t col) {
    return col < n ? p.x(col) : p.z(col - n);
  };
  for (std::size_t col = 0; col < 2 * n && row < gens.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < gens.size() && !bit_at(gens[pivot], col)) {
      ++pivot;
    }
    if (pivot == gens.size()) {
      continue;
    }
    std::swap(gens[row], gens[pivot]);
    for (std::size_t r = 0; r < gens.size(); ++r) {
      if (r != row && bit_at(gens[r], col)) {
        gens[r] *= gens[row];
      }
    }
    ++row;
  }
  // Rows past `row` are identities; a -I there means the input was not a
  // valid stabilizer group.
  for (std::size_t r = row; r < gens.size(); ++r) {
    if (gens[r].phase_exp() != 0) {
      throw std::invalid_argument("canonicalize: group contains -I");
    }
  }
  gens.resize(row);
  return gens;
}

bool in_group(std::span<const PauliOperator> gens, const PauliOperator& p,
              bool* sign_out) {
  const std::size_t n = p.num_qubits();
  std::vector<BitVec> rows;
  rows.reserve(gens.size());
  auto pack = [&](const PauliOperator& q) {
    BitVec row(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (q.x(i)) {
        row.set(i, true);
      }
      if (q.z(i)) {
        row.set(n + i, true);
      }
    }
    return row;
  };
  for (const auto& g : gens) {
    rows.push_back(pack(g));
  }
  auto selector = gf2_solve_combination(rows, pack(p));
  if (!selector) {
    return false;
  }
  PauliOperator prod(n);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if ((*selector)[i]) {
      prod *= gens[i];
    }
  }
  if (sign_out) {
    *sign_out = ((prod.phase_exp() - p.phase_exp()) & 3) == 2;
  }
  return true;
}

MixedStabilizerState MixedStabilizerState::maximally_mixed(std::size_t n) {
  MixedStabilizerState s;
  s.n_ = n;
  return s;
}

MixedStabilizerState MixedStabilizerState::product(const std::string& roles) {
  MixedStabilizerState s;
  s.n_ = roles.size();
  for (std::size_t q = 0; q < roles.size(); ++q) {
    switch (roles[q]) {
      case '0':
        s.gens_.push_back(PauliOperator::single(s.n_, q, 'Z'));
        break;
      case '+':
        s.gens_.push_back(PauliOperator::single(s.n_, q, 'X'));
        break;
      case 'm':
        break;
      default:
        throw std::invalid_argument("bad product-state role");
    }
  }
  return s;
}

MixedStabilizerState MixedStabilizerState::from_generators(
    std::size_t n, std::vector<PauliOperator> gens) {
  MixedStabilizerState s;
  s.n_ = n;
  s.gens_ = canonicalize(std::move(gens));
  return s;
}

std::size_t MixedStabilizerState::reduced_entropy(
    std::span<const std::size_t> subset) const {
  // dim of the subgroup supported on A equals r minus the rank of the
  // generator matrix restricted to the complement's columns.
  std::vector<bool> in_a(n_, false);
  for (auto q : subset) {
    in_a[q] = true;
  }
  std::vector<std::size_t> complement;
  complement.reserve(n_ - subset.size());
  for (std::size_t q = 0; q < n_; ++q) {
    if (!in_a[q]) {
      complement.push_back(q);
    }
  }
  std::vector<BitVec> restricted;
  restricted.reserve(gens_.size());
  for (const auto& g : gens_) {
    BitVec row(2 * complement.size());
    for (std::size_t i = 0; i < complement.size(); ++i) {
      if (g.x(complement[i])) {
        row.set(i, true);
      }
      if (g.z(complement[i])) {
        row.set(complement.size() + i, true);
      }
    }
    restricted.push_back(std::move(row));
  }
  const std::size_t supported = gens_.size() - gf2_rank(std::move(restricted));
  return subset.size() - supported;
}

void MixedStabilizerState::eliminate_support(std::span<const std::size_t> subset) {
  for (auto q : subset) {
    for (int pass = 0; pass < 2; ++pass) {
      auto has_bit = [&](const PauliOperator& p) {
        return pass == 0 ? p.x(q) : p.z(q);
      };
      std::size_t pivot = gens_.size();
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (has_bit(gens_[i])) {
          pivot = i;
          break;
        }
      }
      if (pivot == gens_.size()) {
        continue;
      }
      for (std::size_t i = pivot + 1; i < gens_.size(); ++i) {
        if (has_bit(gens_[i])) {
          gens_[i] *= gens_[pivot];
        }
      }
      gens_.erase(gens_.begin() + static_cast<std::ptrdiff_t>(pivot));
    }
  }
}

void MixedStabilizerState::erase_qubits(std::span<const std::size_t> subset) {
  eliminate_support(subset);
}

MeasurementResult MixedStabilizerState::measure_pauli(const PauliOperator& p,
                                                      Rng& rng) {
  if (p.num_qubits() != n_ || !p.is_hermitian()) {
    throw std::invalid_argument("measure_pauli: operator must be Hermitian");
  }
  std::size_t first = gens_.size();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (anticommutes(gens_[i], p)) {
      first = i;
      break;
    }
  }
  MeasurementResult res;
  if (first != gens_.size()) {
    // Random outcome; replace the anticommuting generator.
    res.outcome = rng.bernoulli(0.5) ? -1 : 1;
    for (std::size_t i = first + 1; i < gens_.size(); ++i) {
      if (anticommutes(gens_[i], p)) {
        gens_[i] *= gens_[first];
      }
    }
    PauliOperator signed_p = p;
    signed_p.set_sign_bit(res.outcome < 0);
    gens_[first] = std::move(signed_p);
    return res;
  }
  bool sign = false;
  if (in_group(gens_, p, &sign)) {
    res.outcome = sign ? -1 : 1;
    res.was_deterministic = true;
    return res;
  }
  // Commutes with the whole group but independent: mixed direction, fair
  // coin, and the outcome-signed operator joins the group.
  res.outcome = rng.bernoulli(0.5) ? -1 : 1;
  PauliOperator signed_p = p;
  signed_p.set_sign_bit(res.outcome < 0);
  gens_.push_back(std::move(signed_p));
  return res;
}

void MixedStabilizerState::apply_pauli(const PauliOperator& p) {
  for (auto& g : gens_) {
    if (anticommutes(g, p)) {
      g.set_phase_exp((g.phase_exp() + 2) & 3);
    }
  }
}

void MixedStabilizerState::apply_gate(std::uint16_t gate_id, std::size_t a,
                                      std::size_t b) {
  for (auto& g : gens_) {
    conjugate_inplace_2q(g, gate_id, a, b);
  }
}

void MixedStabilizerState::apply_transversal_cnot(std::size_t control_start,
                                                  std::size_t target_start,
                                                  std::size_t count) {
  static const std::uint16_t cnot_id =
      TwoQubitGateTable::instance().id_of(CliffordTableau::cnot(2, 0, 1));
  for (std::size_t i = 0; i < count; ++i) {
    apply_gate(cnot_id, control_start + i, target_start + i);
  }
}

void MixedStabilizerState::tensor(const MixedStabilizerState& other) {
  const std::size_t offset = n_;
  n_ += other.n_;
  for (auto& g : gens_) {
    PauliOperator wide(n_);
    wide.set_phase_exp(g.phase_exp());
    for (std::size_t q = 0; q < offset; ++q) {
      wide.set_x(q, g.x(q));
      wide.set_z(q, g.z(q));
    }
    g = std::move(wide);
  }
  for (const auto& g : other.gens_) {
    PauliOperator wide(n_);
    wide.set_phase_exp(g.phase_exp());
    for (std::size_t q = 0; q < other.n_; ++q) {
      wide.set_x(offset + q, g.x(q));
      wide.set_z(offset + q, g.z(q));
    }
    gens_.push_back(std::move(wide));
  }
}

void MixedStabilizerState::drop_qubits(std::span<const std::size_t> subset) {
  eliminate_support(subset);
  std::vector<bool> dropped(n_, false);
  for (auto q : subset) {
    dropped[q] = true;
  }
  std::vector<std::size_t> survivors;
  survivors.reserve(n_ - subset.size());
  for (std::size_t q = 0; q < n_; ++q) {
    if (!dropped[q]) {
      survivors.push_back(q);
    }
  }
  const std::size_t new_n = survivors.size();
  for (auto& g : gens_) {
    PauliOperator narrow(new_n);
    narrow.set_phase_exp(g.phase_exp());
    for (std::size_t i = 0; i < new_n; ++i) {
      narrow.set_x(i, g.x(survivors[i]));
      narrow.set_z(i, g.z(survivors[i]));
    }
    g = std::move(narrow);
  }
  n_ = new_n;
}

void MixedStabilizerState::canonicalize_in_place() {
  gens_ = canonicalize(std::move(gens_));
}

}  // namespace rcq
