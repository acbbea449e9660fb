#include "rcq/clifford_sampling.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace rcq {

namespace {

CliffordTableau css_gate_from_gl2(unsigned m00, unsigned m01, unsigned m10,
                                  unsigned m11) {
  // X_i -> X^{M e_i}, Z_i -> Z^{(M^-T) e_i}. For 2x2 GF(2), M^-1 has entries
  // (m11, m01; m10, m00) when det = 1.
  CliffordTableau t = CliffordTableau::identity(2);
  auto set_x_image = [&](std::size_t i, unsigned r0, unsigned r1) {
    PauliOperator p(2);
    p.set_x(0, r0 != 0);
    p.set_x(1, r1 != 0);
    t.x_image(i) = p;
  };
  auto set_z_image = [&](std::size_t i, unsigned r0, unsigned r1) {
    PauliOperator p(2);
    p.set_z(0, r0 != 0);
    p.set_z(1, r1 != 0);
    t.z_image(i) = p;
  };
  set_x_image(0, m00, m10);
  set_x_image(1, m01, m11);
  // N = (M^-1)^T = (m11, m10; m01, m00).
  set_z_image(0, m11, m01);
  set_z_image(1, m10, m00);
  return t;
}

}  // namespace

TwoQubitGateTable::TwoQubitGateTable() {
  const std::vector<CliffordTableau> generators = {
      CliffordTableau::hadamard(2, 0),   CliffordTableau::hadamard(2, 1),
      CliffordTableau::phase_gate(2, 0), CliffordTableau::phase_gate(2, 1),
      CliffordTableau::cnot(2, 0, 1),
  };
  std::map<std::vector<std::uint8_t>, std::size_t> seen;
  std::vector<CliffordTableau> frontier{CliffordTableau::identity(2)};
  seen.emplace(frontier[0].canonical_key(), 0);
  std::vector<CliffordTableau> all = frontier;
  while (!frontier.empty()) {
    std::vector<CliffordTableau> next;
    for (const auto& g : frontier) {
      for (const auto& gen : generators) {
        CliffordTableau cand = g.then(gen);
        auto key = cand.canonical_key();
        if (seen.emplace(std::move(key), all.size()).second) {
          all.push_back(cand);
          next.push_back(all.back());
        }
      }
    }
    frontier = std::move(next);
  }
  // Canonical order: sort by key so the table is independent of BFS order.
  std::vector<std::size_t> order(all.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::vector<std::vector<std::uint8_t>> keys(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    keys[i] = all[i].canonical_key();
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
  gates_.reserve(all.size());
  std::map<std::vector<std::uint8_t>, std::uint16_t> index;
  for (std::size_t i = 0; i < order.size(); ++i) {
    gates_.push_back(all[order[i]]);
    index.emplace(keys[order[i]], static_cast<std::uint16_t>(i));
  }

  inverse_.resize(gates_.size());
  lut_.resize(gates_.size() * 16);
  for (std::size_t id = 0; id < gates_.size(); ++id) {
    auto it = index.find(gates_[id].inverse().canonical_key());
    if (it == index.end()) {
      throw std::logic_error("two-qubit Clifford group not closed under inverse");
    }
    inverse_[id] = it->second;
    for (std::uint8_t in = 0; in < 16; ++in) {
      PauliOperator p(2);
      p.set_x(0, in & 1);
      p.set_z(0, (in >> 1) & 1);
      p.set_x(1, (in >> 2) & 1);
      p.set_z(1, (in >> 3) & 1);
      PauliOperator img = gates_[id].conjugate(p);
      std::uint8_t out = static_cast<std::uint8_t>(
          (img.x(0) ? 1 : 0) | (img.z(0) ? 2 : 0) | (img.x(1) ? 4 : 0) |
          (img.z(1) ? 8 : 0) | (static_cast<unsigned>(img.phase_exp()) << 4));
      lut_[(id << 4) | in] = out;
    }
  }

  for (unsigned bits = 0; bits < 16; ++bits) {
    const unsigned m00 = bits & 1, m01 = (bits >> 1) & 1, m10 = (bits >> 2) & 1,
                   m11 = (bits >> 3) & 1;
    if (((m00 & m11) ^ (m01 & m10)) != 1) {
      continue;
    }
    auto it = index.find(css_gate_from_gl2(m00, m01, m10, m11).canonical_key());
    if (it == index.end()) {
      throw std::logic_error("CSS gate missing from Clifford table");
    }
    css_ids_.push_back(it->second);
  }
}

const TwoQubitGateTable& TwoQubitGateTable::instance() {
  static const TwoQubitGateTable table;
  return table;
}

std::uint16_t TwoQubitGateTable::id_of(const CliffordTableau& t) const {
  auto key = t.canonical_key();
  auto it = std::lower_bound(
      gates_.begin(), gates_.end(), key,
      [](const CliffordTableau& g, const std::vector<std::uint8_t>& k) {
        return g.canonical_key() < k;
      });
  if (it == gates_.end() || it->canonical_key() != key) {
    throw std::invalid_argument("tableau not in two-qubit Clifford table");
  }
  return static_cast<std::uint16_t>(it - gates_.begin());
}

std::uint16_t sample_two_qubit_clifford_id(Rng& rng) {
  return static_cast<std::uint16_t>(
      rng.bounded(TwoQubitGateTable::instance().size()));
}

CliffordTableau sample_two_qubit_clifford(Rng& rng) {
  return TwoQubitGateTable::instance().tableau(sample_two_qubit_clifford_id(rng));
}

std::uint16_t sample_css_two_qubit_gate_id(Rng& rng) {
  const auto& ids = TwoQubitGateTable::instance().css_ids();
  return ids[rng.bounded(ids.size())];
}

CliffordTableau sample_css_two_qubit_gate(Rng& rng) {
  return TwoQubitGateTable::instance().tableau(sample_css_two_qubit_gate_id(rng));
}

void conjugate_inplace_2q(PauliOperator& p, std::uint16_t id, std::size_t a,
                          std::size_t b) {
  const std::uint8_t in = static_cast<std::uint8_t>(
      (p.x(a) ? 1 : 0) | (p.z(a) ? 2 : 0) | (p.x(b) ? 4 : 0) | (p.z(b) ? 8 : 0));
  if (in == 0) {
    return;
  }
  const std::uint8_t out = TwoQubitGateTable::instance().conj_entry(id, in);
  p.set_x(a, out & 1);
  p.set_z(a, (out >> 1) & 1);
  p.set_x(b, (out >> 2) & 1);
  p.set_z(b, (out >> 3) & 1);
  p.set_phase_exp(static_cast<std::uint8_t>(p.phase_exp() + (out >> 4)));
}

}  // namespace rcq
