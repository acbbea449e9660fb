#include "rcq/tableau.hpp"

#include <stdexcept>

namespace rcq {

CliffordTableau CliffordTableau::identity(std::size_t n) {
  CliffordTableau t;
  t.n_ = n;
  t.x_img_.reserve(n);
  t.z_img_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.x_img_.push_back(PauliOperator::single(n, i, 'X'));
    t.z_img_.push_back(PauliOperator::single(n, i, 'Z'));
  }
  return t;
}

CliffordTableau CliffordTableau::hadamard(std::size_t n, std::size_t q) {
  CliffordTableau t = identity(n);
  std::swap(t.x_img_[q], t.z_img_[q]);
  return t;
}

CliffordTableau CliffordTableau::phase_gate(std::size_t n, std::size_t q) {
  CliffordTableau t = identity(n);
  // S X S^dag = Y, S Z S^dag = Z.
  t.x_img_[q] = PauliOperator::single(n, q, 'Y');
  return t;
}

CliffordTableau CliffordTableau::cnot(std::size_t n, std::size_t control,
                                      std::size_t target) {
  CliffordTableau t = identity(n);
  t.x_img_[control].set_x(target, true);
  t.z_img_[target].set_z(control, true);
  return t;
}

CliffordTableau CliffordTableau::swap_gate(std::size_t n, std::size_t a, std::size_t b) {
  CliffordTableau t = identity(n);
  t.x_img_[a] = PauliOperator::single(n, b, 'X');
  t.x_img_[b] = PauliOperator::single(n, a, 'X');
  t.z_img_[a] = PauliOperator::single(n, b, 'Z');
  t.z_img_[b] = PauliOperator::single(n, a, 'Z');
  return t;
}

CliffordTableau CliffordTableau::pauli_gate(const PauliOperator& p) {
  const std::size_t n = p.num_qubits();
  CliffordTableau t = identity(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (anticommutes(t.x_img_[i], p)) {
      t.x_img_[i].set_phase_exp((t.x_img_[i].phase_exp() + 2) & 3);
    }
    if (anticommutes(t.z_img_[i], p)) {
      t.z_img_[i].set_phase_exp((t.z_img_[i].phase_exp() + 2) & 3);
    }
  }
  return t;
}

PauliOperator CliffordTableau::conjugate(const PauliOperator& p) const {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("tableau/Pauli size mismatch");
  }
  PauliOperator out(n_);
  out.set_phase_exp(p.phase_exp());
  // P = i^k prod_j X_j^{x_j} prod_j Z_j^{z_j}; conjugation maps each factor
  // to its image, multiplied in the same canonical order.
  p.x_bits().for_each_set([&](std::size_t j) { out *= x_img_[j]; });
  p.z_bits().for_each_set([&](std::size_t j) { out *= z_img_[j]; });
  return out;
}

CliffordTableau CliffordTableau::then(const CliffordTableau& later) const {
  if (later.n_ != n_) {
    throw std::invalid_argument("tableau size mismatch in composition");
  }
  CliffordTableau t;
  t.n_ = n_;
  t.x_img_.reserve(n_);
  t.z_img_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    t.x_img_.push_back(later.conjugate(x_img_[i]));
    t.z_img_.push_back(later.conjugate(z_img_[i]));
  }
  return t;
}

CliffordTableau CliffordTableau::inverse() const {
  // The inverse symplectic map sends the image of X_i back to X_i. Build it
  // by solving: rows of M^-1 = Lambda M^T Lambda, then fix signs so that
  // conjugating forward returns +X_i / +Z_i.
  CliffordTableau inv;
  inv.n_ = n_;
  inv.x_img_.assign(n_, PauliOperator(n_));
  inv.z_img_.assign(n_, PauliOperator(n_));
  for (std::size_t i = 0; i < n_; ++i) {
    const PauliOperator xi_src = PauliOperator::single(n_, i, 'X');
    const PauliOperator zi_src = PauliOperator::single(n_, i, 'Z');
    PauliOperator xi(n_);
    PauliOperator zi(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      // Bits of U^dag P U at qubit j follow from commutation of P with the
      // forward images of X_j and Z_j.
      if (anticommutes(z_img_[j], xi_src)) {
        xi.set_x(j, true);
      }
      if (anticommutes(x_img_[j], xi_src)) {
        xi.set_z(j, true);
      }
      if (anticommutes(z_img_[j], zi_src)) {
        zi.set_x(j, true);
      }
      if (anticommutes(x_img_[j], zi_src)) {
        zi.set_z(j, true);
      }
    }
    xi.set_sign_bit(false);
    zi.set_sign_bit(false);
    inv.x_img_[i] = xi;
    inv.z_img_[i] = zi;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    PauliOperator round_trip = conjugate(inv.x_img_[i]);
    inv.x_img_[i].set_sign_bit(round_trip.sign_bit());
    round_trip = conjugate(inv.z_img_[i]);
    inv.z_img_[i].set_sign_bit(round_trip.sign_bit());
  }
  return inv;
}

bool CliffordTableau::is_symplectic() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (!x_img_[i].is_hermitian() || !z_img_[i].is_hermitian()) {
      return false;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      if (anticommutes(x_img_[i], x_img_[j]) || anticommutes(z_img_[i], z_img_[j])) {
        return false;
      }
      const bool want = i == j;
      if (anticommutes(x_img_[i], z_img_[j]) != want) {
        return false;
      }
    }
  }
  return true;
}

std::vector<BitVec> CliffordTableau::symplectic_rows() const {
  std::vector<BitVec> rows;
  rows.reserve(2 * n_);
  auto pack = [&](const PauliOperator& p) {
    BitVec row(2 * n_);
    for (std::size_t q = 0; q < n_; ++q) {
      if (p.x(q)) {
        row.set(q, true);
      }
      if (p.z(q)) {
        row.set(n_ + q, true);
      }
    }
    return row;
  };
  for (std::size_t i = 0; i < n_; ++i) {
    rows.push_back(pack(x_img_[i]));
  }
  for (std::size_t i = 0; i < n_; ++i) {
    rows.push_back(pack(z_img_[i]));
  }
  return rows;
}

std::vector<std::uint8_t> CliffordTableau::canonical_key() const {
  std::vector<std::uint8_t> key;
  key.reserve(2 * n_ * (2 * n_ + 2) / 8 + 2 * n_);
  auto emit = [&](const PauliOperator& p) {
    std::uint8_t acc = 0;
    int bits = 0;
    auto push_bit = [&](bool b) {
      acc = static_cast<std::uint8_t>((acc << 1) | (b ? 1 : 0));
      if (++bits == 8) {
        key.push_back(acc);
        acc = 0;
        bits = 0;
      }
    };
    for (std::size_t q = 0; q < n_; ++q) {
      push_bit(p.x(q));
      push_bit(p.z(q));
    }
    push_bit(p.sign_bit());
    if (bits) {
      key.push_back(static_cast<std::uint8_t>(acc << (8 - bits)));
    }
  };
  for (std::size_t i = 0; i < n_; ++i) {
    emit(x_img_[i]);
    emit(z_img_[i]);
  }
  return key;
}

}  // namespace rcq
