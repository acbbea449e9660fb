#include "rcq/pauli.hpp"

#include <stdexcept>

namespace rcq {

PauliOperator PauliOperator::from_label(const std::string& label) {
  std::size_t i = 0;
  std::uint8_t phase = 0;
  if (i < label.size() && (label[i] == '+' || label[i] == '-')) {
    phase = label[i] == '-' ? 2 : 0;
    ++i;
  }
  if (i < label.size() && label[i] == 'i') {
    phase = (phase + 1) & 3;
    ++i;
  }
  PauliOperator p(label.size() - i);
  for (std::size_t q = 0; i < label.size(); ++i, ++q) {
    switch (label[i]) {
      case 'I':
        break;
      case 'X':
        p.x_.set(q, true);
        break;
      case 'Z':
        p.z_.set(q, true);
        break;
      case 'Y':
        p.x_.set(q, true);
        p.z_.set(q, true);
        p.phase_ = (p.phase_ + 1) & 3;
        break;
      default:
        throw std::invalid_argument("bad Pauli label character");
    }
  }
  p.phase_ = (p.phase_ + phase) & 3;
  return p;
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t qubit, char pauli) {
  PauliOperator p(n);
  switch (pauli) {
    case 'X':
      p.x_.set(qubit, true);
      break;
    case 'Z':
      p.z_.set(qubit, true);
      break;
    case 'Y':
      p.x_.set(qubit, true);
      p.z_.set(qubit, true);
      p.phase_ = 1;
      break;
    default:
      throw std::invalid_argument("bad Pauli character");
  }
  return p;
}

std::size_t PauliOperator::weight() const {
  std::size_t c = 0;
  for (std::size_t w = 0; w < x_.words(); ++w) {
    c += static_cast<std::size_t>(std::popcount(x_.word(w) | z_.word(w)));
  }
  return c;
}

bool PauliOperator::is_hermitian() const {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < x_.words(); ++w) {
    acc ^= x_.word(w) & z_.word(w);
  }
  return ((phase_ & 1) != 0) == ((std::popcount(acc) & 1) != 0);
}

bool PauliOperator::sign_bit() const {
  std::size_t xz = 0;
  for (std::size_t w = 0; w < x_.words(); ++w) {
    xz += static_cast<std::size_t>(std::popcount(x_.word(w) & z_.word(w)));
  }
  // P = i^phase X^x Z^z = (-1)^s i^{|x&z| mod 4} X^x Z^z for Hermitian P.
  return (((phase_ - xz) & 3) >> 1) & 1;
}

void PauliOperator::set_sign_bit(bool negative) {
  std::size_t xz = 0;
  for (std::size_t w = 0; w < x_.words(); ++w) {
    xz += static_cast<std::size_t>(std::popcount(x_.word(w) & z_.word(w)));
  }
  phase_ = static_cast<std::uint8_t>((xz + (negative ? 2 : 0)) & 3);
}

PauliOperator& PauliOperator::operator*=(const PauliOperator& other) {
  if (n_ != other.n_) {
    throw std::invalid_argument("Pauli size mismatch in multiply");
  }
  // (X^a Z^b)(X^c Z^d) = (-1)^{b.c} X^{a+c} Z^{b+d}.
  std::uint64_t cross = 0;
  for (std::size_t w = 0; w < z_.words(); ++w) {
    cross ^= z_.word(w) & other.x_.word(w);
  }
  phase_ = static_cast<std::uint8_t>(
      (phase_ + other.phase_ + 2 * (std::popcount(cross) & 1)) & 3);
  x_ ^= other.x_;
  z_ ^= other.z_;
  return *this;
}

PauliOperator PauliOperator::inverse() const {
  PauliOperator inv = *this;
  std::size_t xz = 0;
  for (std::size_t w = 0; w < x_.words(); ++w) {
    xz += static_cast<std::size_t>(std::popcount(x_.word(w) & z_.word(w)));
  }
  inv.phase_ = static_cast<std::uint8_t>((2 * xz - phase_) & 3);
  return inv;
}

std::string PauliOperator::to_label() const {
  std::size_t xz = 0;
  for (std::size_t w = 0; w < x_.words(); ++w) {
    xz += static_cast<std::size_t>(std::popcount(x_.word(w) & z_.word(w)));
  }
  std::string out;
  switch ((phase_ - xz) & 3) {
    case 0:
      out = "+";
      break;
    case 1:
      out = "+i";
      break;
    case 2:
      out = "-";
      break;
    case 3:
      out = "-i";
      break;
  }
  for (std::size_t q = 0; q < n_; ++q) {
    bool xv = x_.get(q);
    bool zv = z_.get(q);
    out += xv ? (zv ? 'Y' : 'X') : (zv ? 'Z' : 'I');
  }
  return out;
}

int scalar_commutator(const PauliOperator& p, const PauliOperator& q) {
  return anticommutes(p, q) ? -1 : 1;
}

bool anticommutes(const PauliOperator& p, const PauliOperator& q) {
  if (p.num_qubits() != q.num_qubits()) {
    throw std::invalid_argument("Pauli size mismatch in commutator");
  }
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < p.x_bits().words(); ++w) {
    acc ^= p.x_bits().word(w) & q.z_bits().word(w);
    acc ^= p.z_bits().word(w) & q.x_bits().word(w);
  }
  return std::popcount(acc) & 1;
}

PauliOperator embed(const PauliOperator& p, std::size_t n_total, std::size_t offset) {
  if (offset + p.num_qubits() > n_total) {
    throw std::invalid_argument("embed target too small");
  }
  PauliOperator wide(n_total);
  wide.set_phase_exp(p.phase_exp());
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    wide.set_x(offset + q, p.x(q));
    wide.set_z(offset + q, p.z(q));
  }
  return wide;
}

}  // namespace rcq
