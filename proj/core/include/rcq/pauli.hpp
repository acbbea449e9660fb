#pragma once

#include <cstdint>
#include <string>

#include "rcq/bitvec.hpp"

namespace rcq {

/// n-qubit Pauli operator in binary symplectic form.
///
/// Stored as P = i^phase_exp * X^x * Z^z, with X^x = prod_j X_j^{x_j} and
/// Z^z = prod_j Z_j^{z_j}. Because factors on distinct qubits commute, this
/// equals the product of per-qubit factors X_j^{x_j} Z_j^{z_j}; note the
/// single-qubit Y is i*X*Z, so a bare Y_j is {x=1, z=1, phase_exp=1}.
class PauliOperator {
public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t n) : n_(n), x_(n), z_(n), phase_(0) {}

  /// Parses labels like "XIZ", "+XX", "-YZ", "iX", "-iZ". Qubit 0 is the
  /// leftmost letter.
  static PauliOperator from_label(const std::string& label);

  static PauliOperator single(std::size_t n, std::size_t qubit, char pauli);

  std::size_t num_qubits() const { return n_; }
  const BitVec& x_bits() const { return x_; }
  const BitVec& z_bits() const { return z_; }
  BitVec& x_bits() { return x_; }
  BitVec& z_bits() { return z_; }

  /// Phase exponent k in P = i^k X^x Z^z, mod 4.
  std::uint8_t phase_exp() const { return phase_; }
  void set_phase_exp(std::uint8_t k) { phase_ = k & 3; }

  bool x(std::size_t q) const { return x_.get(q); }
  bool z(std::size_t q) const { return z_.get(q); }
  void set_x(std::size_t q, bool v) { x_.set(q, v); }
  void set_z(std::size_t q, bool v) { z_.set(q, v); }

  bool is_identity_bits() const { return !x_.any() && !z_.any(); }

  std::size_t weight() const;

  /// True iff P is Hermitian (phase_exp congruent to |x & z| mod 2).
  bool is_hermitian() const;

  /// Sign bit of a Hermitian Pauli: 0 for +P0, 1 for -P0, where P0 is the
  /// phase-free Hermitian Pauli with the same bits.
  bool sign_bit() const;
  void set_sign_bit(bool negative);

  PauliOperator& operator*=(const PauliOperator& other);
  friend PauliOperator operator*(PauliOperator a, const PauliOperator& b) {
    a *= b;
    return a;
  }

  PauliOperator inverse() const;

  std::string to_label() const;

  friend bool operator==(const PauliOperator& a, const PauliOperator& b) {
    return a.n_ == b.n_ && a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

private:
  std::size_t n_ = 0;
  BitVec x_;
  BitVec z_;
  std::uint8_t phase_ = 0;
};

/// Scalar commutator [[P, Q]] = Tr[P Q P^-1 Q^-1] / 2^n: +1 if the operators
/// commute and -1 if they anticommute. Throws on size mismatch.
int scalar_commutator(const PauliOperator& p, const PauliOperator& q);

/// Commutator as a bit: 0 = commute, 1 = anticommute.
bool anticommutes(const PauliOperator& p, const PauliOperator& q);

/// Embeds p on a wider register with its qubits shifted to start at offset.
PauliOperator embed(const PauliOperator& p, std::size_t n_total, std::size_t offset);

}  // namespace rcq
