#pragma once

#include <cstdint>
#include <vector>

#include "rcq/pauli.hpp"

namespace rcq {

/// Clifford unitary on n qubits, represented by the conjugation images of the
/// single-qubit generators: x_image[i] = U X_i U^dag, z_image[i] = U Z_i U^dag.
/// Rows of the 2n x 2n symplectic matrix are the (x|z) bits of those images;
/// the sign vector is their sign bits.
class CliffordTableau {
public:
  CliffordTableau() = default;
  static CliffordTableau identity(std::size_t n);

  // Elementary gates embedded on n qubits.
  static CliffordTableau hadamard(std::size_t n, std::size_t q);
  static CliffordTableau phase_gate(std::size_t n, std::size_t q);
  static CliffordTableau cnot(std::size_t n, std::size_t control, std::size_t target);
  static CliffordTableau swap_gate(std::size_t n, std::size_t a, std::size_t b);
  static CliffordTableau pauli_gate(const PauliOperator& p);

  std::size_t num_qubits() const { return n_; }
  const PauliOperator& x_image(std::size_t i) const { return x_img_[i]; }
  const PauliOperator& z_image(std::size_t i) const { return z_img_[i]; }
  PauliOperator& x_image(std::size_t i) { return x_img_[i]; }
  PauliOperator& z_image(std::size_t i) { return z_img_[i]; }

  /// U P U^dag, with full phase tracking.
  PauliOperator conjugate(const PauliOperator& p) const;

  /// Composition: (b.then(a)) means apply b first, then a; the image of P is
  /// a.conjugate(b.conjugate(P)).
  CliffordTableau then(const CliffordTableau& later) const;

  CliffordTableau inverse() const;

  /// Checks M^T Lambda M = Lambda over GF(2) together with sign/Hermiticity
  /// consistency of the images.
  bool is_symplectic() const;

  /// 2n x 2n symplectic matrix as bit rows [x | z], x-images first.
  std::vector<BitVec> symplectic_rows() const;

  /// Compact byte key identifying (symplectic, signs); used for dedup when
  /// enumerating gate groups.
  std::vector<std::uint8_t> canonical_key() const;

  friend bool operator==(const CliffordTableau& a, const CliffordTableau& b) {
    return a.n_ == b.n_ && a.x_img_ == b.x_img_ && a.z_img_ == b.z_img_;
  }

private:
  std::size_t n_ = 0;
  std::vector<PauliOperator> x_img_;
  std::vector<PauliOperator> z_img_;
};

}  // namespace rcq
