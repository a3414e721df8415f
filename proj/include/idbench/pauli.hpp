#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>

#include "idbench/errors.hpp"

namespace idbench {

enum class Pauli : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

char pauli_to_char(Pauli p);
Pauli pauli_from_char(char c);

// Reverses the low `n` bits of `v` (bit 0 <-> bit n-1).
uint64_t bit_reverse(uint64_t v, uint32_t n);

/// Signed N-qubit Pauli string in symplectic form: per-qubit x/z bit masks
/// plus a phase exponent k, with operator == i^k * (letter_0 ⊗ ... ⊗ letter_{N-1}).
/// Letters map to bits as (x,z): (0,0)=I, (1,0)=X, (0,1)=Z, (1,1)=Y.
/// Bit j of the masks belongs to qubit j (leftmost letter).
class PauliString {
 public:
  static constexpr uint32_t kMaxQubits = 64;
  static constexpr uint32_t kDefaultDenseCap = 12;

  explicit PauliString(uint32_t n_qubits);  // identity, phase 0
  PauliString(uint32_t n_qubits, uint64_t x_bits, uint64_t z_bits, int phase_exp);

  static PauliString from_letters(std::string_view letters);
  // Accepts an optional leading "+", "-", "+i" or "-i" token, e.g. "-YXY".
  static PauliString parse(std::string_view text);

  uint32_t n_qubits() const { return n_; }
  uint64_t x_bits() const { return x_; }
  uint64_t z_bits() const { return z_; }
  int phase_exp() const { return phase_; }

  Pauli letter(uint32_t qubit) const;
  std::string letters() const;
  std::string str() const;  // phase token + letters

  bool is_identity_letters() const { return x_ == 0 && z_ == 0; }
  bool is_hermitian() const { return (phase_ & 1) == 0; }
  int sign() const;                 // +1/-1; throws for imaginary phase
  uint32_t weight() const;          // number of non-I positions
  uint64_t support() const { return x_ | z_; }
  uint32_t y_count() const;

  PauliString bare() const;  // same letters, phase 0
  PauliString reversed_qubits() const;

  PauliString operator*(const PauliString& rhs) const;
  bool commutes_with(const PauliString& rhs) const;

  // Dense 2^N x 2^N matrix; qubit 0 is the most significant index bit.
  Eigen::MatrixXcd to_matrix(uint32_t dense_cap = kDefaultDenseCap) const;

  // Masks in basis-index orientation (qubit 0 = most significant bit).
  uint64_t x_index_mask() const { return bit_reverse(x_, n_); }
  uint64_t z_index_mask() const { return bit_reverse(z_, n_); }

  bool operator==(const PauliString&) const = default;

 private:
  uint32_t n_;
  uint64_t x_ = 0;
  uint64_t z_ = 0;
  int phase_ = 0;  // mod 4
};

PauliString multiply(const PauliString& p, const PauliString& q);
bool commutes(const PauliString& p, const PauliString& q);

}  // namespace idbench
