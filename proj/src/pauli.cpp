#include "idbench/pauli.hpp"

#include <fmt/format.h>

#include <bit>
#include <complex>

namespace idbench {

namespace {

constexpr std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int popcount(uint64_t v) { return std::popcount(v); }

}  // namespace

char pauli_to_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Z: return 'Z';
    case Pauli::Y: return 'Y';
  }
  throw InputError("invalid Pauli value");
}

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Z': return Pauli::Z;
    case 'Y': return Pauli::Y;
    default:
      throw InputError(fmt::format("invalid Pauli letter '{}'", c));
  }
}

uint64_t bit_reverse(uint64_t v, uint32_t n) {
  uint64_t out = 0;
  for (uint32_t j = 0; j < n; j++) {
    out |= ((v >> j) & 1u) << (n - 1 - j);
  }
  return out;
}

PauliString::PauliString(uint32_t n_qubits) : n_(n_qubits) {
  if (n_ == 0) {
    throw InputError("PauliString needs at least one qubit");
  }
  if (n_ > kMaxQubits) {
    throw ResourceError(fmt::format("PauliString supports at most {} qubits, got {}", kMaxQubits, n_));
  }
}

PauliString::PauliString(uint32_t n_qubits, uint64_t x_bits, uint64_t z_bits, int phase_exp)
    : PauliString(n_qubits) {
  const uint64_t mask = (n_ == 64) ? ~uint64_t{0} : ((uint64_t{1} << n_) - 1);
  x_ = x_bits & mask;
  z_ = z_bits & mask;
  phase_ = ((phase_exp % 4) + 4) % 4;
}

PauliString PauliString::from_letters(std::string_view letters) {
  if (letters.empty()) {
    throw InputError("empty Pauli letter sequence");
  }
  PauliString p(static_cast<uint32_t>(letters.size()));
  for (uint32_t j = 0; j < letters.size(); j++) {
    Pauli l = pauli_from_char(letters[j]);
    uint64_t bit = uint64_t{1} << j;
    if (l == Pauli::X || l == Pauli::Y) p.x_ |= bit;
    if (l == Pauli::Z || l == Pauli::Y) p.z_ |= bit;
  }
  return p;
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  }
  PauliString p = from_letters(text);
  p.phase_ = phase;
  return p;
}

Pauli PauliString::letter(uint32_t qubit) const {
  if (qubit >= n_) {
    throw InputError(fmt::format("qubit index {} out of range for {} qubits", qubit, n_));
  }
  uint8_t x = (x_ >> qubit) & 1u;
  uint8_t z = (z_ >> qubit) & 1u;
  return static_cast<Pauli>(x | (z << 1));
}

std::string PauliString::letters() const {
  std::string out(n_, 'I');
  for (uint32_t j = 0; j < n_; j++) {
    out[j] = pauli_to_char(letter(j));
  }
  return out;
}

std::string PauliString::str() const {
  static constexpr const char* kTokens[4] = {"+", "+i", "-", "-i"};
  return std::string(kTokens[phase_]) + letters();
}

int PauliString::sign() const {
  if (!is_hermitian()) {
    throw InputError(fmt::format("Pauli string {} has imaginary phase", str()));
  }
  return phase_ == 0 ? +1 : -1;
}

uint32_t PauliString::weight() const { return static_cast<uint32_t>(popcount(x_ | z_)); }

uint32_t PauliString::y_count() const { return static_cast<uint32_t>(popcount(x_ & z_)); }

PauliString PauliString::bare() const { return PauliString(n_, x_, z_, 0); }

PauliString PauliString::reversed_qubits() const {
  return PauliString(n_, bit_reverse(x_, n_), bit_reverse(z_, n_), phase_);
}

PauliString PauliString::operator*(const PauliString& rhs) const {
  if (n_ != rhs.n_) {
    throw InputError(fmt::format("cannot multiply Pauli strings on {} and {} qubits", n_, rhs.n_));
  }
  uint64_t rx = x_ ^ rhs.x_;
  uint64_t rz = z_ ^ rhs.z_;
  // Per-site phase of letter products, expressed through Y counts plus the
  // anticommutation reordering of the X^x Z^z normal form.
  int c = popcount(x_ & z_) + popcount(rhs.x_ & rhs.z_) - popcount(rx & rz) +
          2 * popcount(z_ & rhs.x_);
  return PauliString(n_, rx, rz, phase_ + rhs.phase_ + c);
}

bool PauliString::commutes_with(const PauliString& rhs) const {
  if (n_ != rhs.n_) {
    throw InputError(fmt::format("cannot compare Pauli strings on {} and {} qubits", n_, rhs.n_));
  }
  return ((popcount(x_ & rhs.z_) + popcount(z_ & rhs.x_)) & 1) == 0;
}

Eigen::MatrixXcd PauliString::to_matrix(uint32_t dense_cap) const {
  if (n_ > dense_cap) {
    throw ResourceError(
        fmt::format("dense matrix for {} qubits exceeds the cap of {}", n_, dense_cap));
  }
  using cd = std::complex<double>;
  Eigen::Matrix2cd single[4];
  single[0] << 1, 0, 0, 1;                      // I
  single[1] << 0, 1, 1, 0;                      // X
  single[2] << 1, 0, 0, -1;                     // Z
  single[3] << 0, cd(0, -1), cd(0, 1), 0;       // Y
  Eigen::MatrixXcd out = kPhases[phase_] * Eigen::MatrixXcd::Identity(1, 1);
  for (uint32_t j = n_; j-- > 0;) {
    const Eigen::Matrix2cd& m = single[static_cast<uint8_t>(letter(j))];
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int a = 0; a < 2; a++) {
      for (int b = 0; b < 2; b++) {
        next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = m(a, b) * out;
      }
    }
    out = std::move(next);
  }
  return out;
}

PauliString multiply(const PauliString& p, const PauliString& q) { return p * q; }

bool commutes(const PauliString& p, const PauliString& q) { return p.commutes_with(q); }

}  // namespace idbench
