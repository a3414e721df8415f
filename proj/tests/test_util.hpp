#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

#include "idbench/density_matrix.hpp"
#include "idbench/pauli.hpp"

namespace idbench::testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(0x1dbec4f00dULL);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline PauliString random_pauli(uint32_t n, bool random_phase = false) {
  std::uniform_int_distribution<uint64_t> bits(0, (uint64_t{1} << n) - 1);
  int phase = random_phase ? std::uniform_int_distribution<int>(0, 3)(rng()) : 0;
  return PauliString(n, bits(rng()), bits(rng()), phase);
}

// Random full-rank density matrix rho = A A^dagger / tr.
inline DensityMatrix random_density(uint32_t n) {
  Eigen::Index d = Eigen::Index{1} << n;
  std::normal_distribution<double> g(0, 1);
  Eigen::MatrixXcd a(d, d);
  for (Eigen::Index c = 0; c < d; c++) {
    for (Eigen::Index r = 0; r < d; r++) {
      a(r, c) = std::complex<double>(g(rng()), g(rng()));
    }
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(n, std::move(rho));
}

// Random Haar single-qubit pure state as a 2-vector.
inline Eigen::Vector2cd random_qubit_state() {
  std::normal_distribution<double> g(0, 1);
  Eigen::Vector2cd v(std::complex<double>(g(rng()), g(rng())),
                     std::complex<double>(g(rng()), g(rng())));
  return v / v.norm();
}

// kron(a, b) with a as the most significant factor.
inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); i++) {
    for (Eigen::Index j = 0; j < a.cols(); j++) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Eigen::Matrix2cd pauli_matrix(char letter) {
  using cd = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, cd(0, -1), cd(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad letter");
  }
  return m;
}

// Dense operator for a letter string, built independently of PauliString.
inline Eigen::MatrixXcd dense_letters(const std::string& letters) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : letters) out = kron(out, pauli_matrix(c));
  return out;
}

// Embeds a 2^k-dim operator acting on contiguous qubits [first, first+k) of n.
inline Eigen::MatrixXcd embed(const Eigen::MatrixXcd& op, uint32_t first, uint32_t k,
                              uint32_t n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(Eigen::Index{1} << first,
                                                    Eigen::Index{1} << first);
  out = kron(out, op);
  uint32_t rest = n - first - k;
  out = kron(out, Eigen::MatrixXcd::Identity(Eigen::Index{1} << rest, Eigen::Index{1} << rest));
  return out;
}

}  // namespace idbench::testing
