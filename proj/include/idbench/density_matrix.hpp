#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "idbench/pauli.hpp"

namespace idbench {

// Raised-cosine jitter coefficient c(w): the average of cos(δφ) over the
// distribution dP(δφ) = [1 + cos(π δφ / w)] / (2w) on [-w, w].
double jitter_coefficient(double width);

/// Dense 2^N x 2^N density operator. Qubit 0 owns the most significant bit of
/// the basis index, matching PauliString::to_matrix.
///
/// All mutators are trace preserving; apply_t1 is the first-order amplitude
/// damping update, so eigenvalues may dip below zero by O((dt/T1)^2).
class DensityMatrix {
 public:
  static constexpr uint32_t kDefaultDenseCap = 12;

  DensityMatrix(uint32_t n_qubits, Eigen::MatrixXcd rho);

  static DensityMatrix zero_state(uint32_t n_qubits);
  // ⊗_i [(1-p_i)|0><0| + p_i |1><1|]; each p_i must lie in [0, 0.5).
  static DensityMatrix mixed_init(uint32_t n_qubits, std::span<const double> p_excited);

  uint32_t n_qubits() const { return n_; }
  Eigen::Index dim() const { return rho_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::MatrixXcd& mutable_matrix() { return rho_; }

  std::complex<double> trace() const { return rho_.trace(); }
  double purity() const;
  // Tr(rho * P); requires a Hermitian string (phase ±1).
  double expectation(const PauliString& p) const;
  // Tr(rho * op) for a Hermitian operator, e.g. an eigenspace projector.
  double overlap(const Eigen::MatrixXcd& op) const;

  void apply_single_qubit(const Eigen::Matrix2cd& u, uint32_t qubit);
  void apply_y90(uint32_t qubit);   // exp(-i Y π/4)
  void apply_z90(uint32_t qubit);   // exp(+i Z π/4)
  void apply_x90(uint32_t qubit);   // exp(+i X π/4), Y-basis readout rotation
  void apply_xm90(uint32_t qubit);  // exp(-i X π/4)
  void apply_ym90(uint32_t qubit);  // exp(+i Y π/4), X-basis readout rotation
  void apply_zz90(uint32_t a, uint32_t b);  // exp(-i ZZ π/4) on an adjacent pair

  // First-order amplitude damping toward |0> on every qubit; per-qubit
  // corrections are accumulated from the input state, then applied at once.
  void apply_t1(double dt, std::span<const double> t1_per_qubit);
  // Element-wise dephasing: entry (r,s) is scaled by exp(-dt/t2 * hamming(r,s)).
  void apply_t2(double dt, double t2);
  // Ideal zz90 followed by the raised-cosine-averaged jitter channel: cross
  // ZZ-parity coherences are scaled by c(w). Exactly the closed form of the
  // averaged update ∫ exp(-iζ(π/2+δφ)/2) ρ exp(+iζ(π/2+δφ)/2) dP(δφ).
  void apply_jittered_zz90(uint32_t a, uint32_t b, double width);

  // Diagnostics, mostly for tests and invariant checks.
  double hermiticity_error() const;
  double min_eigenvalue() const;

 private:
  void check_qubit(uint32_t qubit) const;
  void check_adjacent(uint32_t a, uint32_t b) const;
  uint64_t index_bit(uint32_t qubit) const { return uint64_t{1} << (n_ - 1 - qubit); }

  uint32_t n_;
  Eigen::MatrixXcd rho_;
};

}  // namespace idbench
