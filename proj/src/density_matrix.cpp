#include "idbench/density_matrix.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <numbers>

namespace idbench {

using cd = std::complex<double>;

double jitter_coefficient(double width) {
  if (width < 0 || width >= std::numbers::pi) {
    throw InputError(fmt::format("jitter width {} outside [0, pi)", width));
  }
  if (width == 0.0) {
    return 1.0;
  }
  double s = std::sin(width);
  return s / width - s / (2 * (width + std::numbers::pi)) - s / (2 * (width - std::numbers::pi));
}

DensityMatrix::DensityMatrix(uint32_t n_qubits, Eigen::MatrixXcd rho)
    : n_(n_qubits), rho_(std::move(rho)) {
  if (n_ == 0 || n_ > kDefaultDenseCap) {
    throw ResourceError(
        fmt::format("density matrix supports 1..{} qubits, got {}", kDefaultDenseCap, n_));
  }
  Eigen::Index d = Eigen::Index{1} << n_;
  if (rho_.rows() != d || rho_.cols() != d) {
    throw InputError(fmt::format("density matrix for {} qubits must be {}x{}, got {}x{}", n_, d, d,
                                 rho_.rows(), rho_.cols()));
  }
}

DensityMatrix DensityMatrix::zero_state(uint32_t n_qubits) {
  Eigen::Index d = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  rho(0, 0) = 1.0;
  return DensityMatrix(n_qubits, std::move(rho));
}

DensityMatrix DensityMatrix::mixed_init(uint32_t n_qubits, std::span<const double> p_excited) {
  if (p_excited.size() != n_qubits) {
    throw InputError(fmt::format("expected {} init-error probabilities, got {}", n_qubits,
                                 p_excited.size()));
  }
  for (double p : p_excited) {
    if (!(p >= 0.0 && p < 0.5)) {
      throw InputError(fmt::format("init-error probability {} outside [0, 0.5)", p));
    }
  }
  Eigen::Index d = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index s = 0; s < d; s++) {
    double w = 1.0;
    for (uint32_t q = 0; q < n_qubits; q++) {
      bool excited = (s >> (n_qubits - 1 - q)) & 1;
      w *= excited ? p_excited[q] : 1.0 - p_excited[q];
    }
    rho(s, s) = w;
  }
  return DensityMatrix(n_qubits, std::move(rho));
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_rs|^2 for Hermitian rho.
  return rho_.squaredNorm();
}

double DensityMatrix::expectation(const PauliString& p) const {
  if (p.n_qubits() != n_) {
    throw InputError(fmt::format("Pauli string on {} qubits vs state on {}", p.n_qubits(), n_));
  }
  if (!p.is_hermitian()) {
    throw InputError(fmt::format("expectation of non-Hermitian string {}", p.str()));
  }
  const uint64_t xm = p.x_index_mask();
  const uint64_t zm = p.z_index_mask();
  // P|s> = c_s |s ^ xm> with c_s = i^(phase + #Y) * (-1)^|s & zm|.
  cd base = 1.0;
  switch ((p.phase_exp() + p.y_count()) & 3) {
    case 0: base = {1, 0}; break;
    case 1: base = {0, 1}; break;
    case 2: base = {-1, 0}; break;
    case 3: base = {0, -1}; break;
  }
  const Eigen::Index d = dim();
  cd acc = 0.0;
  for (Eigen::Index s = 0; s < d; s++) {
    double par = (std::popcount(static_cast<uint64_t>(s) & zm) & 1) ? -1.0 : 1.0;
    acc += par * rho_(s, static_cast<Eigen::Index>(s ^ xm));
  }
  return (base * acc).real();
}

double DensityMatrix::overlap(const Eigen::MatrixXcd& op) const {
  if (op.rows() != dim() || op.cols() != dim()) {
    throw InputError("operator dimension mismatch");
  }
  // Tr(rho * op) without the full product.
  return rho_.transpose().cwiseProduct(op).sum().real();
}

void DensityMatrix::check_qubit(uint32_t qubit) const {
  if (qubit >= n_) {
    throw InputError(fmt::format("qubit index {} out of range for {} qubits", qubit, n_));
  }
}

void DensityMatrix::check_adjacent(uint32_t a, uint32_t b) const {
  check_qubit(a);
  check_qubit(b);
  uint32_t lo = std::min(a, b), hi = std::max(a, b);
  if (hi - lo != 1) {
    throw InputError(
        fmt::format("qubits {} and {} are not adjacent on the linear array", a, b));
  }
}

void DensityMatrix::apply_single_qubit(const Eigen::Matrix2cd& u, uint32_t qubit) {
  check_qubit(qubit);
  const uint64_t m = index_bit(qubit);
  const Eigen::Index d = dim();
  Eigen::MatrixXcd tmp(d, d);
  // Row pass: tmp = U rho.
  for (Eigen::Index c = 0; c < d; c++) {
    for (Eigen::Index r = 0; r < d; r++) {
      if (r & m) continue;
      Eigen::Index r1 = r | static_cast<Eigen::Index>(m);
      cd a = rho_(r, c), b = rho_(r1, c);
      tmp(r, c) = u(0, 0) * a + u(0, 1) * b;
      tmp(r1, c) = u(1, 0) * a + u(1, 1) * b;
    }
  }
  // Column pass: rho = tmp U^dagger.
  const Eigen::Matrix2cd ud = u.adjoint();
  for (Eigen::Index c = 0; c < d; c++) {
    if (c & m) continue;
    Eigen::Index c1 = c | static_cast<Eigen::Index>(m);
    for (Eigen::Index r = 0; r < d; r++) {
      cd a = tmp(r, c), b = tmp(r, c1);
      rho_(r, c) = a * ud(0, 0) + b * ud(1, 0);
      rho_(r, c1) = a * ud(0, 1) + b * ud(1, 1);
    }
  }
}

namespace {

Eigen::Matrix2cd rot_y90() {
  Eigen::Matrix2cd u;
  double s = 1.0 / std::sqrt(2.0);
  u << s, -s, s, s;
  return u;
}

Eigen::Matrix2cd rot_ym90() {
  Eigen::Matrix2cd u;
  double s = 1.0 / std::sqrt(2.0);
  u << s, s, -s, s;
  return u;
}

Eigen::Matrix2cd rot_z90() {
  Eigen::Matrix2cd u = Eigen::Matrix2cd::Zero();
  u(0, 0) = std::polar(1.0, std::numbers::pi / 4);
  u(1, 1) = std::polar(1.0, -std::numbers::pi / 4);
  return u;
}

Eigen::Matrix2cd rot_x90() {
  Eigen::Matrix2cd u;
  double s = 1.0 / std::sqrt(2.0);
  u << cd(s, 0), cd(0, s), cd(0, s), cd(s, 0);
  return u;
}

Eigen::Matrix2cd rot_xm90() {
  Eigen::Matrix2cd u;
  double s = 1.0 / std::sqrt(2.0);
  u << cd(s, 0), cd(0, -s), cd(0, -s), cd(s, 0);
  return u;
}

}  // namespace

void DensityMatrix::apply_y90(uint32_t qubit) { apply_single_qubit(rot_y90(), qubit); }
void DensityMatrix::apply_z90(uint32_t qubit) { apply_single_qubit(rot_z90(), qubit); }
void DensityMatrix::apply_x90(uint32_t qubit) { apply_single_qubit(rot_x90(), qubit); }
void DensityMatrix::apply_xm90(uint32_t qubit) { apply_single_qubit(rot_xm90(), qubit); }
void DensityMatrix::apply_ym90(uint32_t qubit) { apply_single_qubit(rot_ym90(), qubit); }

void DensityMatrix::apply_zz90(uint32_t a, uint32_t b) {
  check_adjacent(a, b);
  const uint64_t pair = index_bit(a) | index_bit(b);
  const Eigen::Index d = dim();
  // exp(-i ZZ π/4) is diagonal: phase exp(-iπ/4 * zz(s)) with zz(s) = ±1.
  const cd minus = std::polar(1.0, -std::numbers::pi / 4);
  const cd plus = std::polar(1.0, std::numbers::pi / 4);
  for (Eigen::Index c = 0; c < d; c++) {
    bool pc = std::popcount(static_cast<uint64_t>(c) & pair) & 1;
    for (Eigen::Index r = 0; r < d; r++) {
      bool pr = std::popcount(static_cast<uint64_t>(r) & pair) & 1;
      if (pr != pc) {
        rho_(r, c) *= pr ? (plus * plus) : (minus * minus);
      }
    }
  }
}

void DensityMatrix::apply_t1(double dt, std::span<const double> t1_per_qubit) {
  if (t1_per_qubit.size() != n_) {
    throw InputError(
        fmt::format("expected {} T1 values, got {}", n_, t1_per_qubit.size()));
  }
  if (dt < 0) {
    throw InputError("negative time step");
  }
  const Eigen::Index d = dim();
  Eigen::MatrixXcd delta = Eigen::MatrixXcd::Zero(d, d);
  for (uint32_t q = 0; q < n_; q++) {
    double t1 = t1_per_qubit[q];
    if (!(t1 > 0)) {
      throw InputError(fmt::format("T1 for qubit {} must be positive", q));
    }
    double f = dt / t1;
    if (f == 0.0) continue;
    if (f > 0.05) {
      fmt::print(stderr, "warning: dt/T1 = {:.3g} on qubit {} strains the first-order update\n",
                 f, q);
    }
    const uint64_t m = index_bit(q);
    for (Eigen::Index c = 0; c < d; c++) {
      bool nc = c & m;
      for (Eigen::Index r = 0; r < d; r++) {
        bool nr = r & m;
        // -(f/2) {|1><1|_q, rho} plus f * sigma^-_q rho sigma^+_q.
        delta(r, c) += -0.5 * f * (double(nr) + double(nc)) * rho_(r, c);
        if (!nr && !nc) {
          delta(r, c) += f * rho_(r | static_cast<Eigen::Index>(m), c | static_cast<Eigen::Index>(m));
        }
      }
    }
  }
  rho_ += delta;
}

void DensityMatrix::apply_t2(double dt, double t2) {
  if (!(t2 > 0)) {
    throw InputError("T2 must be positive");
  }
  if (dt < 0) {
    throw InputError("negative time step");
  }
  const Eigen::Index d = dim();
  std::vector<double> factor(n_ + 1);
  for (uint32_t k = 0; k <= n_; k++) {
    factor[k] = std::exp(-dt * double(k) / t2);
  }
  for (Eigen::Index c = 0; c < d; c++) {
    for (Eigen::Index r = 0; r < d; r++) {
      int flips = std::popcount(static_cast<uint64_t>(r ^ c));
      if (flips) rho_(r, c) *= factor[flips];
    }
  }
}

void DensityMatrix::apply_jittered_zz90(uint32_t a, uint32_t b, double width) {
  const double c_w = jitter_coefficient(width);
  apply_zz90(a, b);
  if (c_w == 1.0) return;
  const uint64_t pair = index_bit(a) | index_bit(b);
  const Eigen::Index d = dim();
  // Mixture (1+c)/2 * rho + (1-c)/2 * ζρζ: coherences across the ZZ parity
  // classes shrink by c, everything else is untouched.
  for (Eigen::Index c = 0; c < d; c++) {
    bool pc = std::popcount(static_cast<uint64_t>(c) & pair) & 1;
    for (Eigen::Index r = 0; r < d; r++) {
      bool pr = std::popcount(static_cast<uint64_t>(r) & pair) & 1;
      if (pr != pc) rho_(r, c) *= c_w;
    }
  }
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho_ + rho_.adjoint()),
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace idbench
