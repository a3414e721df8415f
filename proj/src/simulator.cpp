#include "idbench/simulator.hpp"

#include <fmt/format.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

namespace idbench {

NoiseParams NoiseParams::ideal(uint32_t n_qubits) {
  NoiseParams p;
  p.t1.assign(n_qubits, std::numeric_limits<double>::infinity());
  p.init_error.assign(n_qubits, 0.0);
  return p;
}

NoiseParams NoiseParams::uniform(uint32_t n_qubits, double t1_s, double t2_s, double width_rad,
                                 double p_excited) {
  NoiseParams p;
  p.t1.assign(n_qubits, t1_s);
  p.t2 = t2_s;
  p.jitter_width = width_rad;
  p.init_error.assign(n_qubits, p_excited);
  return p;
}

void NoiseParams::validate(uint32_t n_qubits) const {
  if (t1.size() != n_qubits) {
    throw InputError(fmt::format("expected {} T1 values, got {}", n_qubits, t1.size()));
  }
  if (init_error.size() != n_qubits) {
    throw InputError(
        fmt::format("expected {} init-error values, got {}", n_qubits, init_error.size()));
  }
  for (double v : t1) {
    if (!(v > 0)) throw InputError("T1 values must be positive");
  }
  if (!(t2 > 0)) throw InputError("T2 must be positive");
  if (!(jitter_width >= 0 && jitter_width < std::numbers::pi)) {
    throw InputError(fmt::format("jitter width {} outside [0, pi)", jitter_width));
  }
  for (double p : init_error) {
    if (!(p >= 0 && p < 0.5)) {
      throw InputError(fmt::format("init-error probability {} outside [0, 0.5)", p));
    }
  }
  if (!(dt_single > 0) || !(dt_two > 0)) {
    throw InputError("gate durations must be positive");
  }
}

DensityMatrix init_state(uint32_t n_qubits, std::span<const double> p_excited) {
  return DensityMatrix::mixed_init(n_qubits, p_excited);
}

namespace {

// Fixed channel order per layer: unitaries, then T1, then T2 (jitter is part
// of the ZZ step). Exact-mode results are bit-for-bit reproducible.
void decohere_layer(DensityMatrix& rho, const NoiseParams& noise, double dt) {
  rho.apply_t1(dt, noise.t1);
  rho.apply_t2(dt, noise.t2);
}

void cz_layer(DensityMatrix& rho, const NoiseParams& noise, uint32_t first) {
  const uint32_t n = rho.n_qubits();
  bool any = false;
  for (uint32_t a = first; a + 1 < n; a += 2) {
    rho.apply_z90(a);
    rho.apply_z90(a + 1);
    rho.apply_jittered_zz90(a, a + 1, noise.jitter_width);
    any = true;
  }
  if (any) decohere_layer(rho, noise, noise.dt_two);
}

}  // namespace

DensityMatrix prepare_cluster(uint32_t n_qubits, const NoiseParams& noise) {
  if (n_qubits < 2) {
    throw InputError("cluster preparation needs at least 2 qubits");
  }
  noise.validate(n_qubits);
  DensityMatrix rho = init_state(n_qubits, noise.init_error);
  for (uint32_t q = 0; q < n_qubits; q++) rho.apply_y90(q);
  decohere_layer(rho, noise, noise.dt_single);
  cz_layer(rho, noise, 0);
  cz_layer(rho, noise, 1);
  return rho;
}

double measure_setting(const DensityMatrix& prepared, const PauliString& row,
                       const NoiseParams& noise, const MeasurementMode& mode) {
  const uint32_t n = prepared.n_qubits();
  if (row.n_qubits() != n) {
    throw InputError(
        fmt::format("measurement row on {} qubits vs state on {}", row.n_qubits(), n));
  }
  if (!row.is_hermitian()) {
    throw InputError(fmt::format("measurement row {} has imaginary phase", row.str()));
  }
  noise.validate(n);

  DensityMatrix rho = prepared;
  // Basis change: X letters rotate by exp(+i Y π/4) (adjoint maps X -> Z);
  // Y letters use exp(+i X π/4), whose adjoint maps Y -> -Z, so each Y
  // contributes a recorded sign flip.
  int flip = row.sign();
  for (uint32_t q = 0; q < n; q++) {
    switch (row.letter(q)) {
      case Pauli::X: rho.apply_ym90(q); break;
      case Pauli::Y:
        rho.apply_x90(q);
        flip = -flip;
        break;
      default: break;
    }
  }
  decohere_layer(rho, noise, noise.dt_single);

  const uint64_t supp = bit_reverse(row.support(), n);
  const Eigen::Index d = rho.dim();
  if (mode.kind == MeasurementMode::Kind::exact) {
    double acc = 0;
    for (Eigen::Index s = 0; s < d; s++) {
      double outcome = (std::popcount(static_cast<uint64_t>(s) & supp) & 1) ? -1.0 : 1.0;
      acc += outcome * rho.matrix()(s, s).real();
    }
    return flip * acc;
  }

  if (mode.n_shots == 0) {
    throw InputError("shots mode needs a positive shot count");
  }
  std::vector<double> cumulative(d);
  double total = 0;
  for (Eigen::Index s = 0; s < d; s++) {
    total += std::max(0.0, rho.matrix()(s, s).real());
    cumulative[s] = total;
  }
  std::mt19937_64 rng(mode.seed);
  long sum = 0;
  for (uint64_t shot = 0; shot < mode.n_shots; shot++) {
    double u = double(rng() >> 11) * 0x1.0p-53 * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    Eigen::Index s = std::min<Eigen::Index>(d - 1, it - cumulative.begin());
    sum += (std::popcount(static_cast<uint64_t>(s) & supp) & 1) ? -1 : 1;
  }
  return flip * double(sum) / double(mode.n_shots);
}

BenchmarkResult run_benchmark(const IdTable& table, const NoiseParams& noise,
                              const MeasurementMode& mode) {
  require_valid(table);
  noise.validate(table.n_qubits);

  BenchmarkResult result;
  result.n_qubits = table.n_qubits;
  result.n_rows = table.n_rows();
  result.params = noise;

  DensityMatrix prepared = prepare_cluster(table.n_qubits, noise);
  result.true_fidelity = prepared.overlap(eigenspace_projector(table));

  for (uint32_t i = 0; i < table.n_rows(); i++) {
    MeasurementMode row_mode = mode;
    if (mode.kind == MeasurementMode::Kind::shots) {
      row_mode.seed = mode.seed + i;
    }
    double e = measure_setting(prepared, table.rows[i], noise, row_mode);
    result.row_expectations.push_back(e);
    result.alpha += table.eigenvalues[i] * e;
  }
  result.score = benchmark_score(result.alpha, table.n_rows());
  result.fid_bound = fidelity_lower_bound(result.alpha, table.n_rows());
  return result;
}

}  // namespace idbench
