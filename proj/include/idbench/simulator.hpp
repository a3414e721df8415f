#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "idbench/density_matrix.hpp"
#include "idbench/id_table.hpp"

namespace idbench {

/// Noise model of the prepare-and-measure circuits: per-qubit initialization
/// error and T1, a global T2, raised-cosine angular jitter on the ZZ step of
/// each CZ, and fixed single-/two-qubit gate durations.
struct NoiseParams {
  std::vector<double> t1;          // seconds per qubit, +inf allowed
  double t2 = std::numeric_limits<double>::infinity();  // seconds
  double jitter_width = 0.0;       // radians, < pi
  std::vector<double> init_error;  // per qubit, in [0, 0.5)
  double dt_single = 25e-9;        // seconds
  double dt_two = 45e-9;           // seconds

  static NoiseParams ideal(uint32_t n_qubits);
  static NoiseParams uniform(uint32_t n_qubits, double t1_s, double t2_s, double width_rad,
                             double p_excited);

  void validate(uint32_t n_qubits) const;  // throws InputError
};

struct MeasurementMode {
  enum class Kind { exact, shots };
  Kind kind = Kind::exact;
  uint64_t n_shots = 0;
  uint64_t seed = 0;

  static MeasurementMode exact() { return {}; }
  static MeasurementMode sampled(uint64_t n_shots, uint64_t seed) {
    return {Kind::shots, n_shots, seed};
  }
};

DensityMatrix init_state(uint32_t n_qubits, std::span<const double> p_excited);

// Depth-3 preparation: Y90 layer, then CZ on pairs (0,1),(2,3),..., then CZ
// on pairs (1,2),(3,4),.... Each CZ is z90⊗z90 corrections plus the jittered
// zz90. Per layer, every qubit then decoheres for the layer duration, T1
// before T2. The measurement rotation layer is not included here.
DensityMatrix prepare_cluster(uint32_t n_qubits, const NoiseParams& noise);

// Applies the basis-change layer for `row` to a prepared state (with
// single-qubit-gate-time decoherence on all qubits), then reads out the
// Z-product over the row support: exactly for Kind::exact, or as the mean of
// seeded bitstring samples for Kind::shots. With noiseless rotations both
// modes estimate Tr(rho * row).
double measure_setting(const DensityMatrix& prepared, const PauliString& row,
                       const NoiseParams& noise, const MeasurementMode& mode);

struct BenchmarkResult {
  uint32_t n_qubits = 0;
  uint32_t n_rows = 0;
  std::vector<double> row_expectations;  // Tr(rho O_i), bare rows
  double alpha = 0;                      // Σ λ_i Tr(rho O_i)
  double score = 0;                      // B
  double fid_bound = 0;                  // F_ID
  double true_fidelity = 0;              // F = Tr(rho_prep Π)
  NoiseParams params;
};

// One full benchmark: M prepare-and-measure executions plus the exact
// pre-measurement fidelity against the table's eigenspace projector.
BenchmarkResult run_benchmark(const IdTable& table, const NoiseParams& noise,
                              const MeasurementMode& mode = MeasurementMode::exact());

}  // namespace idbench
