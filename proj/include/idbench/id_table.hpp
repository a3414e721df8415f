#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "idbench/pauli.hpp"

namespace idbench {

class DensityMatrix;

/// An ID: M mutually commuting N-qubit Pauli observables whose product is
/// ±I^⊗N. Rows are stored bare (phase 0); the joint-eigenspace choice lives in
/// `eigenvalues`, one ±1 per row, with ∏ eigenvalues == sign.
struct IdTable {
  uint32_t n_qubits = 0;
  std::vector<PauliString> rows;
  std::vector<int> eigenvalues;
  int sign = 0;  // sign of ∏ rows; 0 until computed

  uint32_t n_rows() const { return static_cast<uint32_t>(rows.size()); }

  // Builds a table from letter strings; sign is computed from the row product
  // when that product is ±I and left 0 otherwise (validate_id reports it).
  static IdTable from_letters(const std::vector<std::string>& rows,
                              const std::vector<int>& eigenvalues);

  bool operator==(const IdTable&) const = default;
};

struct ValidationReport {
  int computed_sign = 0;  // ±1 when the row product is ±I, else 0
  std::vector<std::string> issues;
  std::vector<std::pair<uint32_t, uint32_t>> noncommuting_pairs;

  bool ok() const { return issues.empty(); }
};

ValidationReport validate_id(const IdTable& table);
// Throws InputError with the collected issues when validation fails.
void require_valid(const IdTable& table);

// True iff sign == -1 and each column has even counts of X, of Y and of Z.
bool ghz_parity_check(const IdTable& table);

// True iff no bipartition of the qubits leaves all row restrictions mutually
// commuting on both sides. Enumerates 2^(N-1)-1 bipartitions.
bool is_maximally_entangled(const IdTable& table, uint32_t enumeration_cap = 20);

// Π = ∏_i (I + λ_i O_i)/2, the projector onto the chosen joint eigenspace;
// rank 2^(N-M+1) when the rows have rank M-1.
Eigen::MatrixXcd eigenspace_projector(const IdTable& table,
                                      uint32_t dense_cap = PauliString::kDefaultDenseCap);

// Exact max of Σ_i λ_i ∏_j v_{O_ij, j} over all ±1 hidden-variable
// assignments. Only letters actually present in a column consume an
// assignment bit; the total bit count must stay within `exponent_cap`.
long lhvt_max_brute(const IdTable& table, uint32_t exponent_cap = 18, unsigned n_workers = 0);

// Copy with eigenvalues i and j negated (keeps ∏ eigenvalues == sign).
IdTable flip_eigenvalue_pair(const IdTable& table, uint32_t i, uint32_t j);

double benchmark_score(double alpha_exp, uint32_t m);       // (α - M + 2) / 2
double fidelity_lower_bound(double alpha_exp, uint32_t m);  // (α - M + 4) / 4

struct CorrelatorReport {
  double expectation = 0;  // <α> = Σ λ_i Tr(ρ O_i)
  double beta_qm = 0;      // M
  double beta_lhvt = 0;    // M - 2
  double beta_bisep = 0;   // M - 2
  double score = 0;        // B
  double fid_bound = 0;    // F_ID
  std::vector<double> row_expectations;
};

CorrelatorReport correlator_expectation(const IdTable& table, const DensityMatrix& rho);

// Plain-text catalog blocks: "ID N=<n> M=<m> sign=<±1>" then M lines of
// "<+1|-1> <letters>", blocks separated by one blank line.
std::string catalog_to_string(const std::vector<IdTable>& tables);
std::vector<IdTable> parse_catalog(std::string_view text);
std::vector<IdTable> load_catalog(const std::string& path);
void save_catalog(const std::string& path, const std::vector<IdTable>& tables);

}  // namespace idbench
