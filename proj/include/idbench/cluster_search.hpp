#pragma once

#include <cstdint>
#include <vector>

#include "idbench/id_table.hpp"
#include "idbench/pauli.hpp"

namespace idbench {

/// The 2^N-element stabilizer group of the N-qubit linear cluster state,
/// generated by K_j = Z_{j-1} X_j Z_{j+1}. Element index g sets bit j when
/// generator K_j participates; phases are ±1 and the signed element
/// stabilizes the cluster state with eigenvalue +1.
struct ClusterGroup {
  uint32_t n_qubits = 0;
  std::vector<PauliString> elements;

  const PauliString& element(uint64_t g) const { return elements.at(g); }
  int element_sign(uint64_t g) const { return elements.at(g).sign(); }
};

PauliString cluster_generator(uint32_t n_qubits, uint32_t j);
ClusterGroup cluster_stabilizer_group(uint32_t n_qubits, uint32_t enumeration_cap = 24);

// Smallest M with N <= (M-2)(M-1)/2, the minimal row count for N qubits.
uint32_t minimal_m(uint32_t n_qubits);

struct SearchConstraints {
  uint32_t n_rows = 0;  // M, with 3 <= M <= N+1
  bool require_ghz_parity = true;
  bool require_max_entanglement = true;
  uint64_t max_results = UINT64_MAX;
  bool canonical_dedup = true;
};

// Enumerates IDs whose rows are cluster-group elements, with eigenvalues set
// to the group signs and overall sign -1. Deterministic order: results are
// sorted by canonical form.
std::vector<IdTable> search_ids(uint32_t n_qubits, const SearchConstraints& constraints);

// Row-sorted table, minimized over qubit-order reversal (the one spatial
// symmetry of a linear array).
IdTable canonical_form(const IdTable& table);
std::string canonical_key(const IdTable& table);

// Frozen benchmark IDs for N = 3..9 at the minimal M; the N=3 entry is the
// reference table, the rest were produced by search_ids and are pinned by a
// regeneration test.
const std::vector<IdTable>& builtin_catalog();
const IdTable& builtin_catalog_entry(uint32_t n_qubits);

}  // namespace idbench
