#include "idbench/cluster_search.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <bit>
#include <set>

namespace idbench {

namespace {

uint64_t low_mask(uint32_t n) { return (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1); }

// z mask of the cluster element with generator-exponent vector g.
uint64_t neighbor_xor(uint64_t g, uint32_t n) { return ((g << 1) ^ (g >> 1)) & low_mask(n); }

// Phase exponent added when multiplying bare-form strings (px,pz)*(qx,qz).
int multiply_phase(uint64_t px, uint64_t pz, uint64_t qx, uint64_t qz) {
  uint64_t rx = px ^ qx, rz = pz ^ qz;
  int c = std::popcount(px & pz) + std::popcount(qx & qz) - std::popcount(rx & rz) +
          2 * std::popcount(pz & qx);
  return ((c % 4) + 4) % 4;
}

// Signs of all 2^n cluster-group elements, indexed by exponent vector.
std::vector<int8_t> element_sign_table(uint32_t n) {
  const uint64_t size = uint64_t{1} << n;
  std::vector<int8_t> phase(size, 0);
  for (uint64_t g = 1; g < size; g++) {
    uint32_t j = static_cast<uint32_t>(std::countr_zero(g));
    uint64_t rest = g ^ (uint64_t{1} << j);
    uint64_t kx = uint64_t{1} << j;
    uint64_t kz = ((j > 0 ? (uint64_t{1} << (j - 1)) : 0) |
                   (j + 1 < n ? (uint64_t{1} << (j + 1)) : 0));
    int p = phase[rest] + multiply_phase(kx, kz, rest, neighbor_xor(rest, n));
    phase[g] = static_cast<int8_t>(((p % 4) + 4) % 4);
  }
  std::vector<int8_t> sign(size);
  for (uint64_t g = 0; g < size; g++) {
    if (phase[g] & 1) {
      throw std::logic_error("cluster-group element with imaginary phase");
    }
    sign[g] = phase[g] == 0 ? 1 : -1;
  }
  return sign;
}

PauliString cluster_element(uint32_t n, uint64_t g, int sign) {
  return PauliString(n, g, neighbor_xor(g, n), sign > 0 ? 0 : 2);
}

}  // namespace

PauliString cluster_generator(uint32_t n_qubits, uint32_t j) {
  if (j >= n_qubits) {
    throw InputError(fmt::format("generator index {} out of range for {} qubits", j, n_qubits));
  }
  uint64_t x = uint64_t{1} << j;
  uint64_t z = ((j > 0 ? (uint64_t{1} << (j - 1)) : 0) |
                (j + 1 < n_qubits ? (uint64_t{1} << (j + 1)) : 0));
  return PauliString(n_qubits, x, z, 0);
}

ClusterGroup cluster_stabilizer_group(uint32_t n_qubits, uint32_t enumeration_cap) {
  if (n_qubits < 2) {
    throw InputError("cluster group needs at least 2 qubits");
  }
  if (n_qubits > enumeration_cap) {
    throw ResourceError(fmt::format("group enumeration for {} qubits exceeds the cap of {}",
                                    n_qubits, enumeration_cap));
  }
  ClusterGroup group;
  group.n_qubits = n_qubits;
  auto signs = element_sign_table(n_qubits);
  const uint64_t size = uint64_t{1} << n_qubits;
  group.elements.reserve(size);
  for (uint64_t g = 0; g < size; g++) {
    group.elements.push_back(cluster_element(n_qubits, g, signs[g]));
  }
  return group;
}

uint32_t minimal_m(uint32_t n_qubits) {
  if (n_qubits < 3) {
    throw InputError("minimal M is defined for N >= 3");
  }
  uint32_t m = 3;
  while ((m - 2) * (m - 1) / 2 < n_qubits) m++;
  return m;
}

IdTable canonical_form(const IdTable& table) {
  auto sorted = [](IdTable t) {
    std::vector<size_t> order(t.rows.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = i;
    std::vector<std::string> keys(t.rows.size());
    for (size_t i = 0; i < keys.size(); i++) keys[i] = t.rows[i].letters();
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (keys[a] != keys[b]) return keys[a] < keys[b];
      return t.eigenvalues[a] < t.eigenvalues[b];
    });
    IdTable out = t;
    for (size_t i = 0; i < order.size(); i++) {
      out.rows[i] = t.rows[order[i]];
      out.eigenvalues[i] = t.eigenvalues[order[i]];
    }
    return out;
  };
  IdTable fwd = sorted(table);
  IdTable rev = table;
  for (auto& r : rev.rows) r = r.reversed_qubits();
  rev = sorted(rev);
  return catalog_to_string({fwd}) <= catalog_to_string({rev}) ? fwd : rev;
}

std::string canonical_key(const IdTable& table) {
  return catalog_to_string({canonical_form(table)});
}

namespace {

struct IdSearch {
  uint32_t n = 0;
  SearchConstraints cons;
  std::vector<int8_t> signs;          // group sign per exponent vector
  std::vector<uint32_t> even_space;   // even-weight vectors of F_2^M
  std::vector<uint32_t> columns;      // chosen column bit-vectors, columns[q] for qubit q
  std::vector<uint64_t> prefixes;     // per-row bits so far; column q at bit n-1-q
  std::array<uint32_t, 32> slots{};   // echelon basis slot per leading bit
  uint32_t rank = 0;
  std::set<std::string> seen;
  std::vector<IdTable> results;

  bool run() {
    const uint32_t m = cons.n_rows;
    even_space.clear();
    for (uint32_t v = 0; v < (1u << m); v++) {
      if ((std::popcount(v) & 1) == 0) even_space.push_back(v);
    }
    columns.assign(n, 0);
    prefixes.assign(m, 0);
    slots.fill(0);
    rank = 0;
    return descend(0);
  }

  // Reduces v against the echelon basis; nonzero result means v is
  // independent and its leading bit names the free slot.
  uint32_t reduce(uint32_t v) const {
    while (v) {
      uint32_t h = 31 - static_cast<uint32_t>(std::countl_zero(v));
      if (!slots[h]) return v;
      v ^= slots[h];
    }
    return 0;
  }

  // depth = number of columns already placed.
  bool descend(uint32_t depth) {
    const uint32_t m = cons.n_rows;
    if (depth == n) {
      return emit();
    }
    uint32_t prev = depth > 0 ? columns[depth - 1] : 0;
    uint32_t prev2 = depth > 1 ? columns[depth - 2] : 0;
    for (auto it = even_space.rbegin(); it != even_space.rend(); ++it) {
      uint32_t cand = *it;
      if (cons.require_ghz_parity && depth > 0 &&
          (std::popcount(cand & prev) & 1)) {
        continue;
      }
      // Column depth-1 must not be all-I: x bits `prev`, z bits prev2 ^ cand.
      if (depth > 0 && prev == 0 && (prev2 ^ cand) == 0) continue;
      // Keep rows sorted: a tied row pair must not flip order on this column.
      bool ordered = true;
      for (uint32_t i = 0; i + 1 < m; i++) {
        if (prefixes[i] == prefixes[i + 1] &&
            ((cand >> i) & 1) > ((cand >> (i + 1)) & 1)) {
          ordered = false;
          break;
        }
      }
      if (!ordered) continue;
      uint32_t red = reduce(cand);
      uint32_t new_rank = rank + (red != 0 ? 1 : 0);
      if (new_rank + (n - depth - 1) < m - 1) continue;

      columns[depth] = cand;
      uint64_t bit = uint64_t{1} << (n - 1 - depth);
      for (uint32_t i = 0; i < m; i++) {
        if ((cand >> i) & 1) prefixes[i] |= bit;
      }
      uint32_t slot_used = 32;
      if (red != 0) {
        slot_used = 31 - static_cast<uint32_t>(std::countl_zero(red));
        slots[slot_used] = red;
        rank++;
      }

      bool keep_going = descend(depth + 1);

      if (slot_used < 32) {
        slots[slot_used] = 0;
        rank--;
      }
      for (uint32_t i = 0; i < m; i++) {
        if ((cand >> i) & 1) prefixes[i] &= ~bit;
      }
      if (!keep_going) return false;
    }
    return true;
  }

  bool emit() {
    const uint32_t m = cons.n_rows;
    // Last column must not be all-I (right boundary has no neighbor).
    if (columns[n - 1] == 0 && (n < 2 || columns[n - 2] == 0)) return true;
    if (rank != m - 1) return true;
    // Distinct nonzero rows: sorted prefixes must strictly increase from > 0.
    if (prefixes[0] == 0) return true;
    for (uint32_t i = 0; i + 1 < m; i++) {
      if (prefixes[i] >= prefixes[i + 1]) return true;
    }

    IdTable table;
    table.n_qubits = n;
    int sign = 1;
    for (uint32_t i = 0; i < m; i++) {
      uint64_t g = 0;
      for (uint32_t q = 0; q < n; q++) {
        g |= uint64_t{(columns[q] >> i) & 1} << q;
      }
      int lambda = signs[g];
      table.rows.push_back(cluster_element(n, g, +1));
      table.eigenvalues.push_back(lambda);
      sign *= lambda;
    }
    if (sign != -1) return true;
    table.sign = -1;
    if (cons.require_max_entanglement && !is_maximally_entangled(table)) return true;
    if (cons.require_ghz_parity && !ghz_parity_check(table)) {
      throw std::logic_error("search produced a non-GHZ table despite the parity chain");
    }

    IdTable out = canonical_form(table);
    if (cons.canonical_dedup) {
      if (!seen.insert(catalog_to_string({out})).second) return true;
    }
    results.push_back(std::move(out));
    return results.size() < cons.max_results;
  }
};

}  // namespace

std::vector<IdTable> search_ids(uint32_t n_qubits, const SearchConstraints& constraints) {
  if (constraints.n_rows < 3) {
    throw InputError("search needs M >= 3");
  }
  if (constraints.n_rows > n_qubits + 1) {
    throw InputError(fmt::format("M = {} exceeds N + 1 = {}", constraints.n_rows, n_qubits + 1));
  }
  if (n_qubits < 2) {
    throw InputError("search needs N >= 2");
  }
  if (n_qubits > 24) {
    throw ResourceError(fmt::format("search for {} qubits exceeds the cap of 24", n_qubits));
  }
  IdSearch search;
  search.n = n_qubits;
  search.cons = constraints;
  search.signs = element_sign_table(n_qubits);
  search.run();
  std::vector<IdTable>& results = search.results;
  std::sort(results.begin(), results.end(), [](const IdTable& a, const IdTable& b) {
    return catalog_to_string({a}) < catalog_to_string({b});
  });
  return results;
}

const IdTable& builtin_catalog_entry(uint32_t n_qubits) {
  for (const IdTable& t : builtin_catalog()) {
    if (t.n_qubits == n_qubits) return t;
  }
  throw InputError(fmt::format("no builtin catalog entry for N = {}", n_qubits));
}

}  // namespace idbench
