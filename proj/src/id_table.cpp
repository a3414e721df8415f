#include "idbench/id_table.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>
#include <thread>

#include "idbench/density_matrix.hpp"

namespace idbench {

IdTable IdTable::from_letters(const std::vector<std::string>& rows,
                              const std::vector<int>& eigenvalues) {
  if (rows.empty()) {
    throw InputError("ID needs at least one row");
  }
  if (rows.size() != eigenvalues.size()) {
    throw InputError(fmt::format("{} rows but {} eigenvalues", rows.size(), eigenvalues.size()));
  }
  IdTable t;
  t.n_qubits = static_cast<uint32_t>(rows.front().size());
  for (const auto& r : rows) {
    t.rows.push_back(PauliString::from_letters(r));
    if (t.rows.back().n_qubits() != t.n_qubits) {
      throw InputError("rows of unequal length");
    }
  }
  for (int e : eigenvalues) {
    if (e != 1 && e != -1) {
      throw InputError(fmt::format("eigenvalue {} is not ±1", e));
    }
  }
  t.eigenvalues = eigenvalues;
  PauliString prod(t.n_qubits);
  for (const auto& r : t.rows) prod = prod * r;
  if (prod.is_identity_letters() && prod.is_hermitian()) {
    t.sign = prod.sign();
  }
  return t;
}

ValidationReport validate_id(const IdTable& table) {
  ValidationReport rep;
  const uint32_t m = table.n_rows();
  if (m == 0 || table.eigenvalues.size() != m) {
    rep.issues.push_back("malformed table: rows/eigenvalue count mismatch");
    return rep;
  }
  for (uint32_t i = 0; i < m; i++) {
    if (table.rows[i].n_qubits() != table.n_qubits) {
      rep.issues.push_back(fmt::format("row {} has wrong length", i));
      return rep;
    }
    if (table.rows[i].phase_exp() != 0) {
      rep.issues.push_back(fmt::format("row {} carries a phase; rows must be bare", i));
    }
  }
  for (uint32_t i = 0; i < m; i++) {
    for (uint32_t k = i + 1; k < m; k++) {
      if (!table.rows[i].commutes_with(table.rows[k])) {
        rep.noncommuting_pairs.emplace_back(i, k);
      }
    }
  }
  for (auto [i, k] : rep.noncommuting_pairs) {
    rep.issues.push_back(fmt::format("rows {} and {} anticommute", i, k));
  }

  PauliString prod(table.n_qubits);
  for (const auto& r : table.rows) prod = prod * r.bare();
  if (!prod.is_identity_letters()) {
    rep.issues.push_back(fmt::format("row product is {}, not ±I", prod.str()));
  } else if (!prod.is_hermitian()) {
    rep.issues.push_back("row product has imaginary phase");
  } else {
    rep.computed_sign = prod.sign();
    if (table.sign != rep.computed_sign) {
      rep.issues.push_back(fmt::format("stored sign {} but computed {}", table.sign,
                                       rep.computed_sign));
    }
  }

  int eig_prod = 1;
  for (int e : table.eigenvalues) {
    if (e != 1 && e != -1) {
      rep.issues.push_back("eigenvalues must be ±1");
      eig_prod = 0;
      break;
    }
    eig_prod *= e;
  }
  if (eig_prod != 0 && rep.computed_sign != 0 && eig_prod != rep.computed_sign) {
    rep.issues.push_back(
        fmt::format("eigenvalue product {} does not match sign {}", eig_prod, rep.computed_sign));
  }

  for (uint32_t j = 0; j < table.n_qubits; j++) {
    bool all_i = true;
    for (const auto& r : table.rows) {
      if (r.letter(j) != Pauli::I) {
        all_i = false;
        break;
      }
    }
    if (all_i) {
      rep.issues.push_back(fmt::format("column {} is all-I", j));
    }
  }
  return rep;
}

void require_valid(const IdTable& table) {
  ValidationReport rep = validate_id(table);
  if (!rep.ok()) {
    std::string joined;
    for (const auto& s : rep.issues) {
      joined += (joined.empty() ? "" : "; ") + s;
    }
    throw InputError(fmt::format("invalid ID: {}", joined));
  }
}

bool ghz_parity_check(const IdTable& table) {
  require_valid(table);
  if (table.sign != -1) return false;
  for (uint32_t j = 0; j < table.n_qubits; j++) {
    int counts[4] = {0, 0, 0, 0};
    for (const auto& r : table.rows) {
      counts[static_cast<uint8_t>(r.letter(j))]++;
    }
    if ((counts[1] | counts[2] | counts[3]) & 1) return false;
  }
  return true;
}

bool is_maximally_entangled(const IdTable& table, uint32_t enumeration_cap) {
  require_valid(table);
  const uint32_t n = table.n_qubits;
  if (n > enumeration_cap) {
    throw ResourceError(fmt::format(
        "bipartition enumeration for {} qubits exceeds the cap of {}", n, enumeration_cap));
  }
  if (n < 2) return false;
  const uint32_t m = table.n_rows();
  const uint64_t half = uint64_t{1} << (n - 1);
  // Masks with qubit 0 excluded cover each bipartition once (complements are
  // equivalent because full rows commute).
  for (uint64_t a = 1; a < half; a++) {
    uint64_t mask = a << 1;  // qubit 0 stays on side B
    bool split_found = false;
    for (uint32_t i = 0; i < m && !split_found; i++) {
      for (uint32_t k = i + 1; k < m && !split_found; k++) {
        const auto& p = table.rows[i];
        const auto& q = table.rows[k];
        int sym = std::popcount(p.x_bits() & q.z_bits() & mask) +
                  std::popcount(p.z_bits() & q.x_bits() & mask);
        if (sym & 1) split_found = true;
      }
    }
    if (!split_found) return false;
  }
  return true;
}

Eigen::MatrixXcd eigenspace_projector(const IdTable& table, uint32_t dense_cap) {
  require_valid(table);
  if (table.n_qubits > dense_cap) {
    throw ResourceError(fmt::format("projector for {} qubits exceeds the dense cap of {}",
                                    table.n_qubits, dense_cap));
  }
  const Eigen::Index d = Eigen::Index{1} << table.n_qubits;
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Identity(d, d);
  Eigen::MatrixXcd scratch(d, d);
  for (uint32_t i = 0; i < table.n_rows(); i++) {
    const PauliString& row = table.rows[i];
    const uint64_t xm = row.x_index_mask();
    const uint64_t zm = row.z_index_mask();
    std::complex<double> base = 1.0;
    switch (row.y_count() & 3) {
      case 1: base = {0, 1}; break;
      case 2: base = {-1, 0}; break;
      case 3: base = {0, -1}; break;
      default: break;
    }
    const double lambda = table.eigenvalues[i];
    // (O proj)(r, :) = c_{r^xm} proj(r^xm, :), with O|t> = c_t |t^xm>.
    for (Eigen::Index c = 0; c < d; c++) {
      for (Eigen::Index r = 0; r < d; r++) {
        Eigen::Index src = r ^ static_cast<Eigen::Index>(xm);
        double par = (std::popcount(static_cast<uint64_t>(src) & zm) & 1) ? -1.0 : 1.0;
        scratch(r, c) = 0.5 * (proj(r, c) + lambda * base * par * proj(src, c));
      }
    }
    proj.swap(scratch);
  }
  return proj;
}

long lhvt_max_brute(const IdTable& table, uint32_t exponent_cap, unsigned n_workers) {
  require_valid(table);
  const uint32_t n = table.n_qubits;
  const uint32_t m = table.n_rows();

  // One assignment bit per letter actually present in each column.
  uint32_t n_bits = 0;
  std::vector<std::array<int, 4>> bit_of(n, {-1, -1, -1, -1});
  for (uint32_t j = 0; j < n; j++) {
    for (const auto& r : table.rows) {
      Pauli l = r.letter(j);
      if (l == Pauli::I) continue;
      auto& slot = bit_of[j][static_cast<uint8_t>(l)];
      if (slot < 0) slot = static_cast<int>(n_bits++);
    }
  }
  if (n_bits > exponent_cap) {
    throw ResourceError(fmt::format(
        "LHVT enumeration needs 2^{} assignments, above the cap of 2^{}; "
        "reduce N or raise the cap",
        n_bits, exponent_cap));
  }

  std::vector<uint64_t> row_mask(m, 0);
  for (uint32_t i = 0; i < m; i++) {
    for (uint32_t j = 0; j < n; j++) {
      Pauli l = table.rows[i].letter(j);
      if (l == Pauli::I) continue;
      row_mask[i] |= uint64_t{1} << bit_of[j][static_cast<uint8_t>(l)];
    }
  }

  const uint64_t total = uint64_t{1} << n_bits;
  auto scan = [&](uint64_t lo, uint64_t hi) {
    long best = std::numeric_limits<long>::min();
    for (uint64_t a = lo; a < hi; a++) {
      long v = 0;
      for (uint32_t i = 0; i < m; i++) {
        int flip = std::popcount(a & row_mask[i]) & 1;
        v += table.eigenvalues[i] * (flip ? -1 : 1);
      }
      best = std::max(best, v);
    }
    return best;
  };

  unsigned workers = n_workers ? n_workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, 16));
  if (workers == 1 || total < 4096) {
    return scan(0, total);
  }
  std::vector<long> partial(workers, std::numeric_limits<long>::min());
  std::vector<std::thread> pool;
  uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; w++) {
    uint64_t lo = w * chunk;
    uint64_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&partial, w, lo, hi, &scan] { partial[w] = scan(lo, hi); });
  }
  for (auto& t : pool) t.join();
  return *std::max_element(partial.begin(), partial.end());
}

IdTable flip_eigenvalue_pair(const IdTable& table, uint32_t i, uint32_t j) {
  if (i >= table.n_rows() || j >= table.n_rows() || i == j) {
    throw InputError("flip_eigenvalue_pair needs two distinct row indices");
  }
  IdTable out = table;
  out.eigenvalues[i] = -out.eigenvalues[i];
  out.eigenvalues[j] = -out.eigenvalues[j];
  return out;
}

double benchmark_score(double alpha_exp, uint32_t m) {
  if (m < 3) {
    throw InputError(fmt::format("benchmark score needs M >= 3, got {}", m));
  }
  return (alpha_exp - double(m) + 2.0) / 2.0;
}

double fidelity_lower_bound(double alpha_exp, uint32_t m) {
  if (m < 3) {
    throw InputError(fmt::format("fidelity bound needs M >= 3, got {}", m));
  }
  return (alpha_exp - double(m) + 4.0) / 4.0;
}

CorrelatorReport correlator_expectation(const IdTable& table, const DensityMatrix& rho) {
  require_valid(table);
  if (rho.n_qubits() != table.n_qubits) {
    throw InputError(fmt::format("state on {} qubits vs ID on {}", rho.n_qubits(),
                                 table.n_qubits));
  }
  CorrelatorReport rep;
  const uint32_t m = table.n_rows();
  rep.row_expectations.reserve(m);
  for (uint32_t i = 0; i < m; i++) {
    double e = rho.expectation(table.rows[i]);
    rep.row_expectations.push_back(e);
    rep.expectation += table.eigenvalues[i] * e;
  }
  rep.beta_qm = double(m);
  rep.beta_lhvt = double(m) - 2.0;
  rep.beta_bisep = double(m) - 2.0;
  rep.score = benchmark_score(rep.expectation, m);
  rep.fid_bound = fidelity_lower_bound(rep.expectation, m);
  return rep;
}

std::string catalog_to_string(const std::vector<IdTable>& tables) {
  std::string out;
  for (size_t t = 0; t < tables.size(); t++) {
    const IdTable& id = tables[t];
    if (t) out += "\n";
    out += fmt::format("ID N={} M={} sign={}\n", id.n_qubits, id.n_rows(),
                       id.sign >= 0 ? "+1" : "-1");
    for (uint32_t i = 0; i < id.n_rows(); i++) {
      out += fmt::format("{} {}\n", id.eigenvalues[i] >= 0 ? "+1" : "-1", id.rows[i].letters());
    }
  }
  return out;
}

std::vector<IdTable> parse_catalog(std::string_view text) {
  std::vector<IdTable> out;
  std::istringstream in{std::string(text)};
  std::string line;
  IdTable current;
  uint32_t expect_rows = 0;
  auto finish = [&] {
    if (expect_rows == 0) return;
    if (current.rows.size() != expect_rows) {
      throw InputError(fmt::format("catalog block N={} promises {} rows, found {}",
                                   current.n_qubits, expect_rows, current.rows.size()));
    }
    out.push_back(current);
    current = IdTable{};
    expect_rows = 0;
  };
  size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finish();
      continue;
    }
    if (line[0] == '#') continue;
    if (line.rfind("ID ", 0) == 0) {
      finish();
      uint32_t n = 0, m = 0;
      char signbuf[8] = {0};
      if (std::sscanf(line.c_str(), "ID N=%u M=%u sign=%7s", &n, &m, signbuf) != 3) {
        throw InputError(fmt::format("bad catalog header at line {}: '{}'", lineno, line));
      }
      std::string s(signbuf);
      if (s != "+1" && s != "-1") {
        throw InputError(fmt::format("bad sign token '{}' at line {}", s, lineno));
      }
      current.n_qubits = n;
      current.sign = (s == "+1") ? +1 : -1;
      expect_rows = m;
      continue;
    }
    if (expect_rows == 0) {
      throw InputError(fmt::format("row outside of an ID block at line {}", lineno));
    }
    std::istringstream row(line);
    std::string eig, letters;
    if (!(row >> eig >> letters) || (eig != "+1" && eig != "-1")) {
      throw InputError(fmt::format("bad catalog row at line {}: '{}'", lineno, line));
    }
    PauliString p = PauliString::from_letters(letters);
    if (p.n_qubits() != current.n_qubits) {
      throw InputError(fmt::format("row length {} does not match N={} at line {}",
                                   p.n_qubits(), current.n_qubits, lineno));
    }
    current.rows.push_back(p);
    current.eigenvalues.push_back(eig == "+1" ? +1 : -1);
  }
  finish();
  return out;
}

std::vector<IdTable> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError(fmt::format("cannot open catalog file '{}'", path));
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

void save_catalog(const std::string& path, const std::vector<IdTable>& tables) {
  std::ofstream out(path);
  if (!out) {
    throw InputError(fmt::format("cannot write catalog file '{}'", path));
  }
  out << catalog_to_string(tables);
}

}  // namespace idbench
