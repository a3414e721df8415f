#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "idbench/density_matrix.hpp"
#include "idbench/id_table.hpp"
#include "test_util.hpp"

using namespace idbench;
using idbench::testing::dense_letters;

namespace {

IdTable reference_id3() {
  return IdTable::from_letters({"YXY", "YYZ", "ZXZ", "ZYY"}, {-1, +1, +1, +1});
}

IdTable bell_id2() { return IdTable::from_letters({"XX", "YY", "ZZ"}, {+1, -1, +1}); }

bool has_issue(const ValidationReport& rep, const char* needle) {
  return std::any_of(rep.issues.begin(), rep.issues.end(),
                     [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("validation accepts the reference tables") {
  ValidationReport rep = validate_id(reference_id3());
  CHECK(rep.ok());
  CHECK(rep.computed_sign == -1);

  // N=2: XX * YY * ZZ = -II by direct multiplication.
  PauliString prod = PauliString::from_letters("XX") * PauliString::from_letters("YY") *
                     PauliString::from_letters("ZZ");
  CHECK(prod.str() == "-II");
  rep = validate_id(bell_id2());
  CHECK(rep.ok());
  CHECK(rep.computed_sign == -1);
}

TEST_CASE("validation names distinct failures") {
  IdTable anti = IdTable::from_letters({"XI", "ZI"}, {+1, +1});
  ValidationReport rep = validate_id(anti);
  CHECK_FALSE(rep.ok());
  CHECK(rep.noncommuting_pairs == std::vector<std::pair<uint32_t, uint32_t>>{{0, 1}});
  CHECK(has_issue(rep, "anticommute"));
  CHECK(has_issue(rep, "column 1 is all-I"));

  // X*Y*Z = iI: commutation failures plus an imaginary product phase.
  IdTable xyz = IdTable::from_letters({"X", "Y", "Z"}, {+1, +1, +1});
  rep = validate_id(xyz);
  CHECK(has_issue(rep, "imaginary"));
  CHECK(rep.noncommuting_pairs.size() == 3);

  // XX * XI = IX, not ±I.
  IdTable notid = IdTable::from_letters({"XX", "XI"}, {+1, +1});
  rep = validate_id(notid);
  CHECK(has_issue(rep, "not ±I"));

  // Eigenvalue product must match the sign.
  IdTable bad_eigs = reference_id3();
  bad_eigs.eigenvalues = {+1, +1, +1, +1};
  rep = validate_id(bad_eigs);
  CHECK(has_issue(rep, "eigenvalue product"));

  CHECK_THROWS_AS(require_valid(anti), InputError);
}

TEST_CASE("ghz parity") {
  CHECK(ghz_parity_check(reference_id3()));
  // Single occurrences per column are odd counts.
  CHECK_FALSE(ghz_parity_check(bell_id2()));
  // Any sign=+1 ID fails regardless of counts.
  IdTable plus = IdTable::from_letters({"XX", "XX"}, {+1, +1});
  CHECK(plus.sign == +1);
  CHECK_FALSE(ghz_parity_check(plus));
}

TEST_CASE("maximal entanglement matches a dense bipartition oracle") {
  auto oracle = [](const IdTable& t) {
    uint32_t n = t.n_qubits;
    for (uint64_t mask = 1; mask + 1 < (uint64_t{1} << n); mask++) {
      if ((mask & 1) == 0) continue;  // fix qubit 0 on side A; complements are equivalent
      bool any_anticommute = false;
      for (uint32_t i = 0; i < t.n_rows() && !any_anticommute; i++) {
        for (uint32_t k = i + 1; k < t.n_rows() && !any_anticommute; k++) {
          std::string a, b;
          for (uint32_t q = 0; q < n; q++) {
            if ((mask >> q) & 1) {
              a += pauli_to_char(t.rows[i].letter(q));
              b += pauli_to_char(t.rows[k].letter(q));
            }
          }
          Eigen::MatrixXcd ma = dense_letters(a), mb = dense_letters(b);
          if ((ma * mb + mb * ma).cwiseAbs().maxCoeff() < 1e-12) any_anticommute = true;
        }
      }
      if (!any_anticommute) return false;
    }
    return true;
  };

  IdTable id3 = reference_id3();
  CHECK(is_maximally_entangled(id3));
  CHECK(oracle(id3));

  CHECK(is_maximally_entangled(bell_id2()));
  CHECK(oracle(bell_id2()));

  // Tensor product of two disjoint N=2 IDs: the defining bipartition commutes.
  IdTable product = IdTable::from_letters(
      {"XXII", "YYII", "ZZII", "IIXX", "IIYY", "IIZZ"}, {+1, -1, +1, +1, -1, +1});
  REQUIRE(validate_id(product).ok());
  CHECK_FALSE(is_maximally_entangled(product));
  CHECK_FALSE(oracle(product));

  CHECK_THROWS_AS(is_maximally_entangled(reference_id3(), 2), ResourceError);
}

TEST_CASE("eigenspace projector") {
  IdTable id3 = reference_id3();
  Eigen::MatrixXcd proj = eigenspace_projector(id3);
  CHECK(proj.trace().real() == doctest::Approx(1.0).epsilon(1e-12));  // rank 2^(3-4+1)
  CHECK((proj * proj - proj).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((proj - proj.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  for (uint32_t i = 0; i < id3.n_rows(); i++) {
    Eigen::MatrixXcd o = id3.rows[i].to_matrix();
    CHECK((o * proj - proj * o).cwiseAbs().maxCoeff() < 1e-12);
    // Π projects onto the λ_i eigenspace of O_i.
    CHECK((o * proj - double(id3.eigenvalues[i]) * proj).cwiseAbs().maxCoeff() < 1e-12);
  }

  Eigen::MatrixXcd proj2 = eigenspace_projector(bell_id2());
  CHECK(proj2.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((proj2 * proj2 - proj2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("correlator expectations") {
  IdTable id3 = reference_id3();
  DensityMatrix target(3, eigenspace_projector(id3));
  CorrelatorReport rep = correlator_expectation(id3, target);
  CHECK(rep.expectation == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.beta_qm == 4.0);
  CHECK(rep.beta_lhvt == 2.0);
  CHECK(rep.beta_bisep == 2.0);
  CHECK(rep.score == doctest::Approx(1.0));
  CHECK(rep.fid_bound == doctest::Approx(1.0));

  DensityMatrix mixed(3, Eigen::MatrixXcd::Identity(8, 8) / 8.0);
  rep = correlator_expectation(id3, mixed);
  CHECK(rep.expectation == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(rep.score == doctest::Approx((2.0 - 4.0) / 2.0));

  // Exactly one flipped eigenvalue pair: two terms turn to -1.
  DensityMatrix flipped(3, eigenspace_projector(flip_eigenvalue_pair(id3, 0, 2)));
  rep = correlator_expectation(id3, flipped);
  CHECK(rep.expectation == doctest::Approx(0.0).epsilon(1e-12));  // M - 4
}

TEST_CASE("correlator is bounded by M with equality only inside the eigenspace") {
  IdTable id3 = reference_id3();
  Eigen::MatrixXcd proj = eigenspace_projector(id3);
  for (int trial = 0; trial < 40; trial++) {
    DensityMatrix rho = idbench::testing::random_density(3);
    CorrelatorReport rep = correlator_expectation(id3, rho);
    double fid = rho.overlap(proj);
    CHECK(rep.expectation <= 4.0 + 1e-9);
    if (rep.expectation > 4.0 - 1e-9) CHECK(fid > 1 - 1e-9);
    if (fid > 1 - 1e-12) CHECK(rep.expectation > 4.0 - 1e-9);
    CHECK(rep.fid_bound <= fid + 1e-9);
  }
}

TEST_CASE("benchmark score and fidelity bound") {
  CHECK(benchmark_score(4, 4) == doctest::Approx(1.0));
  CHECK(benchmark_score(2, 4) == doctest::Approx(0.0));
  CHECK(benchmark_score(0, 4) == doctest::Approx(-1.0));
  CHECK(fidelity_lower_bound(4, 4) == doctest::Approx(1.0));
  CHECK(fidelity_lower_bound(2, 4) == doctest::Approx(0.5));
  CHECK(fidelity_lower_bound(0, 4) == doctest::Approx(0.0));
  CHECK_THROWS_AS(benchmark_score(1, 2), InputError);
  CHECK_THROWS_AS(fidelity_lower_bound(1, 2), InputError);
}

namespace {

// Plain 3N-bit enumerator, no per-column reduction.
long lhvt_oracle(const IdTable& t) {
  uint32_t n = t.n_qubits;
  long best = std::numeric_limits<long>::min();
  for (uint64_t a = 0; a < (uint64_t{1} << (3 * n)); a++) {
    auto v = [&](uint32_t q, Pauli p) {
      uint32_t slot = 3 * q + (static_cast<uint32_t>(p) - 1);
      return ((a >> slot) & 1) ? -1 : 1;
    };
    long total = 0;
    for (uint32_t i = 0; i < t.n_rows(); i++) {
      long term = t.eigenvalues[i];
      for (uint32_t q = 0; q < n; q++) {
        Pauli p = t.rows[i].letter(q);
        if (p != Pauli::I) term *= v(q, p);
      }
      total += term;
    }
    best = std::max(best, total);
  }
  return best;
}

}  // namespace

TEST_CASE("brute-force LHVT maximum") {
  IdTable id3 = reference_id3();
  CHECK(lhvt_max_brute(id3) == 2);  // M - 2
  CHECK(lhvt_oracle(id3) == 2);

  // Without GHZ parity the hidden variables reach the quantum bound M.
  IdTable bell = bell_id2();
  CHECK(lhvt_max_brute(bell) == 3);
  CHECK(lhvt_oracle(bell) == 3);

  // Split-independence: forced single worker vs a multi-way split.
  CHECK(lhvt_max_brute(id3, 18, 1) == lhvt_max_brute(id3, 18, 7));

  CHECK_THROWS_AS(lhvt_max_brute(id3, 4), ResourceError);
  IdTable invalid = IdTable::from_letters({"XI", "ZI"}, {+1, +1});
  CHECK_THROWS_AS(lhvt_max_brute(invalid), InputError);
}

TEST_CASE("catalog text round trip") {
  std::vector<IdTable> tables = {reference_id3(), bell_id2()};
  std::string text = catalog_to_string(tables);
  CHECK(text.find("ID N=3 M=4 sign=-1\n-1 YXY\n+1 YYZ\n+1 ZXZ\n+1 ZYY\n") != std::string::npos);
  std::vector<IdTable> parsed = parse_catalog(text);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0] == tables[0]);
  CHECK(parsed[1] == tables[1]);
  CHECK(catalog_to_string(parsed) == text);

  CHECK_THROWS_AS(parse_catalog("ID N=3 M=4 sign=-1\n-1 YXY\n"), InputError);
  CHECK_THROWS_AS(parse_catalog("+1 XX\n"), InputError);
}
