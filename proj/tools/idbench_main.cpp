#include <CLI11.hpp>
#include <fmt/format.h>

#include <fstream>
#include <iostream>

#include "idbench/cluster_search.hpp"
#include "idbench/sweep.hpp"

using namespace idbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitResource = 2;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw InputError(fmt::format("cannot write '{}'", path));
  }
  out << content;
}

int cmd_validate(const std::string& catalog_path) {
  std::vector<IdTable> tables =
      catalog_path.empty() ? builtin_catalog() : load_catalog(catalog_path);
  bool all_ok = true;
  for (const IdTable& t : tables) {
    ValidationReport rep = validate_id(t);
    if (rep.ok()) {
      fmt::print("N={} M={} sign={:+d} ghz={} maxent={} ok\n", t.n_qubits, t.n_rows(), t.sign,
                 ghz_parity_check(t), is_maximally_entangled(t));
    } else {
      all_ok = false;
      fmt::print("N={} M={} INVALID\n", t.n_qubits, t.n_rows());
      for (const auto& issue : rep.issues) {
        fmt::print("  - {}\n", issue);
      }
    }
  }
  if (!all_ok) {
    throw InputError("catalog validation failed");
  }
  return kExitOk;
}

int cmd_search(uint32_t n, uint32_t m, bool ghz, bool maxent, uint64_t limit,
               const std::string& out_path) {
  SearchConstraints cons;
  cons.n_rows = m;
  cons.require_ghz_parity = ghz;
  cons.require_max_entanglement = maxent;
  cons.max_results = limit ? limit : UINT64_MAX;
  std::vector<IdTable> results = search_ids(n, cons);
  fmt::print("found {} ID{}\n", results.size(), results.size() == 1 ? "" : "s");
  if (!out_path.empty()) {
    save_catalog(out_path, results);
    fmt::print("wrote {}\n", out_path);
  } else {
    fmt::print("{}", catalog_to_string(results));
  }
  return kExitOk;
}

void print_result(const IdTable& table, const BenchmarkResult& r) {
  fmt::print("N={} M={}\n", r.n_qubits, r.n_rows);
  for (uint32_t i = 0; i < r.n_rows; i++) {
    fmt::print("o_{}={:+.6f}  ({:+d} {})\n", i + 1, r.row_expectations[i],
               table.eigenvalues[i], table.rows[i].letters());
  }
  fmt::print("alpha={:.6f}\n", r.alpha);
  fmt::print("B={:.6f}\n", r.score);
  fmt::print("F_ID={:.6f}\n", r.fid_bound);
  fmt::print("F={:.6f}\n", r.true_fidelity);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ID-based nonclassicality benchmarks for linear qubit arrays"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "check a catalog (builtin when no file given)");
  std::string catalog_path;
  validate->add_option("catalog", catalog_path, "catalog file");

  auto* search = app.add_subcommand("search", "search the cluster group for benchmark IDs");
  uint32_t search_n = 0, search_m = 0;
  uint64_t search_limit = 0;
  bool search_ghz = false, search_maxent = false;
  std::string search_out;
  search->add_option("--n", search_n, "qubit count")->required();
  search->add_option("--m", search_m, "rows per ID")->required();
  search->add_flag("--ghz", search_ghz, "require even per-column letter counts");
  search->add_flag("--maxent", search_maxent, "require maximal entanglement");
  search->add_option("--limit", search_limit, "stop after this many results");
  search->add_option("--out", search_out, "write results to a catalog file");

  auto* run = app.add_subcommand("run", "run one benchmark");
  uint32_t run_n = 0;
  bool run_ideal = false;
  std::string run_preset;
  double run_t1 = 25.0, run_t2 = 10.0, run_w = 0.275, run_pe = 0.0;
  uint64_t run_shots = 0, run_seed = 0;
  std::string run_catalog;
  run->add_option("--n", run_n, "qubit count")->required();
  run->add_flag("--ideal", run_ideal, "noiseless run");
  run->add_option("--preset", run_preset, "noise preset: chip");
  run->add_option("--t1", run_t1, "uniform T1 in microseconds");
  run->add_option("--t2", run_t2, "T2 in microseconds");
  run->add_option("--w", run_w, "CZ jitter width in radians");
  run->add_option("--pe", run_pe, "uniform init-error fraction");
  run->add_option("--shots", run_shots, "sample instead of exact traces");
  run->add_option("--seed", run_seed, "sampling seed");
  run->add_option("--catalog", run_catalog, "catalog file overriding the builtin IDs");

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  std::string sweep_spec_path, sweep_out;
  sweep->add_option("--spec", sweep_spec_path, "sweep spec file")->required();
  sweep->add_option("--out", sweep_out, "output CSV (overrides the spec's out=)");

  auto* report = app.add_subcommand("report", "turn a sweep CSV into plot data");
  std::string report_kind, report_in, report_out;
  report->add_option("--kind", report_kind, "b_vs_n|b_vs_t2|b_vs_t1|b_vs_w|fid_scatter")
      ->required();
  report->add_option("--in", report_in, "sweep CSV")->required();
  report->add_option("--out", report_out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*validate) {
      return cmd_validate(catalog_path);
    }
    if (*search) {
      return cmd_search(search_n, search_m, search_ghz, search_maxent, search_limit, search_out);
    }
    if (*run) {
      std::vector<IdTable> tables =
          run_catalog.empty() ? builtin_catalog() : load_catalog(run_catalog);
      const IdTable* table = nullptr;
      for (const IdTable& t : tables) {
        if (t.n_qubits == run_n) table = &t;
      }
      if (!table) {
        throw InputError(fmt::format("catalog has no entry for N = {}", run_n));
      }
      NoiseParams noise;
      if (run_ideal) {
        noise = NoiseParams::ideal(run_n);
      } else if (run_preset == "chip") {
        noise = chip_noise(run_n, run_t2, run_w);
      } else if (run_preset.empty()) {
        noise = NoiseParams::uniform(run_n, run_t1 * 1e-6, run_t2 * 1e-6, run_w, run_pe);
      } else {
        throw InputError(fmt::format("unknown preset '{}'", run_preset));
      }
      MeasurementMode mode = run_shots ? MeasurementMode::sampled(run_shots, run_seed)
                                       : MeasurementMode::exact();
      print_result(*table, run_benchmark(*table, noise, mode));
      return kExitOk;
    }
    if (*sweep) {
      SweepSpec spec = load_sweep_spec(sweep_spec_path);
      if (!sweep_out.empty()) spec.out_path = sweep_out;
      SweepTable table = run_sweep(spec);
      std::string csv = sweep_to_csv(table);
      if (spec.out_path.empty()) {
        fmt::print("{}", csv);
      } else {
        write_file(spec.out_path, csv);
        fmt::print("wrote {} rows to {}\n", table.rows.size(), spec.out_path);
      }
      return kExitOk;
    }
    if (*report) {
      std::ifstream in(report_in);
      if (!in) {
        throw InputError(fmt::format("cannot open '{}'", report_in));
      }
      std::stringstream buf;
      buf << in.rdbuf();
      std::string text = make_report(sweep_from_csv(buf.str()),
                                     report_kind_from_string(report_kind));
      if (report_out.empty()) {
        fmt::print("{}", text);
      } else {
        write_file(report_out, text);
      }
      return kExitOk;
    }
  } catch (const ResourceError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitResource;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitInput;
  }
  return kExitInput;
}
