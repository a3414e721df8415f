#include "idbench/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "idbench/cluster_search.hpp"

namespace idbench {

const ChipPreset& chip_preset() {
  static const ChipPreset preset{
      "chip",
      {18.6, 28.1, 22.0, 19.1, 41.1, 21.3, 39.2, 24.7, 26.3},
      {1.8, 1.1, 1.7, 1.3, 4.8, 0.7, 6.7, 0.4, 1.5},
  };
  return preset;
}

NoiseParams chip_noise(uint32_t n_qubits, double t2_us, double width_rad) {
  const ChipPreset& chip = chip_preset();
  if (n_qubits == 0 || n_qubits > chip.t1_us.size()) {
    throw InputError(fmt::format("chip preset covers 1..{} qubits, got {}", chip.t1_us.size(),
                                 n_qubits));
  }
  NoiseParams p;
  p.t2 = t2_us * 1e-6;
  p.jitter_width = width_rad;
  size_t offset = chip.t1_us.size() - n_qubits;  // last N chip qubits
  for (uint32_t q = 0; q < n_qubits; q++) {
    p.t1.push_back(chip.t1_us[offset + q] * 1e-6);
    p.init_error.push_back(chip.init_error_percent[offset + q] / 100.0);
  }
  return p;
}

uint64_t SweepSpec::grid_size() const {
  uint64_t t1_points = t1_chip ? 1 : t1_us.size();
  uint64_t pe_points = pe_chip ? 1 : pe.size();
  return n_list.size() * t1_points * t2_us.size() * w_rad.size() * pe_points;
}

namespace {

std::vector<double> linspace(double lo, double hi, uint32_t points) {
  if (points == 0) throw InputError("axis needs at least one point");
  if (points == 1 || lo == hi) return {lo};
  std::vector<double> out;
  out.reserve(points);
  for (uint32_t i = 0; i < points; i++) {
    out.push_back(lo + (hi - lo) * double(i) / double(points - 1));
  }
  return out;
}

double parse_double(std::string_view s) {
  try {
    size_t used = 0;
    double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InputError(fmt::format("cannot parse number '{}'", s));
  }
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    out.emplace_back(s.substr(pos, next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::string trim(std::string s) {
  auto issp = [](unsigned char c) { return std::isspace(c); };
  while (!s.empty() && issp(s.front())) s.erase(s.begin());
  while (!s.empty() && issp(s.back())) s.pop_back();
  return s;
}

}  // namespace

SweepSpec parse_sweep_spec(std::string_view text) {
  SweepSpec spec;
  uint32_t points = 10;
  struct Range {
    double lo = 0, hi = 0;
    bool single = false, set = false;
  };
  Range t1_range, t2_range, w_range;
  bool pe_set = false;
  double pe_value = 0;

  std::istringstream in{std::string(text)};
  std::string line;
  size_t lineno = 0;
  auto parse_range = [](std::string_view value) {
    Range r;
    auto parts = split(value, ',');
    if (parts.size() == 1) {
      r.lo = r.hi = parse_double(trim(parts[0]));
      r.single = true;
    } else if (parts.size() == 2) {
      r.lo = parse_double(trim(parts[0]));
      r.hi = parse_double(trim(parts[1]));
    } else {
      throw InputError(fmt::format("range '{}' must be 'lo,hi' or a single value", value));
    }
    r.set = true;
    return r;
  };

  while (std::getline(in, line)) {
    lineno++;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(fmt::format("line {} is not key=value: '{}'", lineno, line));
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key == "n_list") {
      for (const auto& tok : split(value, ',')) {
        double v = parse_double(trim(tok));
        if (v < 2 || v != std::floor(v)) {
          throw InputError(fmt::format("bad qubit count '{}'", tok));
        }
        spec.n_list.push_back(static_cast<uint32_t>(v));
      }
    } else if (key == "t1_preset") {
      if (value != "chip") throw InputError(fmt::format("unknown t1 preset '{}'", value));
      spec.t1_chip = true;
    } else if (key == "t1_range") {
      t1_range = parse_range(value);
    } else if (key == "t2_range") {
      t2_range = parse_range(value);
    } else if (key == "w_range") {
      w_range = parse_range(value);
    } else if (key == "pe_preset") {
      if (value != "chip") throw InputError(fmt::format("unknown pe preset '{}'", value));
      spec.pe_chip = true;
    } else if (key == "pe_value") {
      pe_value = parse_double(value);
      pe_set = true;
    } else if (key == "points_per_axis") {
      points = static_cast<uint32_t>(parse_double(value));
      if (points == 0) throw InputError("points_per_axis must be positive");
    } else if (key == "mode") {
      if (value == "exact") {
        spec.mode = MeasurementMode::exact();
      } else if (value.rfind("shots:", 0) == 0) {
        spec.mode = MeasurementMode::sampled(
            static_cast<uint64_t>(parse_double(value.substr(6))), spec.seed);
      } else {
        throw InputError(fmt::format("unknown mode '{}'", value));
      }
    } else if (key == "seed") {
      spec.seed = static_cast<uint64_t>(parse_double(value));
    } else if (key == "out") {
      spec.out_path = value;
    } else {
      throw InputError(fmt::format("unknown sweep key '{}' at line {}", key, lineno));
    }
  }

  if (spec.n_list.empty()) throw InputError("sweep spec needs n_list");
  if (!t2_range.set) throw InputError("sweep spec needs t2_range");
  if (!w_range.set) throw InputError("sweep spec needs w_range");
  if (!spec.t1_chip && !t1_range.set) {
    throw InputError("sweep spec needs t1_preset or t1_range");
  }
  if (!spec.pe_chip && !pe_set) {
    throw InputError("sweep spec needs pe_preset or pe_value");
  }
  spec.t2_us = linspace(t2_range.lo, t2_range.hi, t2_range.single ? 1 : points);
  spec.w_rad = linspace(w_range.lo, w_range.hi, w_range.single ? 1 : points);
  if (!spec.t1_chip) {
    spec.t1_us = linspace(t1_range.lo, t1_range.hi, t1_range.single ? 1 : points);
  }
  if (!spec.pe_chip) {
    spec.pe = {pe_value};
  }
  spec.mode.seed = spec.seed;
  return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(fmt::format("cannot open sweep spec '{}'", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_spec(buf.str());
}

SweepTable run_sweep(const SweepSpec& spec, unsigned n_workers) {
  return run_sweep(spec, builtin_catalog(), n_workers);
}

SweepTable run_sweep(const SweepSpec& spec, const std::vector<IdTable>& catalog,
                     unsigned n_workers) {
  if (spec.grid_size() == 0) {
    throw InputError("sweep grid is empty");
  }
  struct Point {
    const IdTable* table = nullptr;
    NoiseParams noise;
    std::string t1_source, pe_source;
    double t2_us = 0, w_rad = 0;
  };

  auto entry_for = [&catalog](uint32_t n) -> const IdTable& {
    for (const IdTable& t : catalog) {
      if (t.n_qubits == n) return t;
    }
    throw InputError(fmt::format("catalog has no entry for N = {}", n));
  };

  // Expand the grid up front in its deterministic order: n, t1, t2, w, pe.
  std::vector<Point> points;
  points.reserve(spec.grid_size());
  for (uint32_t n : spec.n_list) {
    const IdTable& table = entry_for(n);
    size_t t1_count = spec.t1_chip ? 1 : spec.t1_us.size();
    size_t pe_count = spec.pe_chip ? 1 : spec.pe.size();
    for (size_t it1 = 0; it1 < t1_count; it1++) {
      for (double t2_us : spec.t2_us) {
        for (double w : spec.w_rad) {
          for (size_t ipe = 0; ipe < pe_count; ipe++) {
            Point pt;
            pt.table = &table;
            pt.t2_us = t2_us;
            pt.w_rad = w;
            if (spec.t1_chip || spec.pe_chip) {
              pt.noise = chip_noise(n, t2_us, w);
            }
            if (spec.t1_chip) {
              pt.t1_source = "chip";
            } else {
              double t1_us = spec.t1_us[it1];
              pt.t1_source = fmt::format("{:.12g}", t1_us);
              pt.noise.t1.assign(n, t1_us * 1e-6);
            }
            if (spec.pe_chip) {
              pt.pe_source = "chip";
            } else {
              double pe = spec.pe[ipe];
              pt.pe_source = fmt::format("{:.12g}", pe);
              pt.noise.init_error.assign(n, pe);
            }
            pt.noise.t2 = t2_us * 1e-6;
            pt.noise.jitter_width = w;
            points.push_back(std::move(pt));
          }
        }
      }
    }
  }

  SweepTable out;
  out.rows.resize(points.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto work = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      size_t i = next.fetch_add(1);
      if (i >= points.size()) break;
      const Point& pt = points[i];
      try {
        MeasurementMode mode = spec.mode;
        if (mode.kind == MeasurementMode::Kind::shots) {
          mode.seed = spec.seed + i * 0x9e3779b97f4a7c15ull;
        }
        BenchmarkResult r = run_benchmark(*pt.table, pt.noise, mode);
        SweepRow& row = out.rows[i];
        row.n = r.n_qubits;
        row.m = r.n_rows;
        row.t2_us = pt.t2_us;
        row.w_rad = pt.w_rad;
        row.t1_source = pt.t1_source;
        row.pe_source = pt.pe_source;
        row.alpha = r.alpha;
        row.b_score = r.score;
        row.f_id = r.fid_bound;
        row.f_true = r.true_fidelity;
        row.row_expectations = r.row_expectations;
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed = true;
        error_message = fmt::format(
            "sweep point {} (N={}, t1={}, t2={} us, w={}, pe={}) failed: {}", i, pt.table->n_qubits,
            pt.t1_source, pt.t2_us, pt.w_rad, pt.pe_source, e.what());
      }
    }
  };

  unsigned workers = n_workers ? n_workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, 16));
  if (workers == 1 || points.size() == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failed) {
    throw InputError(error_message);
  }
  for (const SweepRow& row : out.rows) {
    out.max_m = std::max(out.max_m, row.m);
  }
  return out;
}

std::string sweep_to_csv(const SweepTable& table) {
  std::string out = "n,m,t2_us,w_rad,t1_source,pe_source,alpha,b_score,f_id,f_true";
  for (uint32_t i = 1; i <= table.max_m; i++) {
    out += fmt::format(",o_{}", i);
  }
  out += "\n";
  for (const SweepRow& r : table.rows) {
    out += fmt::format("{},{},{:.12g},{:.12g},{},{},{:.12g},{:.12g},{:.12g},{:.12g}", r.n, r.m,
                       r.t2_us, r.w_rad, r.t1_source, r.pe_source, r.alpha, r.b_score, r.f_id,
                       r.f_true);
    for (uint32_t i = 0; i < table.max_m; i++) {
      if (i < r.row_expectations.size()) {
        out += fmt::format(",{:.12g}", r.row_expectations[i]);
      } else {
        out += ",";
      }
    }
    out += "\n";
  }
  return out;
}

SweepTable sweep_from_csv(std::string_view text) {
  SweepTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError("empty CSV");
  }
  auto header = split(trim(line), ',');
  if (header.size() < 10 || header[0] != "n" || header[9] != "f_true") {
    throw InputError("unrecognized sweep CSV header");
  }
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    auto f = split(line, ',');
    if (f.size() < 10) {
      throw InputError(fmt::format("short CSV row: '{}'", line));
    }
    SweepRow r;
    r.n = static_cast<uint32_t>(parse_double(f[0]));
    r.m = static_cast<uint32_t>(parse_double(f[1]));
    r.t2_us = parse_double(f[2]);
    r.w_rad = parse_double(f[3]);
    r.t1_source = f[4];
    r.pe_source = f[5];
    r.alpha = parse_double(f[6]);
    r.b_score = parse_double(f[7]);
    r.f_id = parse_double(f[8]);
    r.f_true = parse_double(f[9]);
    for (size_t i = 10; i < f.size(); i++) {
      if (!f[i].empty()) r.row_expectations.push_back(parse_double(f[i]));
    }
    table.max_m = std::max(table.max_m, r.m);
    table.rows.push_back(std::move(r));
  }
  return table;
}

ReportKind report_kind_from_string(std::string_view name) {
  if (name == "b_vs_n") return ReportKind::b_vs_n;
  if (name == "b_vs_t2") return ReportKind::b_vs_t2;
  if (name == "b_vs_t1") return ReportKind::b_vs_t1;
  if (name == "b_vs_w") return ReportKind::b_vs_w;
  if (name == "fid_scatter") return ReportKind::fid_scatter;
  throw InputError(fmt::format("unknown report kind '{}'", name));
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  size_t k = v.size() / 2;
  return (v.size() % 2) ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

std::string axis_report(const SweepTable& table, const char* axis_name,
                        double (*axis_of)(const SweepRow&), bool (*usable)(const SweepRow&)) {
  std::map<std::pair<uint32_t, double>, std::vector<double>> groups;
  for (const SweepRow& r : table.rows) {
    if (!usable(r)) continue;
    groups[{r.n, axis_of(r)}].push_back(r.b_score);
  }
  if (groups.empty()) {
    throw InputError("report selection is empty");
  }
  std::string out = fmt::format("# n {} b_median\n", axis_name);
  for (const auto& [key, scores] : groups) {
    out += fmt::format("{} {:.12g} {:.12g}\n", key.first, key.second, median(scores));
  }
  return out;
}

}  // namespace

IdTable derive_catalog_entry(uint32_t n_qubits, uint64_t candidate_limit, unsigned n_workers) {
  SearchConstraints cons;
  cons.n_rows = minimal_m(n_qubits);
  cons.max_results = candidate_limit;
  std::vector<IdTable> candidates = search_ids(n_qubits, cons);
  if (candidates.empty()) {
    // Falsifiability valve: a minimal ID may be unreachable inside the
    // cluster group for some N, in which case one extra row must be allowed.
    cons.n_rows++;
    candidates = search_ids(n_qubits, cons);
    if (candidates.empty()) {
      throw InputError(fmt::format("no benchmark ID found for N = {}", n_qubits));
    }
    fmt::print(stderr, "note: N = {} needed M = {} (minimal M has no cluster-group ID)\n",
               n_qubits, cons.n_rows);
  }

  const NoiseParams reference = chip_noise(n_qubits, 10.0, 0.275);
  const DensityMatrix prepared = prepare_cluster(n_qubits, reference);

  // Exact-mode row readings depend only on the row, and candidates share
  // many rows; measure each distinct row once.
  std::vector<PauliString> distinct_rows;
  std::map<std::string, size_t> row_index;
  for (const IdTable& t : candidates) {
    for (const PauliString& row : t.rows) {
      if (row_index.emplace(row.letters(), distinct_rows.size()).second) {
        distinct_rows.push_back(row);
      }
    }
  }
  std::vector<double> readings(distinct_rows.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= distinct_rows.size()) break;
      readings[i] =
          measure_setting(prepared, distinct_rows[i], reference, MeasurementMode::exact());
    }
  };
  unsigned workers = n_workers ? n_workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, 16));
  if (workers == 1 || distinct_rows.size() < 4) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; w++) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  size_t best = 0;
  double best_score = std::numeric_limits<double>::lowest();
  for (size_t i = 0; i < candidates.size(); i++) {
    const IdTable& t = candidates[i];
    double alpha = 0;
    for (uint32_t r = 0; r < t.n_rows(); r++) {
      alpha += t.eigenvalues[r] * readings[row_index.at(t.rows[r].letters())];
    }
    double score = benchmark_score(alpha, t.n_rows());
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  return candidates[best];
}

std::string make_report(const SweepTable& table, ReportKind kind) {
  if (table.rows.empty()) {
    throw InputError("report selection is empty");
  }
  switch (kind) {
    case ReportKind::b_vs_n: {
      std::map<uint32_t, std::vector<double>> groups;
      for (const SweepRow& r : table.rows) groups[r.n].push_back(r.b_score);
      std::string out = "# n b_min b_median b_max\n";
      for (auto& [n, scores] : groups) {
        auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
        out += fmt::format("{} {:.12g} {:.12g} {:.12g}\n", n, *lo, median(scores), *hi);
      }
      return out;
    }
    case ReportKind::b_vs_t2:
      return axis_report(
          table, "t2_us", [](const SweepRow& r) { return r.t2_us; },
          [](const SweepRow&) { return true; });
    case ReportKind::b_vs_w:
      return axis_report(
          table, "w_rad", [](const SweepRow& r) { return r.w_rad; },
          [](const SweepRow&) { return true; });
    case ReportKind::b_vs_t1:
      return axis_report(
          table, "t1_us",
          [](const SweepRow& r) { return r.t1_source == "chip" ? 0.0 : std::stod(r.t1_source); },
          [](const SweepRow& r) { return r.t1_source != "chip"; });
    case ReportKind::fid_scatter: {
      std::string out = "# f_true f_id\n";
      for (const SweepRow& r : table.rows) {
        out += fmt::format("{:.12g} {:.12g}\n", r.f_true, r.f_id);
      }
      return out;
    }
  }
  throw InputError("unknown report kind");
}

}  // namespace idbench
