// SPDX-License-Identifier: Apache-2.0

#include "starnoma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace starnoma {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::pair<double, double> mean_se(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1) / n)};
}

const char* kHeader =
    "framework,sweep,value,elements,trial,seed,min_rate,inner_iterations,outer_scans,wall_ms,"
    "user_rates,cell_mean,cell_se";

}  // namespace

std::string to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::NumUsers: return "num_users";
    case SweepVariable::Elements: return "elements";
    case SweepVariable::BsRisDistance: return "bs_ris_2d_distance";
  }
  throw std::invalid_argument("unknown sweep variable");
}

SweepVariable sweep_variable_from_string(const std::string& name) {
  if (name == "num_users") return SweepVariable::NumUsers;
  if (name == "elements") return SweepVariable::Elements;
  if (name == "bs_ris_2d_distance") return SweepVariable::BsRisDistance;
  throw std::invalid_argument("unknown sweep variable: " + name);
}

SystemConfig apply_sweep(const SystemConfig& base, SweepVariable variable, double value) {
  SystemConfig c = base;
  switch (variable) {
    case SweepVariable::NumUsers: {
      const int k = static_cast<int>(std::lround(value));
      if (k < 1 || k != value) throw std::invalid_argument("num_users must be a positive integer");
      c.users_per_side = k;
      break;
    }
    case SweepVariable::Elements: {
      const int m = static_cast<int>(std::lround(value));
      const int side = static_cast<int>(std::lround(std::sqrt(m)));
      if (m < 1 || m != value || side * side != m) {
        throw std::invalid_argument("elements must be a perfect square");
      }
      c.set_elements(side, side);
      break;
    }
    case SweepVariable::BsRisDistance:
      c.set_bs_ris_distance_2d(value);
      break;
  }
  validate(c);
  return c;
}

void validate(const ExperimentSpec& spec) {
  if (spec.frameworks.empty()) throw std::invalid_argument("experiment: no frameworks");
  if (spec.values.empty()) throw std::invalid_argument("experiment: no sweep values");
  if (spec.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  for (size_t i = 1; i < spec.values.size(); ++i) {
    if (!(spec.values[i] > spec.values[i - 1])) {
      throw std::invalid_argument("experiment: sweep values must be strictly increasing");
    }
  }
  for (double v : spec.values) apply_sweep(spec.base, spec.variable, v);
}

int worker_count(int requested) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STARNOMA_WORKERS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return std::max(1, n);
}

ResultTable run_experiment(const ExperimentSpec& spec) {
  validate(spec);
  const size_t nf = spec.frameworks.size();
  const size_t nv = spec.values.size();
  const size_t nt = static_cast<size_t>(spec.trials);
  const size_t total = nf * nv * nt;

  std::vector<ResultRow> rows(total);
  std::vector<std::string> errors(total);
  std::vector<char> ok(total, 0);

  // Task index = (framework, value, trial) in row-major order, which is also
  // the output order.
  auto run_task = [&](size_t idx) {
    const size_t f = idx / (nv * nt);
    const size_t v = (idx / nt) % nv;
    const size_t t = idx % nt;
    const Framework framework = spec.frameworks[f];
    const std::uint64_t seed = spec.base_seed + t;
    ResultRow& row = rows[idx];
    row.framework = to_string(framework);
    row.sweep = to_string(spec.variable);
    row.value = spec.values[v];
    row.trial = static_cast<int>(t);
    row.seed = seed;
    try {
      const SystemConfig config = apply_sweep(spec.base, spec.variable, spec.values[v]);
      row.elements = config.elements();
      const auto start = std::chrono::steady_clock::now();
      const Scenario scenario = make_scenario(config, seed);
      const Solution sol = solve_framework(scenario, framework);
      const auto stop = std::chrono::steady_clock::now();
      check_solution(framework_channels(scenario, framework), sol);
      row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      row.min_rate = sol.min_rate();
      row.inner_iterations = sol.inner_iterations;
      row.outer_scans = sol.outer_scans;
      row.user_rates.assign(sol.report.rate.data(), sol.report.rate.data() + sol.report.rate.size());
      ok[idx] = 1;
    } catch (const std::exception& e) {
      errors[idx] = row.framework + " " + row.sweep + "=" + fmt(row.value) + " trial " +
                    std::to_string(t) + " seed " + std::to_string(seed) + ": " + e.what();
    }
  };

  const int workers = std::min<int>(worker_count(spec.workers), static_cast<int>(total));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t idx = next++; idx < total; idx = next++) run_task(idx);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ResultTable table;
  for (size_t i = 0; i < total; ++i) {
    if (ok[i]) {
      table.rows.push_back(std::move(rows[i]));
    } else {
      table.failures.push_back(std::move(errors[i]));
    }
  }
  return table;
}

std::vector<CellSummary> summarize(const ResultTable& table) {
  using Key = std::tuple<std::string, int, double>;
  std::vector<Key> order;
  std::map<Key, std::vector<double>> groups;
  for (const ResultRow& r : table.rows) {
    Key key{r.framework, r.elements, r.value};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(r.min_rate);
  }
  std::vector<CellSummary> out;
  for (const auto& key : order) {
    const auto& xs = groups[key];
    const auto [mean, se] = mean_se(xs);
    out.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key),
                   static_cast<int>(xs.size()), mean, se});
  }
  return out;
}

const CellSummary* find_cell(const std::vector<CellSummary>& cells, const std::string& framework,
                             double value, int elements) {
  for (const CellSummary& c : cells) {
    if (c.framework == framework && c.value == value && (elements < 0 || c.elements == elements)) {
      return &c;
    }
  }
  return nullptr;
}

PairedGap paired_gap(const ResultTable& table, const std::string& framework_a, double value_a,
                     const std::string& framework_b, double value_b) {
  std::map<int, double> a;
  std::map<int, double> b;
  for (const ResultRow& r : table.rows) {
    if (r.framework == framework_a && r.value == value_a) a[r.trial] = r.min_rate;
    if (r.framework == framework_b && r.value == value_b) b[r.trial] = r.min_rate;
  }
  std::vector<double> diffs;
  for (const auto& [trial, x] : a) {
    if (auto it = b.find(trial); it != b.end()) diffs.push_back(x - it->second);
  }
  const auto [mean, se] = mean_se(diffs);
  return {static_cast<int>(diffs.size()), mean, se};
}

void write_csv(const ResultTable& table, std::ostream& out) {
  const std::vector<CellSummary> cells = summarize(table);
  out << kHeader << '\n';
  for (const ResultRow& r : table.rows) {
    std::string rates;
    for (size_t i = 0; i < r.user_rates.size(); ++i) {
      if (i) rates += ';';
      rates += fmt(r.user_rates[i]);
    }
    const CellSummary* cell = find_cell(cells, r.framework, r.value, r.elements);
    out << r.framework << ',' << r.sweep << ',' << fmt(r.value) << ',' << r.elements << ','
        << r.trial << ',' << r.seed << ',' << fmt(r.min_rate) << ',' << r.inner_iterations << ','
        << r.outer_scans << ',' << fmt(r.wall_ms) << ',' << rates << ',' << fmt(cell->mean) << ','
        << fmt(cell->se) << '\n';
  }
}

void emit_csv(const ResultTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_csv(table, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ResultTable parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) {
    throw std::runtime_error("results csv: unexpected header");
  }
  ResultTable table;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 13) {
      throw std::runtime_error("results csv line " + std::to_string(line_no) + ": expected 13 fields");
    }
    try {
      ResultRow r;
      r.framework = f[0];
      r.sweep = f[1];
      r.value = std::stod(f[2]);
      r.elements = std::stoi(f[3]);
      r.trial = std::stoi(f[4]);
      r.seed = std::stoull(f[5]);
      r.min_rate = std::stod(f[6]);
      r.inner_iterations = std::stoi(f[7]);
      r.outer_scans = std::stoi(f[8]);
      r.wall_ms = std::stod(f[9]);
      if (!f[10].empty()) {
        for (const std::string& x : split(f[10], ';')) r.user_rates.push_back(std::stod(x));
      }
      table.rows.push_back(std::move(r));
    } catch (const std::logic_error& e) {
      throw std::runtime_error("results csv line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

ResultTable parse_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return parse_csv(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_trace(const Solution& solution, std::ostream& out) {
  out << "layer,iteration,block,objective\n";
  for (const InnerTraceEntry& e : solution.inner_trace) {
    out << "inner," << e.iteration << ',' << e.block << ',' << fmt(e.objective) << '\n';
  }
  for (const OuterTraceEntry& e : solution.outer_trace) {
    out << "outer," << e.scan << ",swap:" << e.tu_a << ':' << e.tu_b << ':'
        << (e.accepted ? "accept" : "reject") << ',' << fmt(e.utility) << '\n';
  }
}

void emit_trace(const Solution& solution, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_trace(solution, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace starnoma
