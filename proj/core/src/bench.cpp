#include "bpmcf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "bpmcf/brute_force.hpp"
#include "bpmcf/consistent_path.hpp"
#include "bpmcf/errors.hpp"
#include "bpmcf/instgen.hpp"
#include "bpmcf/matching.hpp"
#include "bpmcf/mip_models.hpp"

namespace bpmcf::bench {

const char* to_string(Method m) {
  switch (m) {
    case Method::BranchAndBound: return "bb";
    case Method::Oracle: return "oracle";
    case Method::Matching: return "matching";
    case Method::IpEmit: return "ip-emit";
    case Method::AnfEmit: return "anf-emit";
  }
  return "unknown";
}

std::optional<Method> parse_method(const std::string& text) {
  for (Method m : {Method::BranchAndBound, Method::Oracle, Method::Matching, Method::IpEmit,
                   Method::AnfEmit}) {
    if (text == to_string(m)) return m;
  }
  return std::nullopt;
}

BenchConfig parse_config(const std::string& json_text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(json_text);
    BenchConfig config;
    config.ks = doc.at("k").get<std::vector<int>>();
    config.capacities = doc.at("B").get<std::vector<int>>();
    const json& seeds = doc.at("seeds");
    if (seeds.is_number_integer()) {
      for (std::uint64_t s = 1; s <= seeds.get<std::uint64_t>(); ++s) config.seeds.push_back(s);
    } else {
      config.seeds = seeds.get<std::vector<std::uint64_t>>();
    }
    for (const auto& name : doc.value("methods", std::vector<std::string>{"bb"})) {
      const auto m = parse_method(name);
      if (!m) throw Error(ErrorCode::ParseError, "bench config: unknown method '" + name + "'");
      config.methods.push_back(*m);
    }
    config.time_limit_s = doc.value("time_limit", config.time_limit_s);
    config.threads = std::max(1, doc.value("threads", 1));
    config.oracle_node_limit = doc.value("oracle_node_limit", config.oracle_node_limit);
    return config;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bench config: ") + e.what());
  }
}

namespace {

struct Task {
  int k;
  int capacity;
  std::uint64_t seed;
  Method method;
};

void fill_from_report(BenchRow& row, const SolveReport& report) {
  row.status = bpmcf::to_string(report.status);
  row.time_s = report.elapsed_s;
  if (report.status != SolveStatus::Infeasible) row.lb = report.lower_bound;
  row.ub = report.upper_bound;
  row.gap_pct = report.gap_pct();
}

BenchRow run_one(const Task& task, const BenchConfig& config, const std::atomic<bool>* stop) {
  BenchRow row{task.k, task.capacity, task.seed, task.method, 0.0, 0.0, {}, {}, {}, ""};
  const Instance instance = instgen::generate({task.k, task.capacity, task.seed});
  using Clock = std::chrono::steady_clock;

  switch (task.method) {
    case Method::BranchAndBound: {
      cpath::SolverConfig solver;
      solver.time_limit_s = config.time_limit_s;
      solver.interrupt = stop;
      const SolveResult result = cpath::solve(instance, solver, &row.build_s);
      fill_from_report(row, result.report);
      break;
    }
    case Method::Oracle: {
      try {
        fill_from_report(row, brute_force_solve(instance, config.oracle_node_limit).report);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BudgetExceeded) throw;
        row.status = "Skipped";
      }
      break;
    }
    case Method::Matching: {
      if (!matching::applies(instance)) {
        row.status = "Skipped";
        break;
      }
      fill_from_report(row, matching::solve_two_per_bin(instance).report);
      break;
    }
    case Method::IpEmit:
    case Method::AnfEmit: {
      const auto start = Clock::now();
      const Instance canonical = canonical_order(instance).instance;
      if (task.method == Method::IpEmit) {
        (void)mip::emit_ip(canonical);
      } else {
        const auto diagrams = cpath::build_diagrams(canonical);
        row.build_s = std::chrono::duration<double>(Clock::now() - start).count();
        (void)mip::emit_anf(canonical, diagrams);
      }
      row.time_s = std::chrono::duration<double>(Clock::now() - start).count() - row.build_s;
      row.status = "Emitted";
      break;
    }
  }
  return row;
}

}  // namespace

std::vector<BenchRow> run(const BenchConfig& config, const std::atomic<bool>* stop,
                          const std::function<void(const BenchRow&)>& on_row) {
  std::vector<Task> tasks;
  for (int k : config.ks) {
    for (int cap : config.capacities) {
      for (std::uint64_t seed : config.seeds) {
        for (Method m : config.methods) tasks.push_back({k, cap, seed, m});
      }
    }
  }

  std::vector<std::optional<BenchRow>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;
  auto worker = [&] {
    while (true) {
      if (stop && stop->load()) return;
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      BenchRow row = run_one(tasks[t], config, stop);
      if (stop && stop->load() && row.status == "TimeLimit") return;
      if (on_row) {
        std::lock_guard lock(report_mutex);
        on_row(row);
      }
      results[t] = std::move(row);
    }
  };

  const int threads = std::max(1, std::min<int>(config.threads, static_cast<int>(tasks.size())));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<BenchRow> rows;
  for (auto& r : results) {
    if (r) rows.push_back(std::move(*r));
  }
  return rows;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string opt_field(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) return format_double(*v);
  else return std::to_string(*v);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string fixed(std::optional<double> v, int precision) {
  if (!v) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, *v);
  return buf;
}

}  // namespace

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const BenchRow& r : rows) {
    out << r.k << ',' << r.capacity << ',' << r.seed << ',' << to_string(r.method) << ','
        << format_double(r.build_s) << ',' << format_double(r.time_s) << ',' << opt_field(r.lb)
        << ',' << opt_field(r.ub) << ',' << (r.gap_pct ? format_double(*r.gap_pct) : "inf") << ','
        << r.status << '\n';
  }
  return out.str();
}

std::vector<BenchRow> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorCode::ParseError, "bench CSV: missing or unexpected header");
  }
  std::vector<BenchRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) throw Error(ErrorCode::ParseError, "bench CSV: bad row '" + line + "'");
    BenchRow r;
    try {
      r.k = std::stoi(f[0]);
      r.capacity = std::stoi(f[1]);
      r.seed = std::stoull(f[2]);
      const auto m = parse_method(f[3]);
      if (!m) throw Error(ErrorCode::ParseError, "bench CSV: unknown method " + f[3]);
      r.method = *m;
      r.build_s = std::stod(f[4]);
      r.time_s = std::stod(f[5]);
      if (!f[6].empty()) r.lb = std::stoi(f[6]);
      if (!f[7].empty()) r.ub = std::stoi(f[7]);
      if (f[8] != "inf") r.gap_pct = std::stod(f[8]);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "bench CSV: bad number in '" + line + "'");
    }
    r.status = f[9];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<AggregateRow> aggregate(const std::vector<BenchRow>& rows) {
  struct Acc {
    AggregateRow row;
    double time = 0, lb = 0, ub = 0, gap = 0;
    int n_lb = 0, n_ub = 0, n_gap = 0;
  };
  std::map<std::tuple<int, int, int>, Acc> groups;
  for (const BenchRow& r : rows) {
    Acc& acc = groups[{r.k, r.capacity, static_cast<int>(r.method)}];
    acc.row.k = r.k;
    acc.row.capacity = r.capacity;
    acc.row.method = r.method;
    ++acc.row.instances;
    if (r.solved()) {
      ++acc.row.solved;
      acc.time += r.time_s;
    }
    if (r.lb) acc.lb += *r.lb, ++acc.n_lb;
    if (r.ub) acc.ub += *r.ub, ++acc.n_ub;
    if (r.gap_pct) acc.gap += *r.gap_pct, ++acc.n_gap;
  }
  std::vector<AggregateRow> out;
  for (auto& [key, acc] : groups) {
    if (acc.row.solved > 0) acc.row.avg_time_solved = acc.time / acc.row.solved;
    if (acc.n_lb > 0) acc.row.avg_lb = acc.lb / acc.n_lb;
    if (acc.n_ub > 0) acc.row.avg_ub = acc.ub / acc.n_ub;
    if (acc.n_gap > 0) acc.row.avg_gap_pct = acc.gap / acc.n_gap;
    out.push_back(acc.row);
  }
  return out;
}

std::string aggregate_to_csv(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  out << "k,B,method,instances,solved,avg_time_solved,avg_lb,avg_ub,avg_gap_pct\n";
  for (const AggregateRow& r : rows) {
    out << r.k << ',' << r.capacity << ',' << to_string(r.method) << ',' << r.instances << ','
        << r.solved << ',' << opt_field(r.avg_time_solved) << ',' << opt_field(r.avg_lb) << ','
        << opt_field(r.avg_ub) << ',' << opt_field(r.avg_gap_pct) << '\n';
  }
  return out.str();
}

std::string format_table(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%4s %4s %-9s %14s %8s %8s %7s\n", "k", "B", "method", "Time",
                "LB", "UB", "Gap");
  out << line;
  for (const AggregateRow& r : rows) {
    const std::string time =
        r.solved > 0 ? fixed(r.avg_time_solved, 2) + "^" + std::to_string(r.solved) : "-";
    std::snprintf(line, sizeof line, "%4d %4d %-9s %14s %8s %8s %7s\n", r.k, r.capacity,
                  to_string(r.method), time.c_str(), fixed(r.avg_lb, 1).c_str(),
                  fixed(r.avg_ub, 1).c_str(), fixed(r.avg_gap_pct, 1).c_str());
    out << line;
  }
  return out.str();
}

std::vector<CumulativePoint> cumulative(const std::vector<BenchRow>& rows) {
  std::map<int, std::vector<double>> times, gaps;
  for (const BenchRow& r : rows) {
    if (r.method == Method::IpEmit || r.method == Method::AnfEmit) continue;
    if (r.solved()) times[static_cast<int>(r.method)].push_back(r.time_s);
    if (r.gap_pct) gaps[static_cast<int>(r.method)].push_back(*r.gap_pct);
  }
  std::vector<CumulativePoint> out;
  auto emit = [&](std::map<int, std::vector<double>>& series, const char* metric) {
    for (auto& [m, values] : series) {
      std::sort(values.begin(), values.end());
      for (std::size_t i = 0; i < values.size(); ++i) {
        // Ties collapse onto their last (highest) count.
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        out.push_back({static_cast<Method>(m), metric, values[i], static_cast<int>(i) + 1});
      }
    }
  };
  emit(times, "time");
  emit(gaps, "gap");
  return out;
}

std::string cumulative_to_csv(const std::vector<CumulativePoint>& points) {
  std::ostringstream out;
  out << "method,metric,value,count\n";
  for (const CumulativePoint& p : points) {
    out << to_string(p.method) << ',' << p.metric << ',' << format_double(p.value) << ','
        << p.count << '\n';
  }
  return out.str();
}

}  // namespace bpmcf::bench
