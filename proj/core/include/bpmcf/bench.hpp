#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bpmcf::bench {

enum class Method { BranchAndBound, Oracle, Matching, IpEmit, AnfEmit };

const char* to_string(Method m);
std::optional<Method> parse_method(const std::string& text);

/// One (instance, method) run. status is a SolveStatus name, or "Emitted"
/// for the model-emission methods and "Skipped" when a method does not apply
/// (matching without the two-per-bin property, oracle over its budget).
struct BenchRow {
  int k = 0;
  int capacity = 0;
  std::uint64_t seed = 0;
  Method method = Method::BranchAndBound;
  double build_s = 0.0;
  double time_s = 0.0;
  std::optional<int> lb;
  std::optional<int> ub;
  std::optional<double> gap_pct;
  std::string status;

  bool solved() const { return status == "Optimal" || status == "Infeasible"; }
  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct BenchConfig {
  std::vector<int> ks;
  std::vector<int> capacities;
  std::vector<std::uint64_t> seeds;
  std::vector<Method> methods;
  double time_limit_s = 1800.0;
  int threads = 1;
  long long oracle_node_limit = 50'000'000;
};

/// {"k":[..],"B":[..],"seeds":[..] | <count>,"methods":[..],"time_limit":s,
///  "threads":t}. A seed count c expands to 1..c.
BenchConfig parse_config(const std::string& json_text);

/// Runs every (k, B, seed, method) combination; rows come back ordered by
/// k, B, seed, then method order in the config. Setting `stop` makes
/// workers finish their current run and skip the rest.
std::vector<BenchRow> run(const BenchConfig& config, const std::atomic<bool>* stop = nullptr,
                          const std::function<void(const BenchRow&)>& on_row = {});

inline constexpr const char* kCsvHeader = "k,B,seed,method,build_s,time_s,lb,ub,gap_pct,status";

std::string to_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> from_csv(const std::string& text);

/// Per (k, B, method): average time over solved instances, solved count,
/// average final LB / UB / gap.
struct AggregateRow {
  int k = 0;
  int capacity = 0;
  Method method = Method::BranchAndBound;
  int instances = 0;
  int solved = 0;
  std::optional<double> avg_time_solved;
  std::optional<double> avg_lb;
  std::optional<double> avg_ub;
  std::optional<double> avg_gap_pct;

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

std::vector<AggregateRow> aggregate(const std::vector<BenchRow>& rows);
std::string aggregate_to_csv(const std::vector<AggregateRow>& rows);
/// Human-readable table, times shown as "avg^solved" ("-" when nothing was solved).
std::string format_table(const std::vector<AggregateRow>& rows);

/// Cumulative-performance data: for each method, solve times of solved
/// instances (metric "time") and final gaps of instances with an upper bound
/// (metric "gap"), each value paired with the number of instances at or below it.
struct CumulativePoint {
  Method method = Method::BranchAndBound;
  std::string metric;
  double value = 0.0;
  int count = 0;
};

std::vector<CumulativePoint> cumulative(const std::vector<BenchRow>& rows);
std::string cumulative_to_csv(const std::vector<CumulativePoint>& points);

}  // namespace bpmcf::bench
