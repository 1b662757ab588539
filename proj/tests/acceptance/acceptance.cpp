// Acceptance suite: one PASS/FAIL line per criterion. Exit status is
// nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "bpmcf/bdd.hpp"
#include "bpmcf/bench.hpp"
#include "bpmcf/brute_force.hpp"
#include "bpmcf/consistent_path.hpp"
#include "bpmcf/instgen.hpp"
#include "bpmcf/matching.hpp"
#include "bpmcf/mip_models.hpp"
#include "oracles.hpp"

using namespace bpmcf;
using Clock = std::chrono::steady_clock;

namespace {

// Time budgets per criterion, in seconds.
constexpr double kGoldenLimit = 1.0;
constexpr double kBddSuiteLimit = 30.0;
constexpr double kOracleSuiteLimit = 300.0;
constexpr double kMatchingSuiteLimit = 60.0;
constexpr double kGeneratorLimit = 60.0;
constexpr double kDeskSolveLimit = 300.0;
constexpr double kSizeCheckLimit = 10.0;
constexpr double kGridTimeLimit = 300.0;

constexpr double kFrequencyTolerance = 0.01;
constexpr double kFillLow = 0.85, kFillHigh = 0.90;
constexpr double kReferenceMeanObjective = 10.1;
constexpr double kReferenceTolerance = 0.20;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

int failures = 0;

void report(int id, const char* name, const Outcome& o, double elapsed, double limit) {
  Outcome final = o;
  if (elapsed > limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "took %.2fs, limit %.0fs", elapsed, limit);
    final.require(false, buf);
  }
  failures += !final.pass;
  std::printf("[%s] %d %s (%.2fs)%s%s\n", final.pass ? "PASS" : "FAIL", id, name, elapsed,
              final.detail.empty() ? "" : ": ", final.detail.c_str());
  std::fflush(stdout);
}

std::vector<Item> figure_items() {
  return {{1, 2, 1}, {2, 3, 1}, {3, 2, 1}, {4, 3, 2}, {5, 2, 2}};
}

void figure_golden() {
  const auto t0 = Clock::now();
  Outcome o;
  const bdd::Bdd d = bdd::Bdd::build(figure_items(), 4);
  const bdd::Stats s = bdd::stats(d);
  o.require(s.nodes == 16, "node count " + std::to_string(s.nodes));
  o.require(s.arcs == 22, "arc count " + std::to_string(s.arcs));
  o.require(d.layer_widths() == std::vector<int>{1, 2, 3, 4, 5, 1}, "layer widths differ");

  // Walk r - u2 - u5 - u9 - u14 - t by the item choices {o1, o3}.
  std::vector<bdd::ArcId> path;
  bdd::NodeId u = d.root();
  const std::set<int> chosen = {1, 3};
  while (u != d.terminal()) {
    const auto& node = d.node(u);
    const int item = d.items()[node.layer].id;
    const bdd::ArcId a = chosen.count(item) ? node.one_arc : node.zero_arc;
    if (a == bdd::kNone) break;
    path.push_back(a);
    u = d.arc(a).to;
  }
  const std::vector<bdd::NodeId> expected_nodes = {2, 5, 9, 14, 15};
  std::vector<bdd::NodeId> visited;
  for (bdd::ArcId a : path) visited.push_back(d.arc(a).to);
  o.require(visited == expected_nodes, "path for {o1,o3} visits other nodes");
  const auto decoded = bdd::decode(d, path);
  o.require(decoded.item_ids == std::vector<int>{1, 3}, "path decodes to other items");
  o.require(decoded.cost == 1, "path cost " + std::to_string(decoded.cost));

  bool found = false;
  for (bdd::NodeId v : d.layer(2)) {
    if (d.node(v).state == bdd::NodeState{2, true}) {
      found = true;
      const bdd::ArcId a = d.node(v).one_arc;
      o.require(a != bdd::kNone && d.arc(a).cost == 0 && d.arc(a).to == 9,
                "one-arc out of the (2,1) node is not a zero-cost arc into u9");
    }
  }
  o.require(found, "no (2,1) node on the layer deciding o3");
  report(1, "diagram golden example", o, seconds_since(t0), kGoldenLimit);
}

void bdd_exactness() {
  const auto t0 = Clock::now();
  Outcome o;
  long long paths_checked = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::mt19937_64 rng(seed);
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    const int cap = std::uniform_int_distribution<int>(1, 12)(rng);
    const auto items = oracle::random_grouped_items(rng, n, 5, 4);
    const bdd::Bdd d = bdd::Bdd::build(items, cap);
    const auto expected = oracle::feasible_subsets(items, cap);
    std::map<std::vector<int>, int> got;
    bool duplicate = false;
    for (const auto& p : bdd::enumerate_paths(d)) {
      auto ids = p.item_ids;
      std::sort(ids.begin(), ids.end());
      duplicate |= !got.emplace(ids, p.cost).second;
      ++paths_checked;
    }
    o.require(!duplicate, "seed " + std::to_string(seed) + ": a subset has two paths");
    o.require(got == expected, "seed " + std::to_string(seed) + ": paths differ from subsets");
  }
  if (o.pass) o.detail = std::to_string(paths_checked) + " paths matched";
  report(2, "diagram exactness on 200 random lists", o, seconds_since(t0), kBddSuiteLimit);
}

std::optional<long long> model_value(const mip::ModelFile& m) {
  const auto sol = oracle::solve_binary(oracle::parse_lp(m.text));
  if (!sol) return std::nullopt;
  return sol->objective;
}

void oracle_equivalence() {
  const auto t0 = Clock::now();
  Outcome o;
  int feasible = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    oracle::RandomSpec spec;
    spec.max_items = 10;
    spec.max_bins = 4;
    spec.max_capacity = 8;
    spec.uniform = seed % 4 != 0;
    const Instance inst = oracle::random_instance(rng, spec);
    const Instance canonical = canonical_order(inst).instance;

    auto value = [](const SolveResult& r) -> std::optional<long long> {
      if (!r.solution) return std::nullopt;
      return r.solution->objective;
    };
    const auto bf = brute_force_solve(inst);
    const auto bb = cpath::solve(inst);
    const auto ip = model_value(mip::emit_ip(canonical));
    const auto anf = model_value(mip::emit_anf(canonical));
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    o.require(value(bb) == value(bf), tag + "branch-and-bound differs from brute force");
    o.require(ip == value(bf), tag + "IP model optimum differs from brute force");
    o.require(anf == value(bf), tag + "ANF model optimum differs from brute force");
    o.require((bb.report.status == SolveStatus::Infeasible) == !bf.solution,
              tag + "infeasibility reported inconsistently");
    if (bf.solution) {
      ++feasible;
      o.require(bb.report.status == SolveStatus::Optimal, tag + "not proven optimal");
    }
  }
  if (o.pass) o.detail = std::to_string(feasible) + " feasible, " + std::to_string(100 - feasible) + " infeasible";
  report(3, "oracle equivalence of four solution methods", o, seconds_since(t0), kOracleSuiteLimit);
}

void matching_equivalence() {
  const auto t0 = Clock::now();
  Outcome o;
  int feasible = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    const Instance inst = oracle::random_two_per_bin(rng);
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    o.require(matching::applies(inst), tag + "applies() rejected a two-per-bin instance");
    const auto bf = brute_force_solve(inst);
    const auto mm = matching::solve_two_per_bin(inst);
    o.require(mm.solution.has_value() == bf.solution.has_value(), tag + "feasibility differs");
    if (bf.solution && mm.solution) {
      ++feasible;
      o.require(mm.solution->objective == bf.solution->objective, tag + "objective differs");
    }
  }
  if (o.pass) o.detail = std::to_string(feasible) + " feasible";
  report(4, "matching reduction equals brute force", o, seconds_since(t0), kMatchingSuiteLimit);
}

void generator_statistics() {
  const auto t0 = Clock::now();
  Outcome o;
  std::map<int, long long> counts;
  long long items = 0;
  double lo = 1.0, hi = 0.0;
  for (std::uint64_t seed = 1; items < 100'000; ++seed) {
    const Instance inst = instgen::generate({10, 8, seed});
    for (const Item& it : inst.items()) ++counts[it.size];
    items += inst.num_items();
    const double fill = static_cast<double>(inst.total_size()) / 80.0;
    lo = std::min(lo, fill);
    hi = std::max(hi, fill);
  }
  const double expected[] = {0.4, 0.3, 0.2, 0.1};
  std::ostringstream freq;
  for (int size = 2; size <= 5; ++size) {
    const double f = static_cast<double>(counts[size]) / static_cast<double>(items);
    freq << (size > 2 ? " " : "") << size << ':' << f;
    o.require(std::fabs(f - expected[size - 2]) <= kFrequencyTolerance,
              "size " + std::to_string(size) + " frequency " + std::to_string(f));
  }
  o.require(counts.size() == 4, "sizes outside 2..5");
  o.require(lo >= kFillLow && hi <= kFillHigh, "fill ratio outside [0.85, 0.90]");
  if (o.pass) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%lld items, fill %.3f..%.3f, ", items, lo, hi);
    o.detail = buf + freq.str();
  }
  report(5, "generator size distribution and fill ratio", o, seconds_since(t0), kGeneratorLimit);
}

void desk_scale_solve() {
  const auto t0 = Clock::now();
  Outcome o;
  double sum = 0.0, slowest = 0.0;
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = instgen::generate({10, 8, seed});
    cpath::SolverConfig config;
    config.time_limit_s = kDeskSolveLimit;
    const auto r = cpath::solve(inst, config);
    slowest = std::max(slowest, r.report.elapsed_s);
    const std::string tag = "seed " + std::to_string(seed) + ": ";
    o.require(r.report.status == SolveStatus::Optimal,
              tag + "status " + to_string(r.report.status));
    o.require(r.report.elapsed_s <= kDeskSolveLimit, tag + "over the per-instance limit");
    if (r.solution) {
      o.require(evaluate(inst, r.solution->bin_of).objective == r.solution->objective,
                tag + "reported objective does not match the assignment");
      sum += r.solution->objective;
      ++solved;
    }
  }
  const double mean = solved ? sum / solved : 0.0;
  const bool near = std::fabs(mean - kReferenceMeanObjective) <= kReferenceTolerance * kReferenceMeanObjective;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d/10 optimal, slowest %.3fs; mean objective %.2f (reference %.1f +-20%%: %s, informational)",
                solved, slowest, mean, kReferenceMeanObjective, near ? "within" : "outside");
  if (o.pass) o.detail = buf;
  else o.detail += "; " + std::string(buf);
  // Each instance is bounded individually; the overall budget is ten of them.
  report(6, "desk-scale instances solved to optimality", o, seconds_since(t0), 10 * kDeskSolveLimit);
}

void formulation_sizes() {
  const auto t0 = Clock::now();
  Outcome o;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    oracle::RandomSpec spec;
    spec.max_items = 14;
    spec.max_bins = 5;
    spec.max_capacity = 12;
    spec.uniform = seed % 2 == 0;
    const Instance c = canonical_order(oracle::random_instance(rng, spec)).instance;
    const long long n = c.num_items(), k = c.num_bins();
    std::set<int> colors;
    std::set<std::pair<int, int>> classes;
    for (const Item& it : c.items()) {
      colors.insert(it.color);
      classes.insert({it.color, it.size});
    }
    const long long g = static_cast<long long>(colors.size());
    const std::string tag = "seed " + std::to_string(seed) + ": ";

    const auto ip = oracle::parse_lp(mip::emit_ip(c).text);
    o.require(static_cast<long long>(ip.variables.size()) == k * n + k * g, tag + "IP variable count");
    o.require(static_cast<long long>(ip.rows.size()) == n + k + k * n, tag + "IP row count");

    long long arcs = 0;
    for (int b = 0; b < k; ++b) arcs += static_cast<long long>(bdd::Bdd::build(c.items(), c.bin_capacities()[b]).arcs().size());
    const auto anf = oracle::parse_lp(mip::emit_anf(c).text);
    long long joint = 0;
    for (const auto& row : anf.rows) joint += row.name.rfind("joint_", 0) == 0;
    o.require(static_cast<long long>(anf.variables.size()) == arcs, tag + "ANF variable count");
    o.require(joint == static_cast<long long>(classes.size()), tag + "ANF joint row count");
  }
  report(7, "formulation sizes on 20 random instances", o, seconds_since(t0), kSizeCheckLimit);
}

void table_protocol() {
  const auto t0 = Clock::now();
  Outcome o;
  bench::BenchConfig config;
  config.ks = {10, 20};
  config.capacities = {8};
  for (std::uint64_t s = 1; s <= 10; ++s) config.seeds.push_back(s);
  config.methods = {bench::Method::BranchAndBound};
  config.time_limit_s = kGridTimeLimit;
  const auto rows = bench::run(config);
  o.require(rows.size() == 20, "expected 20 rows, got " + std::to_string(rows.size()));

  const auto agg = bench::aggregate(rows);
  o.require(agg.size() == 2, "expected one aggregate row per k");
  const std::string table = bench::format_table(agg);
  for (const auto& a : agg) {
    const std::string tag = "k=" + std::to_string(a.k) + ": ";
    int solved = 0;
    double time = 0.0, gap = 0.0;
    int with_gap = 0;
    for (const auto& r : rows) {
      if (r.k != a.k) continue;
      if (r.status == "Optimal") {
        o.require(r.gap_pct == 0.0 && r.lb == r.ub, tag + "optimal row with nonzero gap");
      }
      if (r.status == "Optimal" || r.status == "Infeasible") ++solved, time += r.time_s;
      if (r.gap_pct) gap += *r.gap_pct, ++with_gap;
    }
    o.require(a.instances == 10, tag + "instance count");
    o.require(a.solved == solved, tag + "solved count");
    if (solved > 0) {
      o.require(a.avg_time_solved && std::fabs(*a.avg_time_solved - time / solved) < 1e-12,
                tag + "average time is not over solved instances");
      char cell[64];
      std::snprintf(cell, sizeof cell, "%.2f^%d", *a.avg_time_solved, solved);
      o.require(table.find(cell) != std::string::npos, tag + "table lacks the time^solved cell");
    }
    if (with_gap > 0) {
      o.require(a.avg_gap_pct && std::fabs(*a.avg_gap_pct - gap / with_gap) < 1e-12, tag + "average gap");
    }
    if (solved == a.instances && with_gap == a.instances) {
      o.require(a.avg_gap_pct == 0.0, tag + "all optimal but average gap is not 0");
    }
  }
  o.require(bench::aggregate(bench::from_csv(bench::to_csv(rows))) == agg,
            "aggregate recomputed from CSV differs");
  if (o.pass) {
    std::string compact = table;
    std::replace(compact.begin(), compact.end(), '\n', '|');
    o.detail = compact;
  }
  report(8, "benchmark grid aggregate format", o, seconds_since(t0), 20 * kGridTimeLimit);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      figure_golden,    bdd_exactness,     oracle_equivalence, matching_equivalence,
      generator_statistics, desk_scale_solve, formulation_sizes,  table_protocol,
  };
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] unexpected exception: %s\n", e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
