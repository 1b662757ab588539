// bpmcf command-line front end.
#include <algorithm>
#include <atomic>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpmcf/bench.hpp"
#include "bpmcf/brute_force.hpp"
#include "bpmcf/consistent_path.hpp"
#include "bpmcf/errors.hpp"
#include "bpmcf/instgen.hpp"
#include "bpmcf/json_io.hpp"
#include "bpmcf/matching.hpp"
#include "bpmcf/mip_models.hpp"

namespace {

using namespace bpmcf;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNoOptimum = 3;

std::atomic<bool> g_stop{false};

extern "C" void on_sigint(int) { g_stop.store(true); }

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return kExitOk;
    case SolveStatus::Infeasible: return kExitInfeasible;
    case SolveStatus::Feasible:
    case SolveStatus::TimeLimit: return kExitNoOptimum;
  }
  return kExitNoOptimum;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text_file(path, text);
  }
}

// Matching is only exact when every bin has the same capacity.
bool matching_suits(const Instance& instance) {
  return matching::applies(instance) && instance.uniform_capacity();
}

int cmd_generate(int k, int capacity, std::uint64_t seed, const std::string& out) {
  const instgen::GenConfig config{k, capacity, seed};
  emit(out, instance_to_json(instgen::generate(config), instgen::meta_of(config)));
  return kExitOk;
}

int cmd_solve(const std::string& in, const std::string& method, double time_limit,
              const std::string& out) {
  const Instance instance = instance_from_json(read_text_file(in)).instance;
  std::string chosen = method;
  if (chosen == "auto") chosen = matching_suits(instance) ? "matching" : "bb";

  SolveResult result;
  if (chosen == "bb") {
    cpath::SolverConfig config;
    config.time_limit_s = time_limit;
    config.interrupt = &g_stop;
    result = cpath::solve(instance, config);
  } else if (chosen == "oracle") {
    result = brute_force_solve(instance);
  } else {
    result = matching::solve_two_per_bin(instance);
  }

  emit(out, solution_to_json(instance, result.solution, result.report.status));
  const SolveReport& r = result.report;
  std::fprintf(stderr, "method=%s status=%s lb=%d ub=%s gap=%s time=%.3fs nodes=%lld\n",
               chosen.c_str(), to_string(r.status), r.lower_bound,
               r.upper_bound ? std::to_string(*r.upper_bound).c_str() : "-",
               format_gap(r.gap_pct()).c_str(), r.elapsed_s, r.nodes_explored);
  return exit_code_for(r.status);
}

int cmd_emit_model(const std::string& in, const std::string& formulation, const std::string& out) {
  const Instance canonical = canonical_order(instance_from_json(read_text_file(in)).instance).instance;
  const auto f = mip::parse_formulation(formulation);
  const mip::ModelFile model = *f == mip::Formulation::IP ? mip::emit_ip(canonical)
                                                          : mip::emit_anf(canonical);
  emit(out, model.text);
  std::fprintf(stderr, "formulation=%s variables=%zu constraints=%d\n", mip::to_string(*f),
               model.variables.size(), model.num_constraints);
  return kExitOk;
}

// --model is either a formulation name or the path of an emitted LP file,
// whose first line names the formulation.
mip::Formulation resolve_formulation(const std::string& model) {
  if (auto f = mip::parse_formulation(model)) return *f;
  const std::string text = read_text_file(model);
  const std::string tag = "formulation: ";
  const auto pos = text.find(tag);
  if (pos != std::string::npos) {
    const auto end = text.find('\n', pos);
    if (auto f = mip::parse_formulation(text.substr(pos + tag.size(), end - pos - tag.size()))) {
      return *f;
    }
  }
  throw Error(ErrorCode::ParseError, "cannot tell the formulation of model '" + model + "'");
}

int cmd_import(const std::string& in, const std::string& model, const std::string& values,
               const std::string& out) {
  const Instance source = instance_from_json(read_text_file(in)).instance;
  const CanonicalInstance canonical = canonical_order(source);
  const mip::Formulation f = resolve_formulation(model);
  const Solution imported =
      mip::import_solution(canonical.instance, f, mip::parse_values(read_text_file(values)));
  emit(out, solution_to_json(source, to_source(canonical, imported), SolveStatus::Feasible));
  return kExitOk;
}

std::string sibling_path(const std::string& csv, const std::string& suffix) {
  std::filesystem::path p(csv);
  const std::string stem = p.stem().string();
  return (p.parent_path() / (stem + suffix)).string();
}

int cmd_bench(const std::string& config_path, const std::string& out_csv) {
  const bench::BenchConfig config = bench::parse_config(read_text_file(config_path));
  std::signal(SIGINT, on_sigint);

  std::vector<bench::BenchRow> rows = bench::run(config, &g_stop, [](const bench::BenchRow& r) {
    std::fprintf(stderr, "k=%d B=%d seed=%llu %s %s %.3fs\n", r.k, r.capacity,
                 static_cast<unsigned long long>(r.seed), bench::to_string(r.method),
                 r.status.c_str(), r.time_s);
  });
  const auto agg = bench::aggregate(rows);
  write_text_file(out_csv, bench::to_csv(rows));
  write_text_file(sibling_path(out_csv, "_aggregate.csv"), bench::aggregate_to_csv(agg));
  write_text_file(sibling_path(out_csv, "_cumulative.csv"),
                  bench::cumulative_to_csv(bench::cumulative(rows)));
  std::cout << bench::format_table(agg);
  if (g_stop.load()) {
    std::fprintf(stderr, "interrupted: %zu rows written\n", rows.size());
    return kExitNoOptimum;
  }
  return kExitOk;
}

int cmd_stats(const std::vector<std::string>& paths) {
  std::vector<Instance> instances;
  for (const auto& p : paths) instances.push_back(instance_from_json(read_text_file(p)).instance);
  const instgen::Summary s = instgen::stats(instances);

  std::printf("instances %zu items %lld\n", instances.size(), s.items);
  std::printf("size frequencies:");
  for (const auto& [size, count] : s.size_histogram) {
    std::printf(" %d:%.4f", size, s.items ? double(count) / double(s.items) : 0.0);
  }
  std::printf("\ncolor class sizes:");
  for (const auto& [size, count] : s.class_size_histogram) std::printf(" %d:%lld", size, count);
  std::printf("\ncolors per instance:");
  for (const auto& [colors, count] : s.num_colors_histogram) std::printf(" %d:%lld", colors, count);
  if (!s.fill_ratios.empty()) {
    const auto [lo, hi] = std::minmax_element(s.fill_ratios.begin(), s.fill_ratios.end());
    std::printf("\nfill ratio min %.4f max %.4f", *lo, *hi);
  }
  if (s.blocks > 0) {
    std::printf("\nsmall blocks (2..4 items) %.4f of %lld", double(s.small_blocks) / double(s.blocks),
                s.blocks);
  }
  std::printf("\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bin packing with minimum color fragmentation"};
  app.require_subcommand(1);

  int k = 10, capacity = 8;
  std::uint64_t seed = 1;
  std::string in, out, method = "auto", formulation, model, values, config, out_csv;
  std::vector<std::string> inputs;
  double time_limit = 1800.0;

  auto* gen = app.add_subcommand("generate", "Generate a random instance");
  gen->add_option("--k", k, "Number of bins")->required()->check(CLI::PositiveNumber);
  gen->add_option("--B", capacity, "Bin capacity")->required()->check(CLI::Range(8, 1 << 30));
  gen->add_option("--seed", seed, "Random seed")->required();
  gen->add_option("--out", out, "Output file (stdout when omitted)");

  auto* solve = app.add_subcommand("solve", "Solve an instance");
  solve->add_option("--in", in, "Instance file")->required();
  solve->add_option("--method", method, "Solver")
      ->check(CLI::IsMember({"auto", "bb", "oracle", "matching"}));
  solve->add_option("--time-limit", time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_option("--out", out, "Solution file (stdout when omitted)");

  auto* emit_model = app.add_subcommand("emit-model", "Write an LP model");
  emit_model->add_option("--in", in, "Instance file")->required();
  emit_model->add_option("--formulation", formulation, "Model type")
      ->required()
      ->check(CLI::IsMember({"ip", "anf"}));
  emit_model->add_option("--out", out, "LP file (stdout when omitted)");

  auto* import = app.add_subcommand("import-solution", "Map solver values back to a solution");
  import->add_option("--in", in, "Instance file")->required();
  import->add_option("--model", model, "LP file written by emit-model, or ip/anf")->required();
  import->add_option("--values", values, "File of 'name value' lines")->required();
  import->add_option("--out", out, "Solution file (stdout when omitted)");

  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark grid");
  bench_cmd->add_option("--config", config, "JSON grid")->required();
  bench_cmd->add_option("--out-csv", out_csv, "Per-run CSV")->required();

  auto* stats = app.add_subcommand("stats", "Summarize instance files");
  stats->add_option("--in", inputs, "Instance files")->required()->expected(1, -1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_generate(k, capacity, seed, out);
    if (*solve) {
      std::signal(SIGINT, on_sigint);
      return cmd_solve(in, method, time_limit, out);
    }
    if (*emit_model) return cmd_emit_model(in, formulation, out);
    if (*import) return cmd_import(in, model, values, out);
    if (*bench_cmd) return cmd_bench(config, out_csv);
    if (*stats) return cmd_stats(inputs);
  } catch (const Error& e) {
    std::fprintf(stderr, "error (%s): %s\n", to_string(e.code()), e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
