#include "bpmcf/brute_force.hpp"

#include <chrono>
#include <limits>
#include <map>

#include "bpmcf/errors.hpp"

namespace bpmcf {
namespace {

class Enumerator {
 public:
  Enumerator(const Instance& instance, long long node_limit)
      : instance_(instance),
        node_limit_(node_limit),
        load_(instance.num_bins(), 0),
        assignment_(instance.num_items(), -1) {
    std::map<int, int> dense;
    for (int c : instance.colors()) dense.emplace(c, static_cast<int>(dense.size()));
    for (const Item& item : instance.items()) color_index_.push_back(dense.at(item.color));
    color_count_.assign(static_cast<std::size_t>(instance.num_bins()) * dense.size(), 0);
    num_colors_ = static_cast<int>(dense.size());
  }

  void run() { visit(0, 0); }

  long long nodes() const { return nodes_; }
  bool found() const { return best_objective_ != std::numeric_limits<int>::max(); }
  int best_objective() const { return best_objective_; }
  const std::vector<int>& best() const { return best_; }

 private:
  void visit(int index, int fragments) {
    if (++nodes_ > node_limit_) {
      throw Error(ErrorCode::BudgetExceeded,
                  "brute force exceeded " + std::to_string(node_limit_) + " nodes");
    }
    if (index == instance_.num_items()) {
      if (fragments < best_objective_) {
        best_objective_ = fragments;
        best_ = assignment_;
      }
      return;
    }
    const Item& item = instance_.items()[index];
    for (int b = 0; b < instance_.num_bins(); ++b) {
      if (load_[b] + item.size > instance_.bin_capacities()[b]) continue;
      int& count = color_count_[static_cast<std::size_t>(b) * num_colors_ + color_index_[index]];
      const int added = count == 0 ? 1 : 0;
      load_[b] += item.size;
      ++count;
      assignment_[index] = b;
      visit(index + 1, fragments + added);
      assignment_[index] = -1;
      --count;
      load_[b] -= item.size;
    }
  }

  const Instance& instance_;
  long long node_limit_;
  long long nodes_ = 0;
  int num_colors_ = 0;
  std::vector<int> color_index_;
  std::vector<int> color_count_;
  std::vector<long long> load_;
  std::vector<int> assignment_;
  int best_objective_ = std::numeric_limits<int>::max();
  std::vector<int> best_;
};

}  // namespace

SolveResult brute_force_solve(const Instance& instance, long long node_limit) {
  const auto start = std::chrono::steady_clock::now();
  Enumerator enumerator(instance, node_limit);
  enumerator.run();

  SolveResult result;
  result.report.nodes_explored = enumerator.nodes();
  result.report.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (enumerator.found()) {
    result.solution = evaluate(instance, enumerator.best());
    result.report.status = SolveStatus::Optimal;
    result.report.lower_bound = enumerator.best_objective();
    result.report.upper_bound = enumerator.best_objective();
  } else {
    result.report.status = SolveStatus::Infeasible;
    result.report.lower_bound = objective_lower_bound(instance);
  }
  return result;
}

}  // namespace bpmcf
