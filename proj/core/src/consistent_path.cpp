#include "bpmcf/consistent_path.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cstring>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace bpmcf::cpath {

using bdd::ArcId;
using bdd::kNone;
using bdd::NodeId;

DiagramSet build_diagrams(const Instance& canonical) {
  DiagramSet set;
  std::map<int, int> by_capacity;
  for (int cap : canonical.bin_capacities()) {
    auto [it, inserted] = by_capacity.emplace(cap, static_cast<int>(set.diagrams.size()));
    if (inserted) set.diagrams.push_back(bdd::Bdd::build(canonical.items(), cap));
    set.diagram_of_bin.push_back(it->second);
  }
  return set;
}

std::vector<std::vector<int>> symmetry_classes(const Instance& instance) {
  std::vector<std::vector<int>> classes;
  std::map<int, std::size_t> slot;
  for (int b = 0; b < instance.num_bins(); ++b) {
    auto [it, inserted] = slot.emplace(instance.bin_capacities()[b], classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(b);
  }
  return classes;
}

std::optional<Solution> greedy_incumbent(const Instance& instance) {
  const auto& items = instance.items();
  std::vector<std::pair<std::int64_t, int>> colors;
  for (const auto& [color, total] : instance.color_totals()) colors.emplace_back(total, color);
  std::stable_sort(colors.begin(), colors.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  const int k = instance.num_bins();
  std::vector<int> remaining = instance.bin_capacities();
  std::vector<int> bin_of(items.size(), -1);
  std::vector<int> order(k);

  for (const auto& [total, color] : colors) {
    std::vector<char> holds(k, 0);
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].color != color) continue;
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return remaining[a] > remaining[b]; });
      int chosen = -1;
      for (int pass = 0; pass < 2 && chosen < 0; ++pass) {
        for (int b : order) {
          if ((pass == 0) != static_cast<bool>(holds[b])) continue;
          if (remaining[b] >= items[i].size) {
            chosen = b;
            break;
          }
        }
      }
      if (chosen < 0) return std::nullopt;
      remaining[chosen] -= items[i].size;
      holds[chosen] = 1;
      bin_of[i] = chosen;
    }
  }
  return evaluate(instance, bin_of);
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr int kInfeasible = INT_MAX;

class Search {
 public:
  Search(const Instance& inst, const DiagramSet& diagrams, const SolverConfig& config)
      : inst_(inst),
        diagrams_(diagrams),
        config_(config),
        n_(inst.num_items()),
        k_(inst.num_bins()),
        cursor_(k_),
        assignment_(n_, -1),
        saved_(static_cast<std::size_t>(n_ + 1) * k_),
        scratch_(k_) {
    for (int b = 0; b < k_; ++b) cursor_[b] = diagrams_.for_bin(b).root();
    class_of_.resize(k_);
    for (const auto& cls : symmetry_classes(inst)) {
      for (int b : cls) class_of_[b] = cls.front();
    }
    const auto& items = inst.items();
    suffix_size_.assign(n_ + 1, 0);
    suffix_min_.assign(n_ + 1, INT_MAX);
    color_rest_.assign(n_ + 1, 0);
    block_of_.assign(n_ + 1, 0);
    for (int i = n_ - 1; i >= 0; --i) {
      suffix_size_[i] = suffix_size_[i + 1] + items[i].size;
      suffix_min_[i] = std::min(suffix_min_[i + 1], items[i].size);
      const bool block_end = i == n_ - 1 || items[i + 1].color != items[i].color;
      color_rest_[i] = items[i].size + (block_end ? 0 : color_rest_[i + 1]);
    }
    for (int i = 0; i < n_; ++i) {
      if (i == 0 || items[i].color != items[i - 1].color) block_total_.push_back(color_rest_[i]);
      block_of_[i] = static_cast<int>(block_total_.size()) - 1;
    }
    block_of_[n_] = static_cast<int>(block_total_.size());
    deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(config.time_limit_s));
  }

  void set_incumbent(const Solution& s) {
    incumbent_ = s.objective;
    best_ = s.bin_of;
  }

  int root_bound() { return bound(0); }

  /// Explores from the root; returns the minimum bound over nodes left open
  /// when the search was interrupted (INT_MAX when it ran to completion).
  int run() {
    const int lb = bound(0);
    if (lb == kInfeasible) return INT_MAX;
    if (config_.use_bounds && lb >= incumbent_) return INT_MAX;
    return explore(0);
  }

  bool aborted() const { return aborted_; }
  bool hit_time_limit() const { return timed_out_; }
  long long nodes() const { return nodes_; }
  int incumbent() const { return incumbent_; }
  const std::vector<int>& best() const { return best_; }

 private:
  int remaining(int b) const { return diagrams_.for_bin(b).node(cursor_[b]).state.remaining; }
  bool seen(int b) const { return diagrams_.for_bin(b).node(cursor_[b]).state.seen; }

  // Lower bound on the final objective from the current cursors at layer i,
  // or kInfeasible if no completion can cover the remaining items.
  int bound(int i) {
    if (i == n_) return cost_;
    int usable = 0;
    for (int b = 0; b < k_; ++b) {
      const int r = remaining(b);
      if (r >= suffix_min_[i]) usable += r;
    }
    if (usable < suffix_size_[i]) return kInfeasible;
    if (!config_.use_bounds) return cost_;

    int completion = 0;
    for (int b = 0; b < k_; ++b) completion += diagrams_.for_bin(b).completion_cost(cursor_[b]);

    // Current color: whatever does not fit into bins that already hold it
    // opens at least as many new bins as the largest residuals need.
    int color_extra = 0;
    int seen_cap = 0;
    int max_rem = 0;
    int unseen = 0;
    for (int b = 0; b < k_; ++b) {
      const int r = remaining(b);
      max_rem = std::max(max_rem, r);
      if (seen(b)) seen_cap += r;
      else scratch_[unseen++] = r;
    }
    int need = color_rest_[i] - seen_cap;
    if (need > 0) {
      std::sort(scratch_.begin(), scratch_.begin() + unseen, std::greater<>());
      while (need > 0 && color_extra < unseen) need -= scratch_[color_extra++];
      if (need > 0) return kInfeasible;
    }
    // Later colors each need ceil(S_g / largest residual) bins.
    for (std::size_t g = block_of_[i] + 1; g < block_total_.size(); ++g) {
      if (max_rem == 0) return kInfeasible;
      color_extra += (block_total_[g] + max_rem - 1) / max_rem;
    }
    return cost_ + std::max(completion, color_extra);
  }

  bool out_of_budget() {
    ++nodes_;
    if (config_.node_budget && nodes_ > *config_.node_budget) {
      aborted_ = true;
      return true;
    }
    if ((nodes_ & 255) == 0 &&
        (Clock::now() >= deadline_ || (config_.interrupt && config_.interrupt->load()))) {
      aborted_ = timed_out_ = true;
      return true;
    }
    return false;
  }

  void apply(int i, int chosen) {
    int* save = &saved_[static_cast<std::size_t>(i) * k_];
    for (int b = 0; b < k_; ++b) {
      save[b] = cursor_[b];
      const bdd::Node& node = diagrams_.for_bin(b).node(cursor_[b]);
      const ArcId a = b == chosen ? node.one_arc : node.zero_arc;
      const bdd::Arc& arc = diagrams_.for_bin(b).arc(a);
      cursor_[b] = arc.to;
      cost_ += arc.cost;
    }
    assignment_[i] = chosen;
  }

  void undo(int i) {
    const int* save = &saved_[static_cast<std::size_t>(i) * k_];
    for (int b = 0; b < k_; ++b) {
      if (b == assignment_[i]) {
        const auto& d = diagrams_.for_bin(b);
        cost_ -= d.arc(d.node(save[b]).one_arc).cost;
      }
      cursor_[b] = save[b];
    }
    assignment_[i] = -1;
  }

  std::vector<int> candidates() const {
    std::vector<int> out;
    for (int b = 0; b < k_; ++b) {
      const auto& d = diagrams_.for_bin(b);
      if (d.node(cursor_[b]).one_arc == kNone) continue;
      if (config_.use_symmetry) {
        bool duplicate = false;
        for (int c = 0; c < b && !duplicate; ++c) {
          duplicate = class_of_[c] == class_of_[b] && cursor_[c] == cursor_[b];
        }
        if (duplicate) continue;
      }
      out.push_back(b);
    }
    // Prefer the bin where taking the item costs least against its completion.
    auto loss = [&](int b) {
      const auto& d = diagrams_.for_bin(b);
      const bdd::Arc& one = d.arc(d.node(cursor_[b]).one_arc);
      return one.cost + d.completion_cost(one.to) - d.completion_cost(cursor_[b]);
    };
    std::stable_sort(out.begin(), out.end(), [&](int a, int b) { return loss(a) < loss(b); });
    return out;
  }

  bool memo_prunes(int i) {
    std::string key(sizeof(int) * (k_ + 1), '\0');
    std::vector<std::uint32_t> ids(k_);
    for (int b = 0; b < k_; ++b) {
      ids[b] = (static_cast<std::uint32_t>(diagrams_.diagram_of_bin[b]) << 24) |
               static_cast<std::uint32_t>(cursor_[b]);
    }
    std::sort(ids.begin(), ids.end());
    std::memcpy(key.data(), &i, sizeof(int));
    std::memcpy(key.data() + sizeof(int), ids.data(), sizeof(std::uint32_t) * k_);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      if (it->second <= cost_) return true;
      it->second = cost_;
      return false;
    }
    if (memo_.size() < config_.memo_capacity) memo_.emplace(std::move(key), cost_);
    return false;
  }

  int explore(int i) {
    if (i == n_) {
      if (cost_ < incumbent_) {
        incumbent_ = cost_;
        best_ = assignment_;
      }
      return INT_MAX;
    }
    if (out_of_budget()) return bound(i);
    if (config_.use_memo && memo_prunes(i)) return INT_MAX;

    const std::vector<int> order = candidates();
    int open = INT_MAX;
    for (std::size_t c = 0; c < order.size(); ++c) {
      apply(i, order[c]);
      const int lb = bound(i + 1);
      if (aborted_) {
        if (lb != kInfeasible) open = std::min(open, lb);
      } else if (lb != kInfeasible && !(config_.use_bounds && lb >= incumbent_)) {
        open = std::min(open, explore(i + 1));
      }
      undo(i);
    }
    return open;
  }

  const Instance& inst_;
  const DiagramSet& diagrams_;
  const SolverConfig& config_;
  int n_;
  int k_;
  std::vector<NodeId> cursor_;
  std::vector<int> assignment_;
  std::vector<int> saved_;
  std::vector<int> scratch_;
  std::vector<int> class_of_;
  std::vector<int> suffix_size_;
  std::vector<int> suffix_min_;
  std::vector<int> color_rest_;
  std::vector<int> block_of_;
  std::vector<int> block_total_;
  std::unordered_map<std::string, int> memo_;
  int cost_ = 0;
  int incumbent_ = INT_MAX;
  std::vector<int> best_;
  long long nodes_ = 0;
  bool aborted_ = false;
  bool timed_out_ = false;
  Clock::time_point deadline_;
};

}  // namespace

SolveResult solve(const Instance& instance, const SolverConfig& config, double* build_s) {
  const auto build_start = Clock::now();
  const CanonicalInstance canonical = canonical_order(instance);
  const Instance& inst = canonical.instance;
  const DiagramSet diagrams = build_diagrams(inst);
  const auto search_start = Clock::now();
  if (build_s) *build_s = std::chrono::duration<double>(search_start - build_start).count();

  Search search(inst, diagrams, config);
  if (config.heuristic_incumbent) {
    if (auto greedy = greedy_incumbent(inst)) search.set_incumbent(*greedy);
  }
  const int trivial_lb = inst.num_items() == 0 ? 0 : objective_lower_bound(inst);
  const int root_lb = search.root_bound();
  const int open_lb = search.run();

  SolveResult result;
  SolveReport& report = result.report;
  report.nodes_explored = search.nodes();
  report.elapsed_s = std::chrono::duration<double>(Clock::now() - search_start).count();

  const bool have_incumbent = search.incumbent() != INT_MAX;
  if (have_incumbent) {
    result.solution = to_source(canonical, evaluate(inst, search.best()));
    report.upper_bound = search.incumbent();
  }
  if (!search.aborted()) {
    if (have_incumbent) {
      report.status = SolveStatus::Optimal;
      report.lower_bound = search.incumbent();
    } else {
      report.status = SolveStatus::Infeasible;
      report.lower_bound = trivial_lb;
    }
    return result;
  }

  int lb = std::min(open_lb, search.incumbent());
  if (lb == INT_MAX) lb = 0;
  if (root_lb != kInfeasible) lb = std::max(lb, root_lb);
  report.lower_bound = std::max(lb, trivial_lb);
  if (have_incumbent) report.lower_bound = std::min(report.lower_bound, search.incumbent());
  report.status = (search.hit_time_limit() || !have_incumbent) ? SolveStatus::TimeLimit
                                                               : SolveStatus::Feasible;
  return result;
}

}  // namespace bpmcf::cpath
