#include "bpmcf/matching.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <numeric>
#include <string>

#include "bpmcf/errors.hpp"

namespace bpmcf::matching {
namespace {

// Primal-dual blossom algorithm. Vertex ids 0..V-1, blossom ids V..2V-1.
// An "endpoint" p refers to edge p/2; endpoint_[p] is the vertex at that end
// (p even: u, p odd: v). Duals are kept doubled-free: with integer weights
// all slacks stay integral and S-S slacks stay even.
class Blossom {
 public:
  explicit Blossom(const PairGraph& g)
      : edges_(g.edges),
        nv_(g.num_vertices()),
        ne_(static_cast<int>(g.edges.size())),
        endpoint_(2 * ne_),
        neighbend_(nv_),
        mate_(nv_, -1),
        label_(2 * nv_, 0),
        labelend_(2 * nv_, -1),
        inblossom_(nv_),
        blossomparent_(2 * nv_, -1),
        blossomchilds_(2 * nv_),
        blossombase_(2 * nv_, -1),
        blossomendps_(2 * nv_),
        bestedge_(2 * nv_, -1),
        blossombestedges_(2 * nv_),
        has_bestedges_(2 * nv_, false),
        dualvar_(2 * nv_, 0),
        allowedge_(ne_, false) {
    long long maxweight = 0;
    for (int k = 0; k < ne_; ++k) {
      endpoint_[2 * k] = edges_[k].u;
      endpoint_[2 * k + 1] = edges_[k].v;
      neighbend_[edges_[k].u].push_back(2 * k + 1);
      neighbend_[edges_[k].v].push_back(2 * k);
      maxweight = std::max(maxweight, edges_[k].weight);
    }
    std::iota(inblossom_.begin(), inblossom_.end(), 0);
    for (int v = 0; v < nv_; ++v) {
      blossombase_[v] = v;
      dualvar_[v] = maxweight;
    }
    for (int b = 2 * nv_ - 1; b >= nv_; --b) unused_.push_back(b);
  }

  std::vector<int> run() {
    for (int stage = 0; stage < nv_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = nv_; b < 2 * nv_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();
      for (int v = 0; v < nv_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }
      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            long long kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = 1;
        long long delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_);
        int deltaedge = -1;
        int deltablossom = -1;
        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const long long d = slack(bestedge_[v]);
            if (d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * nv_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const long long d = slack(bestedge_[b]) / 2;
            if (d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              dualvar_[b] < delta) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }

        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 1) dualvar_[v] -= delta;
          else if (label_[inblossom_[v]] == 2) dualvar_[v] += delta;
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) dualvar_[b] += delta;
            else if (label_[b] == 2) dualvar_[b] -= delta;
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          int i = edges_[deltaedge].u;
          int j = edges_[deltaedge].v;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(edges_[deltaedge].u);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (int b = nv_; b < 2 * nv_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
            dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    std::vector<int> mate(nv_, -1);
    for (int v = 0; v < nv_; ++v) {
      if (mate_[v] >= 0) mate[v] = endpoint_[mate_[v]];
    }
    return mate;
  }

 private:
  long long slack(int k) const {
    return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] - 2 * edges_[k].weight;
  }

  static int wrap(int j, std::size_t size) {
    const int n = static_cast<int>(size);
    return ((j % n) + n) % n;
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].u;
    int w = edges_[k].v;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unused_.back();
    unused_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    std::vector<int>& path = blossomchilds_[b];
    std::vector<int>& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    std::vector<int> bestedgeto(2 * nv_, -1);
    for (int child : path) {
      std::vector<std::vector<int>> lists;
      if (!has_bestedges_[child]) {
        for (int leaf : leaves(child)) {
          std::vector<int> ks;
          for (int p : neighbend_[leaf]) ks.push_back(p / 2);
          lists.push_back(std::move(ks));
        }
      } else {
        lists.push_back(blossombestedges_[child]);
      }
      for (const auto& list : lists) {
        for (int e : list) {
          int i = edges_[e].u;
          int j = edges_[e].v;
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj]))) {
            bestedgeto[bj] = e;
          }
        }
      }
      blossombestedges_[child].clear();
      has_bestedges_[child] = false;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (int e : bestedgeto) {
      if (e != -1) blossombestedges_[b].push_back(e);
    }
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (int e : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) bestedge_[b] = e;
    }
  }

  void expand_blossom(int b, bool endstage) {
    for (int s : blossomchilds_[b]) {
      blossomparent_[s] = -1;
      if (s < nv_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& childs = blossomchilds_[b];
      const auto& endps = blossomendps_[b];
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= static_cast<int>(childs.size());
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[endps[wrap(j - endptrick, endps.size())] ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[endps[wrap(j - endptrick, endps.size())] / 2] = true;
        j += jstep;
        p = endps[wrap(j - endptrick, endps.size())] ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      int bv = childs[wrap(j, childs.size())];
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (childs[wrap(j, childs.size())] != entrychild) {
        bv = childs[wrap(j, childs.size())];
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        int found = -1;
        for (int leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        }
        if (found != -1) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unused_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nv_) augment_blossom(t, v);
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
    if (i & 1) {
      j -= static_cast<int>(childs.size());
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = childs[wrap(j, childs.size())];
      const int p = endps[wrap(j - endptrick, endps.size())] ^ endptrick;
      if (t >= nv_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = childs[wrap(j, childs.size())];
      if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(int k) {
    const int v = edges_[k].u;
    const int w = edges_[k].v;
    for (auto [s, p] : {std::pair{v, 2 * k + 1}, std::pair{w, 2 * k}}) {
      while (true) {
        const int bs = inblossom_[s];
        if (bs >= nv_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= nv_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  const std::vector<Edge>& edges_;
  int nv_;
  int ne_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<long long> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> unused_;
  std::vector<int> queue_;
};

}  // namespace

std::vector<Edge> max_weight_matching(const PairGraph& graph) {
  if (graph.edges.empty()) return {};
  const std::vector<int> mate = Blossom(graph).run();
  std::vector<Edge> matched;
  std::vector<bool> used(graph.num_vertices(), false);
  for (const Edge& e : graph.edges) {
    if (mate[e.u] == e.v && !used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = true;
      matched.push_back(e);
    }
  }
  return matched;
}

bool applies(const Instance& instance) {
  if (instance.num_items() <= 2) return true;
  std::vector<int> sizes;
  for (const Item& item : instance.items()) sizes.push_back(item.size);
  std::partial_sort(sizes.begin(), sizes.begin() + 3, sizes.end());
  return static_cast<long long>(sizes[0]) + sizes[1] + sizes[2] > instance.max_capacity();
}

PairGraph build_pair_graph(const Instance& instance, int q) {
  const int n = instance.num_items();
  const int k = instance.num_bins();
  if (q < 0 || 2 * q > n || n - q > k) {
    throw Error(ErrorCode::InvalidQ, "q = " + std::to_string(q) + " with n = " + std::to_string(n) +
                                         ", k = " + std::to_string(k));
  }
  const auto& items = instance.items();
  const int min_cap = *std::min_element(instance.bin_capacities().begin(),
                                        instance.bin_capacities().end());
  PairGraph g;
  g.num_real = n;
  g.num_artificial = n - 2 * q;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (items[u].size + items[v].size > min_cap) continue;
      g.edges.push_back({u, v, items[u].color == items[v].color ? 2LL + n : 1LL + n});
    }
  }
  const long long heavy = static_cast<long long>(n) * n;
  for (int u = 0; u < n; ++u) {
    for (int a = 0; a < g.num_artificial; ++a) g.edges.push_back({u, n + a, heavy});
  }
  return g;
}

namespace {

// Places the groups (pairs and singletons) into bins, largest load onto the
// largest bin; nullopt when the groups need more bins than exist or one
// does not fit.
std::optional<std::vector<int>> place_groups(const Instance& instance,
                                             const std::vector<std::vector<int>>& groups) {
  if (static_cast<int>(groups.size()) > instance.num_bins()) return std::nullopt;
  const auto& items = instance.items();
  auto load = [&](const std::vector<int>& group) {
    int total = 0;
    for (int i : group) total += items[i].size;
    return total;
  };
  std::vector<int> group_order(groups.size());
  std::iota(group_order.begin(), group_order.end(), 0);
  std::stable_sort(group_order.begin(), group_order.end(),
                   [&](int a, int b) { return load(groups[a]) > load(groups[b]); });
  std::vector<int> bin_order(instance.num_bins());
  std::iota(bin_order.begin(), bin_order.end(), 0);
  const auto& caps = instance.bin_capacities();
  std::stable_sort(bin_order.begin(), bin_order.end(),
                   [&](int a, int b) { return caps[a] > caps[b]; });

  std::vector<int> bin_of(items.size(), -1);
  for (std::size_t r = 0; r < group_order.size(); ++r) {
    const auto& group = groups[group_order[r]];
    const int bin = bin_order[r];
    if (load(group) > caps[bin]) return std::nullopt;
    for (int i : group) bin_of[i] = bin;
  }
  return bin_of;
}

}  // namespace

SolveResult solve_two_per_bin(const Instance& instance) {
  if (!applies(instance)) {
    throw Error(ErrorCode::InvalidInstance, "some bin can hold three or more items");
  }
  const auto start = std::chrono::steady_clock::now();
  const int n = instance.num_items();
  const int k = instance.num_bins();

  SolveResult result;
  for (int q = std::max(0, n - k); 2 * q <= n; ++q) {
    ++result.report.nodes_explored;
    const PairGraph graph = build_pair_graph(instance, q);
    const std::vector<Edge> matched = max_weight_matching(graph);

    std::vector<bool> paired(n, false);
    std::vector<std::vector<int>> groups;
    for (const Edge& e : matched) {
      if (e.u < n && e.v < n) {
        groups.push_back({e.u, e.v});
        paired[e.u] = paired[e.v] = true;
      }
    }
    for (int i = 0; i < n; ++i) {
      if (!paired[i]) groups.push_back({i});
    }
    const auto bin_of = place_groups(instance, groups);
    if (!bin_of) continue;
    Solution candidate = evaluate(instance, *bin_of);
    if (!result.solution || candidate.objective < result.solution->objective) {
      result.solution = std::move(candidate);
    }
  }

  result.report.elapsed_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (result.solution) {
    result.report.status = SolveStatus::Optimal;
    result.report.lower_bound = result.solution->objective;
    result.report.upper_bound = result.solution->objective;
  } else {
    result.report.status = SolveStatus::Infeasible;
    result.report.lower_bound = n == 0 ? 0 : objective_lower_bound(instance);
  }
  return result;
}

}  // namespace bpmcf::matching
