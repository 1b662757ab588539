#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bpmcf/instance.hpp"
#include "bpmcf/json_io.hpp"

namespace bpmcf::instgen {

struct GenConfig {
  int k = 10;          // bins
  int capacity = 8;    // uniform bin capacity B, >= 8
  std::uint64_t seed = 1;
};

/// Item sizes are drawn i.i.d. (2: 0.4, 3: 0.3, 4: 0.2, 5: 0.1) until the
/// total reaches ceil(0.85 k B); the crossing item is kept. Colors are then
/// handed out left to right in blocks of p items, p uniform on {2,3,4} with
/// probability 0.6 and on {5,...,8} otherwise. When fewer than p items are
/// left they form the last color, except that a single leftover item joins
/// the previous color. Uses std::mt19937_64; deterministic per seed.
///
/// Throws Error(InvalidInstance) for k < 1 or B < 8.
Instance generate(const GenConfig& config);

InstanceMeta meta_of(const GenConfig& config);

/// ceil(0.85 * k * B), computed exactly.
std::int64_t fill_threshold(int k, int capacity);

struct Summary {
  std::map<int, long long> size_histogram;
  std::map<int, long long> class_size_histogram;
  std::map<int, long long> num_colors_histogram;
  std::vector<double> fill_ratios;  // sum of sizes / sum of capacities
  long long blocks = 0;             // color classes other than each instance's last
  long long small_blocks = 0;       // ... of those, how many have 2..4 items
  long long items = 0;
};

Summary stats(std::span<const Instance> instances);

}  // namespace bpmcf::instgen
