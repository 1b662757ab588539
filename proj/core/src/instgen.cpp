#include "bpmcf/instgen.hpp"

#include <random>
#include <string>

#include "bpmcf/errors.hpp"

namespace bpmcf::instgen {

std::int64_t fill_threshold(int k, int capacity) {
  const std::int64_t scaled = 85LL * k * capacity;
  return (scaled + 99) / 100;
}

InstanceMeta meta_of(const GenConfig& config) {
  return InstanceMeta{config.k, config.capacity, config.seed};
}

Instance generate(const GenConfig& config) {
  if (config.k < 1 || config.capacity < 8) {
    throw Error(ErrorCode::InvalidInstance, "generator needs k >= 1 and B >= 8 (got k = " +
                                                std::to_string(config.k) + ", B = " +
                                                std::to_string(config.capacity) + ")");
  }
  std::mt19937_64 rng(config.seed);
  std::discrete_distribution<int> size_draw({0.4, 0.3, 0.2, 0.1});
  std::bernoulli_distribution small_block(0.6);
  std::uniform_int_distribution<int> small_p(2, 4);
  std::uniform_int_distribution<int> large_p(5, 8);

  const std::int64_t threshold = fill_threshold(config.k, config.capacity);
  std::vector<int> sizes;
  std::int64_t total = 0;
  while (total < threshold) {
    const int s = 2 + size_draw(rng);
    sizes.push_back(s);
    total += s;
  }

  const int n = static_cast<int>(sizes.size());
  std::vector<int> colors(n, 0);
  int color = 0;
  int next = 0;
  while (next < n) {
    const int p = small_block(rng) ? small_p(rng) : large_p(rng);
    const int left = n - next;
    if (left == 1 && color > 0) {
      colors[next++] = color;
      break;
    }
    ++color;
    const int take = std::min(p, left);
    for (int i = 0; i < take; ++i) colors[next++] = color;
  }

  std::vector<Item> items;
  items.reserve(n);
  for (int i = 0; i < n; ++i) items.push_back({i + 1, sizes[i], colors[i]});
  return Instance(std::move(items), std::vector<int>(config.k, config.capacity));
}

Summary stats(std::span<const Instance> instances) {
  Summary out;
  for (const Instance& inst : instances) {
    const auto& items = inst.items();
    out.items += static_cast<long long>(items.size());
    for (const Item& item : items) ++out.size_histogram[item.size];

    std::int64_t capacity = 0;
    for (int c : inst.bin_capacities()) capacity += c;
    out.fill_ratios.push_back(static_cast<double>(inst.total_size()) / static_cast<double>(capacity));

    std::map<int, int> class_sizes;
    for (const Item& item : items) ++class_sizes[item.color];
    ++out.num_colors_histogram[static_cast<int>(class_sizes.size())];
    const int last_color = class_sizes.empty() ? 0 : class_sizes.rbegin()->first;
    for (const auto& [c, count] : class_sizes) {
      ++out.class_size_histogram[count];
      if (c == last_color) continue;
      ++out.blocks;
      if (count >= 2 && count <= 4) ++out.small_blocks;
    }
  }
  return out;
}

}  // namespace bpmcf::instgen
