#include "bpmcf/json_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "bpmcf/errors.hpp"

namespace bpmcf {

using nlohmann::json;

std::string instance_to_json(const Instance& instance, const std::optional<InstanceMeta>& meta) {
  json doc;
  doc["bins"] = instance.bin_capacities();
  json items = json::array();
  for (const Item& item : instance.items()) {
    items.push_back({{"id", item.id}, {"size", item.size}, {"color", item.color}});
  }
  doc["items"] = std::move(items);
  if (meta) {
    doc["meta"] = {{"k", meta->k}, {"B", meta->capacity}, {"seed", meta->seed}};
  }
  return doc.dump();
}

InstanceDocument instance_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    std::vector<int> bins = doc.at("bins").get<std::vector<int>>();
    std::vector<Item> items;
    for (const json& entry : doc.at("items")) {
      items.push_back({entry.at("id").get<int>(), entry.at("size").get<int>(),
                       entry.at("color").get<int>()});
    }
    InstanceDocument out{Instance(std::move(items), std::move(bins)), std::nullopt};
    if (doc.contains("meta")) {
      const json& meta = doc["meta"];
      out.meta = InstanceMeta{meta.at("k").get<int>(), meta.at("B").get<int>(),
                              meta.at("seed").get<std::uint64_t>()};
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("instance JSON: ") + e.what());
  }
}

std::string solution_to_json(const Instance& instance, const std::optional<Solution>& solution,
                             SolveStatus status) {
  json doc;
  json bin_of = json::object();
  if (solution) {
    doc["objective"] = solution->objective;
    for (std::size_t i = 0; i < solution->bin_of.size(); ++i) {
      bin_of[std::to_string(instance.items()[i].id)] = solution->bin_of[i];
    }
  } else {
    doc["objective"] = nullptr;
  }
  doc["bin_of"] = std::move(bin_of);
  doc["status"] = to_string(status);
  return doc.dump();
}

SolutionDocument solution_from_json(const Instance& instance, const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("solution JSON: ") + e.what());
  }
  SolutionDocument out;
  const auto status = parse_status(doc.value("status", std::string{}));
  if (!status) throw Error(ErrorCode::ParseError, "solution JSON: unknown status");
  out.status = *status;
  if (doc.contains("objective") && !doc["objective"].is_null()) {
    const json& bins = doc.at("bin_of");
    std::vector<int> bin_of(instance.items().size(), -1);
    for (std::size_t i = 0; i < instance.items().size(); ++i) {
      const std::string key = std::to_string(instance.items()[i].id);
      if (bins.contains(key)) bin_of[i] = bins[key].get<int>();
    }
    out.solution = evaluate(instance, bin_of);
    if (out.solution->objective != doc["objective"].get<int>()) {
      throw Error(ErrorCode::ParseError, "solution JSON: objective does not match assignment");
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << text;
}

}  // namespace bpmcf
