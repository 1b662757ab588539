#include "bpmcf/mip_models.hpp"

#include <cmath>
#include <sstream>

#include "bpmcf/errors.hpp"

namespace bpmcf::mip {
namespace {

constexpr int kTermsPerLine = 8;

class LpWriter {
 public:
  void comment(const std::string& text) { out_ << "\\ " << text << '\n'; }
  void section(const char* name) { out_ << name << '\n'; }

  void begin_row(const std::string& name) {
    out_ << ' ' << name << ':';
    terms_ = 0;
  }
  void term(long long coef, const std::string& var) {
    if (terms_ > 0 && terms_ % kTermsPerLine == 0) out_ << "\n  ";
    if (coef < 0) out_ << " -";
    else if (terms_ > 0) out_ << " +";
    if (std::llabs(coef) != 1) out_ << ' ' << std::llabs(coef);
    out_ << ' ' << var;
    ++terms_;
  }
  void end_row(const char* sense, long long rhs) {
    out_ << ' ' << sense << ' ' << rhs << '\n';
    ++rows_;
  }
  void end_objective() { out_ << '\n'; }

  void binaries(const std::vector<std::string>& vars) {
    section("Binary");
    for (std::size_t i = 0; i < vars.size(); ++i) {
      out_ << ' ' << vars[i];
      if (i % kTermsPerLine == kTermsPerLine - 1 || i + 1 == vars.size()) out_ << '\n';
    }
    section("End");
  }

  int terms() const { return terms_; }
  int rows() const { return rows_; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
  int terms_ = 0;
  int rows_ = 0;
};

std::string x_name(int b, int o) { return "x_b" + std::to_string(b) + "_o" + std::to_string(o); }
std::string y_name(int b, int g) { return "y_b" + std::to_string(b) + "_g" + std::to_string(g); }
std::string z_name(int b, int a) { return "z_b" + std::to_string(b) + "_a" + std::to_string(a); }

[[noreturn]] void inconsistent(const std::string& what) {
  throw Error(ErrorCode::InconsistentValues, what);
}

int value_of(const std::map<std::string, int>& values, const std::string& name) {
  auto it = values.find(name);
  return it == values.end() ? 0 : it->second;
}

}  // namespace

const char* to_string(Formulation f) { return f == Formulation::IP ? "IP" : "ANF"; }

std::optional<Formulation> parse_formulation(const std::string& text) {
  if (text == "ip" || text == "IP") return Formulation::IP;
  if (text == "anf" || text == "ANF") return Formulation::ANF;
  return std::nullopt;
}

ModelFile emit_ip(const Instance& canonical) {
  ModelFile model;
  model.formulation = Formulation::IP;
  const int k = canonical.num_bins();
  const auto& items = canonical.items();
  const std::vector<int> colors = canonical.colors();

  for (int b = 0; b < k; ++b) {
    for (const Item& item : items) {
      const std::string name = x_name(b, item.id);
      model.variables.push_back(name);
      model.var_index[name] = {VarMeaning::Kind::Assign, b, item.id, item.color, 0};
    }
  }
  for (int b = 0; b < k; ++b) {
    for (int g : colors) {
      const std::string name = y_name(b, g);
      model.variables.push_back(name);
      model.var_index[name] = {VarMeaning::Kind::ColorUsed, b, 0, g, 0};
    }
  }

  LpWriter lp;
  lp.comment("formulation: IP");
  lp.comment("items " + std::to_string(items.size()) + " bins " + std::to_string(k) + " colors " +
             std::to_string(colors.size()));
  lp.section("Minimize");
  lp.begin_row("obj");
  for (int b = 0; b < k; ++b) {
    for (int g : colors) lp.term(1, y_name(b, g));
  }
  lp.end_objective();

  lp.section("Subject To");
  for (const Item& item : items) {
    lp.begin_row("assign_o" + std::to_string(item.id));
    for (int b = 0; b < k; ++b) lp.term(1, x_name(b, item.id));
    lp.end_row("=", 1);
  }
  // A capacity row needs at least one term; with no items there is nothing to bound.
  for (int b = 0; b < k && !items.empty(); ++b) {
    lp.begin_row("cap_b" + std::to_string(b));
    for (const Item& item : items) lp.term(item.size, x_name(b, item.id));
    lp.end_row("<=", canonical.bin_capacities()[b]);
  }
  for (int b = 0; b < k; ++b) {
    for (const Item& item : items) {
      lp.begin_row("link_b" + std::to_string(b) + "_o" + std::to_string(item.id));
      lp.term(1, x_name(b, item.id));
      lp.term(-1, y_name(b, item.color));
      lp.end_row("<=", 0);
    }
  }
  lp.binaries(model.variables);
  model.num_constraints = lp.rows();
  model.text = lp.str();
  return model;
}

ModelFile emit_anf(const Instance& canonical) {
  return emit_anf(canonical, cpath::build_diagrams(canonical));
}

ModelFile emit_anf(const Instance& canonical, const cpath::DiagramSet& diagrams) {
  ModelFile model;
  model.formulation = Formulation::ANF;
  const int k = canonical.num_bins();

  for (int b = 0; b < k; ++b) {
    const bdd::Bdd& d = diagrams.for_bin(b);
    for (int a = 0; a < static_cast<int>(d.arcs().size()); ++a) {
      const std::string name = z_name(b, a);
      model.variables.push_back(name);
      const bdd::Arc& arc = d.arc(a);
      const int item = arc.item == bdd::kNone ? 0 : d.items()[arc.item].id;
      model.var_index[name] = {VarMeaning::Kind::ArcFlow, b, item, 0, a};
    }
  }

  LpWriter lp;
  lp.comment("formulation: ANF");
  lp.comment("items " + std::to_string(canonical.num_items()) + " bins " + std::to_string(k) +
             " arcs " + std::to_string(model.variables.size()));
  lp.section("Minimize");
  lp.begin_row("obj");
  for (int b = 0; b < k; ++b) {
    const bdd::Bdd& d = diagrams.for_bin(b);
    for (int a = 0; a < static_cast<int>(d.arcs().size()); ++a) {
      if (d.arc(a).cost != 0) lp.term(d.arc(a).cost, z_name(b, a));
    }
  }
  if (lp.terms() == 0) lp.term(0, model.variables.front());
  lp.end_objective();

  lp.section("Subject To");
  for (int b = 0; b < k; ++b) {
    const bdd::Bdd& d = diagrams.for_bin(b);
    std::vector<std::vector<int>> in(d.nodes().size()), out(d.nodes().size());
    for (int a = 0; a < static_cast<int>(d.arcs().size()); ++a) {
      in[d.arc(a).to].push_back(a);
      out[d.arc(a).from].push_back(a);
    }
    for (bdd::NodeId u = d.root() + 1; u < d.terminal(); ++u) {
      lp.begin_row("flow_b" + std::to_string(b) + "_n" + std::to_string(u));
      for (int a : in[u]) lp.term(1, z_name(b, a));
      for (int a : out[u]) lp.term(-1, z_name(b, a));
      lp.end_row("=", 0);
    }
    lp.begin_row("src_b" + std::to_string(b));
    for (int a : out[d.root()]) lp.term(1, z_name(b, a));
    lp.end_row("=", 1);
    lp.begin_row("snk_b" + std::to_string(b));
    for (int a : in[d.terminal()]) lp.term(1, z_name(b, a));
    lp.end_row("=", 1);
  }
  for (const auto& [key, count] : canonical.color_size_classes()) {
    const auto [color, size] = key;
    lp.begin_row("joint_g" + std::to_string(color) + "_s" + std::to_string(size));
    for (int b = 0; b < k; ++b) {
      const bdd::Bdd& d = diagrams.for_bin(b);
      for (int a = 0; a < static_cast<int>(d.arcs().size()); ++a) {
        const bdd::Arc& arc = d.arc(a);
        if (arc.domain != 1) continue;
        const Item& item = d.items()[arc.item];
        if (item.color == color && item.size == size) lp.term(1, z_name(b, a));
      }
    }
    // Items that fit no bin leave the row empty; keep it syntactically valid (and infeasible).
    if (lp.terms() == 0) lp.term(0, model.variables.front());
    lp.end_row("=", count);
  }
  lp.binaries(model.variables);
  model.num_constraints = lp.rows();
  model.text = lp.str();
  return model;
}

std::map<std::string, int> parse_values(const std::string& text) {
  std::map<std::string, int> values;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string name;
    double value = 0.0;
    if (!(fields >> name >> value)) {
      throw Error(ErrorCode::ParseError, "values line " + std::to_string(line_no) + ": expected 'name value'");
    }
    const double rounded = std::round(value);
    if (std::fabs(value - rounded) > 1e-6 || (rounded != 0.0 && rounded != 1.0)) {
      inconsistent("variable " + name + " has non-binary value " + std::to_string(value));
    }
    values[name] = static_cast<int>(rounded);
  }
  return values;
}

Solution import_solution(const Instance& canonical, Formulation formulation,
                         const std::map<std::string, int>& values) {
  const int k = canonical.num_bins();
  const auto& items = canonical.items();
  std::vector<int> bin_of(items.size(), -1);

  if (formulation == Formulation::IP) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      for (int b = 0; b < k; ++b) {
        if (value_of(values, x_name(b, items[i].id)) != 1) continue;
        if (bin_of[i] != -1) inconsistent("item " + std::to_string(items[i].id) + " assigned twice");
        bin_of[i] = b;
      }
    }
    return evaluate(canonical, bin_of);
  }

  const cpath::DiagramSet diagrams = cpath::build_diagrams(canonical);
  // Per (color, size) class: which bins took how many of its items, in bin order.
  std::map<std::pair<int, int>, std::vector<int>> takers;
  for (int b = 0; b < k; ++b) {
    const bdd::Bdd& d = diagrams.for_bin(b);
    int active = 0;
    for (int a = 0; a < static_cast<int>(d.arcs().size()); ++a) active += value_of(values, z_name(b, a));

    int path_len = 0;
    bdd::NodeId u = d.root();
    while (u != d.terminal()) {
      const bdd::Node& node = d.node(u);
      bdd::ArcId next = bdd::kNone;
      for (bdd::ArcId a : {node.zero_arc, node.one_arc}) {
        if (a == bdd::kNone || value_of(values, z_name(b, a)) != 1) continue;
        if (next != bdd::kNone) inconsistent("bin " + std::to_string(b) + ": flow splits at node " + std::to_string(u));
        next = a;
      }
      if (next == bdd::kNone) inconsistent("bin " + std::to_string(b) + ": flow stops at node " + std::to_string(u));
      const bdd::Arc& arc = d.arc(next);
      if (arc.domain == 1) {
        const Item& item = d.items()[arc.item];
        takers[{item.color, item.size}].push_back(b);
      }
      ++path_len;
      u = arc.to;
    }
    if (active != path_len) inconsistent("bin " + std::to_string(b) + ": flow is not a single path");
  }

  for (const auto& [key, count] : canonical.color_size_classes()) {
    const auto& bins = takers[key];
    if (static_cast<int>(bins.size()) != count) {
      inconsistent("class (color " + std::to_string(key.first) + ", size " +
                   std::to_string(key.second) + ") covered " + std::to_string(bins.size()) +
                   " times, expected " + std::to_string(count));
    }
    std::size_t next = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      if (items[i].color == key.first && items[i].size == key.second) bin_of[i] = bins[next++];
    }
  }
  return evaluate(canonical, bin_of);
}

}  // namespace bpmcf::mip
