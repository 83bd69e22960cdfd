#include "repcut/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "repcut/error.hpp"

namespace repcut {
namespace {

constexpr std::string_view kInstanceHeader = "repcut-instance v1";
constexpr std::string_view kSolutionHeader = "repcut-solution v1";
constexpr std::string_view kHittingHeader = "repcut-hitting-set v1";
constexpr std::string_view kSteinerHeader = "repcut-steiner v1";

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

std::vector<std::string> split(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

// Non-empty, non-comment lines, tokenized.
std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    auto tokens = split(raw);
    if (tokens.empty() || tokens[0][0] == '#') continue;
    out.push_back({number, std::move(tokens)});
  }
  return out;
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
  throw ParseError("line " + std::to_string(l.number) + ": " + msg);
}

std::vector<Line> body_after(std::string_view text, std::string_view header) {
  std::vector<Line> ls = lines_of(text);
  if (ls.empty()) throw ParseError("empty document");
  std::string first;
  for (const std::string& t : ls.front().tokens) first += (first.empty() ? "" : " ") + t;
  if (first != header)
    fail(ls.front(), "expected header '" + std::string(header) + "', got '" + first + "'");
  ls.erase(ls.begin());
  return ls;
}

void need_args(const Line& l, std::size_t at_least, std::size_t at_most) {
  const std::size_t n = l.tokens.size() - 1;
  if (n < at_least || n > at_most)
    fail(l, "'" + l.tokens[0] + "' takes " +
                (at_least == at_most ? std::to_string(at_least)
                                     : std::to_string(at_least) + ".." +
                                           (at_most == SIZE_MAX ? std::string("n") : std::to_string(at_most))) +
                " argument(s)");
}

double parse_double(const Line& l, const std::string& s) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(x))
    fail(l, "bad number '" + s + "'");
  return x;
}

int parse_index(const Line& l, const std::string& s, int limit, const char* what) {
  int x = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || x < 1 || x > limit)
    fail(l, std::string("bad ") + what + " '" + s + "' (expected 1.." + std::to_string(limit) + ")");
  return x - 1;
}

NodeId node_of(const Line& l, const Graph& g, const std::string& name) {
  const auto v = g.find(name);
  if (!v) fail(l, "unknown node '" + name + "'");
  return *v;
}

// Shared graph section: nodes and edge lines. Returns true if consumed.
bool graph_line(const Line& l, Graph& g) {
  const std::string& key = l.tokens[0];
  if (key == "nodes") {
    for (std::size_t k = 1; k < l.tokens.size(); ++k) {
      if (g.find(l.tokens[k])) fail(l, "duplicate node '" + l.tokens[k] + "'");
      g.add_node(l.tokens[k]);
    }
    return true;
  }
  if (key == "edge") {
    need_args(l, 3, 3);
    const NodeId u = node_of(l, g, l.tokens[1]), v = node_of(l, g, l.tokens[2]);
    if (u == v) fail(l, "self-loop at '" + l.tokens[1] + "'");
    const double w = parse_double(l, l.tokens[3]);
    if (w < 0) fail(l, "negative edge weight");
    g.add_edge(u, v, w);
    return true;
  }
  return false;
}

NodeSet set_of(const Line& l, const Graph& g) {
  need_args(l, 1, SIZE_MAX);
  NodeSet s;
  for (std::size_t k = 1; k < l.tokens.size(); ++k) s.push_back(node_of(l, g, l.tokens[k]));
  return s;
}

void check_name(const std::string& name) {
  if (name.empty() || name[0] == '#' || split(name).size() != 1 || split(name)[0] != name)
    throw StructuralError("node name '" + name + "' cannot be written to a text file");
}

void emit_graph(std::ostringstream& out, const Graph& g) {
  out << "nodes";
  for (const std::string& n : g.names()) {
    check_name(n);
    out << ' ' << n;
  }
  out << '\n';
  for (const Edge& e : g.edges())
    out << "edge " << g.name(e.u) << ' ' << g.name(e.v) << ' ' << format_weight(e.w) << '\n';
}

void emit_set(std::ostringstream& out, const char* key, const Graph& g, const NodeSet& s) {
  out << key;
  for (NodeId v : s) out << ' ' << g.name(v);
  out << '\n';
}

}  // namespace

std::string format_weight(double w) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, w);
  if (ec != std::errc()) throw Error("cannot format weight");
  return std::string(buf, p);
}

DocumentKind detect_document(std::string_view text) {
  const std::vector<Line> ls = lines_of(text);
  if (ls.empty()) throw ParseError("empty document");
  std::string first;
  for (const std::string& t : ls.front().tokens) first += (first.empty() ? "" : " ") + t;
  if (first == kInstanceHeader) return DocumentKind::Instance;
  if (first == kSolutionHeader) return DocumentKind::Solution;
  if (first == kHittingHeader) return DocumentKind::HittingSet;
  if (first == kSteinerHeader) return DocumentKind::Steiner;
  fail(ls.front(), "unrecognized header '" + first + "'");
}

InstanceDocument parse_instance(std::string_view text) {
  Graph g;
  std::optional<Variant> variant;
  std::vector<NodeSet> sets;
  std::optional<NodeId> fixed;
  Metadata meta;
  for (const Line& l : body_after(text, kInstanceHeader)) {
    const std::string& key = l.tokens[0];
    if (key == "variant") {
      need_args(l, 1, 1);
      if (variant) fail(l, "variant given twice");
      try {
        variant = parse_variant(l.tokens[1]);
      } catch (const ParseError& e) {
        fail(l, e.what());
      }
    } else if (graph_line(l, g)) {
    } else if (key == "set") {
      sets.push_back(set_of(l, g));
    } else if (key == "fixed-node") {
      need_args(l, 1, 1);
      if (fixed) fail(l, "fixed-node given twice");
      fixed = node_of(l, g, l.tokens[1]);
    } else if (key == "meta") {
      need_args(l, 1, SIZE_MAX);
      std::string value;
      for (std::size_t k = 2; k < l.tokens.size(); ++k) value += (k > 2 ? " " : "") + l.tokens[k];
      meta.emplace_back(l.tokens[1], value);
    } else {
      fail(l, "unknown key '" + key + "'");
    }
  }
  if (!variant) throw ParseError("missing 'variant' line");
  try {
    return {make_instance(*variant, std::move(g), std::move(sets), fixed), std::move(meta)};
  } catch (const StructuralError& e) {
    throw ParseError(std::string("invalid instance: ") + e.what());
  }
}

std::string emit_instance(const VariantInstance& inst, const Metadata& metadata) {
  std::ostringstream out;
  out << kInstanceHeader << '\n' << "variant " << variant_name(inst.variant) << '\n';
  emit_graph(out, inst.graph);
  for (const NodeSet& s : inst.family.sets) emit_set(out, "set", inst.graph, s);
  if (inst.fixed_node) out << "fixed-node " << inst.graph.name(*inst.fixed_node) << '\n';
  for (const auto& [k, v] : metadata) {
    check_name(k);
    out << "meta " << k << (v.empty() ? "" : " ") << v << '\n';
  }
  return out.str();
}

CutSolution parse_solution(std::string_view text, const VariantInstance& inst) {
  const Graph& g = inst.graph;
  const int q = inst.q();
  CutSolution sol;
  if (uses_single_reps(inst.variant)) sol.reps.single.assign(q, -1);
  if (uses_pair_reps(inst.variant)) sol.reps.pair.assign(q, std::vector<NodeId>(q, -1));
  std::optional<double> weight;
  std::vector<EdgeId> cut;
  for (const Line& l : body_after(text, kSolutionHeader)) {
    const std::string& key = l.tokens[0];
    if (key == "variant") {
      need_args(l, 1, 1);
      if (l.tokens[1] != variant_name(inst.variant))
        fail(l, "solution is for '" + l.tokens[1] + "', instance is " + variant_name(inst.variant));
    } else if (key == "weight") {
      need_args(l, 1, 1);
      weight = parse_double(l, l.tokens[1]);
    } else if (key == "cut") {
      for (std::size_t k = 1; k < l.tokens.size(); ++k)
        cut.push_back(parse_index(l, l.tokens[k], g.num_edges(), "edge number"));
    } else if (key == "rep") {
      need_args(l, 2, 2);
      if (!uses_single_reps(inst.variant)) fail(l, "this variant has no single representatives");
      sol.reps.single[parse_index(l, l.tokens[1], q, "set index")] = node_of(l, g, l.tokens[2]);
    } else if (key == "pair") {
      need_args(l, 3, 3);
      if (!uses_pair_reps(inst.variant)) fail(l, "this variant has no pair representatives");
      const int i = parse_index(l, l.tokens[1], q, "set index");
      const int j = parse_index(l, l.tokens[2], q, "set index");
      if (i == j) fail(l, "pair representative needs two different sets");
      sol.reps.pair[i][j] = node_of(l, g, l.tokens[3]);
    } else {
      fail(l, "unknown key '" + key + "'");
    }
  }
  sol.cut = make_cut(g, std::move(cut));
  sol.components = components(g, sol.cut);
  sol.weight = weight ? *weight : cut_weight(g, sol.cut);
  return sol;
}

std::string emit_solution(const VariantInstance& inst, const CutSolution& sol) {
  std::ostringstream out;
  out << kSolutionHeader << '\n' << "variant " << variant_name(inst.variant) << '\n'
      << "weight " << format_weight(sol.weight) << '\n' << "cut";
  for (EdgeId e : sol.cut) out << ' ' << e + 1;
  out << '\n';
  for (std::size_t i = 0; i < sol.reps.single.size(); ++i)
    if (sol.reps.single[i] >= 0) out << "rep " << i + 1 << ' ' << inst.graph.name(sol.reps.single[i]) << '\n';
  for (std::size_t i = 0; i < sol.reps.pair.size(); ++i)
    for (std::size_t j = 0; j < sol.reps.pair[i].size(); ++j)
      if (i != j && sol.reps.pair[i][j] >= 0)
        out << "pair " << i + 1 << ' ' << j + 1 << ' ' << inst.graph.name(sol.reps.pair[i][j]) << '\n';
  return out.str();
}

HittingSetInstance parse_hitting_set(std::string_view text) {
  HittingSetInstance h;
  std::map<std::string, int, std::less<>> index;
  for (const Line& l : body_after(text, kHittingHeader)) {
    const std::string& key = l.tokens[0];
    if (key == "ground") {
      for (std::size_t k = 1; k < l.tokens.size(); ++k) {
        if (!index.emplace(l.tokens[k], static_cast<int>(h.ground.size())).second)
          fail(l, "duplicate element '" + l.tokens[k] + "'");
        h.ground.push_back(l.tokens[k]);
      }
    } else if (key == "set") {
      need_args(l, 1, SIZE_MAX);
      std::vector<int> s;
      for (std::size_t k = 1; k < l.tokens.size(); ++k) {
        const auto it = index.find(l.tokens[k]);
        if (it == index.end()) fail(l, "unknown element '" + l.tokens[k] + "'");
        s.push_back(it->second);
      }
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      h.sets.push_back(std::move(s));
    } else {
      fail(l, "unknown key '" + key + "'");
    }
  }
  return h;
}

std::string emit_hitting_set(const HittingSetInstance& h) {
  check_hitting_set(h);
  std::ostringstream out;
  out << kHittingHeader << '\n' << "ground";
  for (const std::string& e : h.ground) {
    check_name(e);
    out << ' ' << e;
  }
  out << '\n';
  for (const auto& s : h.sets) {
    out << "set";
    for (int e : s) out << ' ' << h.ground[e];
    out << '\n';
  }
  return out.str();
}

SteinerMulticutInstance parse_steiner(std::string_view text) {
  SteinerMulticutInstance sm;
  for (const Line& l : body_after(text, kSteinerHeader)) {
    if (graph_line(l, sm.graph)) continue;
    if (l.tokens[0] == "group") {
      sm.groups.push_back(make_node_set(sm.graph, set_of(l, sm.graph)));
    } else {
      fail(l, "unknown key '" + l.tokens[0] + "'");
    }
  }
  return sm;
}

std::string emit_steiner(const SteinerMulticutInstance& sm) {
  std::ostringstream out;
  out << kSteinerHeader << '\n';
  emit_graph(out, sm.graph);
  for (const NodeSet& x : sm.groups) emit_set(out, "group", sm.graph, x);
  return out.str();
}

bool same_instance(const VariantInstance& a, const VariantInstance& b) {
  if (a.variant != b.variant || a.fixed_node != b.fixed_node || a.family.sets != b.family.sets ||
      a.graph.names() != b.graph.names() || a.graph.num_edges() != b.graph.num_edges())
    return false;
  for (EdgeId e = 0; e < a.graph.num_edges(); ++e) {
    const Edge &x = a.graph.edge(e), &y = b.graph.edge(e);
    if (x.u != y.u || x.v != y.v || x.w != y.w) return false;
  }
  return true;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace repcut
