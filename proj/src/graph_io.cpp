#include "k3lat/graph_io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace k3lat::io {

using fano::ColoredGraph;

namespace {

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) throw GraphParseError(path.empty() ? "/" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw GraphParseError(path + "/" + key, "missing required key");
  return *it;
}

int integer(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_number_integer()) throw GraphParseError(path + "/" + key, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x < -1000000 || x > 1000000) throw GraphParseError(path + "/" + key, "integer out of range");
  return static_cast<int>(x);
}

std::string text(const json& obj, const std::string& path, const char* key) {
  const json& v = member(obj, path, key);
  if (!v.is_string()) throw GraphParseError(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

ColoredGraph graph_from_json(const json& j) {
  const int d = integer(j, "", "d");
  if (d < 1) throw GraphParseError("/d", "degree cap must be positive");

  const json& vs = member(j, "", "vertices");
  if (!vs.is_array()) throw GraphParseError("/vertices", "expected an array");
  std::vector<fano::Vertex> vertices;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string path = "/vertices/" + std::to_string(i);
    fano::Vertex v{text(vs[i], path, "id"), integer(vs[i], path, "color"), integer(vs[i], path, "square")};
    if (v.id.empty()) throw GraphParseError(path + "/id", "empty id");
    if (!ids.insert(v.id).second) throw GraphParseError(path + "/id", "duplicate id '" + v.id + "'");
    if (v.color < 0 || v.color > d)
      throw GraphParseError(path + "/color", "color must lie in [0, " + std::to_string(d) + "]");
    if (v.square != -2 && v.square != 0) throw GraphParseError(path + "/square", "square must be -2 or 0");
    vertices.push_back(std::move(v));
  }

  const json& es = member(j, "", "edges");
  if (!es.is_array()) throw GraphParseError("/edges", "expected an array");
  std::vector<fano::Edge> edges;
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string path = "/edges/" + std::to_string(i);
    fano::Edge e{text(es[i], path, "a"), text(es[i], path, "b"), integer(es[i], path, "m")};
    if (!ids.count(e.a)) throw GraphParseError(path + "/a", "unknown vertex '" + e.a + "'");
    if (!ids.count(e.b)) throw GraphParseError(path + "/b", "unknown vertex '" + e.b + "'");
    if (e.a == e.b) throw GraphParseError(path, "loop at '" + e.a + "'");
    if (e.m < 1) throw GraphParseError(path + "/m", "multiplicity must be >= 1");
    if (!seen.insert(std::minmax(e.a, e.b)).second) throw GraphParseError(path, "duplicate edge");
    edges.push_back(std::move(e));
  }
  return ColoredGraph(d, std::move(vertices), std::move(edges));
}

ColoredGraph parse_graph(const std::string& input) {
  json j;
  try {
    j = json::parse(input);
  } catch (const json::parse_error& e) {
    throw GraphParseError("byte " + std::to_string(e.byte), "malformed JSON");
  }
  return graph_from_json(j);
}

json to_json(const ColoredGraph& g) {
  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return g.vertex(x).id < g.vertex(y).id; });

  json vertices = json::array();
  for (std::size_t i : order)
    vertices.push_back({{"id", g.vertex(i).id}, {"color", g.vertex(i).color}, {"square", g.vertex(i).square}});

  std::vector<std::tuple<std::string, std::string, int>> rows;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t k = i + 1; k < g.size(); ++k)
      if (int m = g.multiplicity(i, k); m > 0) {
        auto [a, b] = std::minmax(g.vertex(i).id, g.vertex(k).id);
        rows.emplace_back(a, b, m);
      }
  std::sort(rows.begin(), rows.end());
  json edges = json::array();
  for (const auto& [a, b, m] : rows) edges.push_back({{"a", a}, {"b", b}, {"m", m}});

  return {{"d", g.degree_cap()}, {"vertices", vertices}, {"edges", edges}};
}

std::string canonical_text(const ColoredGraph& g) { return to_json(g).dump(); }

std::string graph_hash(const ColoredGraph& g) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical_text(g)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string to_dot(const ColoredGraph& g) {
  const json j = to_json(g);
  std::ostringstream out;
  out << "graph fano {\n";
  for (const auto& v : j["vertices"]) {
    out << "  \"" << v["id"].get<std::string>() << "\" [label=\"" << v["color"].get<int>() << "\"";
    if (v["square"].get<int>() == 0) out << ", shape=box";
    out << "];\n";
  }
  for (const auto& e : j["edges"]) {
    out << "  \"" << e["a"].get<std::string>() << "\" -- \"" << e["b"].get<std::string>() << "\"";
    if (int m = e["m"].get<int>(); m > 1) out << " [label=\"" << m << "\"]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

json to_json(const BigRat& q) { return to_string(q); }

json to_json(const RatVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

}  // namespace k3lat::io
