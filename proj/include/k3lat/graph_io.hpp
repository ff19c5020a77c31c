#pragma once

// JSON and DOT serialization of colored graphs.
//
//   {"d": 1,
//    "vertices": [{"id": "C1", "color": 1, "square": -2}, ...],
//    "edges":    [{"a": "C1", "b": "C2", "m": 2}, ...]}
//
// Exports are ordered by vertex id (edges by the id pair), so equal graphs
// serialize to identical bytes regardless of input order.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "k3lat/fano_graph.hpp"

namespace k3lat::io {

using nlohmann::json;

/// `where` is either "byte N" (syntax errors) or a JSON pointer such as
/// "/vertices/2/color".
class GraphParseError : public std::invalid_argument {
 public:
  GraphParseError(std::string where, const std::string& what)
      : std::invalid_argument(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

fano::ColoredGraph parse_graph(const std::string& text);
fano::ColoredGraph graph_from_json(const json& j);

json to_json(const fano::ColoredGraph& g);
/// Compact dump of to_json(g).
std::string canonical_text(const fano::ColoredGraph& g);
/// FNV-1a (64 bit) of canonical_text, as 16 hex digits.
std::string graph_hash(const fano::ColoredGraph& g);

std::string to_dot(const fano::ColoredGraph& g);

json to_json(const BigRat& q);
json to_json(const RatVector& v);

}  // namespace k3lat::io
