#pragma once

// Enumeration of colored parabolic graphs (disjoint unions of ADE diagrams
// with at least one extended diagram) and of their one-vertex hyperbolic
// extensions, and the resulting effective bound on H² over the search space.

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3lat/dynkin.hpp"
#include "k3lat/exact.hpp"
#include "k3lat/fano_graph.hpp"

namespace k3lat::search {

struct SearchConfig {
  int d = 1;
  int max_vertices = 2;  // ≤ 24
  std::optional<int> color_budget;
  unsigned parallelism = 1;
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

/// One connected component in catalog vertex order.
struct Part {
  dynkin::DynkinType type;
  std::vector<std::size_t> vertices;  // graph index of catalog vertex k
  std::vector<int> coloring;          // lexicographically least in its orbit
};

/// A parabolic graph together with its decomposition; parts are sorted by
/// (type, coloring).
struct ParabolicGraph {
  fano::ColoredGraph graph;
  std::vector<Part> parts;
};

/// Decomposes a parabolic graph whose squares are all −2. Throws
/// std::invalid_argument otherwise.
ParabolicGraph describe_parabolic(const fano::ColoredGraph& g);

/// Sorted lists of types (at least one affine) with at most `max_vertices`
/// vertices in total, ordered by total vertex count, then lexicographically.
std::vector<std::vector<dynkin::DynkinType>> parabolic_skeletons(int max_vertices);

/// Lazily yields every admissible colored parabolic graph of the search space
/// exactly once up to isomorphism, in canonical order: skeletons as above,
/// then colorings with the first part most significant. Vertex ids are
/// "P<part>.<k>".
class ParabolicStream {
 public:
  /// Stops (capped() becomes true) once `candidate_limit` colorings have
  /// been examined.
  explicit ParabolicStream(const SearchConfig& cfg,
                           std::uint64_t candidate_limit = std::numeric_limits<std::uint64_t>::max());
  ~ParabolicStream();
  ParabolicStream(ParabolicStream&&) noexcept;
  ParabolicStream& operator=(ParabolicStream&&) noexcept;

  std::optional<ParabolicGraph> next();
  /// Colorings examined so far, including rejected ones.
  std::uint64_t candidates() const;
  bool capped() const;

 private:
  struct State;
  std::unique_ptr<State> state_;
};

struct ParabolicEnumeration {
  std::vector<fano::ColoredGraph> graphs;
  std::uint64_t nodes_explored = 0;  // colorings examined
  bool exhausted = true;
};

ParabolicEnumeration enumerate_parabolic(const SearchConfig& cfg);

/// All hyperbolic graphs base + v0 (square −2, color 0..d, multiplicities in
/// {0,1,2} subject to admissibility), one per orbit of the colored
/// automorphism group of the base. The new vertex has id "v0".
std::vector<fano::ColoredGraph> extend_hyperbolic(const fano::ColoredGraph& base, const SearchConfig& cfg);
std::vector<fano::ColoredGraph> extend_hyperbolic(const ParabolicGraph& base, const SearchConfig& cfg);

struct BoundCertificate {
  SearchConfig config;
  std::optional<BigRat> max_square;
  std::optional<fano::ColoredGraph> attaining_graph;
  std::uint64_t nodes_explored = 0;  // base graphs plus extension candidates
  std::uint64_t units_explored = 0;  // base graphs fully processed
  bool exhausted = true;

  nlohmann::json to_json() const;
};

struct Checkpoint {
  SearchConfig config;
  std::uint64_t next_unit = 0;
  std::uint64_t nodes_explored = 0;
  std::optional<BigRat> best_square;
  std::optional<fano::ColoredGraph> best_graph;

  nlohmann::json to_json() const;
  /// Throws std::invalid_argument on a malformed or foreign file.
  static Checkpoint from_json(const nlohmann::json& j);
};

/// Maximum of H² over every hyperbolic extension that has an intrinsic
/// polarization. Ties go to the graph with the lexicographically least
/// canonical JSON. The result does not depend on cfg.parallelism.
BoundCertificate effective_bound(const SearchConfig& cfg, const Checkpoint* resume = nullptr,
                                 const std::function<void(const Checkpoint&)>& on_checkpoint = {});

}  // namespace k3lat::search
