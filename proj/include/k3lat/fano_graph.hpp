#pragma once

// Colored intersection graphs of rational curves (extended Fano graphs): each
// vertex is a curve with its degree ("color") and self-intersection, each edge
// an intersection number.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/dynkin.hpp"
#include "k3lat/exact.hpp"

namespace k3lat::fano {

struct Vertex {
  std::string id;
  int color = 0;    // d_C = C.H, in {0, ..., d}
  int square = -2;  // C², in {-2, 0}

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
  std::string a;
  std::string b;
  int m = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable once built. The constructor validates every invariant and throws
/// std::invalid_argument with a descriptive message otherwise.
class ColoredGraph {
 public:
  ColoredGraph() = default;
  ColoredGraph(int d, std::vector<Vertex> vertices, std::vector<Edge> edges);

  int degree_cap() const { return d_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const Vertex& vertex(std::size_t i) const { return vertices_[i]; }
  /// Edge records as given (endpoint order normalized so that a's index < b's).
  const std::vector<Edge>& edges() const { return edges_; }

  int multiplicity(std::size_t i, std::size_t j) const { return mult_[i * size() + j]; }
  std::optional<std::size_t> index_of(const std::string& id) const;
  std::vector<int> colors() const;
  bool all_squares_minus_two() const;

  ColoredGraph induced(const std::vector<std::size_t>& indices) const;
  /// Adds one vertex joined to vertex i with multiplicity multiplicities[i].
  ColoredGraph with_vertex(const Vertex& v, const std::vector<int>& multiplicities) const;

  friend bool operator==(const ColoredGraph& a, const ColoredGraph& b) {
    return a.d_ == b.d_ && a.vertices_ == b.vertices_ && a.mult_ == b.mult_;
  }

 private:
  int d_ = 1;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<int> mult_;
};

enum class GraphClass { Elliptic, Parabolic, Hyperbolic, Overpositive };

std::string to_string(GraphClass c);

struct Violation {
  std::string a;
  std::string b;
  int m = 0;
  std::string rule;
  BigRat bound;
};

struct AdmissibilityReport {
  bool ok = true;
  std::vector<Violation> violations;
};

struct AdmissibilityOptions {
  /// Also require multiplicities in {0, 1, 2} when every square is −2 and the
  /// graph is not overpositive (the large-degree hyperbolic regime).
  bool hyperbolic_regime = false;
};

/// Necessary lattice conditions on every pair of vertices, in degree 2h:
///   m ≤ (d_C + 1)(d_C' + 1);
///   m ≤ d_C d_C' / h when both squares are ≥ 0;
///   m ≤ 1 for two degree-0 (−2)-curves.
/// Throws std::invalid_argument if h < 1.
AdmissibilityReport admissible(const ColoredGraph& g, std::int64_t h, AdmissibilityOptions options = {});

SymmetricForm gram(const ColoredGraph& g);

GraphClass classify(const ColoredGraph& g);
GraphClass classify(const Signature& s);

struct EllipticDecomposition {
  std::vector<dynkin::DynkinType> parts;          // sorted
  std::vector<std::vector<std::size_t>> components;  // vertex indices of parts[i]
  std::size_t rank = 0;
  /// rank > 21: impossible for an elliptic subgraph of a K3 Fano graph.
  bool exceeds_rank_bound = false;
};

/// Throws std::invalid_argument unless the graph is elliptic and every square
/// is −2; throws std::logic_error if a component is not recognized as ADE.
EllipticDecomposition decompose_elliptic(const ColoredGraph& g);

struct ExtendedSubdiagram {
  std::vector<std::size_t> vertices;  // sorted
  dynkin::DynkinType type;
};

/// An induced extended Dynkin subdiagram, or nullopt iff every component of
/// the graph is an ADE diagram. Search order: doubled edges, then shortest
/// induced cycles, then tree patterns (~D_n, ~E_6, ~E_7, ~E_8); ties go to the
/// smallest vertex set, then the lexicographically smallest one.
/// Requires all squares −2 and all multiplicities ≤ 2 (std::invalid_argument).
std::optional<ExtendedSubdiagram> find_extended(const ColoredGraph& g);

/// Inclusion-maximal vertex subsets whose induced form is parabolic, each
/// sorted, listed in lexicographic order. Requires a hyperbolic graph.
std::vector<std::vector<std::size_t>> max_parabolic_subgraphs(const ColoredGraph& g);

/// Negative semidefinite test for the induced form on `indices`.
bool is_semidefinite_subset(const ColoredGraph& g, const std::vector<std::size_t>& indices);

}  // namespace k3lat::fano
