#pragma once

// Catalog of simply-laced Dynkin diagrams (A, D, E) and their extended
// (affine) versions, with Gram matrices in the (−2)-curve convention.

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "k3lat/exact.hpp"

namespace k3lat::dynkin {

enum class Family { A, D, E, AffineA, AffineD, AffineE };

/// A diagram type. `rank` is the usual index n: A_n has n vertices, the affine
/// ~X_n has n + 1.
struct DynkinType {
  Family family = Family::A;
  int rank = 1;

  bool is_affine() const;
  int vertex_count() const;
  /// "A3", "D5", "E8", "~A1", "~D4", ...
  std::string name() const;

  friend auto operator<=>(const DynkinType&, const DynkinType&) = default;
};

/// Validating constructor; throws std::invalid_argument for an impossible rank.
DynkinType make_type(Family family, int rank);
/// Parses the output of DynkinType::name().
DynkinType parse_type(const std::string& name);

/// Gram matrix with −2 on the diagonal and edge multiplicities off it. Vertex
/// ordering per family:
///   A_n   path 0 - 1 - ... - (n-1)
///   D_n   path 0 - ... - (n-2), vertex n-1 attached to n-3
///   E_n   path 0 - ... - (n-2), vertex n-1 attached to 2
///   ~A_n  cycle 0 - 1 - ... - n - 0 (doubled edge for n = 1)
///   ~D_n  leaves 0,1 on vertex 4, leaves 2,3 on vertex n, path 4 - ... - n
///   ~E_n  E_n plus the extending vertex n
SymmetricForm gram_of(const DynkinType& type);

/// Edges (i < j, multiplicity) of the diagram in the ordering above.
struct DiagramEdge {
  int a;
  int b;
  int multiplicity;
};
std::vector<DiagramEdge> edges_of(const DynkinType& type);

/// Minimal positive integral kernel vector of an affine diagram (the fibre
/// class). Throws std::invalid_argument for finite types.
std::vector<int> mark_vector(const DynkinType& type);

/// Exact type of a connected graph with all squares −2, if it is an ADE or an
/// extended ADE diagram. Throws std::invalid_argument when the input is
/// disconnected or has a diagonal entry other than −2.
std::optional<DynkinType> recognize(const SymmetricForm& gram);

/// All multisets (as sorted lists) of ADE types with total rank in
/// [1, max_rank], ordered by total rank and then lexicographically.
std::vector<std::vector<DynkinType>> enumerate_ade(int max_rank);

/// All affine types with at most `max_vertices` vertices, in canonical order.
std::vector<DynkinType> enumerate_extended(int max_vertices);

/// Finite types of a given rank / affine types with a given vertex count, in
/// canonical order.
std::vector<DynkinType> finite_types_of_rank(int rank);
std::vector<DynkinType> affine_types_with_vertices(int vertices);

/// The full automorphism group of the diagram as vertex permutations
/// (perm[v] is the image of v). The identity comes first.
std::vector<std::vector<int>> automorphisms(const DynkinType& type);

}  // namespace k3lat::dynkin
