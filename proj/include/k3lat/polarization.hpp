#pragma once

// Intrinsic polarization of a colored graph: a rational combination H of the
// curves with H.C = color(C) for every vertex C. When the graph is hyperbolic
// and realized in degree 2h, 2h ≤ H².

#include <optional>

#include <json.hpp>

#include "k3lat/exact.hpp"
#include "k3lat/fano_graph.hpp"

namespace k3lat::polar {

struct Polarization {
  bool exists = false;
  /// Representative with G·x = colors; free variables are zero.
  RatVector coefficients;
  /// xᵀ·colors, well defined since the colors are orthogonal to ker G.
  BigRat square;
};

Polarization intrinsic_polarization(const fano::ColoredGraph& g);

enum class BoundStatus {
  Bounded,           // h ≤ h_max with h_max ≥ 1
  NoPositiveDegree,  // H² < 2: no degree h ≥ 1 possible
  NotGeometric,      // no intrinsic polarization at all
};

std::string to_string(BoundStatus s);

struct DegreeBound {
  BoundStatus status = BoundStatus::NotGeometric;
  std::optional<BigInt> h_max;  // set iff Bounded
  Polarization polarization;
};

/// Throws std::invalid_argument unless the graph is hyperbolic.
DegreeBound degree_bound(const fano::ColoredGraph& g);

/// {"graph_hash", "class", "hyperbolic", "polarization": {"exists", "coeffs",
/// "square"}, "status", "h_max"}. Rationals are strings ("3/2"); absent
/// values are null.
nlohmann::json finiteness_certificate(const fano::ColoredGraph& g);

}  // namespace k3lat::polar
