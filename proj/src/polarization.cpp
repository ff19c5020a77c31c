#include "k3lat/polarization.hpp"

#include <stdexcept>

#include "k3lat/graph_io.hpp"

namespace k3lat::polar {

Polarization intrinsic_polarization(const fano::ColoredGraph& g) {
  const SymmetricForm form = fano::gram(g);
  RatVector colors;
  for (const auto& v : g.vertices()) colors.emplace_back(v.color);
  LinearSolution sol = solve_rational(form, colors);
  Polarization out;
  if (!sol.consistent) return out;
  out.exists = true;
  out.coefficients = std::move(sol.x);
  for (std::size_t i = 0; i < colors.size(); ++i) out.square += out.coefficients[i] * colors[i];
  return out;
}

std::string to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Bounded: return "bounded";
    case BoundStatus::NoPositiveDegree: return "no-positive-degree";
    case BoundStatus::NotGeometric: return "not-geometric";
  }
  return "?";
}

DegreeBound degree_bound(const fano::ColoredGraph& g) {
  if (fano::classify(g) != fano::GraphClass::Hyperbolic)
    throw std::invalid_argument("degree_bound: graph is " + fano::to_string(fano::classify(g)) + ", not Hyperbolic");
  DegreeBound out;
  out.polarization = intrinsic_polarization(g);
  if (!out.polarization.exists) return out;
  BigInt h = floor_div(out.polarization.square / 2);
  if (h >= 1) {
    out.status = BoundStatus::Bounded;
    out.h_max = h;
  } else {
    out.status = BoundStatus::NoPositiveDegree;
  }
  return out;
}

nlohmann::json finiteness_certificate(const fano::ColoredGraph& g) {
  using nlohmann::json;
  const fano::GraphClass cls = fano::classify(g);
  const Polarization pol = intrinsic_polarization(g);
  json cert;
  cert["graph_hash"] = io::graph_hash(g);
  cert["class"] = fano::to_string(cls);
  cert["hyperbolic"] = cls == fano::GraphClass::Hyperbolic;
  cert["polarization"] = {{"exists", pol.exists},
                          {"coeffs", pol.exists ? io::to_json(pol.coefficients) : json(nullptr)},
                          {"square", pol.exists ? io::to_json(pol.square) : json(nullptr)}};
  cert["status"] = nullptr;
  cert["h_max"] = nullptr;
  if (cls == fano::GraphClass::Hyperbolic) {
    const DegreeBound b = degree_bound(g);
    cert["status"] = to_string(b.status);
    if (b.h_max) cert["h_max"] = b.h_max->fits_slong_p() ? json(b.h_max->get_si()) : json(b.h_max->get_str());
  }
  return cert;
}

}  // namespace k3lat::polar
