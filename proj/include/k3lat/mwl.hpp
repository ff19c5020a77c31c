#pragma once

// Height pairing on the Mordell–Weil group of an elliptic surface with
// section, evaluated from intersection data:
//   <P, Q> = χ + (P.O) + (Q.O) − (P.Q) − Σ_v contr_v(P, Q),
//   h(P)   = 2χ + 2(P.O) − Σ_v contr_v(P).
// χ = 2 for K3 surfaces.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3lat/exact.hpp"

namespace k3lat::mwl {

enum class Kodaira { I, Istar, II, III, IV, IVstar, IIIstar, IIstar };

/// I_n (n ≥ 1) and I_n* (n ≥ 0) use `n`; the other types ignore it. Simple
/// components are numbered from 0 (the identity component):
///   I_n    0..n−1, cyclically
///   I_n*   0, 1 (near), 2, 3 (far)
///   III, III*  0, 1;  IV, IV*  0, 1, 2;  II, II*  0
struct Fibre {
  Kodaira type = Kodaira::I;
  int n = 1;

  std::string name() const;
  int simple_components() const;
  int euler_number() const;
};

/// Accepts "I12", "I0*", "III", "IV*", ... Throws std::invalid_argument.
Fibre parse_fibre(const std::string& name);

/// Correction term for a section through component i. Throws
/// std::invalid_argument for an invalid component.
BigRat contribution(const Fibre& f, int i);
/// Correction term for sections through components i and j (symmetric).
BigRat pair_contribution(const Fibre& f, int i, int j);

struct Section {
  std::int64_t po = 0;          // (P.O)
  std::vector<int> components;  // one per fibre of the configuration
};

struct Configuration {
  std::vector<Fibre> fibres;
  int euler_number() const;
};

/// Throws std::invalid_argument on mismatched sizes, bad components or
/// (P.O) < 0.
BigRat height(const Configuration& cfg, const Section& P, int chi = 2);
/// pq = (P.Q); pq = −χ is accepted so that P = Q recovers the height.
BigRat pairing(const Configuration& cfg, const Section& P, const Section& Q, std::int64_t pq, int chi = 2);

struct Height8Report {
  BigRat height_two;          // P with (P.O) = 1 through I12 comp 6 and both I2 comp 1
  BigRat torsion_height;      // Q with (Q.O) = 0, same components
  BigRat pairing_at_pq_zero;  // <P, Q> with (P.Q) = 0; equals −1 − (P.Q) in general
  bool contradiction = false; // <P, Q> ≤ −1 < 0 although Q is torsion
  BigRat height_eight;        // same components with (P.O) = 4
  BigRat identity_height;     // (P.O) = 4 through identity components only
  std::int64_t identity_po_for_height8 = 0;  // x with 4 + 2x = 8
  bool ok = false;

  nlohmann::json to_json() const;
};

/// Re-derives the height computations on I12 + 2 I3 + 2 I2 + 2 I1.
Height8Report verify_height8_claim();

/// {"fibres": [{"type": "I", "n": 12, "P": 6, "Q": 6}, ...], "PO": 1,
///  "QO": 0, "PQ": 0}; "Q", "QO", "PQ" are optional.
struct ParsedConfiguration {
  Configuration cfg;
  Section P;
  std::optional<Section> Q;
  std::optional<std::int64_t> pq;
};
ParsedConfiguration parse_configuration(const nlohmann::json& j);

}  // namespace k3lat::mwl
