#pragma once

// Explicit Néron–Severi lattice models of elliptic K3 surfaces with section:
// U = <F, O> plus fibre root lattices and optional extra summands, with the
// divisor calculus, reflections and the witness constructions built on them.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3lat/exact.hpp"

namespace k3lat::ns {

/// Integer coordinates over a model basis. Arithmetic throws
/// std::overflow_error instead of wrapping.
struct DivisorClass {
  std::vector<std::int64_t> coords;

  DivisorClass() = default;
  explicit DivisorClass(std::size_t n) : coords(n, 0) {}

  std::size_t size() const { return coords.size(); }
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator*(std::int64_t k, const DivisorClass& a);

/// A reducible fibre of type I_n (n ≥ 2). components[0] is the identity
/// component Θ₀ = F − Σ_{i≥1} Θᵢ; components[1..n-1] form the chain in order.
struct Fibre {
  std::string name;
  int n = 0;
  std::vector<DivisorClass> components;
};

class NSModel {
 public:
  /// U ⊕ A_r ⊕ <−2c₀> with basis F, O, Θ1..Θr, v; the A_r chain is the
  /// single reducible fibre I_{r+1}. Requires 1 ≤ r ≤ 17 and c₀ ≥ 2.
  static NSModel elliptic_with_section(int r, std::int64_t c0);
  /// U ⊕ A_{n₁−1} ⊕ A_{n₂−1} ⊕ ... with one I_{nᵢ} fibre per entry (nᵢ ≥ 2).
  static NSModel trivial_lattice(const std::vector<int>& fibre_sizes);

  std::size_t rank() const { return names_.size(); }
  const std::vector<std::string>& basis_names() const { return names_; }
  const SymmetricForm& gram() const { return gram_; }
  const std::vector<Fibre>& fibres() const { return fibres_; }

  DivisorClass basis(std::size_t i) const;
  /// Throws std::invalid_argument for an unknown name.
  DivisorClass named(const std::string& name) const;
  DivisorClass zero() const { return DivisorClass(rank()); }
  DivisorClass fibre_class() const { return named("F"); }
  DivisorClass zero_section() const { return named("O"); }

  /// Throws std::invalid_argument on a dimension mismatch.
  std::int64_t intersect(const DivisorClass& a, const DivisorClass& b) const;
  std::int64_t square(const DivisorClass& a) const { return intersect(a, a); }

  /// x + (x·root) root; throws std::invalid_argument unless root² = −2.
  DivisorClass reflect(const DivisorClass& x, const DivisorClass& root) const;

  /// c₀ and the section P = v + O + c₀F; only for elliptic_with_section.
  std::int64_t c0() const;
  DivisorClass section() const;

  /// Asserts U, the fibre cycles (Θ₀² = −2, cyclic adjacency, F = ΣΘ) and
  /// v orthogonal to everything else; throws std::logic_error on failure.
  void self_check() const;

 private:
  std::vector<std::string> names_;
  SymmetricForm gram_;
  std::vector<Fibre> fibres_;
  std::optional<std::int64_t> c0_;
};

struct Check {
  std::string name;
  std::string value;
  bool ok = false;
};

struct CheckReport {
  bool ok = true;
  std::vector<Check> checks;

  void add(std::string name, std::string value, bool ok);
  nlohmann::json to_json() const;
};

/// Verifies the ampleness bullets for H = NF + dO + v in the given model by
/// direct intersection. Throws std::invalid_argument if d < 3 or the model
/// has no section data.
CheckReport quasi_ample_check(const NSModel& model, std::int64_t N, std::int64_t d);

struct FibreCount {
  int n = 0;
  int count = 0;
};

struct WitnessIII {
  std::int64_t d = 0, h = 0, N = 0, c0 = 0;
  int r = 0;
  int r0 = 0;
  int rd_lower = 0;
  std::vector<FibreCount> fibres;  // I_{r+1} once, I_1 (23 − r) times
  std::int64_t H2 = 0;
  CheckReport checks;

  nlohmann::json to_json() const;
};

/// Degree 2h witness with exactly r curves of degree 0: c₀ ∈ {2..d+1},
/// c₀ ≡ −h (mod d), N = (h + c₀)/d + d. Checks use closed formulas unless
/// `verify` is set, in which case every number is recomputed by intersecting
/// classes in the model. Throws std::invalid_argument if d < 3,
/// h < d² − 1, or r ∉ [1, 17].
WitnessIII witness_iii(std::int64_t d, std::int64_t h, int r, bool verify = false);

struct WitnessUnconditional {
  std::int64_t d = 0, h = 0, p = 0, N = 0, c0 = 0;
  int r = 0;
  std::vector<std::int64_t> four_squares;
  std::vector<int> r_split;
  std::vector<FibreCount> fibres;
  std::int64_t H2 = 0;
  std::int64_t D0_square = 0;
  std::size_t reflections = 0;
  std::vector<std::vector<std::int64_t>> embedding_gram;
  CheckReport checks;

  nlohmann::json to_json() const;
};

/// Thrown when the arithmetic constraints leave no valid witness.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// h = Nd + d − c₀ with c₀ ∈ {0..d−1}. Requires d ≥ 3, h ≥ 2d² + d + 1, p an
/// odd prime, 1 ≤ r ≤ 14 (p ≡ 1 mod 4) or 1 ≤ r ≤ 13 (p ≡ 3 mod 4);
/// std::invalid_argument otherwise. Throws Infeasible when no r-split exists.
/// With `verify`, the divisor D₀ is built in the two-I₈/four-I₂ fibration
/// model (one I₈ replaced by two I₄ when p ≡ 3 mod 4), straightened by
/// reflections in fibre components, and every number is re-derived there.
WitnessUnconditional witness_unconditional(std::int64_t d, std::int64_t h, std::int64_t p, int r,
                                           bool verify = false);

struct Straightening {
  DivisorClass result;
  std::vector<DivisorClass> roots;  // reflections applied, in order
};

/// Reflects in the lowest-index fibre component Θ with Θ·D < 0 until none is
/// left. Each step strictly lowers D·A for the rational class
/// A = O + Σ_f w_f / n_f, where w_f is the combination of non-identity
/// components of the I_{n_f} fibre f meeting each of them with +1, so that A
/// meets every fibre component positively; a non-decrease throws
/// std::logic_error. Requires D·F > 0.
Straightening straighten(const NSModel& model, const DivisorClass& divisor);

struct OverlatticeA17 {
  std::int64_t c0 = 0;
  BigInt det_before;
  BigInt det_after;
  BigRat glue_square;
  bool glue_integral = false;     // w·Θᵢ ∈ ℤ for every root
  bool triple_in_lattice = false; // 3w ∈ A17
  DiscriminantGroup a17_prime_group;
  DiscriminantGroup full_group;
  SymmetricForm a17_prime_gram;

  nlohmann::json to_json() const;
};

/// U ⊕ A17′ ⊕ <−2c₀>, where A17′ ⊃ A17 is the index 3 overlattice generated by
/// the fundamental weight w dual to the sixth root. Requires c₀ ≥ 2.
OverlatticeA17 overlattice_a17(std::int64_t c0);

}  // namespace k3lat::ns
