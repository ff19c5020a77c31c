#pragma once

// Elementary number theory used by the witness constructions: quadratic
// residues, prime selection, sums of squares, binary quadratic forms.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace k3lat::arith {

/// Legendre symbol (a/p) by Euler's criterion. Throws std::invalid_argument
/// unless p is an odd prime.
int legendre(std::int64_t a, std::int64_t p);

/// Smallest prime not dividing 2d. Throws std::invalid_argument if d < 1.
std::int64_t p0(std::int64_t d);

struct Shift {
  std::int64_t j = 0;
  std::int64_t value = 0;  // c₀ + j·d
  friend bool operator==(const Shift&, const Shift&) = default;
};

bool is_square(std::int64_t n);

/// Least j ≥ 0 with c₀ + jd not a perfect square. Throws std::logic_error if
/// j exceeds (p0(d) + 1)/2, which cannot happen.
Shift nonsquare_shift(std::int64_t c0, std::int64_t d);

/// Least j ≥ 0 with c₀ + jd a non-residue mod p. Throws std::invalid_argument
/// if p is not an odd prime or p | d.
Shift nonsquare_shift_mod_p(std::int64_t c0, std::int64_t d, std::int64_t p);

/// Lexicographically greatest (a₁ ≥ a₂ ≥ a₃ ≥ a₄ ≥ 0) with Σaᵢ² = n.
std::array<std::int64_t, 4> four_squares(std::int64_t n);

/// Lexicographically greatest (r₁, r₂, r₃) with Σrᵢ = r, 0 ≤ rᵢ ≤ caps[i],
/// p ∤ rᵢ + 1, and r₂ + r₃ < 7 when every rᵢ > 0.
std::optional<std::array<int, 3>> r_split(int r, std::int64_t p, std::array<int, 3> caps = {7, 7, 7});

/// p² > 16c₀.
bool gz_gate(std::int64_t p, std::int64_t c0);

struct BinaryForm {
  std::int64_t a = 0, b = 0, c = 0;
  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  friend auto operator<=>(const BinaryForm&, const BinaryForm&) = default;
};

/// Reduced positive definite forms of discriminant D, sorted. Throws
/// std::invalid_argument unless D < 0 and D ≡ 0, 1 (mod 4).
std::vector<BinaryForm> reduced_forms(std::int64_t D, bool primitive_only = false);

/// Number of primitive reduced forms (the form class number h(D)).
std::int64_t class_number(std::int64_t D);

}  // namespace k3lat::arith
