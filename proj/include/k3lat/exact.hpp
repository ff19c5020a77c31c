#pragma once

// Exact integer/rational arithmetic and services on integral symmetric
// bilinear forms. Nothing in here touches floating point.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace k3lat {

using BigInt = mpz_class;
using BigRat = mpq_class;
using IntVector = std::vector<BigInt>;
using RatVector = std::vector<BigRat>;

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const BigRat& q);
std::string to_string(const BigInt& z);
/// Inverse of to_string; throws std::invalid_argument on malformed input.
BigRat parse_rational(const std::string& text);

BigInt floor_div(const BigRat& q);

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix transpose(const IntMatrix& a);

/// Integral symmetric bilinear form given by its Gram matrix.
class SymmetricForm {
 public:
  SymmetricForm() = default;
  explicit SymmetricForm(std::size_t n) : n_(n), entries_(n * n, 0) {}
  SymmetricForm(std::initializer_list<std::initializer_list<std::int64_t>> rows);
  /// Throws std::invalid_argument unless square and symmetric.
  static SymmetricForm from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t dim() const { return n_; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
  /// Sets both (i,j) and (j,i).
  void set(std::size_t i, std::size_t j, std::int64_t value);

  SymmetricForm restrict_to(std::span<const std::size_t> indices) const;
  IntMatrix to_matrix() const;
  std::vector<std::vector<std::int64_t>> rows() const;

  BigInt pair(const IntVector& x, const IntVector& y) const;
  BigRat pair(const RatVector& x, const RatVector& y) const;
  IntVector apply(const IntVector& x) const;
  RatVector apply(const RatVector& x) const;

  friend bool operator==(const SymmetricForm&, const SymmetricForm&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> entries_;
};

SymmetricForm direct_sum(const SymmetricForm& a, const SymmetricForm& b);
/// Gram matrix of the basis change: Pᵀ G P, P given column-wise as an n×n integer matrix.
SymmetricForm change_basis(const SymmetricForm& form, const IntMatrix& p);

struct Signature {
  std::size_t n_plus = 0;
  std::size_t n_minus = 0;
  std::size_t n_zero = 0;

  std::size_t dim() const { return n_plus + n_minus + n_zero; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

std::string to_string(const Signature& s);

/// Invariant factors (each ≥ 2, each dividing the next) of L^∨/L.
struct DiscriminantGroup {
  std::vector<BigInt> invariant_factors;

  BigInt order() const;
  friend bool operator==(const DiscriminantGroup&, const DiscriminantGroup&) = default;
};

/// Inertia of the form via symmetric elimination over ℚ. Diagonal pivots are
/// used when available; otherwise a hyperbolic 2×2 block [[0,b],[b,0]] is
/// split off.
Signature signature(const SymmetricForm& form);

/// Saturated ℤ-basis of the radical {x : Gx = 0}, in row Hermite normal form
/// (so the result is canonical). Empty iff det ≠ 0.
std::vector<IntVector> kernel_basis(const SymmetricForm& form);

/// Fraction-free Bareiss elimination.
BigInt determinant(const SymmetricForm& form);
BigInt determinant(const IntMatrix& m);

/// Invariant factors of coker(G : ℤⁿ → ℤⁿ). Throws std::domain_error when the
/// form is degenerate.
DiscriminantGroup smith_form(const SymmetricForm& form);

/// Diagonal of the Smith normal form of an arbitrary integer matrix
/// (nonnegative, zeros last).
std::vector<BigInt> smith_diagonal(IntMatrix m);

/// Row-style Hermite normal form; zero rows are dropped. Pivots are positive
/// and entries above a pivot are reduced into [0, pivot).
IntMatrix hermite_normal_form(IntMatrix m);

/// Number of invariant factors divisible by p. Throws std::invalid_argument if
/// p is not prime.
std::size_t p_length(const DiscriminantGroup& group, const BigInt& p);

bool is_prime(std::int64_t n);

/// Exact solution of A·x = b over ℚ. Free variables are set to zero under the
/// natural pivot order, so the representative is deterministic.
struct LinearSolution {
  bool consistent = false;
  RatVector x;
};
LinearSolution solve_rational(const SymmetricForm& a, const RatVector& rhs);

}  // namespace k3lat
