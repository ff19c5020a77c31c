#include "k3lat/exact.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace k3lat {

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const BigRat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

BigRat parse_rational(const std::string& text) {
  BigRat q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

BigInt floor_div(const BigRat& q) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// ---------------------------------------------------------------------------
// IntMatrix

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

// ---------------------------------------------------------------------------
// SymmetricForm

SymmetricForm::SymmetricForm(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::vector<std::vector<std::int64_t>> r;
  for (const auto& row : rows) r.emplace_back(row);
  *this = from_rows(r);
}

SymmetricForm SymmetricForm::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  SymmetricForm f(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("Gram matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) f.entries_[i * f.n_ + j] = rows[i][j];
  }
  for (std::size_t i = 0; i < f.n_; ++i)
    for (std::size_t j = i + 1; j < f.n_; ++j)
      if (f(i, j) != f(j, i)) throw std::invalid_argument("Gram matrix is not symmetric");
  return f;
}

void SymmetricForm::set(std::size_t i, std::size_t j, std::int64_t value) {
  entries_[i * n_ + j] = value;
  entries_[j * n_ + i] = value;
}

SymmetricForm SymmetricForm::restrict_to(std::span<const std::size_t> indices) const {
  SymmetricForm r(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b)
      r.entries_[a * r.n_ + b] = (*this)(indices[a], indices[b]);
  return r;
}

IntMatrix SymmetricForm::to_matrix() const {
  IntMatrix m(n_, n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) m(i, j) = static_cast<long>((*this)(i, j));
  return m;
}

std::vector<std::vector<std::int64_t>> SymmetricForm::rows() const {
  std::vector<std::vector<std::int64_t>> r(n_, std::vector<std::int64_t>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
  return r;
}

IntVector SymmetricForm::apply(const IntVector& x) const {
  if (x.size() != n_) throw std::invalid_argument("vector length does not match form dimension");
  IntVector y(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (auto g = (*this)(i, j); g != 0) y[i] += BigInt(static_cast<long>(g)) * x[j];
  return y;
}

RatVector SymmetricForm::apply(const RatVector& x) const {
  if (x.size() != n_) throw std::invalid_argument("vector length does not match form dimension");
  RatVector y(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (auto g = (*this)(i, j); g != 0) y[i] += BigRat(static_cast<long>(g)) * x[j];
  return y;
}

BigInt SymmetricForm::pair(const IntVector& x, const IntVector& y) const {
  const IntVector gy = apply(y);
  BigInt s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += x[i] * gy[i];
  return s;
}

BigRat SymmetricForm::pair(const RatVector& x, const RatVector& y) const {
  const RatVector gy = apply(y);
  BigRat s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += x[i] * gy[i];
  return s;
}

SymmetricForm direct_sum(const SymmetricForm& a, const SymmetricForm& b) {
  SymmetricForm s(a.dim() + b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j) s.set(i, j, a(i, j));
  const std::size_t o = a.dim();
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = i; j < b.dim(); ++j) s.set(o + i, o + j, b(i, j));
  return s;
}

SymmetricForm change_basis(const SymmetricForm& form, const IntMatrix& p) {
  if (p.rows() != form.dim()) throw std::invalid_argument("change_basis: dimension mismatch");
  const IntMatrix g = transpose(p) * form.to_matrix() * p;
  SymmetricForm r(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i; j < g.cols(); ++j) {
      if (!g(i, j).fits_slong_p()) throw std::overflow_error("change_basis: entry exceeds 64 bits");
      r.set(i, j, g(i, j).get_si());
    }
  return r;
}

std::string to_string(const Signature& s) {
  return "(" + std::to_string(s.n_plus) + "," + std::to_string(s.n_minus) + "," +
         std::to_string(s.n_zero) + ")";
}

BigInt DiscriminantGroup::order() const {
  BigInt o = 1;
  for (const auto& f : invariant_factors) o *= f;
  return o;
}

// ---------------------------------------------------------------------------
// Signature

Signature signature(const SymmetricForm& form) {
  const std::size_t n = form.dim();
  std::vector<std::vector<BigRat>> a(n, std::vector<BigRat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(form(i, j));

  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  Signature sig;
  while (!active.empty()) {
    auto diag = std::find_if(active.begin(), active.end(), [&](std::size_t k) { return a[k][k] != 0; });
    if (diag != active.end()) {
      const std::size_t k = *diag;
      const BigRat pivot = a[k][k];
      (pivot > 0 ? sig.n_plus : sig.n_minus) += 1;
      active.erase(diag);
      for (std::size_t i : active) {
        if (a[i][k] == 0) continue;
        const BigRat f = a[i][k] / pivot;
        for (std::size_t j : active) a[i][j] -= f * a[k][j];
      }
      continue;
    }

    // All remaining diagonal entries vanish: look for a hyperbolic plane.
    std::size_t k = n, l = n;
    for (std::size_t x = 0; x < active.size() && k == n; ++x)
      for (std::size_t y = x + 1; y < active.size(); ++y)
        if (a[active[x]][active[y]] != 0) {
          k = active[x];
          l = active[y];
          break;
        }
    if (k == n) {
      sig.n_zero += active.size();
      break;
    }
    const BigRat b = a[k][l];
    sig.n_plus += 1;
    sig.n_minus += 1;
    std::erase(active, k);
    std::erase(active, l);
    // Schur complement of [[0,b],[b,0]]; its inverse is [[0,1/b],[1/b,0]].
    std::vector<std::vector<BigRat>> next = a;
    for (std::size_t i : active)
      for (std::size_t j : active)
        next[i][j] = a[i][j] - (a[i][k] * a[l][j] + a[i][l] * a[k][j]) / b;
    a = std::move(next);
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Integer row reduction helpers

namespace {

// Unimodular row operation on rows (i, j) mixing columns [from, cols):
//   row_i <- s*row_i + t*row_j ; row_j <- u*row_i + v*row_j
void combine_rows(IntMatrix& m, std::size_t i, std::size_t j, const BigInt& s, const BigInt& t,
                  const BigInt& u, const BigInt& v) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    BigInt ri = s * m(i, c) + t * m(j, c);
    BigInt rj = u * m(i, c) + v * m(j, c);
    m(i, c) = std::move(ri);
    m(j, c) = std::move(rj);
  }
}

// Brings columns [0, pivot_cols) of m into row echelon form using unimodular
// row operations on whole rows. Returns the number of pivot rows.
std::size_t integer_echelon(IntMatrix& m, std::size_t pivot_cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < m.rows(); ++c) {
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c) == 0) continue;
      if (m(r, c) == 0) {
        m.swap_rows(r, i);
        continue;
      }
      BigInt g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m(r, c).get_mpz_t(), m(i, c).get_mpz_t());
      const BigInt u = -m(i, c) / g;
      const BigInt v = m(r, c) / g;
      combine_rows(m, r, i, s, t, u, v);
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0)
      for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = -m(r, k);
    for (std::size_t i = 0; i < r; ++i) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      if (q != 0)
        for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) -= q * m(r, k);
    }
    ++r;
  }
  return r;
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix m) {
  const std::size_t rank = integer_echelon(m, m.cols());
  IntMatrix h(rank, m.cols());
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = m(i, j);
  return h;
}

std::vector<IntVector> kernel_basis(const SymmetricForm& form) {
  const std::size_t n = form.dim();
  // [G | I]: reducing the left block by unimodular row operations records the
  // transformation on the right; rows whose left block vanishes span ker_ℤ G.
  IntMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = static_cast<long>(form(i, j));
    aug(i, n + i) = 1;
  }
  const std::size_t rank = integer_echelon(aug, n);
  if (rank == n) return {};

  IntMatrix k(n - rank, n);
  for (std::size_t i = rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i - rank, j) = aug(i, n + j);
  const IntMatrix h = hermite_normal_form(k);

  std::vector<IntVector> basis;
  for (std::size_t i = 0; i < h.rows(); ++i) basis.push_back(h.row(i));
  return basis;
}

BigInt determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  IntMatrix a = input;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

BigInt determinant(const SymmetricForm& form) { return determinant(form.to_matrix()); }

std::vector<BigInt> smith_diagonal(IntMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < abs(m(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) {
        std::vector<BigInt> d;
        for (std::size_t k = 0; k < steps; ++k) d.push_back(k < t ? BigInt(abs(m(k, k))) : BigInt(0));
        return d;
      }
      m.swap_rows(t, pi);
      m.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m(i, t) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m(t, j) == 0) continue;
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(m(i, j).get_mpz_t(), m(t, t).get_mpz_t())) {
            for (std::size_t k = t; k < cols; ++k) m(t, k) += m(i, k);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  std::vector<BigInt> d;
  for (std::size_t k = 0; k < steps; ++k) d.push_back(abs(m(k, k)));
  return d;
}

DiscriminantGroup smith_form(const SymmetricForm& form) {
  if (form.dim() > 0 && determinant(form) == 0)
    throw std::domain_error("smith_form: degenerate form has no finite discriminant group");
  DiscriminantGroup g;
  for (auto& f : smith_diagonal(form.to_matrix()))
    if (f > 1) g.invariant_factors.push_back(f);
  std::sort(g.invariant_factors.begin(), g.invariant_factors.end());
  return g;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t k = 3; k <= n / k; k += 2)
    if (n % k == 0) return false;
  return true;
}

std::size_t p_length(const DiscriminantGroup& group, const BigInt& p) {
  if (!p.fits_slong_p() || !is_prime(p.get_si()))
    throw std::invalid_argument("p_length: " + p.get_str() + " is not prime");
  return static_cast<std::size_t>(std::count_if(
      group.invariant_factors.begin(), group.invariant_factors.end(),
      [&](const BigInt& f) { return mpz_divisible_p(f.get_mpz_t(), p.get_mpz_t()) != 0; }));
}

LinearSolution solve_rational(const SymmetricForm& a, const RatVector& rhs) {
  const std::size_t n = a.dim();
  if (rhs.size() != n) throw std::invalid_argument("solve_rational: right-hand side has wrong length");
  std::vector<std::vector<BigRat>> m(n, std::vector<BigRat>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(a(i, j));
    m[i][n] = rhs[i];
  }

  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < n; ++c) {
    std::size_t p = r;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(m[p], m[r]);
    const BigRat inv = 1 / m[r][c];
    for (std::size_t j = c; j <= n; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const BigRat f = m[i][c];
      for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }

  LinearSolution sol;
  for (std::size_t i = r; i < n; ++i)
    if (m[i][n] != 0) return sol;
  sol.consistent = true;
  sol.x.assign(n, 0);
  for (std::size_t i = 0; i < r; ++i) sol.x[pivot_col[i]] = m[i][n];
  return sol;
}

}  // namespace k3lat
