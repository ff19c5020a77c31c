#include "k3lat/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "k3lat/exact.hpp"

namespace k3lat::arith {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t powmod(std::int64_t base, std::int64_t e, std::int64_t m) {
  __int128 result = 1, b = mod(base, m);
  while (e > 0) {
    if (e & 1) result = result * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("isqrt of a negative number");
  std::int64_t x = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (x > 0 && x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

void require_odd_prime(std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
}

}  // namespace

int legendre(std::int64_t a, std::int64_t p) {
  require_odd_prime(p);
  const std::int64_t r = mod(a, p);
  if (r == 0) return 0;
  return powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::int64_t p0(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("p0: d must be positive");
  for (std::int64_t q = 2;; ++q)
    if (is_prime(q) && (2 * d) % q != 0) return q;
}

bool is_square(std::int64_t n) { return n >= 0 && isqrt(n) * isqrt(n) == n; }

Shift nonsquare_shift(std::int64_t c0, std::int64_t d) {
  if (c0 < 2 || d < 1) throw std::invalid_argument("nonsquare_shift: need c0 >= 2 and d >= 1");
  const std::int64_t bound = (p0(d) + 1) / 2;
  for (std::int64_t j = 0; j <= bound; ++j)
    if (!is_square(c0 + j * d)) return {j, c0 + j * d};
  throw std::logic_error("nonsquare_shift: no non-square within (p0+1)/2 steps");
}

Shift nonsquare_shift_mod_p(std::int64_t c0, std::int64_t d, std::int64_t p) {
  require_odd_prime(p);
  if (d % p == 0) throw std::invalid_argument("nonsquare_shift_mod_p: p divides d, the shifts miss residues");
  for (std::int64_t j = 0; j <= (p + 1) / 2; ++j)
    if (legendre(c0 + j * d, p) == -1) return {j, c0 + j * d};
  throw std::logic_error("nonsquare_shift_mod_p: no non-residue within (p+1)/2 steps");
}

std::array<std::int64_t, 4> four_squares(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("four_squares: n must be nonnegative");
  for (std::int64_t a = isqrt(n); a >= 0; --a)
    for (std::int64_t b = std::min(a, isqrt(n - a * a)); b >= 0; --b) {
      const std::int64_t rest = n - a * a - b * b;
      for (std::int64_t c = std::min(b, isqrt(rest)); c >= 0; --c) {
        const std::int64_t last = rest - c * c;
        if (is_square(last) && isqrt(last) <= c) return {a, b, c, isqrt(last)};
      }
    }
  throw std::logic_error("four_squares: no representation found");
}

std::optional<std::array<int, 3>> r_split(int r, std::int64_t p, std::array<int, 3> caps) {
  if (r < 0) throw std::invalid_argument("r_split: r must be nonnegative");
  if (!is_prime(p)) throw std::invalid_argument("r_split: " + std::to_string(p) + " is not prime");
  auto allowed = [&](int x, int cap) { return x <= cap && (x + 1) % p != 0; };
  for (int a = std::min(r, caps[0]); a >= 0; --a) {
    if (!allowed(a, caps[0])) continue;
    for (int b = std::min(r - a, caps[1]); b >= 0; --b) {
      const int c = r - a - b;
      if (!allowed(b, caps[1]) || c > caps[2] || !allowed(c, caps[2])) continue;
      if (a > 0 && b > 0 && c > 0 && b + c >= 7) continue;
      return std::array<int, 3>{a, b, c};
    }
  }
  return std::nullopt;
}

bool gz_gate(std::int64_t p, std::int64_t c0) {
  return static_cast<__int128>(p) * p > static_cast<__int128>(16) * c0;
}

std::vector<BinaryForm> reduced_forms(std::int64_t D, bool primitive_only) {
  if (D >= 0 || mod(D, 4) > 1) throw std::invalid_argument("invalid discriminant " + std::to_string(D));
  std::vector<BinaryForm> out;
  const std::int64_t n = -D;
  // |b| ≤ a ≤ c forces 3a² ≤ |D|.
  for (std::int64_t a = 1; 3 * a * a <= n; ++a)
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (mod(b * b + n, 4 * a) != 0) continue;
      const std::int64_t c = (b * b + n) / (4 * a);
      if (c < a || (c == a && b < 0)) continue;
      if (primitive_only && std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      out.push_back({a, b, c});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t class_number(std::int64_t D) { return static_cast<std::int64_t>(reduced_forms(D, true).size()); }

}  // namespace k3lat::arith
