#include <doctest.h>

#include <random>

#include "k3lat/arith.hpp"
#include "k3lat/ns_model.hpp"

using namespace k3lat;
using namespace k3lat::ns;

namespace {

DivisorClass ample_class(const NSModel& m, std::int64_t N, std::int64_t d) {
  return N * m.fibre_class() + d * m.zero_section() + m.named("v");
}

// Exhaustive reference for the split: every (r1, r2, r3) in the caps box.
std::optional<std::array<int, 3>> split_by_exhaustion(int r, std::int64_t p, std::array<int, 3> caps) {
  std::optional<std::array<int, 3>> best;
  for (int a = 0; a <= caps[0]; ++a)
    for (int b = 0; b <= caps[1]; ++b)
      for (int c = 0; c <= caps[2]; ++c) {
        if (a + b + c != r) continue;
        if ((a + 1) % p == 0 || (b + 1) % p == 0 || (c + 1) % p == 0) continue;
        if (a > 0 && b > 0 && c > 0 && b + c >= 7) continue;
        const std::array<int, 3> t{a, b, c};
        if (!best || t > *best) best = t;
      }
  return best;
}

}  // namespace

TEST_SUITE("ns-model") {
  TEST_CASE("intersection examples") {
    const auto m = NSModel::elliptic_with_section(1, 2);
    const auto H = ample_class(m, 10, 3);
    CHECK(m.intersect(H, m.zero_section()) == 10 - 2 * 3);
    CHECK(m.intersect(H, m.section()) == 6);
    CHECK(m.square(H) == 38);
    CHECK(m.square(m.section()) == -2);
    CHECK(m.intersect(m.section(), m.fibre_class()) == 1);
  }

  TEST_CASE("reflection examples") {
    const auto m = NSModel::elliptic_with_section(3, 2);
    const auto t1 = m.named("T1");
    CHECK(m.reflect(t1, t1) == (-1) * t1);
    CHECK(m.reflect(m.fibre_class(), t1) == m.fibre_class());
    CHECK(m.reflect(m.zero_section(), t1) == m.zero_section());
    CHECK_THROWS_AS(m.reflect(t1, m.fibre_class()), std::invalid_argument);
  }

  TEST_CASE("model construction") {
    CHECK_THROWS_AS(NSModel::elliptic_with_section(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(NSModel::elliptic_with_section(18, 2), std::invalid_argument);
    CHECK_THROWS_AS(NSModel::elliptic_with_section(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(NSModel::trivial_lattice({1}), std::invalid_argument);
    CHECK_THROWS_AS(NSModel::elliptic_with_section(3, 2).named("X"), std::invalid_argument);
    CHECK_THROWS_AS(NSModel::trivial_lattice({2}).c0(), std::invalid_argument);
    const auto t = NSModel::trivial_lattice({8, 8, 2, 2, 2, 2});
    CHECK(t.rank() == 2 + 7 + 7 + 4);
    CHECK(t.basis_names()[2] == "T1.1");
    t.self_check();
  }

  TEST_CASE("property: every model passes its self-check") {
    for (int r = 1; r <= 17; ++r)
      for (std::int64_t c0 : {2, 3, 7}) NSModel::elliptic_with_section(r, c0).self_check();
    for (const auto& sizes : std::vector<std::vector<int>>{{2}, {3, 3}, {8, 4, 4, 2, 2, 2, 2}, {12, 3, 3, 2, 2}})
      NSModel::trivial_lattice(sizes).self_check();
  }

  TEST_CASE("property: section and v round-trip") {
    for (std::int64_t c0 = 2; c0 <= 20; ++c0) {
      const auto m = NSModel::elliptic_with_section(4, c0);
      CHECK(m.section() - m.zero_section() - c0 * m.fibre_class() == m.named("v"));
    }
  }

  TEST_CASE("property: H^2 = 2d(N - d) - 2c0") {
    for (std::int64_t c0 = 2; c0 <= 12; ++c0) {
      const auto m = NSModel::elliptic_with_section(5, c0);
      for (std::int64_t d = 1; d <= 8; ++d)
        for (std::int64_t N = -5; N <= 40; ++N) CHECK(m.square(ample_class(m, N, d)) == 2 * d * (N - d) - 2 * c0);
    }
  }

  TEST_CASE("ampleness checks") {
    CHECK(quasi_ample_check(NSModel::elliptic_with_section(1, 2), 10, 3).ok);
    CHECK_FALSE(quasi_ample_check(NSModel::elliptic_with_section(1, 2), 6, 3).ok);
    CHECK_FALSE(quasi_ample_check(NSModel::elliptic_with_section(1, 10), 10, 3).ok);
    CHECK_THROWS_AS(quasi_ample_check(NSModel::elliptic_with_section(1, 2), 10, 2), std::invalid_argument);
  }

  TEST_CASE("property: ampleness checks pass exactly beyond the gate") {
    for (std::int64_t d = 3; d <= 6; ++d)
      for (std::int64_t c0 = 2; c0 <= 8; ++c0) {
        const auto m = NSModel::elliptic_with_section(2, c0);
        for (std::int64_t N = 0; N <= 20; ++N) {
          const bool gate = N > std::max(2 * d, c0 + 1);
          const auto rep = quasi_ample_check(m, N, d);
          if (gate) CHECK(rep.ok);
          if (N <= 2 * d || N <= c0) CHECK_FALSE(rep.ok);
        }
      }
  }

  TEST_CASE("witness (iii) examples") {
    const auto w = witness_iii(3, 8, 5, true);
    CHECK(w.c0 == 4);
    CHECK(w.N == 7);
    CHECK(w.H2 == 16);
    CHECK(w.r0 == 5);
    CHECK(w.rd_lower == 19);
    REQUIRE(w.fibres.size() == 2);
    CHECK(w.fibres[0].n == 6);
    CHECK(w.fibres[0].count == 1);
    CHECK(w.fibres[1].n == 1);
    CHECK(w.fibres[1].count == 18);
    CHECK(w.checks.ok);
    CHECK_THROWS_AS(witness_iii(3, 7, 5), std::invalid_argument);
    CHECK_THROWS_AS(witness_iii(2, 8, 5), std::invalid_argument);
    CHECK_THROWS_AS(witness_iii(3, 8, 18), std::invalid_argument);

    const auto big = witness_iii(4, 100, 17, true);
    CHECK(big.c0 == 4);
    CHECK(big.N == 30);
    CHECK(big.fibres[0].n == 18);
    CHECK(big.fibres[1].count == 6);
    CHECK(big.checks.ok);
  }

  TEST_CASE("property: both witness (iii) paths agree") {
    for (std::int64_t d = 3; d <= 6; ++d)
      for (std::int64_t h = d * d - 1; h <= d * d + 40; ++h)
        for (int r : {1, 9, 17}) {
          const auto a = witness_iii(d, h, r, false), b = witness_iii(d, h, r, true);
          CHECK(a.checks.ok);
          CHECK(b.checks.ok);
          CHECK(a.N == b.N);
          CHECK(a.c0 == b.c0);
          CHECK(a.H2 == b.H2);
          CHECK(a.r0 == b.r0);
          CHECK(a.rd_lower == b.rd_lower);
        }
  }

  TEST_CASE("unconditional witness example") {
    const auto w = witness_unconditional(3, 22, 5, 14, true);
    CHECK(w.N == 7);
    CHECK(w.c0 == 2);
    CHECK(w.four_squares == std::vector<std::int64_t>{1, 1, 0, 0});
    CHECK(w.r_split == std::vector<int>{7, 7, 0});
    CHECK(w.H2 == 44);
    CHECK(w.H2 >= 38);
    CHECK(w.checks.ok);
    CHECK_THROWS_AS(witness_unconditional(3, 21, 5, 14), std::invalid_argument);
    CHECK_THROWS_AS(witness_unconditional(3, 22, 9, 14), std::invalid_argument);
    CHECK_THROWS_AS(witness_unconditional(3, 22, 3, 14), std::invalid_argument);
    CHECK_THROWS_AS(witness_unconditional(3, 22, 5, 15), std::invalid_argument);
  }

  TEST_CASE("property: unconditional witnesses verify whenever a split exists") {
    for (std::int64_t p : {3, 5, 7, 11, 13}) {
      const bool split_case = p % 4 == 1;
      const std::array<int, 3> caps = split_case ? std::array<int, 3>{7, 7, 7} : std::array<int, 3>{7, 3, 3};
      for (int r = 1; r <= (split_case ? 14 : 13); ++r) {
        const auto expected = split_by_exhaustion(r, p, caps);
        for (std::int64_t d = 3; d <= 5; ++d)
          for (std::int64_t h = 2 * d * d + d + 1; h <= 2 * d * d + 3 * d + 1; ++h) {
            if (!expected) {
              CHECK_THROWS_AS(witness_unconditional(d, h, p, r, true), Infeasible);
              continue;
            }
            const auto a = witness_unconditional(d, h, p, r, false);
            const auto b = witness_unconditional(d, h, p, r, true);
            CHECK(std::vector<int>(expected->begin(), expected->end()) == a.r_split);
            CHECK(a.checks.ok);
            CHECK(b.checks.ok);
            CHECK(a.H2 == 2 * h);
            CHECK(b.H2 == 2 * h);
            CHECK(a.D0_square == b.D0_square);
            CHECK(a.c0 >= 0);
            CHECK(a.c0 < d);
          }
      }
    }
  }

  TEST_CASE("straightening") {
    const auto m = NSModel::trivial_lattice({8, 8, 2, 2, 2, 2});
    const auto F = m.fibre_class();
    auto D = 3 * (F + m.zero_section()) + m.fibres()[2].components[1] + m.fibres()[3].components[1];
    const auto st = straighten(m, D + F);
    for (const auto& fibre : m.fibres())
      for (const auto& comp : fibre.components) CHECK(m.intersect(comp, st.result) >= 0);
    CHECK(m.intersect(st.result, F) == m.intersect(D + F, F));
    CHECK(m.square(st.result) == m.square(D + F));
    DivisorClass replay = D + F;
    for (const auto& root : st.roots) {
      CHECK(m.intersect(replay, root) < 0);
      replay = m.reflect(replay, root);
    }
    CHECK(replay == st.result);
    CHECK_THROWS_AS(straighten(m, (-1) * F - m.zero_section()), std::invalid_argument);
  }

  TEST_CASE("property: straightening random divisors") {
    std::mt19937_64 rng(30);
    const auto m = NSModel::trivial_lattice({8, 4, 4, 2, 2, 2, 2});
    std::uniform_int_distribution<int> coeff(-6, 6);
    std::uniform_int_distribution<int> fcoeff(1, 5);
    for (int trial = 0; trial < 300; ++trial) {
      DivisorClass D = m.zero();
      for (std::size_t i = 0; i < m.rank(); ++i) D = D + coeff(rng) * m.basis(i);
      D = D + (fcoeff(rng) - m.intersect(D, m.fibre_class())) * m.zero_section();
      const auto st = straighten(m, D);
      for (const auto& fibre : m.fibres())
        for (const auto& comp : fibre.components) CHECK(m.intersect(comp, st.result) >= 0);
      CHECK(m.square(st.result) == m.square(D));
    }
  }

  TEST_CASE("property: reflections are involutive isometries fixing the orthogonal complement") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> coeff(-5, 5);
    for (int trial = 0; trial < 400; ++trial) {
      const auto m = trial % 2 ? NSModel::elliptic_with_section(1 + trial % 17, 2 + trial % 5)
                               : NSModel::trivial_lattice({2 + trial % 7, 2 + trial % 3});
      std::vector<DivisorClass> roots;
      for (const auto& f : m.fibres())
        for (const auto& c : f.components) roots.push_back(c);
      const auto& root = roots[static_cast<std::size_t>(trial) % roots.size()];
      DivisorClass x = m.zero(), y = m.zero();
      for (std::size_t i = 0; i < m.rank(); ++i) {
        x = x + coeff(rng) * m.basis(i);
        y = y + coeff(rng) * m.basis(i);
      }
      const auto rx = m.reflect(x, root), ry = m.reflect(y, root);
      CHECK(m.intersect(rx, ry) == m.intersect(x, y));
      CHECK(m.reflect(rx, root) == x);
      if (m.intersect(x, root) == 0) CHECK(rx == x);
    }
  }

  TEST_CASE("coordinate overflow is detected") {
    DivisorClass big(1);
    big.coords[0] = INT64_MAX;
    CHECK_THROWS_AS(big + big, std::overflow_error);
    CHECK_THROWS_AS(3 * big, std::overflow_error);
  }

  TEST_CASE("A17 overlattice") {
    const auto o = overlattice_a17(2);
    CHECK(o.det_before == -72);
    CHECK(o.det_after == -8);
    CHECK(o.a17_prime_group.order() == 2);
    CHECK(o.glue_integral);
    CHECK(o.triple_in_lattice);
    CHECK(o.glue_square == -4);
    for (std::int64_t c0 = 2; c0 <= 20; ++c0) {
      const auto x = overlattice_a17(c0);
      CHECK(x.det_before == 9 * x.det_after);
      CHECK(signature(x.a17_prime_gram) == Signature{0, 17, 0});
    }
    CHECK_THROWS_AS(overlattice_a17(1), std::invalid_argument);
  }
}
