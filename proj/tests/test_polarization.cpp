#include <doctest.h>

#include <random>

#include "graph_builders.hpp"
#include "k3lat/polarization.hpp"
#include "oracles.hpp"

using namespace k3lat;
using namespace k3lat::polar;
using build::e;

TEST_SUITE("polarization") {
  TEST_CASE("single vertex") {
    const auto pol = intrinsic_polarization(build::graph(2, {2}, {}));
    REQUIRE(pol.exists);
    CHECK(pol.coefficients == RatVector{-1});
    CHECK(pol.square == -2);
  }

  TEST_CASE("worked case against an independent solve") {
    const auto g = build::worked_case();
    const auto pol = intrinsic_polarization(g);
    REQUIRE(pol.exists);
    const auto x = oracle::cramer(build::gram_rows(g), {1, 1, 1});
    REQUIRE(x.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(pol.coefficients[i] == x[i]);
    CHECK(pol.coefficients == RatVector{BigRat(3, 2), BigRat(3, 2), 1});
    CHECK(pol.square == 4);
    const auto bound = degree_bound(g);
    CHECK(bound.status == BoundStatus::Bounded);
    REQUIRE(bound.h_max);
    CHECK(*bound.h_max == 2);
  }

  TEST_CASE("inconsistent colors have no polarization") {
    CHECK_FALSE(intrinsic_polarization(build::graph(2, {1, 2}, {e(0, 1, 2)})).exists);
  }

  TEST_CASE("degree bound statuses") {
    // Two curves meeting in 3 points, colors (0, 0): H = 0, square 0.
    const auto zero = degree_bound(build::graph(1, {0, 0}, {e(0, 1, 3)}));
    CHECK(zero.status == BoundStatus::NoPositiveDegree);
    CHECK_FALSE(zero.h_max);
    // ~A1 colored (0, 1) next to a hyperbolic pair: the kernel (1, 1, 0, 0)
    // pairs to 1 with the colors.
    const auto ng = degree_bound(build::graph(1, {0, 1, 0, 0}, {e(0, 1, 2), e(2, 3, 3)}));
    CHECK(ng.status == BoundStatus::NotGeometric);
    CHECK_THROWS_AS(degree_bound(build::path(2)), std::invalid_argument);
  }

  TEST_CASE("non-integral squares round down") {
    // colors (1, 0): x solves [[-2,3],[3,-2]] x = (1, 0), x = (2/5, 3/5), square 2/5.
    const auto g = build::graph(1, {1, 0}, {e(0, 1, 3)});
    const auto b = degree_bound(g);
    CHECK(b.polarization.square == BigRat(2, 5));
    CHECK(b.status == BoundStatus::NoPositiveDegree);
  }

  TEST_CASE("finiteness certificates") {
    const auto cert = finiteness_certificate(build::worked_case());
    CHECK(cert["hyperbolic"] == true);
    CHECK(cert["h_max"] == 2);
    CHECK(cert["status"] == "bounded");
    CHECK(cert["polarization"]["coeffs"] == nlohmann::json::array({"3/2", "3/2", "1"}));
    const auto a1 = finiteness_certificate(build::graph(1, {0}, {}));
    CHECK(a1["hyperbolic"] == false);
    CHECK(a1["h_max"].is_null());
    CHECK(finiteness_certificate(build::cycle(3))["hyperbolic"] == false);
  }

  TEST_CASE("property: G x = colors and the square ignores kernel shifts") {
    std::mt19937_64 rng(20);
    std::uniform_int_distribution<int> mult(0, 2), color(0, 3);
    int with_kernel = 0;
    for (int trial = 0; trial < 8000; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
      std::vector<fano::Edge> es;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (int m = mult(rng)) es.push_back(e(i, j, m));
      std::vector<int> colors(n);
      for (auto& c : colors) c = color(rng);
      const auto g = build::graph(3, colors, es);
      const auto pol = intrinsic_polarization(g);
      if (!pol.exists) continue;
      const SymmetricForm G = fano::gram(g);
      const RatVector gx = G.apply(pol.coefficients);
      for (std::size_t i = 0; i < n; ++i) CHECK(gx[i] == colors[i]);
      for (const auto& k : kernel_basis(G)) {
        ++with_kernel;
        RatVector shifted = pol.coefficients;
        for (std::size_t i = 0; i < n; ++i) shifted[i] += BigRat(k[i]) * 3;
        CHECK(G.pair(shifted, shifted) == pol.square);
      }
    }
    CHECK(with_kernel > 20);
  }

  TEST_CASE("property: a disjoint color-0 curve leaves the square unchanged; doubling colors scales by 4") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> mult(0, 2), color(0, 2);
    int tested = 0;
    for (int trial = 0; trial < 1500; ++trial) {
      const std::size_t n = 2 + static_cast<std::size_t>(trial % 5);
      std::vector<fano::Edge> es;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (int m = mult(rng)) es.push_back(e(i, j, m));
      std::vector<int> colors(n);
      for (auto& c : colors) c = color(rng);
      const auto g = build::graph(4, colors, es);
      if (fano::classify(g) != fano::GraphClass::Hyperbolic) continue;
      const auto pol = intrinsic_polarization(g);
      if (!pol.exists) continue;
      ++tested;
      auto plus = colors;
      plus.push_back(0);
      CHECK(intrinsic_polarization(build::graph(4, plus, es)).square == pol.square);
      auto doubled = colors;
      for (auto& c : doubled) c *= 2;
      CHECK(intrinsic_polarization(build::graph(4, doubled, es)).square == 4 * pol.square);
    }
    CHECK(tested > 100);
  }
}
