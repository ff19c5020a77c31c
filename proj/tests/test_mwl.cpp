#include <doctest.h>

#include <numeric>

#include "k3lat/mwl.hpp"

using namespace k3lat;
using namespace k3lat::mwl;

namespace {

Configuration claim_configuration() {
  return {{{Kodaira::I, 12}, {Kodaira::I, 3}, {Kodaira::I, 3}, {Kodaira::I, 2}, {Kodaira::I, 2}, {Kodaira::I, 1},
           {Kodaira::I, 1}}};
}

const std::vector<int> kOpposite{6, 0, 0, 1, 1, 0, 0};

}  // namespace

TEST_SUITE("mwl") {
  TEST_CASE("contribution examples") {
    CHECK(contribution({Kodaira::I, 12}, 6) == 3);
    CHECK(contribution({Kodaira::I, 2}, 1) == BigRat(1, 2));
    CHECK(contribution({Kodaira::I, 7}, 0) == 0);
    CHECK(pair_contribution({Kodaira::I, 5}, 1, 3) == BigRat(2, 5));
    CHECK(pair_contribution({Kodaira::I, 5}, 3, 1) == BigRat(2, 5));
    CHECK_THROWS_AS(contribution({Kodaira::I, 3}, 3), std::invalid_argument);
    CHECK_THROWS_AS(contribution({Kodaira::I, 3}, -1), std::invalid_argument);
  }

  TEST_CASE("additive fibre tables") {
    CHECK(contribution({Kodaira::Istar, 0}, 1) == 1);
    CHECK(contribution({Kodaira::Istar, 4}, 2) == 2);
    CHECK(pair_contribution({Kodaira::Istar, 4}, 1, 2) == BigRat(1, 2));
    CHECK(pair_contribution({Kodaira::Istar, 4}, 2, 3) == BigRat(3, 2));
    CHECK(contribution({Kodaira::III, 0}, 1) == BigRat(1, 2));
    CHECK(contribution({Kodaira::IIIstar, 0}, 1) == BigRat(3, 2));
    CHECK(contribution({Kodaira::IV, 0}, 2) == BigRat(2, 3));
    CHECK(pair_contribution({Kodaira::IVstar, 0}, 1, 2) == BigRat(2, 3));
    CHECK_THROWS_AS(contribution({Kodaira::II, 0}, 1), std::invalid_argument);
  }

  TEST_CASE("fibre names") {
    for (const char* name : {"I1", "I12", "I0*", "I3*", "II", "III", "IV", "IV*", "III*", "II*"})
      CHECK(parse_fibre(name).name() == name);
    CHECK(parse_fibre("I0*").euler_number() == 6);
    CHECK(parse_fibre("II*").euler_number() == 10);
    for (const char* bad : {"I0", "I", "V", "Ix", "I-1"}) CHECK_THROWS_AS(parse_fibre(bad), std::invalid_argument);
  }

  TEST_CASE("height examples") {
    const auto cfg = claim_configuration();
    CHECK(cfg.euler_number() == 24);
    CHECK(height(cfg, {1, kOpposite}) == 2);
    CHECK(height(cfg, {0, kOpposite}) == 0);
    for (std::int64_t c0 = 2; c0 <= 50; ++c0)
      CHECK(height(cfg, {c0 - 2, std::vector<int>(7, 0)}) == 2 * c0);
    CHECK_THROWS_AS(height(cfg, {1, {0}}), std::invalid_argument);
    CHECK_THROWS_AS(height(cfg, {-1, kOpposite}), std::invalid_argument);
  }

  TEST_CASE("pairing examples") {
    const auto cfg = claim_configuration();
    for (std::int64_t pq = 0; pq <= 5; ++pq)
      CHECK(pairing(cfg, {1, kOpposite}, {0, kOpposite}, pq) == BigRat(-1 - pq));
    CHECK(pairing(cfg, {0, std::vector<int>(7, 0)}, {0, std::vector<int>(7, 0)}, 0) == 2);
    CHECK_THROWS_AS(pairing(cfg, {0, kOpposite}, {0, kOpposite}, -3), std::invalid_argument);
  }

  TEST_CASE("claim report") {
    const auto rep = verify_height8_claim();
    CHECK(rep.ok);
    CHECK(rep.height_two == 2);
    CHECK(rep.torsion_height == 0);
    CHECK(rep.pairing_at_pq_zero == -1);
    CHECK(rep.contradiction);
    CHECK(rep.height_eight == 8);
    CHECK(rep.identity_height == 12);
    CHECK(rep.identity_po_for_height8 == 2);
  }

  TEST_CASE("property: pairing with itself at P.Q = -chi is the height") {
    const std::vector<Configuration> configs{
        claim_configuration(),
        {{{Kodaira::I, 8}, {Kodaira::I, 8}, {Kodaira::I, 2}, {Kodaira::I, 2}, {Kodaira::I, 2}, {Kodaira::I, 2}}},
        {{{Kodaira::Istar, 2}, {Kodaira::IV, 0}, {Kodaira::III, 0}, {Kodaira::I, 5}}}};
    for (const auto& cfg : configs) {
      std::vector<int> comps(cfg.fibres.size(), 0);
      while (true) {
        for (std::int64_t po = 0; po <= 3; ++po) {
          const Section P{po, comps};
          CHECK(pairing(cfg, P, P, -2) == height(cfg, P));
        }
        std::size_t k = 0;
        while (k < comps.size() && comps[k] == cfg.fibres[k].simple_components() - 1) comps[k++] = 0;
        if (k == comps.size()) break;
        ++comps[k];
      }
    }
  }

  TEST_CASE("property: component symmetry and denominators") {
    for (int n = 1; n <= 24; ++n)
      for (int i = 0; i < n; ++i) {
        const Fibre f{Kodaira::I, n};
        CHECK(contribution(f, i) == contribution(f, (n - i) % n));
        CHECK(n % contribution(f, i).get_den() == 0);
        for (int j = 0; j < n; ++j) CHECK(n % pair_contribution(f, i, j).get_den() == 0);
      }
  }

  TEST_CASE("property: heights are nonnegative when the total correction is at most 4") {
    // Every I_n combination with Euler number ≤ 24 whose largest possible
    // correction sum is ≤ 4, all incidences, (P.O) ≥ 0.
    std::vector<std::vector<int>> shapes{{2, 2, 2, 2, 2, 2, 2, 2}, {4, 4, 4, 4}, {3, 3, 3, 3, 3, 3}, {6, 2, 2, 2}, {5, 5, 2}};
    for (const auto& shape : shapes) {
      Configuration cfg;
      for (int n : shape) cfg.fibres.push_back({Kodaira::I, n});
      BigRat max_total = 0;
      for (const auto& f : cfg.fibres) {
        BigRat m = 0;
        for (int i = 0; i < f.n; ++i) m = std::max(m, contribution(f, i));
        max_total += m;
      }
      REQUIRE(max_total <= 4);
      std::vector<int> comps(cfg.fibres.size(), 0);
      while (true) {
        for (std::int64_t po = 0; po <= 2; ++po) CHECK(height(cfg, {po, comps}) >= 0);
        std::size_t k = 0;
        while (k < comps.size() && comps[k] == cfg.fibres[k].n - 1) comps[k++] = 0;
        if (k == comps.size()) break;
        ++comps[k];
      }
    }
  }

  TEST_CASE("configuration parsing") {
    const auto j = nlohmann::json::parse(R"({"fibres": [{"type": "I", "n": 12, "P": 6, "Q": 6},
                                                        {"type": "I", "n": 3, "count": 2},
                                                        {"type": "I", "n": 2, "P": 1, "Q": 1, "count": 2},
                                                        {"type": "I", "n": 1, "count": 2}],
                                             "PO": 1, "QO": 0, "PQ": 0})");
    const auto pc = parse_configuration(j);
    CHECK(pc.cfg.fibres.size() == 7);
    CHECK(pc.P.components == kOpposite);
    REQUIRE(pc.Q);
    CHECK(height(pc.cfg, *pc.Q) == 0);
    REQUIRE(pc.pq);
    CHECK(pairing(pc.cfg, pc.P, *pc.Q, *pc.pq) == -1);
    CHECK_THROWS_AS(parse_configuration(nlohmann::json::parse(R"({"fibres": [], "PO": "x"})")), std::invalid_argument);
    CHECK_THROWS_AS(parse_configuration(nlohmann::json::parse(R"({"fibres": [{"type": "I", "n": 2, "P": 2}], "PO": 0})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_configuration(nlohmann::json::parse(R"({"fibres": [{"type": "V"}], "PO": 0})")),
                    std::invalid_argument);
  }
}
