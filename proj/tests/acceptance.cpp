// Acceptance suite: one line per criterion, exit status 0 iff all pass.
// Every comparison is exact.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "k3lat/arith.hpp"
#include "k3lat/dynkin.hpp"
#include "k3lat/exact.hpp"
#include "k3lat/fano_graph.hpp"
#include "k3lat/mwl.hpp"
#include "k3lat/ns_model.hpp"
#include "k3lat/polarization.hpp"
#include "oracles.hpp"

using namespace k3lat;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what;
    ok = ok && cond;
  }
};

using Seconds = std::chrono::duration<double>;

int failures = 0;

void criterion(int number, const char* title, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.note << "exception: " << e.what();
  }
  const double elapsed = Seconds(std::chrono::steady_clock::now() - start).count();
  if (elapsed > budget_seconds) {
    out.ok = false;
    out.note << " runtime " << elapsed << " s over budget " << budget_seconds << " s";
  }
  failures += !out.ok;
  std::cout << "criterion " << number << ": " << (out.ok ? "PASS" : "FAIL") << "  " << title << "  ("
            << static_cast<long>(elapsed * 1000) << " ms)";
  if (!out.note.str().empty()) std::cout << "  " << out.note.str();
  std::cout << std::endl;
}

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(K3LAT_CLI) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start " + cmd);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

SymmetricForm gram_of(const char* name) { return dynkin::gram_of(dynkin::parse_type(name)); }

}  // namespace

int main() {
  criterion(1, "signature matches the characteristic-polynomial oracle", 60, [](Outcome& o) {
    auto compare = [&](const oracle::Matrix& m) {
      const auto s = signature(SymmetricForm::from_rows(m));
      const auto ref = oracle::inertia(m);
      o.expect(s.n_plus == ref.plus && s.n_minus == ref.minus && s.n_zero == ref.zero, "signature mismatch");
    };
    // Exhaustive for n <= 3.
    for (std::size_t n = 1; n <= 3; ++n) {
      const std::size_t slots = n * (n + 1) / 2;
      std::vector<int> v(slots, -2);
      while (true) {
        oracle::Matrix m(n, std::vector<std::int64_t>(n));
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = v[k++];
        compare(m);
        std::size_t p = 0;
        while (p < slots && v[p] == 2) v[p++] = -2;
        if (p == slots) break;
        ++v[p];
      }
    }
    // 10^5 random samples for n = 4, 5.
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (int trial = 0; trial < 100000; ++trial) {
      const std::size_t n = 4 + static_cast<std::size_t>(trial % 2);
      oracle::Matrix m(n, std::vector<std::int64_t>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = entry(rng);
      compare(m);
    }
  });

  criterion(2, "Dynkin catalog: definite ADE up to rank 21, affine kernels equal marks up to 24 vertices", 5,
            [](Outcome& o) {
              for (int rank = 1; rank <= 21; ++rank)
                for (const auto& t : dynkin::finite_types_of_rank(rank))
                  o.expect(signature(dynkin::gram_of(t)) == Signature{0, static_cast<std::size_t>(rank), 0},
                           t.name() + " not negative definite");
              for (const auto& t : dynkin::enumerate_extended(24)) {
                const auto g = dynkin::gram_of(t);
                o.expect(signature(g) == Signature{0, g.dim() - 1, 1}, t.name() + " not parabolic");
                const auto marks = dynkin::mark_vector(t);
                o.expect(kernel_basis(g) == std::vector<IntVector>{IntVector(marks.begin(), marks.end())},
                         t.name() + " kernel differs from marks");
              }
            });

  criterion(3, "intrinsic polarization of the 3-vertex hyperbolic graph: square 4, h <= 2", 5, [](Outcome& o) {
    const fano::ColoredGraph g(1, {{"C1", 1, -2}, {"C2", 1, -2}, {"C3", 1, -2}},
                               {{"C1", "C2", 2}, {"C1", "C3", 1}, {"C2", "C3", 1}});
    o.expect(fano::gram(g) == SymmetricForm{{-2, 2, 1}, {2, -2, 1}, {1, 1, -2}}, "Gram");
    o.expect(fano::classify(g) == fano::GraphClass::Hyperbolic, "class");
    const auto pol = polar::intrinsic_polarization(g);
    const auto x = oracle::cramer({{-2, 2, 1}, {2, -2, 1}, {1, 1, -2}}, {1, 1, 1});
    o.expect(pol.exists, "no polarization");
    for (std::size_t i = 0; i < 3 && pol.exists; ++i) o.expect(pol.coefficients[i] == x[i], "coefficients");
    o.expect(pol.square == x[0] + x[1] + x[2] && pol.square == 4, "square");
    const auto bound = polar::degree_bound(g);
    o.expect(bound.status == polar::BoundStatus::Bounded && bound.h_max && *bound.h_max == 2, "h_max");
  });

  criterion(4, "witness (iii) sweep d = 3, h in [8, 200], r in 1..17 via intersections", 10, [](Outcome& o) {
    for (std::int64_t h = 8; h <= 200; ++h)
      for (int r = 1; r <= 17; ++r) {
        const auto w = ns::witness_iii(3, h, r, true);
        const std::string at = "h=" + std::to_string(h) + " r=" + std::to_string(r);
        o.expect(w.H2 == 2 * h, at + " H^2");
        o.expect(w.checks.ok, at + " checks");
        int fibres = 0;
        for (const auto& f : w.fibres) fibres += f.n * f.count;
        o.expect(fibres == 24 && (r + 1) + (23 - r) == 24, at + " Euler number");
        o.expect(w.r0 == r, at + " r0");
        o.expect(w.rd_lower == 24 - r, at + " r_d");
      }
    bool rejected = false;
    try {
      ns::witness_iii(3, 7, 5, true);
    } catch (const std::invalid_argument&) {
      rejected = true;
    }
    o.expect(rejected, "h = 7 accepted");
  });

  criterion(5, "height-2 hypothesis forces pairing <= -1; identity sections have height 2c0", 5, [](Outcome& o) {
    using mwl::Kodaira;
    const mwl::Configuration cfg{{{Kodaira::I, 12}, {Kodaira::I, 3}, {Kodaira::I, 3}, {Kodaira::I, 2},
                                  {Kodaira::I, 2}, {Kodaira::I, 1}, {Kodaira::I, 1}}};
    const std::vector<int> opposite{6, 0, 0, 1, 1, 0, 0};
    const mwl::Section P{1, opposite}, Q{0, opposite};
    o.expect(mwl::height(cfg, P) == 2, "height of P");
    o.expect(mwl::height(cfg, Q) == 0, "height of Q");
    for (std::int64_t pq = 0; pq <= 20; ++pq) {
      const BigRat value = mwl::pairing(cfg, P, Q, pq);
      o.expect(value == BigRat(2 + 1 - pq) - 3 - BigRat(1, 2) - BigRat(1, 2), "pairing formula");
      o.expect(value <= -1, "pairing above -1");
    }
    o.expect(mwl::verify_height8_claim().ok, "claim report");
    for (std::int64_t c0 = 2; c0 <= 50; ++c0)
      o.expect(mwl::height(cfg, {c0 - 2, std::vector<int>(7, 0)}) == 2 * c0, "identity height");
  });

  criterion(6, "unconditional witness d = 3, p = 5, r = 14, h = 22", 5, [](Outcome& o) {
    for (bool verify : {false, true}) {
      const auto w = ns::witness_unconditional(3, 22, 5, 14, verify);
      o.expect(w.N == 7 && w.c0 == 2, "N, c0");
      o.expect(w.four_squares == std::vector<std::int64_t>{1, 1, 0, 0}, "four squares");
      o.expect(w.r_split == std::vector<int>{7, 7, 0}, "split");
      o.expect(w.H2 == 44 && w.H2 == 2 * w.h, "H0^2 = 2h");
      o.expect(w.H2 >= 4 * 9 + 2 && 4 * 9 + 2 == 38, "H0^2 >= 38");
      o.expect(w.checks.ok, "checks");
    }
  });

  criterion(7, "discriminant groups [2, 2c0], p-length 1, A17 overlattice index 3", 10, [](Outcome& o) {
    const SymmetricForm u{{0, 1}, {1, 0}};
    const SymmetricForm base = direct_sum(direct_sum(direct_sum(u, gram_of("E8")), gram_of("E8")), gram_of("A1"));
    for (std::int64_t c0 = 2; c0 <= 20; ++c0) {
      const auto lattice = direct_sum(base, SymmetricForm{{-2 * c0}});
      const auto group = smith_form(lattice);
      o.expect(group.invariant_factors == std::vector<BigInt>{2, 2 * c0}, "factors at c0=" + std::to_string(c0));
      for (std::int64_t p = 3; p <= c0; p += 2)
        if (is_prime(p) && c0 % p == 0) o.expect(p_length(group, p) == 1, "p-length at c0=" + std::to_string(c0));
      const auto a17 = ns::overlattice_a17(c0);
      o.expect(a17.det_before == 9 * a17.det_after, "determinant ratio at c0=" + std::to_string(c0));
      o.expect(a17.triple_in_lattice && a17.glue_integral, "glue");
    }
    o.expect(ns::overlattice_a17(2).det_before == -72 && ns::overlattice_a17(2).det_after == -8, "c0 = 2 values");
  });

  criterion(8, "arithmetic gates: Legendre, shift bound, four squares, h(-8) = 1", 30, [](Outcome& o) {
    for (std::int64_t p = 3; p < 100; ++p) {
      if (!is_prime(p)) continue;
      for (std::int64_t a = 0; a < p; ++a) o.expect(arith::legendre(a, p) == oracle::legendre_by_table(a, p), "legendre");
    }
    for (std::int64_t d = 1; d <= 20; ++d)
      for (std::int64_t c0 = 2; c0 <= 200; ++c0) {
        const auto s = arith::nonsquare_shift(c0, d);
        o.expect(s.j <= (arith::p0(d) + 1) / 2, "shift bound");
        o.expect(!arith::is_square(s.value) && s.value == c0 + s.j * d, "shift value");
      }
    for (std::int64_t n = 0; n <= 10000; ++n) {
      const auto s = arith::four_squares(n);
      o.expect(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3] == n, "four squares");
    }
    o.expect(arith::class_number(-8) == 1, "class number");
  });

  criterion(9, "bound --d 1 --max-vertices k, k = 2..4: byte-identical, max_square nondecreasing", 300,
            [](Outcome& o) {
              BigRat previous;
              bool first = true;
              for (int k = 2; k <= 4; ++k) {
                const std::string args = "bound --d 1 --max-vertices " + std::to_string(k);
                int c1 = -1, c2 = -1, c3 = -1;
                const std::string a = run_cli(args, c1);
                const std::string b = run_cli(args, c2);
                const std::string c = run_cli(args + " --parallelism 4", c3);
                o.expect(c1 == 0 && c2 == 0 && c3 == 0, "exit status at k=" + std::to_string(k));
                o.expect(a == b && a == c, "output differs at k=" + std::to_string(k));
                const auto doc = nlohmann::json::parse(a);
                o.expect(doc["exhausted"] == true, "not exhausted");
                const BigRat square = parse_rational(doc["max_square"].get<std::string>());
                o.expect(first || square >= previous, "max_square decreased at k=" + std::to_string(k));
                previous = square;
                first = false;
              }
            });

  criterion(10, "reflections: isometry, involution, identity on the orthogonal complement (10^4 triples)", 30,
            [](Outcome& o) {
              std::mt19937_64 rng(77);
              std::uniform_int_distribution<int> coeff(-9, 9);
              std::vector<ns::NSModel> models;
              for (int r = 1; r <= 17; ++r) models.push_back(ns::NSModel::elliptic_with_section(r, 2 + r % 6));
              models.push_back(ns::NSModel::trivial_lattice({8, 8, 2, 2, 2, 2}));
              models.push_back(ns::NSModel::trivial_lattice({8, 4, 4, 2, 2, 2, 2}));
              models.push_back(ns::NSModel::trivial_lattice({12, 3, 3, 2, 2}));
              std::uniform_int_distribution<std::size_t> pick_model(0, models.size() - 1);
              for (int trial = 0; trial < 10000; ++trial) {
                const auto& m = models[pick_model(rng)];
                std::vector<ns::DivisorClass> roots;
                for (const auto& f : m.fibres())
                  for (const auto& c : f.components) roots.push_back(c);
                const auto& root = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
                ns::DivisorClass x = m.zero();
                for (std::size_t i = 0; i < m.rank(); ++i) x = x + coeff(rng) * m.basis(i);
                const auto rx = m.reflect(x, root);
                for (std::size_t i = 0; i < m.rank(); ++i) {
                  const auto b = m.basis(i);
                  o.expect(m.intersect(rx, m.reflect(b, root)) == m.intersect(x, b), "isometry");
                }
                o.expect(m.square(rx) == m.square(x), "square");
                o.expect(m.reflect(rx, root) == x, "involution");
                const auto perp = 2 * x + m.intersect(x, root) * root;
                o.expect(m.intersect(perp, root) == 0 && m.reflect(perp, root) == perp, "orthogonal complement");
              }
            });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
