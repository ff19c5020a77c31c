#include "k3lat/ns_model.hpp"

#include <algorithm>
#include <numeric>

#include "k3lat/arith.hpp"
#include "k3lat/dynkin.hpp"

namespace k3lat::ns {

using nlohmann::json;

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("divisor coordinate overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("divisor coordinate overflow");
  return out;
}

void same_size(const DivisorClass& a, const DivisorClass& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("divisor classes of different dimensions (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
}

std::string str(std::int64_t x) { return std::to_string(x); }

}  // namespace

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
  same_size(a, b);
  DivisorClass out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] = checked_add(a.coords[i], b.coords[i]);
  return out;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-1) * b; }

DivisorClass operator*(std::int64_t k, const DivisorClass& a) {
  DivisorClass out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] = checked_mul(k, a.coords[i]);
  return out;
}

NSModel NSModel::elliptic_with_section(int r, std::int64_t c0) {
  if (r < 1 || r > 17) throw std::invalid_argument("r must lie in [1, 17]");
  if (c0 < 2) throw std::invalid_argument("c0 must be at least 2");
  NSModel m = trivial_lattice({r + 1});
  const std::size_t n = m.rank() + 1;
  SymmetricForm g(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j + 1 < n; ++j) g.set(i, j, m.gram_(i, j));
  g.set(n - 1, n - 1, checked_mul(-2, c0));
  m.gram_ = g;
  m.names_.push_back("v");
  for (auto& f : m.fibres_)
    for (auto& c : f.components) c.coords.push_back(0);
  m.c0_ = c0;
  return m;
}

NSModel NSModel::trivial_lattice(const std::vector<int>& fibre_sizes) {
  NSModel m;
  m.names_ = {"F", "O"};
  std::size_t n = 2;
  for (int size : fibre_sizes) {
    if (size < 2) throw std::invalid_argument("fibre sizes must be at least 2");
    n += static_cast<std::size_t>(size - 1);
  }
  m.gram_ = SymmetricForm(n);
  m.gram_.set(0, 1, 1);
  m.gram_.set(1, 1, -2);
  std::size_t next = 2;
  for (std::size_t f = 0; f < fibre_sizes.size(); ++f) {
    const int size = fibre_sizes[f];
    Fibre fibre{"I" + std::to_string(size), size, {}};
    DivisorClass theta0(n);
    theta0.coords[0] = 1;
    std::vector<DivisorClass> chain;
    for (int i = 1; i < size; ++i, ++next) {
      m.names_.push_back(fibre_sizes.size() == 1 ? "T" + std::to_string(i)
                                                 : "T" + std::to_string(f + 1) + "." + std::to_string(i));
      m.gram_.set(next, next, -2);
      if (i > 1) m.gram_.set(next - 1, next, 1);
      DivisorClass t(n);
      t.coords[next] = 1;
      theta0.coords[next] = -1;
      chain.push_back(t);
    }
    fibre.components.push_back(theta0);
    for (auto& t : chain) fibre.components.push_back(std::move(t));
    m.fibres_.push_back(std::move(fibre));
  }
  return m;
}

DivisorClass NSModel::basis(std::size_t i) const {
  if (i >= rank()) throw std::invalid_argument("basis index out of range");
  DivisorClass out(rank());
  out.coords[i] = 1;
  return out;
}

DivisorClass NSModel::named(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw std::invalid_argument("no basis element named '" + name + "'");
  return basis(static_cast<std::size_t>(it - names_.begin()));
}

std::int64_t NSModel::intersect(const DivisorClass& a, const DivisorClass& b) const {
  same_size(a, b);
  if (a.size() != rank()) throw std::invalid_argument("divisor class does not belong to this model");
  __int128 sum = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a.coords[i] == 0) continue;
    for (std::size_t j = 0; j < rank(); ++j)
      sum += static_cast<__int128>(a.coords[i]) * gram_(i, j) * b.coords[j];
  }
  if (sum > INT64_MAX || sum < INT64_MIN) throw std::overflow_error("intersection number overflow");
  return static_cast<std::int64_t>(sum);
}

DivisorClass NSModel::reflect(const DivisorClass& x, const DivisorClass& root) const {
  if (square(root) != -2) throw std::invalid_argument("reflection root must have square -2");
  return x + intersect(x, root) * root;
}

std::int64_t NSModel::c0() const {
  if (!c0_) throw std::invalid_argument("model has no section data");
  return *c0_;
}

DivisorClass NSModel::section() const { return named("v") + zero_section() + c0() * fibre_class(); }

void NSModel::self_check() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("model self-check failed: " + what);
  };
  const DivisorClass F = fibre_class(), O = zero_section();
  require(square(F) == 0 && intersect(F, O) == 1 && square(O) == -2, "U block");
  for (std::size_t f = 0; f < fibres_.size(); ++f) {
    const auto& comps = fibres_[f].components;
    const std::size_t n = comps.size();
    DivisorClass sum = zero();
    for (std::size_t k = 0; k < n; ++k) {
      sum = sum + comps[k];
      require(square(comps[k]) == -2, fibres_[f].name + " component square");
      require(intersect(comps[k], F) == 0, fibres_[f].name + " component meets F");
      require(intersect(comps[k], O) == (k == 0 ? 1 : 0), fibres_[f].name + " zero section incidence");
      for (std::size_t l = k + 1; l < n; ++l) {
        std::int64_t expected = 0;
        if (n == 2) expected = 2;
        else if (l == k + 1 || (k == 0 && l == n - 1)) expected = 1;
        require(intersect(comps[k], comps[l]) == expected, fibres_[f].name + " cycle adjacency");
      }
      for (std::size_t g = f + 1; g < fibres_.size(); ++g)
        for (const auto& other : fibres_[g].components)
          require(intersect(comps[k], other) == 0, "distinct fibres meet");
    }
    require(sum == F, fibres_[f].name + " components do not sum to F");
  }
  if (c0_) {
    const DivisorClass v = named("v");
    require(square(v) == -2 * *c0_, "v square");
    for (std::size_t i = 0; i + 1 < rank(); ++i) require(intersect(v, basis(i)) == 0, "v not orthogonal");
    const DivisorClass P = section();
    require(square(P) == -2 && intersect(P, F) == 1 && intersect(P, O) == *c0_ - 2, "section P");
    require(P - O - *c0_ * F == v, "v = P - O - c0 F");
  }
}

void CheckReport::add(std::string name, std::string value, bool pass) {
  checks.push_back({std::move(name), std::move(value), pass});
  ok = ok && pass;
}

json CheckReport::to_json() const {
  json out = json::array();
  for (const auto& c : checks) out.push_back({{"name", c.name}, {"value", c.value}, {"ok", c.ok}});
  return out;
}

CheckReport quasi_ample_check(const NSModel& model, std::int64_t N, std::int64_t d) {
  if (d < 3) throw std::invalid_argument("d must be at least 3 (fibres need H.F = d > 2)");
  const std::int64_t c0 = model.c0();
  const DivisorClass F = model.fibre_class(), O = model.zero_section(), P = model.section();
  const DivisorClass H = N * F + d * O + model.named("v");
  CheckReport rep;

  const std::int64_t HO = model.intersect(H, O);
  rep.add("H.O > 0", str(HO), HO > 0);
  const std::int64_t HP = model.intersect(H, P);
  rep.add("H.P > 0", str(HP), HP > 0);
  const std::int64_t HF = model.intersect(H, F);
  rep.add("H.F = d >= 3", str(HF), HF == d && HF >= 3);
  for (const auto& fibre : model.fibres()) {
    const std::int64_t h0 = model.intersect(H, fibre.components[0]);
    rep.add("H.Theta0 = d", str(h0), h0 == d);
    bool zero = true;
    for (std::size_t k = 1; k < fibre.components.size(); ++k) zero = zero && model.intersect(H, fibre.components[k]) == 0;
    rep.add("H.Theta_i = 0 for i >= 1", zero ? "0" : "nonzero", zero);
  }
  // H = (N - c0) F + (d - 1) O + P; the F coefficient bounds H.C from below
  // on multisections.
  const DivisorClass rest = H - (d - 1) * O - P;
  const std::int64_t k = model.intersect(rest, O);
  const bool rest_is_fibre = rest == k * F;
  rep.add("H = (N-c0)F + (d-1)O + P", str(k), rest_is_fibre && k == N - c0);
  rep.add("rational multisections: N-c0 > 0", str(k), rest_is_fibre && k > 0);
  rep.add("other multisections: 2(N-c0) > 2", str(2 * k), rest_is_fibre && 2 * k > 2);
  const std::int64_t H2 = model.square(H);
  rep.add("H^2 >= 4", str(H2), H2 >= 4);
  std::int64_t g = 0;
  for (auto x : H.coords) g = std::gcd(g, x);
  rep.add("H^2 = 8 implies H not 2-divisible", str(H2), H2 != 8 || g % 2 != 0);
  return rep;
}

namespace {

json fibres_json(const std::vector<FibreCount>& fibres) {
  json out = json::array();
  for (const auto& f : fibres) out.push_back({{"type", "I"}, {"n", f.n}, {"count", f.count}});
  return out;
}

}  // namespace

json WitnessIII::to_json() const {
  return {{"d", d},         {"h", h},
          {"p", nullptr},   {"r", r},
          {"N", N},         {"c0", c0},
          {"fourSquares", nullptr},
          {"rSplit", nullptr},
          {"fibres", fibres_json(fibres)},
          {"H2", H2},       {"r0", r0},
          {"rd_lower", rd_lower},
          {"checks", checks.to_json()},
          {"ok", checks.ok}};
}

WitnessIII witness_iii(std::int64_t d, std::int64_t h, int r, bool verify) {
  if (d < 3) throw std::invalid_argument("d must be at least 3 (fibres need H.F = d > 2)");
  if (h < d * d - 1) throw std::invalid_argument("h must be at least d^2 - 1 = " + str(d * d - 1));
  if (r < 1 || r > 17) throw std::invalid_argument("r must lie in [1, 17]");

  WitnessIII w;
  w.d = d;
  w.h = h;
  w.r = r;
  w.c0 = 2 + ((-h - 2) % d + d) % d;
  w.N = (h + w.c0) / d + d;
  w.fibres = {{r + 1, 1}, {1, 23 - r}};
  const std::int64_t N = w.N, c0 = w.c0;

  w.checks.add("c0 = -h mod d", str(c0), (h + c0) % d == 0 && c0 >= 2 && c0 <= d + 1);
  w.checks.add("N > max(2d, c0+1)", str(N), N > std::max(2 * d, c0 + 1));

  if (!verify) {
    w.H2 = 2 * d * (N - d) - 2 * c0;
    w.checks.add("H^2 = 2h", str(w.H2), w.H2 == 2 * h);
    w.checks.add("H.O > 0", str(N - 2 * d), N - 2 * d > 0);
    w.checks.add("H.P > 0", str(N - 2 * c0 + (c0 - 2) * d), N - 2 * c0 + (c0 - 2) * d > 0);
    w.checks.add("H.F = d >= 3", str(d), d >= 3);
    w.checks.add("H.Theta0 = d", str(d), true);
    w.checks.add("H.Theta_i = 0 for i >= 1", "0", true);
    w.checks.add("rational multisections: N-c0 > 0", str(N - c0), N - c0 > 0);
    w.checks.add("other multisections: 2(N-c0) > 2", str(2 * (N - c0)), 2 * (N - c0) > 2);
    w.checks.add("H^2 >= 4", str(w.H2), w.H2 >= 4);
    w.r0 = r;
    w.rd_lower = 1 + (23 - r);
  } else {
    const NSModel model = NSModel::elliptic_with_section(r, c0);
    model.self_check();
    const DivisorClass H = N * model.fibre_class() + d * model.zero_section() + model.named("v");
    w.H2 = model.square(H);
    w.checks.add("H^2 = 2h", str(w.H2), w.H2 == 2 * h);
    CheckReport qa = quasi_ample_check(model, N, d);
    for (auto& c : qa.checks) w.checks.add(c.name, c.value, c.ok);
    int zero = 0, degree_d = 0;
    for (const auto& fibre : model.fibres())
      for (const auto& comp : fibre.components) {
        const std::int64_t x = model.intersect(H, comp);
        zero += x == 0;
        degree_d += x == d;
      }
    w.r0 = zero;
    w.rd_lower = degree_d + (23 - r);
  }
  const int euler = (r + 1) + (23 - r);
  w.checks.add("Euler number 24", std::to_string(euler), euler == 24);
  w.checks.add("r0 = r", std::to_string(w.r0), w.r0 == r);
  w.checks.add("r_d >= 24 - r", std::to_string(w.rd_lower), w.rd_lower == 24 - r);
  return w;
}

Straightening straighten(const NSModel& model, const DivisorClass& divisor) {
  const DivisorClass F = model.fibre_class(), O = model.zero_section();
  if (model.intersect(divisor, F) <= 0) throw std::invalid_argument("straighten: need D.F > 0");

  // Per fibre, w with w.Theta_i = 1 on the chain; A = O + sum_f w_f / n_f.
  std::vector<RatVector> weights;
  for (const auto& fibre : model.fibres()) {
    const SymmetricForm chain = dynkin::gram_of(dynkin::make_type(dynkin::Family::A, fibre.n - 1));
    LinearSolution s = solve_rational(chain, RatVector(static_cast<std::size_t>(fibre.n - 1), BigRat(1)));
    for (auto& x : s.x) x /= fibre.n;
    weights.push_back(std::move(s.x));
  }
  auto measure = [&](const DivisorClass& D) {
    BigRat mu(model.intersect(D, O));
    for (std::size_t f = 0; f < weights.size(); ++f)
      for (std::size_t k = 0; k < weights[f].size(); ++k)
        mu += weights[f][k] * model.intersect(D, model.fibres()[f].components[k + 1]);
    return mu;
  };

  Straightening out{divisor, {}};
  BigRat mu = measure(out.result);
  for (std::size_t guard = 0;; ++guard) {
    if (guard > 1000000) throw std::logic_error("straighten: reflection loop did not terminate");
    const DivisorClass* root = nullptr;
    for (const auto& fibre : model.fibres()) {
      for (const auto& comp : fibre.components)
        if (model.intersect(comp, out.result) < 0) {
          root = &comp;
          break;
        }
      if (root) break;
    }
    if (!root) return out;
    out.result = model.reflect(out.result, *root);
    out.roots.push_back(*root);
    BigRat next = measure(out.result);
    if (next >= mu) throw std::logic_error("straighten: measure did not decrease");
    mu = next;
  }
}

json WitnessUnconditional::to_json() const {
  return {{"d", d},
          {"h", h},
          {"p", p},
          {"r", r},
          {"N", N},
          {"c0", c0},
          {"fourSquares", four_squares},
          {"rSplit", r_split},
          {"fibres", fibres_json(fibres)},
          {"H2", H2},
          {"D0_square", D0_square},
          {"reflections", reflections},
          {"embedding", embedding_gram},
          {"checks", checks.to_json()},
          {"ok", checks.ok}};
}

WitnessUnconditional witness_unconditional(std::int64_t d, std::int64_t h, std::int64_t p, int r, bool verify) {
  if (d < 3) throw std::invalid_argument("d must be at least 3 (fibres need H.F = d > 2)");
  if (h < 2 * d * d + d + 1) throw std::invalid_argument("h must be at least 2d^2 + d + 1 = " + str(2 * d * d + d + 1));
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  const bool split_case = p % 4 == 1;
  const int r_max = split_case ? 14 : 13;
  if (r < 1 || r > r_max)
    throw std::invalid_argument("r must lie in [1, " + std::to_string(r_max) + "] for p = " + str(p) + " (p = " +
                                (split_case ? "1" : "3") + " mod 4)");

  WitnessUnconditional w;
  w.d = d;
  w.h = h;
  w.p = p;
  w.r = r;
  w.N = (h + d - 1) / d - 1;
  w.c0 = (w.N + 1) * d - h;
  const std::int64_t N = w.N, c0 = w.c0;

  const auto squares = arith::four_squares(c0);
  w.four_squares.assign(squares.begin(), squares.end());
  const std::array<int, 3> caps = split_case ? std::array<int, 3>{7, 7, 7} : std::array<int, 3>{7, 3, 3};
  const auto split = arith::r_split(r, p, caps);
  if (!split) {
    // Name the constraint that fails: retry without the divisibility rule.
    const bool fits = arith::r_split(r, 1000003, caps).has_value();
    throw Infeasible("no split r = r1 + r2 + r3 for r = " + std::to_string(r) + ", p = " + str(p) + ": " +
                     (fits ? "every split with parts <= (" + std::to_string(caps[0]) + "," + std::to_string(caps[1]) +
                                 "," + std::to_string(caps[2]) + ") has some r_i with p | r_i + 1"
                           : "r exceeds the parts allowed by the fibre configuration"));
  }
  w.r_split.assign(split->begin(), split->end());

  int reducible = 0;
  for (int part : w.r_split)
    if (part > 0) {
      w.fibres.push_back({part + 1, 1});
      reducible += part + 1;
    }
  w.fibres.push_back({1, 24 - reducible});

  // [[0, d], [d, -2c0]] + A_r1 + A_r2 + A_r3
  const std::size_t dim = 2 + static_cast<std::size_t>(r);
  w.embedding_gram.assign(dim, std::vector<std::int64_t>(dim, 0));
  w.embedding_gram[0][1] = w.embedding_gram[1][0] = d;
  w.embedding_gram[1][1] = -2 * c0;
  std::size_t at = 2;
  for (int part : w.r_split)
    for (int i = 0; i < part; ++i, ++at) {
      w.embedding_gram[at][at] = -2;
      if (i > 0) w.embedding_gram[at][at - 1] = w.embedding_gram[at - 1][at] = 1;
    }

  std::int64_t sum_sq = 0;
  for (auto a : w.four_squares) sum_sq += a * a;
  w.checks.add("h = Nd + d - c0", str(N * d + d - c0), N * d + d - c0 == h && c0 >= 0 && c0 < d);
  w.checks.add("N > 2d", str(N), N > 2 * d);
  w.checks.add("c0 = sum of four squares", str(sum_sq), sum_sq == c0);
  bool split_ok = std::accumulate(w.r_split.begin(), w.r_split.end(), 0) == r;
  for (std::size_t i = 0; i < 3; ++i)
    split_ok = split_ok && w.r_split[i] <= caps[i] && (w.r_split[i] + 1) % p != 0;
  if (w.r_split[0] > 0 && w.r_split[1] > 0 && w.r_split[2] > 0) split_ok = split_ok && w.r_split[1] + w.r_split[2] < 7;
  w.checks.add("r split constraints", std::to_string(w.r_split[0]) + "+" + std::to_string(w.r_split[1]) + "+" +
                                          std::to_string(w.r_split[2]),
               split_ok);

  if (!verify) {
    w.H2 = 2 * N * d + 2 * d - 2 * c0;
    w.D0_square = 2 * (d - c0);
    w.checks.add("D0^2 = 2(d - c0) > 0", str(w.D0_square), w.D0_square > 0);
    w.checks.add("H0^2 = 2h", str(w.H2), w.H2 == 2 * h);
    w.checks.add("H0^2 >= 4d^2 + 2", str(w.H2), w.H2 >= 4 * d * d + 2);
    w.checks.add("H0.F = d >= 3", str(d), d >= 3);
    w.checks.add("smooth rational multisections: N - 2d > 0", str(N - 2 * d), N - 2 * d > 0);
  } else {
    const NSModel model = split_case ? NSModel::trivial_lattice({8, 8, 2, 2, 2, 2})
                                     : NSModel::trivial_lattice({8, 4, 4, 2, 2, 2, 2});
    model.self_check();
    const DivisorClass F = model.fibre_class(), O = model.zero_section();
    const std::size_t first_i2 = split_case ? 2 : 3;
    DivisorClass D = d * (F + O);
    for (std::size_t i = 0; i < 4; ++i) D = D + w.four_squares[i] * model.fibres()[first_i2 + i].components[1];

    std::vector<DivisorClass> roots;
    auto chain = [&](std::size_t fibre, int from, int count) {
      for (int k = 0; k < count; ++k) roots.push_back(model.fibres()[fibre].components[static_cast<std::size_t>(from + k)]);
    };
    const auto& s = w.r_split;
    chain(0, 1, s[0]);
    if (split_case) {
      chain(1, 1, s[1]);
      chain(1, s[1] + 2, s[2]);
    } else {
      chain(1, 1, s[1]);
      chain(2, 1, s[2]);
    }

    std::vector<DivisorClass> frame{F, D};
    frame.insert(frame.end(), roots.begin(), roots.end());
    bool embeds = true;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) embeds = embeds && model.intersect(frame[i], frame[j]) == w.embedding_gram[i][j];
    w.checks.add("embedding Gram realized in the fibration model", embeds ? "yes" : "no", embeds);

    const Straightening st = straighten(model, D + F);
    w.reflections = st.roots.size();
    auto sigma = [&](DivisorClass x) {
      for (const auto& root : st.roots) x = model.reflect(x, root);
      return x;
    };
    const DivisorClass D0 = st.result;
    const DivisorClass H0 = N * F + D0;
    w.D0_square = model.square(D0);
    w.H2 = model.square(H0);
    w.checks.add("sigma(F) = F", sigma(F) == F ? "yes" : "no", sigma(F) == F);
    w.checks.add("D0.F = d", str(model.intersect(D0, F)), model.intersect(D0, F) == d);
    w.checks.add("D0^2 = 2(d - c0) > 0", str(w.D0_square), w.D0_square == 2 * (d - c0) && w.D0_square > 0);
    bool nonneg = true;
    for (const auto& fibre : model.fibres())
      for (const auto& comp : fibre.components) nonneg = nonneg && model.intersect(comp, D0) >= 0;
    w.checks.add("Theta.D0 >= 0 for all fibre components", nonneg ? "yes" : "no", nonneg);
    bool perp = true;
    for (const auto& root : roots) perp = perp && model.intersect(H0, sigma(root)) == 0;
    w.checks.add("H0 orthogonal to sigma(R)", perp ? "yes" : "no", perp);
    w.checks.add("H0^2 = 2h", str(w.H2), w.H2 == 2 * h);
    w.checks.add("H0^2 >= 4d^2 + 2", str(w.H2), w.H2 >= 4 * d * d + 2);
    const std::int64_t HF = model.intersect(H0, F);
    w.checks.add("H0.F = d >= 3", str(HF), HF == d && d >= 3);
    w.checks.add("smooth rational multisections: N - 2d > 0", str(N - 2 * d), N - 2 * d > 0);
  }
  return w;
}

json OverlatticeA17::to_json() const {
  json factors_a = json::array(), factors_full = json::array();
  for (const auto& f : a17_prime_group.invariant_factors) factors_a.push_back(to_string(f));
  for (const auto& f : full_group.invariant_factors) factors_full.push_back(to_string(f));
  return {{"c0", c0},
          {"det_before", to_string(det_before)},
          {"det_after", to_string(det_after)},
          {"glue_square", to_string(glue_square)},
          {"glue_integral", glue_integral},
          {"triple_in_lattice", triple_in_lattice},
          {"a17_prime_discriminant", factors_a},
          {"discriminant", factors_full}};
}

OverlatticeA17 overlattice_a17(std::int64_t c0) {
  if (c0 < 2) throw std::invalid_argument("c0 must be at least 2");
  OverlatticeA17 out;
  out.c0 = c0;
  const SymmetricForm a17 = dynkin::gram_of(dynkin::make_type(dynkin::Family::A, 17));
  const std::size_t n = a17.dim();
  RatVector e(n, BigRat(0));
  e[5] = 1;
  const LinearSolution sol = solve_rational(a17, e);
  const RatVector& w = sol.x;
  out.glue_square = a17.pair(w, w);
  out.glue_integral = true;
  for (const auto& x : a17.apply(w)) out.glue_integral = out.glue_integral && x.get_den() == 1;
  out.triple_in_lattice = true;
  for (const auto& x : w) out.triple_in_lattice = out.triple_in_lattice && BigRat(3 * x).get_den() == 1;

  // Work in coordinates scaled by 3 so that A17 + Zw is integral.
  IntMatrix gens(n + 1, n);
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = 3;
  for (std::size_t j = 0; j < n; ++j) gens(n, j) = BigRat(3 * w[j]).get_num();
  const IntMatrix basis = hermite_normal_form(gens);
  if (basis.rows() != n) throw std::logic_error("overlattice basis has wrong rank");
  const IntMatrix scaled = basis * a17.to_matrix() * transpose(basis);
  SymmetricForm prime(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (!mpz_divisible_ui_p(scaled(i, j).get_mpz_t(), 9)) throw std::logic_error("overlattice is not integral");
      prime.set(i, j, BigInt(scaled(i, j) / 9).get_si());
    }
  out.a17_prime_gram = prime;

  const SymmetricForm u{{0, 1}, {1, -2}};
  const SymmetricForm tail{{-2 * c0}};
  const SymmetricForm before = direct_sum(direct_sum(u, a17), tail);
  const SymmetricForm after = direct_sum(direct_sum(u, prime), tail);
  out.det_before = determinant(before);
  out.det_after = determinant(after);
  out.a17_prime_group = smith_form(prime);
  out.full_group = smith_form(after);
  return out;
}

}  // namespace k3lat::ns
