#include "k3lat/fano_graph.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace k3lat::fano {

ColoredGraph::ColoredGraph(int d, std::vector<Vertex> vertices, std::vector<Edge> edges)
    : d_(d), vertices_(std::move(vertices)) {
  if (d_ < 1) throw std::invalid_argument("degree cap d must be positive, got " + std::to_string(d_));
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vertex& v = vertices_[i];
    if (v.id.empty()) throw std::invalid_argument("vertex " + std::to_string(i) + " has an empty id");
    if (!index.emplace(v.id, i).second) throw std::invalid_argument("duplicate vertex id '" + v.id + "'");
    if (v.color < 0 || v.color > d_)
      throw std::invalid_argument("vertex '" + v.id + "': color " + std::to_string(v.color) + " outside [0, " +
                                  std::to_string(d_) + "]");
    if (v.square != -2 && v.square != 0)
      throw std::invalid_argument("vertex '" + v.id + "': square " + std::to_string(v.square) +
                                  " is not -2 or 0");
  }
  const std::size_t n = vertices_.size();
  mult_.assign(n * n, 0);
  for (Edge e : edges) {
    auto ia = index.find(e.a);
    auto ib = index.find(e.b);
    if (ia == index.end()) throw std::invalid_argument("edge endpoint '" + e.a + "' is not a vertex");
    if (ib == index.end()) throw std::invalid_argument("edge endpoint '" + e.b + "' is not a vertex");
    if (ia->second == ib->second) throw std::invalid_argument("loop at vertex '" + e.a + "'");
    if (e.m < 1) throw std::invalid_argument("edge " + e.a + "-" + e.b + ": multiplicity must be >= 1");
    std::size_t i = ia->second, j = ib->second;
    if (mult_[i * n + j] != 0) throw std::invalid_argument("duplicate edge " + e.a + "-" + e.b);
    mult_[i * n + j] = mult_[j * n + i] = e.m;
    if (i > j) std::swap(e.a, e.b);
    edges_.push_back(std::move(e));
  }
}

std::optional<std::size_t> ColoredGraph::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  return std::nullopt;
}

std::vector<int> ColoredGraph::colors() const {
  std::vector<int> c;
  for (const auto& v : vertices_) c.push_back(v.color);
  return c;
}

bool ColoredGraph::all_squares_minus_two() const {
  return std::all_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.square == -2; });
}

ColoredGraph ColoredGraph::induced(const std::vector<std::size_t>& indices) const {
  std::vector<Vertex> vs;
  std::vector<Edge> es;
  for (std::size_t a = 0; a < indices.size(); ++a) {
    vs.push_back(vertices_.at(indices[a]));
    for (std::size_t b = a + 1; b < indices.size(); ++b)
      if (int m = multiplicity(indices[a], indices[b]); m > 0)
        es.push_back({vertices_[indices[a]].id, vertices_[indices[b]].id, m});
  }
  return ColoredGraph(d_, std::move(vs), std::move(es));
}

ColoredGraph ColoredGraph::with_vertex(const Vertex& v, const std::vector<int>& multiplicities) const {
  if (multiplicities.size() != size())
    throw std::invalid_argument("with_vertex: expected " + std::to_string(size()) + " multiplicities");
  std::vector<Vertex> vs = vertices_;
  vs.push_back(v);
  std::vector<Edge> es = edges_;
  for (std::size_t i = 0; i < size(); ++i)
    if (multiplicities[i] != 0) es.push_back({vertices_[i].id, v.id, multiplicities[i]});
  return ColoredGraph(d_, std::move(vs), std::move(es));
}

std::string to_string(GraphClass c) {
  switch (c) {
    case GraphClass::Elliptic: return "Elliptic";
    case GraphClass::Parabolic: return "Parabolic";
    case GraphClass::Hyperbolic: return "Hyperbolic";
    case GraphClass::Overpositive: return "Overpositive";
  }
  return "?";
}

SymmetricForm gram(const ColoredGraph& g) {
  SymmetricForm f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.set(i, i, g.vertex(i).square);
    for (std::size_t j = i + 1; j < g.size(); ++j) f.set(i, j, g.multiplicity(i, j));
  }
  return f;
}

GraphClass classify(const Signature& s) {
  if (s.n_plus == 0) return s.n_zero == 0 ? GraphClass::Elliptic : GraphClass::Parabolic;
  return s.n_plus == 1 ? GraphClass::Hyperbolic : GraphClass::Overpositive;
}

GraphClass classify(const ColoredGraph& g) { return classify(signature(gram(g))); }

AdmissibilityReport admissible(const ColoredGraph& g, std::int64_t h, AdmissibilityOptions options) {
  if (h < 1) throw std::invalid_argument("admissible: h must be positive");
  AdmissibilityReport report;
  const bool regime = options.hyperbolic_regime && g.all_squares_minus_two() &&
                      classify(g) != GraphClass::Overpositive;
  auto flag = [&](std::size_t i, std::size_t j, int m, std::string rule, BigRat bound) {
    report.ok = false;
    report.violations.push_back({g.vertex(i).id, g.vertex(j).id, m, std::move(rule), std::move(bound)});
  };
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const int m = g.multiplicity(i, j);
      if (m == 0) continue;
      const Vertex& c = g.vertex(i);
      const Vertex& c2 = g.vertex(j);
      const long bezout = static_cast<long>(c.color + 1) * (c2.color + 1);
      if (m > bezout) flag(i, j, m, "bezout", BigRat(bezout));
      if (c.square >= 0 && c2.square >= 0) {
        BigRat bound(static_cast<long>(c.color) * c2.color, static_cast<unsigned long>(h));
        bound.canonicalize();
        if (BigRat(m) > bound) flag(i, j, m, "nonnegative-squares", bound);
      }
      if (c.color == 0 && c2.color == 0 && c.square == -2 && c2.square == -2 && m > 1)
        flag(i, j, m, "du-val", BigRat(1));
      if (regime && m > 2) flag(i, j, m, "hyperbolic-regime", BigRat(2));
    }
  return report;
}

namespace {

std::vector<std::vector<std::size_t>> components(const ColoredGraph& g) {
  const std::size_t n = g.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members;
    std::vector<std::size_t> stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t w = 0; w < n; ++w)
        if (comp[w] < 0 && g.multiplicity(v, w) > 0) {
          comp[w] = comp[s];
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<std::size_t> neighbours(const ColoredGraph& g, std::size_t v) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < g.size(); ++w)
    if (w != v && g.multiplicity(v, w) > 0) out.push_back(w);
  return out;
}

using Candidate = std::pair<std::vector<std::size_t>, dynkin::DynkinType>;

bool better(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::optional<Candidate> shortest_cycle(const ColoredGraph& g) {
  const std::size_t n = g.size();
  std::optional<std::vector<std::size_t>> best;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<long> dist(n, -1);
    std::vector<std::size_t> parent(n, n);
    std::queue<std::size_t> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t w : neighbours(g, v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push(w);
        }
    }
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t w = u + 1; w < n; ++w) {
        if (g.multiplicity(u, w) == 0 || dist[u] < 0 || dist[w] < 0) continue;
        if (parent[u] == w || parent[w] == u) continue;
        const std::size_t length = static_cast<std::size_t>(dist[u] + dist[w] + 1);
        if (best && length > best->size()) continue;
        std::set<std::size_t> verts;
        for (std::size_t x = u; x != n; x = parent[x]) verts.insert(x);
        for (std::size_t x = w; x != n; x = parent[x]) verts.insert(x);
        if (verts.size() != length) continue;
        std::vector<std::size_t> cyc(verts.begin(), verts.end());
        bool induced_cycle = true;
        for (std::size_t x : cyc) {
          int deg = 0;
          for (std::size_t y : cyc) deg += (x != y && g.multiplicity(x, y) > 0) ? 1 : 0;
          if (deg != 2) induced_cycle = false;
        }
        if (induced_cycle && (!best || better(cyc, *best))) best = cyc;
      }
  }
  if (!best) return std::nullopt;
  const int rank = static_cast<int>(best->size()) - 1;
  return Candidate{*best, dynkin::make_type(dynkin::Family::AffineA, rank)};
}

// Longest path in a forest starting at `start` and not returning through
// `from`; ties go to the smaller neighbour index.
std::vector<std::size_t> longest_arm(const ColoredGraph& g, std::size_t start, std::size_t from) {
  std::vector<std::size_t> best;
  for (std::size_t w : neighbours(g, start)) {
    if (w == from) continue;
    auto sub = longest_arm(g, w, start);
    if (sub.size() > best.size()) best = std::move(sub);
  }
  best.insert(best.begin(), start);
  return best;
}

std::vector<std::size_t> tree_path(const ColoredGraph& g, std::size_t from, std::size_t to) {
  const std::size_t n = g.size();
  std::vector<std::size_t> parent(n, n);
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> q;
  q.push(from);
  seen[from] = true;
  while (!q.empty()) {
    const std::size_t v = q.front();
    q.pop();
    for (std::size_t w : neighbours(g, v))
      if (!seen[w]) {
        seen[w] = true;
        parent[w] = v;
        q.push(w);
      }
  }
  if (!seen[to]) return {};
  std::vector<std::size_t> path;
  for (std::size_t x = to; x != n; x = parent[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<Candidate> tree_pattern(const ColoredGraph& g) {
  using dynkin::Family;
  const std::size_t n = g.size();
  std::optional<Candidate> best;
  auto offer = [&](std::vector<std::size_t> verts, dynkin::DynkinType type) {
    std::sort(verts.begin(), verts.end());
    if (!best || better(verts, best->first)) best = Candidate{std::move(verts), type};
  };

  std::vector<std::size_t> branch;
  for (std::size_t v = 0; v < n; ++v) {
    const auto nb = neighbours(g, v);
    if (nb.size() >= 4) offer({v, nb[0], nb[1], nb[2], nb[3]}, dynkin::make_type(Family::AffineD, 4));
    if (nb.size() >= 3) branch.push_back(v);
  }

  for (std::size_t x = 0; x < branch.size(); ++x)
    for (std::size_t y = x + 1; y < branch.size(); ++y) {
      const auto path = tree_path(g, branch[x], branch[y]);
      if (path.empty()) continue;
      std::vector<std::size_t> verts = path;
      for (std::size_t end : {path.front(), path.back()}) {
        const std::size_t inward = end == path.front() ? path[1] : path[path.size() - 2];
        int taken = 0;
        for (std::size_t w : neighbours(g, end))
          if (w != inward && taken < 2) {
            verts.push_back(w);
            ++taken;
          }
      }
      const int rank = static_cast<int>(path.size()) + 3;
      offer(verts, dynkin::make_type(Family::AffineD, rank));
    }

  for (std::size_t v : branch) {
    const auto nb = neighbours(g, v);
    if (nb.size() != 3) continue;
    std::vector<std::vector<std::size_t>> arms;
    for (std::size_t w : nb) arms.push_back(longest_arm(g, w, v));
    std::stable_sort(arms.begin(), arms.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    const std::size_t a = arms[0].size(), b = arms[1].size(), c = arms[2].size();
    std::array<std::size_t, 3> take{};
    dynkin::DynkinType type;
    if (a >= 2) {
      take = {2, 2, 2};
      type = dynkin::make_type(Family::AffineE, 6);
    } else if (b >= 3) {
      take = {1, 3, 3};
      type = dynkin::make_type(Family::AffineE, 7);
    } else if (b == 2 && c >= 5) {
      take = {1, 2, 5};
      type = dynkin::make_type(Family::AffineE, 8);
    } else {
      continue;
    }
    std::vector<std::size_t> verts{v};
    for (std::size_t k = 0; k < 3; ++k) verts.insert(verts.end(), arms[k].begin(), arms[k].begin() + take[k]);
    offer(verts, type);
  }
  return best;
}

}  // namespace

EllipticDecomposition decompose_elliptic(const ColoredGraph& g) {
  if (!g.all_squares_minus_two()) throw std::invalid_argument("decompose_elliptic: all squares must be -2");
  if (classify(g) != GraphClass::Elliptic) throw std::invalid_argument("decompose_elliptic: graph is not elliptic");
  std::vector<std::pair<dynkin::DynkinType, std::vector<std::size_t>>> parts;
  for (auto& comp : components(g)) {
    auto type = dynkin::recognize(gram(g).restrict_to(comp));
    if (!type || type->is_affine())
      throw std::logic_error("decompose_elliptic: component is not an ADE diagram (inconsistent input)");
    parts.emplace_back(*type, std::move(comp));
  }
  std::sort(parts.begin(), parts.end());
  EllipticDecomposition out;
  for (auto& [t, c] : parts) {
    out.rank += static_cast<std::size_t>(t.rank);
    out.parts.push_back(t);
    out.components.push_back(std::move(c));
  }
  out.exceeds_rank_bound = out.rank > 21;
  return out;
}

std::optional<ExtendedSubdiagram> find_extended(const ColoredGraph& g) {
  if (!g.all_squares_minus_two()) throw std::invalid_argument("find_extended: all squares must be -2");
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.multiplicity(i, j) > 2)
        throw std::invalid_argument("find_extended: multiplicity above 2 between '" + g.vertex(i).id + "' and '" +
                                    g.vertex(j).id + "'");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.multiplicity(i, j) == 2) return ExtendedSubdiagram{{i, j}, dynkin::make_type(dynkin::Family::AffineA, 1)};

  std::optional<Candidate> found = shortest_cycle(g);
  if (!found) found = tree_pattern(g);
  if (!found) return std::nullopt;

  auto check = dynkin::recognize(gram(g).restrict_to(found->first));
  if (!check || *check != found->second)
    throw std::logic_error("find_extended: certificate failed recognition as " + found->second.name());
  return ExtendedSubdiagram{found->first, found->second};
}

bool is_semidefinite_subset(const ColoredGraph& g, const std::vector<std::size_t>& indices) {
  return signature(gram(g).restrict_to(indices)).n_plus == 0;
}

std::vector<std::vector<std::size_t>> max_parabolic_subgraphs(const ColoredGraph& g) {
  if (classify(g) != GraphClass::Hyperbolic)
    throw std::invalid_argument("max_parabolic_subgraphs: graph is not hyperbolic");
  const std::size_t n = g.size();
  if (n > 64) throw std::invalid_argument("max_parabolic_subgraphs: at most 64 vertices supported");
  const SymmetricForm form = gram(g);

  // In a negative semidefinite form every isotropic vector lies in the
  // radical, so a semidefinite superset of a parabolic set is parabolic. The
  // maximal parabolic sets are therefore exactly the maximal semidefinite sets
  // with a nonzero radical.
  std::unordered_map<std::uint64_t, bool> memo;
  auto semidef = [&](std::uint64_t mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < n; ++v)
      if (mask >> v & 1U) idx.push_back(v);
    const bool ok = signature(form.restrict_to(idx)).n_plus == 0;
    memo.emplace(mask, ok);
    return ok;
  };
  auto bit = [](std::size_t v) { return std::uint64_t{1} << v; };
  std::vector<std::uint64_t> adjacency(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w)
      if (v != w && g.multiplicity(v, w) > 0) adjacency[v] |= bit(w);

  std::vector<std::vector<std::size_t>> result;
  auto recurse = [&](auto&& self, std::size_t pos, std::uint64_t chosen, std::uint64_t excluded) -> void {
    if (pos == n) {
      for (std::size_t x = 0; x < n; ++x)
        if ((excluded & bit(x)) && semidef(chosen | bit(x))) return;
      std::vector<std::size_t> idx;
      for (std::size_t v = 0; v < n; ++v)
        if (chosen & bit(v)) idx.push_back(v);
      if (!idx.empty() && signature(form.restrict_to(idx)).n_zero > 0) result.push_back(std::move(idx));
      return;
    }
    const std::uint64_t rest = (pos + 1 < 64) ? (~std::uint64_t{0} << (pos + 1)) & ((n == 64) ? ~std::uint64_t{0} : (bit(n) - 1)) : 0;
    if (semidef(chosen | bit(pos))) self(self, pos + 1, chosen | bit(pos), excluded);
    // Excluding pos only helps if something reachable blocks it: pos must have
    // a neighbour that may still end up chosen, and the largest possible final
    // set must not admit it.
    if ((adjacency[pos] & (chosen | rest)) == 0) return;
    if (semidef(chosen | rest | bit(pos))) return;
    self(self, pos + 1, chosen, excluded | bit(pos));
  };
  recurse(recurse, 0, 0, 0);
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace k3lat::fano
