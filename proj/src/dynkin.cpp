#include "k3lat/dynkin.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace k3lat::dynkin {

bool DynkinType::is_affine() const {
  return family == Family::AffineA || family == Family::AffineD || family == Family::AffineE;
}

int DynkinType::vertex_count() const { return is_affine() ? rank + 1 : rank; }

std::string DynkinType::name() const {
  switch (family) {
    case Family::A: return "A" + std::to_string(rank);
    case Family::D: return "D" + std::to_string(rank);
    case Family::E: return "E" + std::to_string(rank);
    case Family::AffineA: return "~A" + std::to_string(rank);
    case Family::AffineD: return "~D" + std::to_string(rank);
    case Family::AffineE: return "~E" + std::to_string(rank);
  }
  return "?";
}

DynkinType make_type(Family family, int rank) {
  bool ok = false;
  switch (family) {
    case Family::A: ok = rank >= 1; break;
    case Family::D: ok = rank >= 4; break;
    case Family::E: ok = rank >= 6 && rank <= 8; break;
    case Family::AffineA: ok = rank >= 1; break;
    case Family::AffineD: ok = rank >= 4; break;
    case Family::AffineE: ok = rank >= 6 && rank <= 8; break;
  }
  DynkinType t{family, rank};
  if (!ok) throw std::invalid_argument("invalid Dynkin type " + t.name());
  return t;
}

DynkinType parse_type(const std::string& name) {
  std::string s = name;
  bool affine = false;
  if (!s.empty() && s.front() == '~') {
    affine = true;
    s.erase(0, 1);
  }
  if (s.size() < 2) throw std::invalid_argument("bad Dynkin type name '" + name + "'");
  Family f;
  switch (s.front()) {
    case 'A': f = affine ? Family::AffineA : Family::A; break;
    case 'D': f = affine ? Family::AffineD : Family::D; break;
    case 'E': f = affine ? Family::AffineE : Family::E; break;
    default: throw std::invalid_argument("bad Dynkin type name '" + name + "'");
  }
  int rank = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9' || rank > 1000) throw std::invalid_argument("bad Dynkin type name '" + name + "'");
    rank = rank * 10 + (s[i] - '0');
  }
  return make_type(f, rank);
}

std::vector<DiagramEdge> edges_of(const DynkinType& type) {
  const int n = type.rank;
  std::vector<DiagramEdge> e;
  auto path = [&](int from, int to) {
    for (int i = from; i < to; ++i) e.push_back({i, i + 1, 1});
  };
  switch (type.family) {
    case Family::A:
      path(0, n - 1);
      break;
    case Family::D:
      path(0, n - 2);
      e.push_back({n - 3, n - 1, 1});
      break;
    case Family::E:
      path(0, n - 2);
      e.push_back({2, n - 1, 1});
      break;
    case Family::AffineA:
      if (n == 1) {
        e.push_back({0, 1, 2});
      } else {
        path(0, n);
        e.push_back({0, n, 1});
      }
      break;
    case Family::AffineD:
      e.push_back({0, 4, 1});
      e.push_back({1, 4, 1});
      e.push_back({2, n, 1});
      e.push_back({3, n, 1});
      path(4, n);
      break;
    case Family::AffineE:
      path(0, n - 2);
      e.push_back({2, n - 1, 1});
      if (n == 6) e.push_back({5, 6, 1});
      if (n == 7) e.push_back({0, 7, 1});
      if (n == 8) e.push_back({6, 8, 1});
      break;
  }
  return e;
}

SymmetricForm gram_of(const DynkinType& type) {
  const DynkinType t = make_type(type.family, type.rank);
  SymmetricForm g(static_cast<std::size_t>(t.vertex_count()));
  for (std::size_t i = 0; i < g.dim(); ++i) g.set(i, i, -2);
  for (const auto& e : edges_of(t)) g.set(e.a, e.b, e.multiplicity);
  return g;
}

std::vector<int> mark_vector(const DynkinType& type) {
  const int n = type.rank;
  switch (type.family) {
    case Family::AffineA:
      return std::vector<int>(n + 1, 1);
    case Family::AffineD: {
      std::vector<int> m(n + 1, 2);
      std::fill(m.begin(), m.begin() + 4, 1);
      return m;
    }
    case Family::AffineE:
      if (n == 6) return {1, 2, 3, 2, 1, 2, 1};
      if (n == 7) return {2, 3, 4, 3, 2, 1, 2, 1};
      return {2, 4, 6, 5, 4, 3, 2, 3, 1};
    default:
      throw std::invalid_argument("mark_vector: " + type.name() + " is not an extended diagram");
  }
}

std::optional<DynkinType> recognize(const SymmetricForm& gram) {
  const std::size_t n = gram.dim();
  if (n == 0) throw std::invalid_argument("recognize: empty graph");
  std::vector<int> degree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (gram(i, i) != -2) throw std::invalid_argument("recognize: vertex squares must all be -2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (gram(i, j) < 0) throw std::invalid_argument("recognize: negative edge multiplicity");
      degree[i] += static_cast<int>(gram(i, j));
    }
  }
  // Connectivity.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w = 0; w < n; ++w)
      if (!seen[w] && gram(v, w) != 0) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("recognize: graph is not connected");

  const int verts = static_cast<int>(n);
  const int max_deg = *std::max_element(degree.begin(), degree.end());
  const auto count_deg = [&](int d) { return std::count(degree.begin(), degree.end(), d); };
  const Signature sig = signature(gram);

  if (sig.n_minus == n) {
    if (max_deg <= 2) return make_type(Family::A, verts);
    const BigInt det = determinant(gram);
    const int parity = (verts % 2 == 0) ? 1 : -1;
    if (verts >= 4 && det == 4 * parity) return make_type(Family::D, verts);
    if (verts >= 6 && verts <= 8 && det == (9 - verts) * parity) return make_type(Family::E, verts);
    return std::nullopt;
  }
  if (sig.n_plus == 0 && sig.n_zero == 1) {
    if (verts == 2) return make_type(Family::AffineA, 1);
    if (max_deg == 2 && count_deg(2) == verts) return make_type(Family::AffineA, verts - 1);
    if (verts == 5 && max_deg == 4) return make_type(Family::AffineD, 4);
    if (max_deg == 3 && count_deg(3) == 2 && verts >= 6) return make_type(Family::AffineD, verts - 1);
    if (max_deg == 3 && count_deg(3) == 1 && verts >= 7 && verts <= 9) return make_type(Family::AffineE, verts - 1);
  }
  return std::nullopt;
}

std::vector<DynkinType> finite_types_of_rank(int rank) {
  std::vector<DynkinType> t;
  if (rank >= 1) t.push_back({Family::A, rank});
  if (rank >= 4) t.push_back({Family::D, rank});
  if (rank >= 6 && rank <= 8) t.push_back({Family::E, rank});
  return t;
}

std::vector<DynkinType> affine_types_with_vertices(int vertices) {
  std::vector<DynkinType> t;
  const int rank = vertices - 1;
  if (rank >= 1) t.push_back({Family::AffineA, rank});
  if (rank >= 4) t.push_back({Family::AffineD, rank});
  if (rank >= 6 && rank <= 8) t.push_back({Family::AffineE, rank});
  return t;
}

namespace {

void collect_multisets(const std::vector<DynkinType>& types, std::size_t first, int budget,
                       std::vector<DynkinType>& current, std::vector<std::vector<DynkinType>>& out) {
  for (std::size_t i = first; i < types.size(); ++i) {
    if (types[i].rank > budget) continue;
    current.push_back(types[i]);
    out.push_back(current);
    collect_multisets(types, i, budget - types[i].rank, current, out);
    current.pop_back();
  }
}

int total_rank(const std::vector<DynkinType>& parts) {
  return std::accumulate(parts.begin(), parts.end(), 0, [](int s, const DynkinType& t) { return s + t.rank; });
}

std::vector<std::vector<int>> group_closure(int n, const std::vector<std::vector<int>>& generators) {
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> group{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& g : frontier)
      for (const auto& s : generators) {
        std::vector<int> h(n);
        for (int v = 0; v < n; ++v) h[v] = s[g[v]];
        if (group.insert(h).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }
  return {group.begin(), group.end()};  // lexicographic, identity first
}

std::vector<int> transpositions(int n, std::initializer_list<std::pair<int, int>> swaps) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (auto [a, b] : swaps) std::swap(p[a], p[b]);
  return p;
}

}  // namespace

std::vector<std::vector<DynkinType>> enumerate_ade(int max_rank) {
  if (max_rank > 24) throw std::invalid_argument("enumerate_ade: max_rank must be at most 24");
  std::vector<DynkinType> types;
  for (int r = 1; r <= max_rank; ++r)
    for (const auto& t : finite_types_of_rank(r)) types.push_back(t);
  std::sort(types.begin(), types.end());

  std::vector<std::vector<DynkinType>> out;
  std::vector<DynkinType> current;
  collect_multisets(types, 0, max_rank, current, out);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return total_rank(a) < total_rank(b); });
  return out;
}

std::vector<DynkinType> enumerate_extended(int max_vertices) {
  std::vector<DynkinType> out;
  for (int v = 2; v <= max_vertices; ++v)
    for (const auto& t : affine_types_with_vertices(v)) out.push_back(t);
  return out;
}

std::vector<std::vector<int>> automorphisms(const DynkinType& type) {
  const DynkinType t = make_type(type.family, type.rank);
  const int n = t.rank;
  const int v = t.vertex_count();
  std::vector<std::vector<int>> gens;
  switch (t.family) {
    case Family::A: {
      std::vector<int> rev(v);
      for (int i = 0; i < v; ++i) rev[i] = v - 1 - i;
      gens.push_back(rev);
      break;
    }
    case Family::D:
      if (n == 4) {
        gens.push_back(transpositions(v, {{0, 2}}));
        gens.push_back(transpositions(v, {{2, 3}}));
      } else {
        gens.push_back(transpositions(v, {{n - 2, n - 1}}));
      }
      break;
    case Family::E:
      if (n == 6) gens.push_back(transpositions(v, {{0, 4}, {1, 3}}));
      break;
    case Family::AffineA: {
      std::vector<int> rot(v), ref(v);
      for (int i = 0; i < v; ++i) {
        rot[i] = (i + 1) % v;
        ref[i] = (v - i) % v;
      }
      gens.push_back(rot);
      gens.push_back(ref);
      break;
    }
    case Family::AffineD:
      if (n == 4) {
        gens.push_back(transpositions(v, {{0, 1}}));
        gens.push_back(transpositions(v, {{1, 2}}));
        gens.push_back(transpositions(v, {{2, 3}}));
      } else {
        gens.push_back(transpositions(v, {{0, 1}}));
        gens.push_back(transpositions(v, {{2, 3}}));
        std::vector<int> flip(v);
        flip[0] = 2;
        flip[1] = 3;
        flip[2] = 0;
        flip[3] = 1;
        for (int i = 4; i <= n; ++i) flip[i] = n + 4 - i;
        gens.push_back(flip);
      }
      break;
    case Family::AffineE:
      if (n == 6) {
        gens.push_back(transpositions(v, {{1, 3}, {0, 4}}));
        gens.push_back(transpositions(v, {{3, 5}, {4, 6}}));
      } else if (n == 7) {
        gens.push_back(transpositions(v, {{1, 3}, {0, 4}, {7, 5}}));
      }
      break;
  }
  return group_closure(v, gens);
}

}  // namespace k3lat::dynkin
