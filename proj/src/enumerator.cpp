#include "k3lat/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "k3lat/graph_io.hpp"
#include "k3lat/polarization.hpp"

namespace k3lat::search {

using dynkin::DynkinType;
using fano::ColoredGraph;
using nlohmann::json;

void SearchConfig::validate() const {
  if (d < 1) throw std::invalid_argument("d must be positive");
  if (max_vertices < 1 || max_vertices > 24) throw std::invalid_argument("max_vertices must lie in [1, 24]");
  if (color_budget && *color_budget < 0) throw std::invalid_argument("color_budget must be nonnegative");
  if (parallelism < 1) throw std::invalid_argument("parallelism must be positive");
}

namespace {

using Perm = std::vector<int>;

const std::vector<Perm>& automorphisms_cached(const DynkinType& t) {
  static std::mutex mu;
  static std::map<DynkinType, std::vector<Perm>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(t);
  if (it == cache.end()) it = cache.emplace(t, dynkin::automorphisms(t)).first;
  return it->second;
}

std::vector<int> permuted(const std::vector<int>& v, const Perm& s) {
  std::vector<int> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[s[k]];
  return out;
}

bool is_orbit_minimum(const std::vector<int>& v, const std::vector<Perm>& group) {
  for (const auto& s : group)
    if (permuted(v, s) < v) return false;
  return true;
}

// Lexicographic successor in ∏[0, caps[k]]; false on overflow.
bool increment(std::vector<int>& v, const std::vector<int>& caps) {
  for (std::size_t k = v.size(); k-- > 0;) {
    if (v[k] < caps[k]) {
      ++v[k];
      return true;
    }
    v[k] = 0;
  }
  return false;
}

bool next_orbit_minimum(std::vector<int>& v, const std::vector<int>& caps, const std::vector<Perm>& group) {
  while (increment(v, caps))
    if (is_orbit_minimum(v, group)) return true;
  return false;
}

struct Catalog {
  std::vector<DynkinType> types;
  std::vector<int> weight;
  std::vector<bool> affine;
  int max_total = 0;
  // feasible[(rem * (size + 1) + i) * 2 + need]
  std::vector<char> feasible;

  explicit Catalog(int max_vertices) : max_total(max_vertices) {
    for (int k = 1; k <= max_vertices; ++k) {
      for (auto t : dynkin::finite_types_of_rank(k)) types.push_back(t);
      for (auto t : dynkin::affine_types_with_vertices(k)) types.push_back(t);
    }
    std::sort(types.begin(), types.end());
    for (auto t : types) {
      weight.push_back(t.vertex_count());
      affine.push_back(t.is_affine());
    }
    const std::size_t n = types.size();
    feasible.assign(static_cast<std::size_t>(max_total + 1) * (n + 1) * 2, 0);
    for (int rem = 0; rem <= max_total; ++rem)
      for (std::size_t i = n + 1; i-- > 0;)
        for (int need = 0; need < 2; ++need) {
          bool ok = rem == 0 ? need == 0 : false;
          for (std::size_t j = i; !ok && j < n; ++j)
            if (weight[j] <= rem) ok = can(rem - weight[j], j, need && !affine[j]);
          feasible[index(rem, i, need)] = ok;
        }
  }

  std::size_t index(int rem, std::size_t i, int need) const {
    return (static_cast<std::size_t>(rem) * (types.size() + 1) + i) * 2 + static_cast<std::size_t>(need);
  }
  bool can(int rem, std::size_t i, bool need) const { return feasible[index(rem, i, need ? 1 : 0)]; }

  // Smallest completion of `list` (summing to `rem` more, indices ≥ min_index).
  void complete(std::vector<std::size_t>& list, int rem, std::size_t min_index, bool need) const {
    while (rem > 0) {
      std::size_t j = min_index;
      while (!(weight[j] <= rem && can(rem - weight[j], j, need && !affine[j]))) ++j;
      list.push_back(j);
      rem -= weight[j];
      need = need && !affine[j];
      min_index = j;
    }
  }

  bool first(std::vector<std::size_t>& list, int total) const {
    list.clear();
    if (!can(total, 0, true)) return false;
    complete(list, total, 0, true);
    return true;
  }

  bool next(std::vector<std::size_t>& list, int total) const {
    for (std::size_t pos = list.size(); pos-- > 0;) {
      int rem = total;
      bool need = true;
      for (std::size_t q = 0; q < pos; ++q) {
        rem -= weight[list[q]];
        need = need && !affine[list[q]];
      }
      for (std::size_t j = list[pos] + 1; j < types.size(); ++j)
        if (weight[j] <= rem && can(rem - weight[j], j, need && !affine[j])) {
          list.resize(pos);
          list.push_back(j);
          complete(list, rem - weight[j], j, need && !affine[j]);
          return true;
        }
    }
    return false;
  }
};

ParabolicGraph build_graph(int d, const std::vector<DynkinType>& types, const std::vector<std::vector<int>>& colorings) {
  std::vector<fano::Vertex> vertices;
  std::vector<fano::Edge> edges;
  ParabolicGraph out;
  for (std::size_t p = 0; p < types.size(); ++p) {
    Part part{types[p], {}, colorings[p]};
    const std::string prefix = "P" + std::to_string(p) + ".";
    for (int k = 0; k < types[p].vertex_count(); ++k) {
      part.vertices.push_back(vertices.size());
      vertices.push_back({prefix + std::to_string(k), colorings[p][k], -2});
    }
    for (const auto& e : dynkin::edges_of(types[p]))
      edges.push_back({prefix + std::to_string(e.a), prefix + std::to_string(e.b), e.multiplicity});
    out.parts.push_back(std::move(part));
  }
  out.graph = ColoredGraph(d, std::move(vertices), std::move(edges));
  return out;
}

int color_sum(const ColoredGraph& g) {
  int s = 0;
  for (const auto& v : g.vertices()) s += v.color;
  return s;
}

}  // namespace

std::vector<std::vector<DynkinType>> parabolic_skeletons(int max_vertices) {
  if (max_vertices < 1 || max_vertices > 24) throw std::invalid_argument("max_vertices must lie in [1, 24]");
  Catalog cat(max_vertices);
  std::vector<std::vector<DynkinType>> out;
  std::vector<std::size_t> list;
  for (int total = 2; total <= max_vertices; ++total)
    for (bool ok = cat.first(list, total); ok; ok = cat.next(list, total)) {
      std::vector<DynkinType> s;
      for (auto i : list) s.push_back(cat.types[i]);
      out.push_back(std::move(s));
    }
  return out;
}

struct ParabolicStream::State {
  SearchConfig cfg;
  std::uint64_t limit;
  Catalog catalog;
  int total = 1;
  std::vector<std::size_t> skeleton;
  std::vector<DynkinType> types;
  std::vector<std::vector<int>> colorings;
  bool started = false;
  bool done = false;
  bool capped = false;
  std::uint64_t candidates = 0;

  State(const SearchConfig& c, std::uint64_t lim) : cfg(c), limit(lim), catalog(c.max_vertices) {}

  std::vector<int> lowest(std::size_t p) const {
    if (p > 0 && types[p] == types[p - 1]) return colorings[p - 1];
    return std::vector<int>(static_cast<std::size_t>(types[p].vertex_count()), 0);
  }

  void reset_colorings(std::size_t from) {
    for (std::size_t q = from; q < types.size(); ++q) colorings[q] = lowest(q);
  }

  void load_skeleton() {
    types.clear();
    for (auto i : skeleton) types.push_back(catalog.types[i]);
    colorings.assign(types.size(), {});
    reset_colorings(0);
  }

  bool next_skeleton() {
    if (total >= 2 && catalog.next(skeleton, total)) return true;
    while (++total <= cfg.max_vertices)
      if (catalog.first(skeleton, total)) return true;
    return false;
  }

  bool advance() {
    if (done) return false;
    if (!started) {
      started = true;
      if (!next_skeleton()) return done = true, false;
      load_skeleton();
      return true;
    }
    for (std::size_t p = types.size(); p-- > 0;) {
      const std::vector<int> caps(colorings[p].size(), cfg.d);
      if (next_orbit_minimum(colorings[p], caps, automorphisms_cached(types[p]))) {
        reset_colorings(p + 1);
        return true;
      }
    }
    if (!next_skeleton()) return done = true, false;
    load_skeleton();
    return true;
  }
};

ParabolicStream::ParabolicStream(const SearchConfig& cfg, std::uint64_t candidate_limit) {
  cfg.validate();
  state_ = std::make_unique<State>(cfg, candidate_limit);
}
ParabolicStream::~ParabolicStream() = default;
ParabolicStream::ParabolicStream(ParabolicStream&&) noexcept = default;
ParabolicStream& ParabolicStream::operator=(ParabolicStream&&) noexcept = default;

std::uint64_t ParabolicStream::candidates() const { return state_->candidates; }
bool ParabolicStream::capped() const { return state_->capped; }

std::optional<ParabolicGraph> ParabolicStream::next() {
  State& s = *state_;
  while (true) {
    if (s.candidates >= s.limit) {
      // Only a cap if there was anything left to look at.
      if (!s.done && s.advance()) {
        s.capped = true;
        s.done = true;
      }
      return std::nullopt;
    }
    if (!s.advance()) return std::nullopt;
    ++s.candidates;
    ParabolicGraph pg = build_graph(s.cfg.d, s.types, s.colorings);
    if (s.cfg.color_budget && color_sum(pg.graph) > *s.cfg.color_budget) continue;
    if (!fano::admissible(pg.graph, 1).ok) continue;
    return pg;
  }
}

ParabolicEnumeration enumerate_parabolic(const SearchConfig& cfg) {
  ParabolicStream stream(cfg, cfg.node_limit);
  ParabolicEnumeration out;
  while (auto pg = stream.next()) out.graphs.push_back(std::move(pg->graph));
  out.nodes_explored = stream.candidates();
  out.exhausted = !stream.capped();
  return out;
}

namespace {

// A bijection catalog vertex -> graph vertex for one component.
bool match_component(const ColoredGraph& g, const SymmetricForm& pattern, const std::vector<std::size_t>& component,
                     std::vector<std::size_t>& image) {
  const std::size_t k = pattern.dim();
  std::vector<std::size_t> order{0};
  std::vector<std::size_t> anchor{0};
  std::vector<bool> seen(k, false);
  seen[0] = true;
  for (std::size_t q = 0; q < order.size(); ++q)
    for (std::size_t u = 0; u < k; ++u)
      if (!seen[u] && pattern(order[q], u) != 0) {
        seen[u] = true;
        order.push_back(u);
        anchor.push_back(order[q]);
      }
  image.assign(k, g.size());
  std::vector<bool> used(g.size(), false);

  auto consistent = [&](std::size_t u, std::size_t x) {
    for (std::size_t w = 0; w < k; ++w)
      if (image[w] != g.size() && pattern(u, w) != g.multiplicity(x, image[w])) return false;
    return true;
  };
  auto place = [&](auto&& self, std::size_t q) -> bool {
    if (q == k) return true;
    const std::size_t u = order[q];
    std::vector<std::size_t> options;
    if (q == 0) {
      options = component;
    } else {
      for (std::size_t x : component)
        if (g.multiplicity(image[anchor[q]], x) > 0) options.push_back(x);
    }
    for (std::size_t x : options) {
      if (used[x] || !consistent(u, x)) continue;
      image[u] = x;
      used[x] = true;
      if (self(self, q + 1)) return true;
      image[u] = g.size();
      used[x] = false;
    }
    return false;
  };
  return place(place, 0);
}

}  // namespace

ParabolicGraph describe_parabolic(const ColoredGraph& g) {
  if (!g.all_squares_minus_two()) throw std::invalid_argument("describe_parabolic: all squares must be -2");
  if (fano::classify(g) != fano::GraphClass::Parabolic)
    throw std::invalid_argument("describe_parabolic: graph is not parabolic");

  const SymmetricForm form = fano::gram(g);
  std::vector<int> comp(g.size(), -1);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<std::size_t> members{s};
    comp[s] = static_cast<int>(components.size());
    for (std::size_t q = 0; q < members.size(); ++q)
      for (std::size_t w = 0; w < g.size(); ++w)
        if (comp[w] < 0 && g.multiplicity(members[q], w) > 0) {
          comp[w] = comp[s];
          members.push_back(w);
        }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }

  ParabolicGraph out{g, {}};
  for (const auto& members : components) {
    auto type = dynkin::recognize(form.restrict_to(members));
    if (!type) throw std::invalid_argument("describe_parabolic: component is not an (extended) Dynkin diagram");
    std::vector<std::size_t> image;
    if (!match_component(g, dynkin::gram_of(*type), members, image))
      throw std::logic_error("describe_parabolic: no isomorphism onto " + type->name());
    Part best{*type, {}, {}};
    for (const auto& s : automorphisms_cached(*type)) {
      std::vector<std::size_t> verts(image.size());
      std::vector<int> colors(image.size());
      for (std::size_t k = 0; k < image.size(); ++k) {
        verts[k] = image[static_cast<std::size_t>(s[k])];
        colors[k] = g.vertex(verts[k]).color;
      }
      if (best.vertices.empty() || colors < best.coloring) {
        best.vertices = std::move(verts);
        best.coloring = std::move(colors);
      }
    }
    out.parts.push_back(std::move(best));
  }
  std::sort(out.parts.begin(), out.parts.end(), [](const Part& a, const Part& b) {
    return std::tie(a.type, a.coloring, a.vertices) < std::tie(b.type, b.coloring, b.vertices);
  });
  return out;
}

namespace {

struct ExtensionRun {
  std::uint64_t nodes = 0;
  bool complete = true;
};

// Walks the canonical extension candidates of `base` in a fixed order,
// calling `visit` on each hyperbolic one. Stops after `cap` candidates.
ExtensionRun for_each_extension(const ParabolicGraph& base, const SearchConfig& cfg, std::uint64_t cap,
                                const std::function<void(const ColoredGraph&)>& visit) {
  ExtensionRun run;
  const std::size_t parts = base.parts.size();
  std::vector<std::vector<Perm>> stabilizer(parts);
  std::vector<bool> same_as_previous(parts, false);
  for (std::size_t p = 0; p < parts; ++p) {
    for (const auto& s : automorphisms_cached(base.parts[p].type))
      if (permuted(base.parts[p].coloring, s) == base.parts[p].coloring) stabilizer[p].push_back(s);
    same_as_previous[p] = p > 0 && base.parts[p].type == base.parts[p - 1].type &&
                          base.parts[p].coloring == base.parts[p - 1].coloring;
  }
  const int base_colors = color_sum(base.graph);

  for (int c = 0; c <= cfg.d && run.complete; ++c) {
    if (cfg.color_budget && base_colors + c > *cfg.color_budget) break;
    std::vector<std::vector<int>> caps(parts), blocks(parts);
    for (std::size_t p = 0; p < parts; ++p)
      for (int color : base.parts[p].coloring) {
        int m = std::min(2, (c + 1) * (color + 1));
        if (c == 0 && color == 0) m = std::min(m, 1);
        caps[p].push_back(m);
      }
    std::vector<int> mult(base.graph.size(), 0);

    auto recurse = [&](auto&& self, std::size_t p) -> void {
      if (!run.complete) return;
      if (p == parts) {
        if (run.nodes >= cap) {
          run.complete = false;
          return;
        }
        ++run.nodes;
        for (std::size_t q = 0; q < parts; ++q)
          for (std::size_t k = 0; k < blocks[q].size(); ++k) mult[base.parts[q].vertices[k]] = blocks[q][k];
        ColoredGraph g = base.graph.with_vertex({"v0", c, -2}, mult);
        if (fano::classify(g) == fano::GraphClass::Hyperbolic) visit(g);
        return;
      }
      blocks[p] = same_as_previous[p] ? blocks[p - 1] : std::vector<int>(caps[p].size(), 0);
      bool more = is_orbit_minimum(blocks[p], stabilizer[p]) || next_orbit_minimum(blocks[p], caps[p], stabilizer[p]);
      for (; more && run.complete; more = next_orbit_minimum(blocks[p], caps[p], stabilizer[p])) self(self, p + 1);
    };
    recurse(recurse, 0);
  }
  return run;
}

struct Best {
  std::optional<BigRat> square;
  std::string text;
  std::optional<ColoredGraph> graph;

  void offer(const BigRat& sq, const ColoredGraph& g) {
    std::string t = io::canonical_text(g);
    if (!square || sq > *square || (sq == *square && t < text)) {
      square = sq;
      text = std::move(t);
      graph = g;
    }
  }
  void merge(const Best& other) {
    if (other.square) offer(*other.square, *other.graph);
  }
};

struct UnitResult {
  Best best;
  std::uint64_t nodes = 0;
  bool complete = true;
};

UnitResult run_unit(const ParabolicGraph& base, const SearchConfig& cfg, std::uint64_t cap) {
  UnitResult out;
  if (cap == 0) {
    out.complete = false;
    return out;
  }
  out.nodes = 1;
  ExtensionRun run = for_each_extension(base, cfg, cap - 1, [&](const ColoredGraph& g) {
    auto pol = polar::intrinsic_polarization(g);
    if (pol.exists) out.best.offer(pol.square, g);
  });
  out.nodes += run.nodes;
  out.complete = run.complete;
  return out;
}

json config_json(const SearchConfig& cfg) {
  return {{"d", cfg.d},
          {"max_vertices", cfg.max_vertices},
          {"color_budget", cfg.color_budget ? json(*cfg.color_budget) : json(nullptr)}};
}

}  // namespace

std::vector<ColoredGraph> extend_hyperbolic(const ParabolicGraph& base, const SearchConfig& cfg) {
  cfg.validate();
  std::vector<ColoredGraph> out;
  for_each_extension(base, cfg, std::numeric_limits<std::uint64_t>::max(),
                     [&](const ColoredGraph& g) { out.push_back(g); });
  return out;
}

std::vector<ColoredGraph> extend_hyperbolic(const ColoredGraph& base, const SearchConfig& cfg) {
  if (base.index_of("v0")) throw std::invalid_argument("extend_hyperbolic: base already has a vertex 'v0'");
  return extend_hyperbolic(describe_parabolic(base), cfg);
}

json BoundCertificate::to_json() const {
  json j = config_json(config);
  j["node_limit"] =
      config.node_limit == std::numeric_limits<std::uint64_t>::max() ? json(nullptr) : json(config.node_limit);
  j["max_square"] = max_square ? io::to_json(*max_square) : json(nullptr);
  j["h_bound"] = max_square ? json(to_string(floor_div(*max_square / 2))) : json(nullptr);
  j["attaining_graph"] = attaining_graph ? io::to_json(*attaining_graph) : json(nullptr);
  j["nodes_explored"] = nodes_explored;
  j["units_explored"] = units_explored;
  j["exhausted"] = exhausted;
  return j;
}

json Checkpoint::to_json() const {
  json best = nullptr;
  if (best_square) best = {{"square", io::to_json(*best_square)}, {"graph", io::to_json(*best_graph)}};
  return {{"format", "k3lat-bound-checkpoint"},
          {"version", 1},
          {"config", config_json(config)},
          {"next_unit", next_unit},
          {"nodes_explored", nodes_explored},
          {"best", best}};
}

Checkpoint Checkpoint::from_json(const json& j) {
  try {
    if (j.at("format") != "k3lat-bound-checkpoint") throw std::invalid_argument("not a bound checkpoint");
    if (j.at("version") != 1) throw std::invalid_argument("unsupported checkpoint version");
    Checkpoint cp;
    const json& c = j.at("config");
    cp.config.d = c.at("d").get<int>();
    cp.config.max_vertices = c.at("max_vertices").get<int>();
    if (!c.at("color_budget").is_null()) cp.config.color_budget = c.at("color_budget").get<int>();
    cp.config.validate();
    cp.next_unit = j.at("next_unit").get<std::uint64_t>();
    cp.nodes_explored = j.at("nodes_explored").get<std::uint64_t>();
    const json& best = j.at("best");
    if (!best.is_null()) {
      cp.best_square = parse_rational(best.at("square").get<std::string>());
      cp.best_graph = io::graph_from_json(best.at("graph"));
    }
    return cp;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed checkpoint: ") + e.what());
  }
}

BoundCertificate effective_bound(const SearchConfig& cfg, const Checkpoint* resume,
                                 const std::function<void(const Checkpoint&)>& on_checkpoint) {
  cfg.validate();
  BoundCertificate cert;
  cert.config = cfg;
  Best best;
  ParabolicStream stream(cfg);

  if (resume) {
    if (config_json(resume->config) != config_json(cfg))
      throw std::invalid_argument("checkpoint was written for a different search configuration");
    for (std::uint64_t i = 0; i < resume->next_unit; ++i)
      if (!stream.next()) throw std::invalid_argument("checkpoint is past the end of the search space");
    cert.units_explored = resume->next_unit;
    cert.nodes_explored = resume->nodes_explored;
    if (resume->best_square) best.offer(*resume->best_square, *resume->best_graph);
  }

  auto snapshot = [&] {
    if (!on_checkpoint) return;
    Checkpoint cp;
    cp.config = cfg;
    cp.next_unit = cert.units_explored;
    cp.nodes_explored = cert.nodes_explored;
    cp.best_square = best.square;
    cp.best_graph = best.graph;
    on_checkpoint(cp);
  };

  const std::size_t window = static_cast<std::size_t>(cfg.parallelism) * 4;
  bool stop = false;
  while (!stop) {
    std::vector<ParabolicGraph> units;
    while (units.size() < window) {
      auto pg = stream.next();
      if (!pg) break;
      units.push_back(std::move(*pg));
    }
    if (units.empty()) break;

    const std::uint64_t budget =
        cfg.node_limit > cert.nodes_explored ? cfg.node_limit - cert.nodes_explored : 0;
    std::vector<UnitResult> results(units.size());
    std::atomic<std::size_t> next_index{0};
    auto worker = [&] {
      for (std::size_t i = next_index++; i < units.size(); i = next_index++)
        results[i] = run_unit(units[i], cfg, budget);
    };
    const std::size_t threads = std::min<std::size_t>(cfg.parallelism, units.size());
    if (threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    for (std::size_t i = 0; i < units.size(); ++i) {
      const std::uint64_t remaining = cfg.node_limit - cert.nodes_explored;
      if (results[i].complete && results[i].nodes <= remaining) {
        best.merge(results[i].best);
        cert.nodes_explored += results[i].nodes;
        ++cert.units_explored;
        continue;
      }
      // The cap falls inside this unit: redo it with exactly what is left so
      // the partial result does not depend on how units were batched.
      UnitResult partial = run_unit(units[i], cfg, remaining);
      snapshot();
      best.merge(partial.best);
      cert.nodes_explored += partial.nodes;
      cert.exhausted = false;
      stop = true;
      break;
    }
    if (!stop) snapshot();
  }

  cert.max_square = best.square;
  cert.attaining_graph = best.graph;
  return cert;
}

}  // namespace k3lat::search
