// k3lat: command-line front end. Every command prints one JSON document on
// stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 invalid input, 2 inadmissible / failed check /
// infeasible, 3 search cap hit (partial certificate printed).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3lat/arith.hpp"
#include "k3lat/enumerator.hpp"
#include "k3lat/fano_graph.hpp"
#include "k3lat/graph_io.hpp"
#include "k3lat/mwl.hpp"
#include "k3lat/ns_model.hpp"
#include "k3lat/polarization.hpp"

using nlohmann::json;
using namespace k3lat;

namespace {

constexpr int kOk = 0, kInvalid = 1, kRejected = 2, kCapped = 3;

struct InputError : std::invalid_argument {
  InputError(std::string where, const std::string& what)
      : std::invalid_argument(what), where(std::move(where)) {}
  std::string where;
};

int emit(json j, int code = kOk) {
  j["schema"] = "k3lat.v1";
  std::cout << j.dump(2) << "\n";
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot read file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json parse_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path + ": byte " + std::to_string(e.byte), "malformed JSON");
  }
}

fano::ColoredGraph load_graph(const std::string& path) {
  try {
    return io::parse_graph(read_file(path));
  } catch (const io::GraphParseError& e) {
    std::string what = e.what();
    const std::string prefix = e.where() + ": ";
    if (what.starts_with(prefix)) what.erase(0, prefix.size());
    throw InputError(path + ": " + e.where(), what);
  }
}

json signature_json(const Signature& s) {
  return {{"n_plus", s.n_plus}, {"n_minus", s.n_minus}, {"n_zero", s.n_zero}};
}

json violations_json(const fano::AdmissibilityReport& rep) {
  json out = json::array();
  for (const auto& v : rep.violations)
    out.push_back({{"a", v.a}, {"b", v.b}, {"m", v.m}, {"rule", v.rule}, {"bound", to_string(v.bound)}});
  return out;
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError(path, "cannot write checkpoint");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice and graph computations for rational curves on K3 surfaces"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::function<int()> action;

  std::string graph_path, config_path, checkpoint_path;
  std::int64_t d = 0, h = 0, p = 0, N = 0, c0 = 0, a = 0, D = 0, n = 0;
  int r = 0, max_vertices = 0, color_budget = -1;
  unsigned parallelism = 1;
  std::uint64_t node_limit = 0;
  bool verify = false, with_forms = false;

  auto* classify = app.add_subcommand("classify", "Classify a colored graph by the signature of its Gram matrix");
  classify->add_option("--graph", graph_path, "Graph JSON file")->required();
  classify->add_option("--h", h, "Also check admissibility in degree 2h");
  classify->callback([&] {
    action = [&] {
      const auto g = load_graph(graph_path);
      const Signature sig = signature(fano::gram(g));
      json out{{"graph_hash", io::graph_hash(g)},
               {"class", fano::to_string(fano::classify(sig))},
               {"signature", signature_json(sig)}};
      if (fano::classify(sig) == fano::GraphClass::Elliptic && g.all_squares_minus_two()) {
        const auto dec = fano::decompose_elliptic(g);
        json parts = json::array();
        for (const auto& t : dec.parts) parts.push_back(t.name());
        out["decomposition"] = {{"parts", parts}, {"rank", dec.rank}, {"exceeds_rank_bound", dec.exceeds_rank_bound}};
      }
      bool small_mults = g.all_squares_minus_two();
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) small_mults = small_mults && g.multiplicity(i, j) <= 2;
      if (small_mults) {
        if (auto ext = fano::find_extended(g)) {
          json ids = json::array();
          for (auto v : ext->vertices) ids.push_back(g.vertex(v).id);
          out["extended"] = {{"type", ext->type.name()}, {"vertices", ids}};
        } else {
          out["extended"] = nullptr;
        }
      }
      int code = kOk;
      if (classify->count("--h")) {
        if (h < 1) throw InputError("--h", "h must be positive");
        const auto rep = fano::admissible(g, h, {.hyperbolic_regime = true});
        out["admissible"] = {{"h", h}, {"ok", rep.ok}, {"violations", violations_json(rep)}};
        if (!rep.ok) code = kRejected;
      }
      return emit(out, code);
    };
  });

  auto* polarize = app.add_subcommand("polarize", "Solve for the intrinsic polarization of a graph");
  polarize->add_option("--graph", graph_path, "Graph JSON file")->required();
  polarize->callback([&] {
    action = [&] {
      const auto g = load_graph(graph_path);
      const auto pol = polar::intrinsic_polarization(g);
      json ids = json::array();
      for (const auto& v : g.vertices()) ids.push_back(v.id);
      return emit({{"graph_hash", io::graph_hash(g)},
                   {"vertices", ids},
                   {"polarization",
                    {{"exists", pol.exists},
                     {"coeffs", pol.exists ? io::to_json(pol.coefficients) : json(nullptr)},
                     {"square", pol.exists ? io::to_json(pol.square) : json(nullptr)}}}});
    };
  });

  auto* bound = app.add_subcommand("bound", "Degree bound of one graph (--graph) or effective bound of a search");
  bound->add_option("--graph", graph_path, "Graph JSON file");
  bound->add_option("--d", d, "Degree cap");
  bound->add_option("--max-vertices", max_vertices, "Vertex cap of the parabolic part (<= 24)");
  bound->add_option("--color-budget", color_budget, "Cap on the total color");
  bound->add_option("--node-limit", node_limit, "Search node cap");
  bound->add_option("--parallelism", parallelism, "Worker threads");
  bound->add_option("--checkpoint", checkpoint_path, "Resume from / write to this checkpoint file");
  bound->callback([&] {
    action = [&] {
      if (bound->count("--graph")) {
        const auto g = load_graph(graph_path);
        json cert = polar::finiteness_certificate(g);
        return emit(cert, cert["status"] == "not-geometric" ? kRejected : kOk);
      }
      if (!bound->count("--d") || !bound->count("--max-vertices"))
        throw InputError("bound", "either --graph or both --d and --max-vertices are required");
      search::SearchConfig cfg;
      cfg.d = static_cast<int>(d);
      cfg.max_vertices = max_vertices;
      if (bound->count("--color-budget")) cfg.color_budget = color_budget;
      if (bound->count("--node-limit")) cfg.node_limit = node_limit;
      cfg.parallelism = parallelism;
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw InputError("config", e.what());
      }
      std::optional<search::Checkpoint> resume;
      std::function<void(const search::Checkpoint&)> save;
      if (!checkpoint_path.empty()) {
        if (std::filesystem::exists(checkpoint_path)) {
          try {
            resume = search::Checkpoint::from_json(parse_json_file(checkpoint_path));
          } catch (const InputError&) {
            throw;
          } catch (const std::invalid_argument& e) {
            throw InputError(checkpoint_path, e.what());
          }
          std::cerr << "resuming at unit " << resume->next_unit << "\n";
        }
        save = [&](const search::Checkpoint& cp) { write_atomically(checkpoint_path, cp.to_json().dump(2) + "\n"); };
      }
      search::BoundCertificate cert;
      try {
        cert = search::effective_bound(cfg, resume ? &*resume : nullptr, save);
      } catch (const std::invalid_argument& e) {
        throw InputError(checkpoint_path.empty() ? "config" : checkpoint_path, e.what());
      }
      return emit(cert.to_json(), cert.exhausted ? kOk : kCapped);
    };
  });

  auto* enumerate = app.add_subcommand("enumerate", "List colored parabolic graphs, or extensions of one (--graph)");
  enumerate->add_option("--graph", graph_path, "Parabolic base graph; prints its hyperbolic one-vertex extensions");
  enumerate->add_option("--d", d, "Degree cap");
  enumerate->add_option("--max-vertices", max_vertices, "Vertex cap (<= 24)");
  enumerate->add_option("--color-budget", color_budget, "Cap on the total color");
  enumerate->add_option("--node-limit", node_limit, "Cap on colorings examined");
  enumerate->callback([&] {
    action = [&] {
      search::SearchConfig cfg;
      if (enumerate->count("--color-budget")) cfg.color_budget = color_budget;
      if (enumerate->count("--node-limit")) cfg.node_limit = node_limit;
      if (enumerate->count("--graph")) {
        const auto g = load_graph(graph_path);
        cfg.d = g.degree_cap();
        cfg.max_vertices = std::min<int>(24, std::max<int>(1, static_cast<int>(g.size())));
        std::vector<fano::ColoredGraph> ext;
        try {
          ext = search::extend_hyperbolic(g, cfg);
        } catch (const std::invalid_argument& e) {
          throw InputError(graph_path, e.what());
        }
        json graphs = json::array();
        for (const auto& x : ext) graphs.push_back(io::to_json(x));
        return emit({{"base_hash", io::graph_hash(g)}, {"count", ext.size()}, {"extensions", graphs}});
      }
      if (!enumerate->count("--d") || !enumerate->count("--max-vertices"))
        throw InputError("enumerate", "either --graph or both --d and --max-vertices are required");
      cfg.d = static_cast<int>(d);
      cfg.max_vertices = max_vertices;
      try {
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        throw InputError("config", e.what());
      }
      const auto res = search::enumerate_parabolic(cfg);
      json graphs = json::array();
      for (const auto& g : res.graphs) graphs.push_back(io::to_json(g));
      return emit({{"d", cfg.d},
                   {"max_vertices", cfg.max_vertices},
                   {"count", res.graphs.size()},
                   {"graphs", graphs},
                   {"nodes_explored", res.nodes_explored},
                   {"exhausted", res.exhausted}},
                  res.exhausted ? kOk : kCapped);
    };
  });

  auto* witness = app.add_subcommand("witness", "Lattice witnesses for the existence constructions");
  witness->require_subcommand(1);
  auto* w_iii = witness->add_subcommand("iii", "U + A_r + <-2c0> witness in degree 2h with r curves of degree 0");
  w_iii->add_option("--d", d)->required();
  w_iii->add_option("--h", h)->required();
  w_iii->add_option("--r", r)->required();
  w_iii->add_option("--p", p, "Characteristic (informational)");
  w_iii->add_flag("--verify", verify, "Recompute every number by intersecting classes");
  w_iii->callback([&] {
    action = [&] {
      ns::WitnessIII w;
      try {
        w = ns::witness_iii(d, h, r, verify);
      } catch (const std::invalid_argument& e) {
        throw InputError("witness iii", e.what());
      }
      json out = w.to_json();
      if (w_iii->count("--p")) out["p"] = p;
      out["method"] = verify ? "intersection" : "formula";
      return emit(out, w.checks.ok ? kOk : kRejected);
    };
  });
  auto* w_unc = witness->add_subcommand("unconditional", "Witness from the two-I8/four-I2 fibration, h >= 2d^2+d+1");
  w_unc->add_option("--d", d)->required();
  w_unc->add_option("--h", h)->required();
  w_unc->add_option("--p", p)->required();
  w_unc->add_option("--r", r)->required();
  w_unc->add_flag("--verify", verify, "Recompute every number by intersecting classes");
  w_unc->callback([&] {
    action = [&] {
      ns::WitnessUnconditional w;
      try {
        w = ns::witness_unconditional(d, h, p, r, verify);
      } catch (const ns::Infeasible& e) {
        return emit({{"d", d}, {"h", h}, {"p", p}, {"r", r}, {"infeasible", e.what()}}, kRejected);
      } catch (const std::invalid_argument& e) {
        throw InputError("witness unconditional", e.what());
      }
      json out = w.to_json();
      out["method"] = verify ? "intersection" : "formula";
      return emit(out, w.checks.ok ? kOk : kRejected);
    };
  });
  auto* w_a17 = witness->add_subcommand("a17", "Index 3 overlattice of A17 inside U + A17 + <-2c0>");
  w_a17->add_option("--c0", c0)->required();
  w_a17->callback([&] {
    action = [&] {
      if (c0 < 2) throw InputError("--c0", "c0 must be at least 2");
      const auto o = ns::overlattice_a17(c0);
      const bool ok = o.det_before == 9 * o.det_after && o.glue_square == -4 && o.glue_integral && o.triple_in_lattice;
      json out = o.to_json();
      out["ok"] = ok;
      return emit(out, ok ? kOk : kRejected);
    };
  });

  auto* ns_check = app.add_subcommand("ns-check", "Ampleness checks for H = NF + dO + v in U + A_r + <-2c0>");
  ns_check->add_option("--N", N)->required();
  ns_check->add_option("--d", d)->required();
  ns_check->add_option("--c0", c0)->required();
  ns_check->add_option("--r", r, "Rank of the A_r fibre lattice (default 1)")->default_val(1);
  ns_check->callback([&] {
    action = [&] {
      if (d < 3) throw InputError("--d", "d must be at least 3 (fibres need H.F = d > 2)");
      ns::NSModel model;
      try {
        model = ns::NSModel::elliptic_with_section(r, c0);
      } catch (const std::invalid_argument& e) {
        throw InputError("ns-check", e.what());
      }
      model.self_check();
      const auto rep = ns::quasi_ample_check(model, N, d);
      const bool gate = N > std::max(2 * d, c0 + 1);
      return emit({{"N", N},
                   {"d", d},
                   {"c0", c0},
                   {"r", r},
                   {"gate", gate},
                   {"ok", rep.ok},
                   {"checks", rep.to_json()}},
                  rep.ok ? kOk : kRejected);
    };
  });

  auto* mwl_cmd = app.add_subcommand("mwl", "Mordell-Weil heights and pairings");
  mwl_cmd->add_option("--config", config_path, "Configuration JSON file");
  auto* mwl_claim = mwl_cmd->add_subcommand("claim", "Height computations on I12 + 2 I3 + 2 I2 + 2 I1");
  mwl_claim->callback([&] {
    action = [&] {
      const auto rep = mwl::verify_height8_claim();
      return emit(rep.to_json(), rep.ok ? kOk : kRejected);
    };
  });
  mwl_cmd->callback([&] {
    if (action) return;
    action = [&] {
      if (config_path.empty()) throw InputError("mwl", "--config or the 'claim' subcommand is required");
      mwl::ParsedConfiguration pc;
      try {
        pc = mwl::parse_configuration(parse_json_file(config_path));
      } catch (const InputError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw InputError(config_path, e.what());
      }
      json out{{"euler_number", pc.cfg.euler_number()}, {"height_P", to_string(mwl::height(pc.cfg, pc.P))}};
      if (pc.Q) {
        out["height_Q"] = to_string(mwl::height(pc.cfg, *pc.Q));
        if (pc.pq) out["pairing"] = to_string(mwl::pairing(pc.cfg, pc.P, *pc.Q, *pc.pq));
      }
      return emit(out);
    };
  });

  auto* ar = app.add_subcommand("arith", "Number-theoretic helpers");
  ar->require_subcommand(1);
  auto wrap = [&](std::function<json()> f) {
    action = [f] {
      try {
        return emit(f());
      } catch (const std::invalid_argument& e) {
        throw InputError("arith", e.what());
      }
    };
  };
  auto* leg = ar->add_subcommand("legendre", "Legendre symbol (a/p)");
  leg->add_option("--a", a)->required();
  leg->add_option("--p", p)->required();
  leg->callback([&] { wrap([&] { return json{{"a", a}, {"p", p}, {"legendre", arith::legendre(a, p)}}; }); });
  auto* pz = ar->add_subcommand("p0", "Smallest prime not dividing 2d");
  pz->add_option("--d", d)->required();
  pz->callback([&] { wrap([&] { return json{{"d", d}, {"p0", arith::p0(d)}}; }); });
  auto* shift = ar->add_subcommand("shift", "Least shift c0 + jd that is a non-square (mod p with --p)");
  shift->add_option("--c0", c0)->required();
  shift->add_option("--d", d)->required();
  shift->add_option("--p", p);
  shift->callback([&] {
    wrap([&] {
      const bool modp = shift->count("--p") > 0;
      const auto s = modp ? arith::nonsquare_shift_mod_p(c0, d, p) : arith::nonsquare_shift(c0, d);
      json out{{"c0", c0}, {"d", d}, {"j", s.j}, {"c0_prime", s.value}};
      if (modp) out["p"] = p;
      else out["p0"] = arith::p0(d);
      return out;
    });
  });
  auto* fs = ar->add_subcommand("four-squares", "Descending four-square representation");
  fs->add_option("--c0,--n", n)->required();
  fs->callback([&] {
    wrap([&] {
      const auto s = arith::four_squares(n);
      return json{{"n", n}, {"squares", s}};
    });
  });
  auto* rs = ar->add_subcommand("r-split", "Lexicographically greatest r = r1 + r2 + r3");
  rs->add_option("--r", r)->required();
  rs->add_option("--p", p)->required();
  rs->callback([&] {
    action = [&] {
      try {
        const auto s = arith::r_split(r, p);
        return emit({{"r", r}, {"p", p}, {"split", s ? json(*s) : json(nullptr)}}, s ? kOk : kRejected);
      } catch (const std::invalid_argument& e) {
        throw InputError("arith r-split", e.what());
      }
    };
  });
  auto* gz = ar->add_subcommand("gz", "p^2 > 16 c0");
  gz->add_option("--p", p)->required();
  gz->add_option("--c0", c0)->required();
  gz->callback([&] { wrap([&] { return json{{"p", p}, {"c0", c0}, {"gate", arith::gz_gate(p, c0)}}; }); });
  auto* cn = ar->add_subcommand("class-number", "Class number of a negative discriminant");
  cn->add_option("--D", D)->required();
  cn->add_flag("--forms", with_forms, "List every reduced form");
  cn->callback([&] {
    wrap([&] {
      json out{{"D", D}, {"class_number", arith::class_number(D)}};
      if (with_forms) {
        json forms = json::array();
        for (const auto& f : arith::reduced_forms(D))
          forms.push_back({{"a", f.a}, {"b", f.b}, {"c", f.c}, {"primitive", std::gcd(std::gcd(f.a, std::abs(f.b)), f.c) == 1}});
        out["reduced_forms"] = forms;
      }
      return out;
    });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return emit({{"error", {{"where", "arguments"}, {"message", e.what()}}}}, kInvalid);
  }

  try {
    return action ? action() : kInvalid;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.where << ": " << e.what() << "\n";
    return emit({{"error", {{"where", e.where}, {"message", e.what()}}}}, kInvalid);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return emit({{"error", {{"where", "internal"}, {"message", e.what()}}}}, kInvalid);
  }
}
