#include "k3lat/mwl.hpp"

#include <stdexcept>

namespace k3lat::mwl {

using nlohmann::json;

std::string Fibre::name() const {
  switch (type) {
    case Kodaira::I: return "I" + std::to_string(n);
    case Kodaira::Istar: return "I" + std::to_string(n) + "*";
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::IVstar: return "IV*";
    case Kodaira::IIIstar: return "III*";
    case Kodaira::IIstar: return "II*";
  }
  return "?";
}

int Fibre::simple_components() const {
  switch (type) {
    case Kodaira::I: return n;
    case Kodaira::Istar: return 4;
    case Kodaira::II:
    case Kodaira::IIstar: return 1;
    case Kodaira::III:
    case Kodaira::IIIstar: return 2;
    case Kodaira::IV:
    case Kodaira::IVstar: return 3;
  }
  return 0;
}

int Fibre::euler_number() const {
  switch (type) {
    case Kodaira::I: return n;
    case Kodaira::Istar: return n + 6;
    case Kodaira::II: return 2;
    case Kodaira::III: return 3;
    case Kodaira::IV: return 4;
    case Kodaira::IVstar: return 8;
    case Kodaira::IIIstar: return 9;
    case Kodaira::IIstar: return 10;
  }
  return 0;
}

Fibre parse_fibre(const std::string& name) {
  if (name == "II") return {Kodaira::II, 0};
  if (name == "III") return {Kodaira::III, 0};
  if (name == "IV") return {Kodaira::IV, 0};
  if (name == "IV*") return {Kodaira::IVstar, 0};
  if (name == "III*") return {Kodaira::IIIstar, 0};
  if (name == "II*") return {Kodaira::IIstar, 0};
  if (name.size() >= 2 && name[0] == 'I') {
    const bool star = name.back() == '*';
    const std::string digits = name.substr(1, name.size() - 1 - (star ? 1 : 0));
    if (!digits.empty() && digits.size() < 6 && digits.find_first_not_of("0123456789") == std::string::npos) {
      const int n = std::stoi(digits);
      if (star) return {Kodaira::Istar, n};
      if (n >= 1) return {Kodaira::I, n};
    }
  }
  throw std::invalid_argument("unknown fibre type '" + name + "'");
}

namespace {

void check_component(const Fibre& f, int i) {
  if (f.type == Kodaira::I && f.n < 1) throw std::invalid_argument("I_n needs n >= 1");
  if (f.type == Kodaira::Istar && f.n < 0) throw std::invalid_argument("I_n* needs n >= 0");
  if (i < 0 || i >= f.simple_components())
    throw std::invalid_argument("component " + std::to_string(i) + " is not a simple component of " + f.name());
}

}  // namespace

BigRat contribution(const Fibre& f, int i) { return pair_contribution(f, i, i); }

BigRat pair_contribution(const Fibre& f, int i, int j) {
  check_component(f, i);
  check_component(f, j);
  if (i > j) std::swap(i, j);
  if (i == 0) return 0;
  switch (f.type) {
    case Kodaira::I: {
      BigRat q(static_cast<long>(i) * (f.n - j), f.n);
      q.canonicalize();
      return q;
    }
    case Kodaira::Istar: {
      BigRat quarter(f.n, 4);
      quarter.canonicalize();
      if (i == j) return i == 1 ? BigRat(1) : BigRat(1) + quarter;
      if (i == 1) return BigRat(1, 2);
      return BigRat(1, 2) + quarter;
    }
    case Kodaira::III: return BigRat(1, 2);
    case Kodaira::IIIstar: return BigRat(3, 2);
    case Kodaira::IV: return i == j ? BigRat(2, 3) : BigRat(1, 3);
    case Kodaira::IVstar: return i == j ? BigRat(4, 3) : BigRat(2, 3);
    case Kodaira::II:
    case Kodaira::IIstar: return 0;
  }
  return 0;
}

int Configuration::euler_number() const {
  int e = 0;
  for (const auto& f : fibres) e += f.euler_number();
  return e;
}

namespace {

void check_section(const Configuration& cfg, const Section& s, const char* label) {
  if (s.components.size() != cfg.fibres.size())
    throw std::invalid_argument(std::string("section ") + label + ": expected one component per fibre");
  if (s.po < 0) throw std::invalid_argument(std::string("section ") + label + ": intersection with O is negative");
}

}  // namespace

BigRat height(const Configuration& cfg, const Section& P, int chi) {
  check_section(cfg, P, "P");
  BigRat h(2 * chi + 2 * P.po);
  for (std::size_t v = 0; v < cfg.fibres.size(); ++v) h -= contribution(cfg.fibres[v], P.components[v]);
  return h;
}

BigRat pairing(const Configuration& cfg, const Section& P, const Section& Q, std::int64_t pq, int chi) {
  check_section(cfg, P, "P");
  check_section(cfg, Q, "Q");
  if (pq < -chi) throw std::invalid_argument("(P.Q) below -chi");
  BigRat h(chi + P.po + Q.po - pq);
  for (std::size_t v = 0; v < cfg.fibres.size(); ++v)
    h -= pair_contribution(cfg.fibres[v], P.components[v], Q.components[v]);
  return h;
}

json Height8Report::to_json() const {
  return {{"height_two", to_string(height_two)},
          {"torsion_height", to_string(torsion_height)},
          {"pairing_at_pq_zero", to_string(pairing_at_pq_zero)},
          {"pairing_formula", "-1 - (P.Q)"},
          {"contradiction", contradiction},
          {"height_eight", to_string(height_eight)},
          {"identity_height", to_string(identity_height)},
          {"identity_po_for_height8", identity_po_for_height8},
          {"ok", ok}};
}

Height8Report verify_height8_claim() {
  Configuration cfg{{{Kodaira::I, 12}, {Kodaira::I, 3}, {Kodaira::I, 3}, {Kodaira::I, 2}, {Kodaira::I, 2},
                     {Kodaira::I, 1}, {Kodaira::I, 1}}};
  const std::vector<int> opposite{6, 0, 0, 1, 1, 0, 0};
  Height8Report rep;
  const Section P{1, opposite}, Q{0, opposite};
  rep.height_two = height(cfg, P);
  rep.torsion_height = height(cfg, Q);
  rep.pairing_at_pq_zero = pairing(cfg, P, Q, 0);
  bool formula = true;
  for (std::int64_t pq = 0; pq <= 10; ++pq) formula = formula && pairing(cfg, P, Q, pq) == BigRat(-1 - pq);
  rep.contradiction = formula && rep.pairing_at_pq_zero <= -1;

  rep.height_eight = height(cfg, Section{4, opposite});
  rep.identity_height = height(cfg, Section{4, std::vector<int>(cfg.fibres.size(), 0)});
  // 4 + 2x = 8 for a section through identity components only.
  rep.identity_po_for_height8 = (8 - 4) / 2;
  const BigRat check = height(cfg, Section{rep.identity_po_for_height8, std::vector<int>(cfg.fibres.size(), 0)});

  rep.ok = cfg.euler_number() == 24 && rep.height_two == 2 && rep.torsion_height == 0 && rep.contradiction &&
           rep.height_eight == 8 && rep.identity_height == 12 && check == 8;
  return rep;
}

ParsedConfiguration parse_configuration(const json& j) {
  auto fail = [](const std::string& where, const std::string& what) -> void {
    throw std::invalid_argument(where + ": " + what);
  };
  auto get_int = [&](const json& obj, const std::string& where, const char* key) -> std::int64_t {
    if (!obj.contains(key)) fail(where + "/" + key, "missing required key");
    if (!obj[key].is_number_integer()) fail(where + "/" + key, "expected an integer");
    return obj[key].get<std::int64_t>();
  };
  if (!j.is_object()) fail("/", "expected an object");
  if (!j.contains("fibres") || !j["fibres"].is_array()) fail("/fibres", "expected an array");
  ParsedConfiguration out;
  out.P.po = get_int(j, "", "PO");
  bool has_q = j.contains("QO");
  if (has_q) out.Q = Section{get_int(j, "", "QO"), {}};
  if (j.contains("PQ")) out.pq = get_int(j, "", "PQ");
  for (std::size_t i = 0; i < j["fibres"].size(); ++i) {
    const json& f = j["fibres"][i];
    const std::string where = "/fibres/" + std::to_string(i);
    if (!f.is_object() || !f.contains("type") || !f["type"].is_string()) fail(where + "/type", "expected a string");
    std::string type = f["type"].get<std::string>();
    Fibre fibre;
    try {
      if (type == "I" || type == "I*") {
        const std::int64_t n = get_int(f, where, "n");
        fibre = parse_fibre("I" + std::to_string(n) + (type == "I*" ? "*" : ""));
      } else {
        fibre = parse_fibre(type);
      }
    } catch (const std::invalid_argument& e) {
      fail(where, e.what());
    }
    out.cfg.fibres.push_back(fibre);
    out.P.components.push_back(f.contains("P") ? static_cast<int>(get_int(f, where, "P")) : 0);
    if (out.Q) out.Q->components.push_back(f.contains("Q") ? static_cast<int>(get_int(f, where, "Q")) : 0);
    const int count = static_cast<int>(f.contains("count") ? get_int(f, where, "count") : 1);
    if (count < 1 || count > 24) fail(where + "/count", "count must lie in [1, 24]");
    for (int c = 1; c < count; ++c) {
      out.cfg.fibres.push_back(fibre);
      out.P.components.push_back(out.P.components.back());
      if (out.Q) out.Q->components.push_back(out.Q->components.back());
    }
    for (int c : {out.P.components.back(), out.Q ? out.Q->components.back() : 0})
      if (c < 0 || c >= fibre.simple_components()) fail(where, "component index out of range for " + fibre.name());
  }
  return out;
}

}  // namespace k3lat::mwl
