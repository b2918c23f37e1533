// Copyright 2026 The gsc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gsc/serialize.hpp"

#include <cctype>
#include <cmath>
#include <regex>

#include "gsc/errors.hpp"

namespace gsc {

namespace {

double round9(double x) { return std::round(x * 1e9) / 1e9; }

nlohmann::json cplx_json(cplx z) { return nlohmann::json::array({round9(z.real()), round9(z.imag())}); }

int positive_param(const nlohmann::json& p, const char* key) {
  if (!p.contains(key) || !p[key].is_number_integer()) throw InvalidSpec(std::string("missing integer param '") + key + "'");
  int v = p[key].get<int>();
  if (v < 1) throw InvalidSpec(std::string("param '") + key + "' must be positive");
  return v;
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> allowed, const std::string& what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw InvalidSpec("unknown field '" + it.key() + "' in " + what);
  }
}

}  // namespace

nlohmann::json group_spec_to_json(const GroupSpec& s) {
  using K = GroupSpec::Kind;
  nlohmann::json p = nlohmann::json::object();
  std::string v;
  switch (s.kind) {
    case K::Cyclic: v = "cyclic"; p["n"] = s.n; break;
    case K::Dihedral: v = "dihedral"; p["n"] = s.n; break;
    case K::Symmetric: v = "symmetric"; p["n"] = s.n; break;
    case K::Alternating: v = "alternating"; p["n"] = s.n; break;
    case K::DirectProduct: {
      v = "direct_product";
      auto& f = p["factors"] = nlohmann::json::array();
      for (const auto& x : s.factors) f.push_back(group_spec_to_json(x));
      break;
    }
    case K::PermGenerated: {
      v = "perm";
      p["degree"] = s.degree;
      auto& g = p["generators"] = nlohmann::json::array();
      for (const auto& x : s.generators) g.push_back(perm_to_cycles(x));
      break;
    }
    case K::Named:
      v = "named";
      p["name"] = s.name;
      if (s.name == "GCnX") p["n"] = s.n;
      break;
  }
  return {{"variant", v}, {"params", p}};
}

GroupSpec group_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
    throw InvalidSpec("group spec needs a string 'variant'");
  reject_unknown(j, {"variant", "params"}, "group spec");
  const auto v = j["variant"].get<std::string>();
  const nlohmann::json p = j.value("params", nlohmann::json::object());
  if (!p.is_object()) throw InvalidSpec("group spec 'params' must be an object");
  if (v == "cyclic") return GroupSpec::cyclic(positive_param(p, "n"));
  if (v == "dihedral") return GroupSpec::dihedral(positive_param(p, "n"));
  if (v == "symmetric") return GroupSpec::symmetric(positive_param(p, "n"));
  if (v == "alternating") return GroupSpec::alternating(positive_param(p, "n"));
  if (v == "direct_product") {
    if (!p.contains("factors") || !p["factors"].is_array()) throw InvalidSpec("direct_product needs 'factors'");
    std::vector<GroupSpec> f;
    for (const auto& x : p["factors"]) f.push_back(group_spec_from_json(x));
    return GroupSpec::direct_product(std::move(f));
  }
  if (v == "perm") {
    int degree = positive_param(p, "degree");
    std::vector<Perm> gens;
    for (const auto& g : p.value("generators", nlohmann::json::array())) {
      if (g.is_string())
        gens.push_back(perm_from_cycles(g.get<std::string>(), degree));
      else
        gens.push_back(g.get<Perm>());
      if (!perm_is_bijection(gens.back(), degree)) throw InvalidSpec("generator is not a permutation");
    }
    return GroupSpec::perm_generated(degree, std::move(gens));
  }
  if (v == "named") {
    auto name = p.value("name", std::string());
    if (name == "GCnX") return GroupSpec::named(name, p.value("n", 1));
    if (name == "D4_abc" || name == "GCCX") return GroupSpec::named(name);
    throw InvalidSpec("unknown named group '" + name + "'");
  }
  throw InvalidSpec("unknown group variant '" + v + "'");
}

GroupSpec parse_group_spec(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw InvalidSpec("empty group spec");
  if (t.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(t);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidSpec(std::string("bad group spec JSON: ") + e.what());
    }
    return group_spec_from_json(j);
  }
  if (t == "D4_abc" || t == "GCCX") return GroupSpec::named(t);
  static const std::regex gcnx("GC([0-9]+)X");
  static const std::regex simple("([ZDSA])([0-9]+)");
  std::smatch m;
  if (std::regex_match(t, m, gcnx)) return GroupSpec::named("GCnX", std::stoi(m[1]));
  if (t.find('x') != std::string::npos) {
    std::vector<GroupSpec> f;
    std::size_t start = 0;
    while (start <= t.size()) {
      auto end = t.find('x', start);
      if (end == std::string::npos) end = t.size();
      f.push_back(parse_group_spec(t.substr(start, end - start)));
      start = end + 1;
    }
    return GroupSpec::direct_product(std::move(f));
  }
  if (std::regex_match(t, m, simple)) {
    int n = std::stoi(m[2]);
    if (n < 1) throw InvalidSpec("group parameter must be positive in '" + text + "'");
    switch (m[1].str()[0]) {
      case 'Z': return GroupSpec::cyclic(n);
      case 'D': return GroupSpec::dihedral(n);
      case 'S': return GroupSpec::symmetric(n);
      case 'A': return GroupSpec::alternating(n);
    }
  }
  throw InvalidSpec("cannot parse group spec '" + text + "'");
}

nlohmann::json group_table_to_json(const GroupTable& G) {
  nlohmann::json j;
  j["label"] = G.label();
  j["spec"] = group_spec_to_json(G.spec());
  j["order"] = G.order();
  j["identity"] = GroupTable::identity;
  std::vector<std::string> names;
  for (int g = 0; g < G.order(); ++g) names.push_back(G.name(g));
  j["names"] = names;
  auto& rows = j["mult"] = nlohmann::json::array();
  for (int a = 0; a < G.order(); ++a) {
    std::vector<int> row(G.order());
    for (int b = 0; b < G.order(); ++b) row[b] = G.mul(a, b);
    rows.push_back(row);
  }
  j["inv"] = G.inv_table();
  auto& al = j["aliases"] = nlohmann::json::object();
  for (const auto& [name, g] : G.aliases()) al[name] = g;
  return j;
}

nlohmann::json subgroup_to_json(const Subgroup& H) {
  nlohmann::json names = nlohmann::json::array();
  for (int h : H.members()) names.push_back(H.parent()->name(h));
  return {{"label", H.label}, {"order", H.size()}, {"members", H.members()}, {"names", names},
          {"normal", is_normal(H)}};
}

nlohmann::json classes_to_json(const GroupTable& G) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : conjugacy_classes(G)) {
    nlohmann::json names = nlohmann::json::array();
    for (int g : c) names.push_back(G.name(g));
    out.push_back({{"size", c.size()}, {"order", G.element_order(c.front())}, {"members", names}});
  }
  return out;
}

nlohmann::json character_table_to_json(const CharacterTable& T) {
  nlohmann::json j;
  j["group"] = T.G->label();
  auto& cls = j["classes"] = nlohmann::json::array();
  for (const auto& c : T.classes) cls.push_back({{"representative", T.G->name(c.front())}, {"size", c.size()}});
  auto& irr = j["irreps"] = nlohmann::json::array();
  for (int i = 0; i < T.num_irreps(); ++i) {
    nlohmann::json chi = nlohmann::json::array();
    for (const auto& z : T.chars[i]) chi.push_back(cplx_json(z));
    irr.push_back({{"label", T.labels[i]}, {"dim", T.dims[i]}, {"character", chi}});
  }
  return j;
}

nlohmann::json multiplicity_report(const GroupPtr& G, const SubgroupPtr& H) {
  auto rg = representations(G);
  auto rh = representations(H->as_group());
  nlohmann::json j;
  j["group"] = G->label();
  j["subgroup"] = subgroup_to_json(*H);
  auto& res = j["restriction"] = nlohmann::json::array();
  for (const auto& R : rg->irreps) {
    auto m = restrict_multiplicities(*H, R);
    nlohmann::json parts = nlohmann::json::object();
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k]) parts[rh->table.labels[k]] = m[k];
    res.push_back({{"irrep", R.label}, {"multiplicities", parts}, {"condenses", m[rh->trivial] >= 1}});
  }
  auto ind = induced_trivial_multiplicities(*H);
  nlohmann::json parts = nlohmann::json::object();
  std::string sum;
  for (std::size_t i = 0; i < ind.size(); ++i) {
    if (!ind[i]) continue;
    parts[rg->table.labels[i]] = ind[i];
    for (int k = 0; k < ind[i]; ++k) sum += (sum.empty() ? "" : "+") + rg->table.labels[i];
  }
  j["induced_trivial"] = {{"multiplicities", parts}, {"decomposition", sum}};
  return j;
}

nlohmann::json fusion_to_json(const FusionDecomposition& F, const CharacterTable& T) {
  nlohmann::json j;
  j["r1"] = T.labels[F.r1];
  j["r2"] = T.labels[F.r2];
  auto& s = j["summands"] = nlohmann::json::array();
  for (auto [irrep, mult] : F.summands) s.push_back({{"irrep", T.labels[irrep]}, {"multiplicity", mult}});
  j["layout"] = "row = i*d2 + j; column = (mu, nu, kappa) as listed";
  j["shape"] = {F.cg.rows, F.cg.cols};
  auto& cols = j["columns"] = nlohmann::json::array();
  for (auto [mu, nu, kappa] : F.columns) cols.push_back({T.labels[mu], nu, kappa});
  auto& data = j["data"] = nlohmann::json::array();
  for (const auto& z : F.cg.data) {
    data.push_back(round9(z.real()));
    data.push_back(round9(z.imag()));
  }
  return j;
}

nlohmann::json lattice_to_json(const Lattice& lat) {
  nlohmann::json j;
  j["vx"] = lat.vx();
  j["vy"] = lat.vy();
  auto& edges = j["edges"] = nlohmann::json::array();
  for (const auto& e : lat.edges())
    edges.push_back({{"id", e.id},
                     {"orientation", e.orient == Orientation::Right ? "right" : "up"},
                     {"row", e.row},
                     {"col", e.col},
                     {"tail", e.tail},
                     {"head", e.head},
                     {"dangling", e.dangling}});
  auto& plaq = j["plaquettes"] = nlohmann::json::array();
  for (const auto& p : lat.plaquettes()) {
    nlohmann::json cyc = nlohmann::json::array();
    for (const auto& pe : p.cycle) cyc.push_back({{"edge", pe.edge}, {"inverted", pe.inverted}});
    const char* kind = p.kind == Plaquette::Kind::Interior ? "interior"
                       : p.kind == Plaquette::Kind::LeftBoundary ? "left" : "right";
    plaq.push_back({{"id", p.id}, {"kind", kind}, {"row", p.row}, {"col", p.col}, {"base", p.base}, {"cycle", cyc}});
  }
  return j;
}

LatticePtr lattice_from_json(const nlohmann::json& j) {
  if (!j.contains("vx") || !j.contains("vy")) throw InvalidSpec("lattice JSON needs vx and vy");
  int vx = j["vx"].get<int>(), vy = j["vy"].get<int>();
  if (vx < 1 || vy < 1) throw InvalidSpec("lattice dimensions must be positive");
  auto lat = build_lattice(vx, vy);
  if (j.contains("edges") && j["edges"].size() != static_cast<std::size_t>(lat->num_edges()))
    throw InvalidSpec("lattice JSON edge count does not match its dimensions");
  return lat;
}

nlohmann::json configuration_to_json(const Configuration& config, const GroupTable& G) {
  nlohmann::json names = nlohmann::json::array();
  for (int g : config) names.push_back(G.name(g));
  return {{"values", config}, {"names", names}};
}

Configuration configuration_from_json(const nlohmann::json& j, const GroupTable& G) {
  Configuration c;
  if (j.contains("values")) {
    c = j["values"].get<Configuration>();
  } else if (j.contains("names")) {
    for (const auto& n : j["names"]) c.push_back(G.parse(n.get<std::string>()));
  } else {
    throw InvalidSpec("configuration JSON needs 'values' or 'names'");
  }
  for (int g : c)
    if (g < 0 || g >= G.order()) throw InvalidSpec("configuration value out of range");
  return c;
}

}  // namespace gsc
