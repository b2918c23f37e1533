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

#include "gsc/protocols.hpp"

#include <algorithm>
#include <cmath>

namespace gsc {

void ProtocolConfig::validate() const {
  if (max_attempts < 1) throw InvalidSpec("max_attempts must be at least 1");
  if (max_restarts < 1) throw InvalidSpec("max_restarts must be at least 1");
  if (seam_columns != 1) throw InvalidSpec("only one seam column per step is supported");
}

nlohmann::json RunReport::to_json() const {
  return {{"op", op}, {"restarts", restarts}, {"phases", phases}};
}

bool LogicalMap::is_permutation(double tol) const {
  std::map<std::vector<int>, int> seen;
  for (const auto& [in, out] : mapping) {
    int big = 0;
    for (const auto& [label, a] : out) {
      if (std::abs(std::abs(a) - 1.0) < tol) {
        ++big;
        if (seen[label]++) return false;
      } else if (std::abs(a) > tol) {
        return false;
      }
    }
    if (big != 1) return false;
  }
  return true;
}

std::map<std::vector<int>, std::vector<int>> LogicalMap::permutation(double tol) const {
  if (!is_permutation(tol)) throw NotBijective("logical map is not a permutation");
  std::map<std::vector<int>, std::vector<int>> out;
  for (const auto& [in, o] : mapping)
    for (const auto& [label, a] : o)
      if (std::abs(a) > 0.5) out[in] = label;
  return out;
}

nlohmann::json LogicalMap::to_json(const GroupTable& G) const {
  auto names = [&](const std::vector<int>& t) {
    nlohmann::json a = nlohmann::json::array();
    for (int g : t) a.push_back(G.name(g));
    return a;
  };
  nlohmann::json j;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["is_permutation"] = is_permutation();
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& [in, out] : mapping) {
    nlohmann::json row;
    row["in"] = names(in);
    auto& o = row["out"] = nlohmann::json::array();
    for (const auto& [label, a] : out) {
      // Rounded so that reports are reproducible byte for byte.
      double re = std::round(a.real() * 1e9) / 1e9, im = std::round(a.imag() * 1e9) / 1e9;
      o.push_back({{"label", names(label)}, {"re", re}, {"im", im}});
    }
    rows.push_back(row);
  }
  return j;
}

SparseState transversal_left(SparseState st, int g, int patch) {
  transversal_left_patch(st, patch, g);
  return st;
}

SparseState transversal_right(SparseState st, int g, int patch) {
  transversal_right_patch(st, patch, g);
  return st;
}

SparseState transversal_auto(SparseState st, const Automorphism& phi, int patch) {
  validate_automorphism(phi);
  transversal_auto_patch(st, patch, phi);
  return st;
}

namespace {

void require_alphabet(const SparseState& st, int patch, const SubgroupPtr& X, const char* what) {
  const auto& P = st.patches.at(patch);
  for (int e = 0; e < P.lattice->num_edges(); ++e)
    for (int g : st.alphabet(P.reg(e))->members())
      if (!X->contains(g)) throw AlphabetMismatch(std::string(what) + ": patch alphabet is not inside the subgroup");
}

template <class F>
SparseState with_restarts(const ProtocolConfig& cfg, RunReport* report, const std::string& op, F&& body) {
  cfg.validate();
  RunReport local;
  RunReport& rep = report ? *report : local;
  rep.op = op;
  for (int attempt = 0;; ++attempt) {
    SurgeryLog log;
    try {
      SparseState out = body(log);
      for (auto& e : log.events) rep.phases.push_back(e);
      return out;
    } catch (PostselectionFailed& e) {
      ++rep.restarts;
      if (attempt + 1 >= cfg.max_restarts) throw;
    }
  }
}

SparseState extend_grow_once(SparseState st, const KnitDecomposition& knit, const SurgeryConfig& sc, Rng& rng,
                             SurgeryLog& log) {
  if (st.patches.size() != 2) throw InvalidSpec("extend expects exactly two patches (H left, K right)");
  require_alphabet(st, 0, knit.H, "extend");
  require_alphabet(st, 1, knit.K, "extend");
  if (st.patches[0].lattice->vy() != st.patches[1].lattice->vy()) throw InvalidSpec("patch heights differ");
  const SurgeryConfig prep{Policy::Sample, sc.max_attempts};
  if (st.patches[0].lattice->vx() < 2) {
    attach_column(st, 0, Side::Left, knit.H);
    settle_column(st, 0, 0, Direction::Left, prep, rng, log);
  }
  if (st.patches[1].lattice->vx() < 2) {
    attach_column(st, 1, Side::Right, knit.K);
    settle_column(st, 1, st.patches[1].lattice->vx() - 1, Direction::Right, prep, rng, log);
  }
  checked_round(st, sc, rng, log, "grow");
  return st;
}

SparseState extend_seams_once(SparseState st, const KnitDecomposition& knit, const SurgeryConfig& sc, Rng& rng,
                              SurgeryLog& log) {
  auto Gw = whole_group(knit.G);
  int wh = st.patches[0].lattice->vx();
  merge_patches(st, 0, 1, Gw, "G");
  log.add({{"event", "merge"}, {"width", st.patches[0].lattice->vx()}});
  for (int c = wh - 1; c >= 1; --c) {
    regauge_column(st, 0, c, Gw);
    settle_column(st, 0, c, Direction::Left, sc, rng, log);
    checked_round(st, sc, rng, log, "seam_h_" + std::to_string(c));
  }
  remove_column(st, 0, Side::Left, rng, log);
  checked_round(st, sc, rng, log, "trim_h");
  int W = st.patches[0].lattice->vx();
  for (int c = wh - 1; c <= W - 2; ++c) {
    regauge_column(st, 0, c, Gw);
    settle_column(st, 0, c, Direction::Right, sc, rng, log);
    checked_round(st, sc, rng, log, "seam_k_" + std::to_string(c));
  }
  remove_column(st, 0, Side::Right, rng, log);
  checked_round(st, sc, rng, log, "trim_k");
  return st;
}

SparseState split_once(SparseState st, const KnitDecomposition& knit, SplitSide side, const SurgeryConfig& sc,
                       Rng& rng, SurgeryLog& log) {
  if (st.patches.size() != 1) throw InvalidSpec("split expects exactly one patch");
  const auto& G = *knit.G;
  const auto A = side == SplitSide::HK ? knit.H : knit.K;
  const auto B = side == SplitSide::HK ? knit.K : knit.H;
  auto factor = [&](int g) -> std::pair<int, int> {
    if (side == SplitSide::HK) return knit.factor_hk[g];
    return knit.factor_kh[g];
  };
  const SurgeryConfig prep{Policy::Sample, sc.max_attempts};
  attach_column(st, 0, Side::Left, A);
  settle_column(st, 0, 0, Direction::Left, prep, rng, log);
  checked_round(st, sc, rng, log, "attach_" + std::string(side == SplitSide::HK ? "h" : "k"));

  const auto P = st.patches[0];
  const auto& L = *P.lattice;
  int w = L.vx() - 1, vy = L.vy();
  auto lat1 = build_lattice(1, vy);
  auto first = [&](const std::vector<int>& v) { return factor(v[0]).first; };
  auto second = [&](const std::vector<int>& v) { return factor(v[0]).second; };

  PatchPlan pa{side == SplitSide::HK ? "H" : "K", lat1, std::vector<SubgroupPtr>(lat1->num_vertices(), A),
               std::vector<RegSource>(lat1->num_edges())};
  PatchPlan pb{side == SplitSide::HK ? "K" : "H", lat1, std::vector<SubgroupPtr>(lat1->num_vertices(), B),
               std::vector<RegSource>(lat1->num_edges())};
  std::vector<RegSource> extras;
  std::vector<int> b_left, a_right, vert_first, vert_last;
  std::vector<std::vector<int>> interior(vy);
  for (int j = 0; j < vy; ++j) {
    pa.edges[lat1->h_edge(j, 0)] = RegSource::copy(P.reg(L.h_edge(j, 0)));
    RegSource s;
    s.from = {P.reg(L.h_edge(j, 1))};
    s.alpha = A;
    s.fn = first;
    pa.edges[lat1->h_edge(j, 1)] = s;
    if (j + 1 < vy) pa.edges[lat1->v_edge(j, 0)] = RegSource::copy(P.reg(L.v_edge(j, 0)));

    RegSource t;
    t.from = {P.reg(L.h_edge(j, w + 1))};
    t.alpha = B;
    t.fn = second;
    pb.edges[lat1->h_edge(j, 0)] = t;
    pb.edges[lat1->h_edge(j, 1)] = RegSource::fresh(B);
    if (j + 1 < vy) pb.edges[lat1->v_edge(j, 0)] = RegSource::fresh(B);
  }
  int base = lat1->num_edges() * 2;
  auto push = [&](RegSource s) {
    extras.push_back(std::move(s));
    return base + static_cast<int>(extras.size()) - 1;
  };
  for (int j = 0; j < vy; ++j) {
    RegSource s;
    s.from = {P.reg(L.h_edge(j, 1))};
    s.alpha = B;
    s.fn = second;
    b_left.push_back(push(s));
    for (int k = 2; k <= w; ++k) interior[j].push_back(push(RegSource::copy(P.reg(L.h_edge(j, k)))));
    RegSource t;
    t.from = {P.reg(L.h_edge(j, w + 1))};
    t.alpha = A;
    t.fn = first;
    a_right.push_back(push(t));
  }
  std::vector<std::vector<int>> verticals(std::max(vy - 1, 0));
  for (int j = 0; j + 1 < vy; ++j)
    for (int c = 1; c <= w; ++c) verticals[j].push_back(push(RegSource::copy(P.reg(L.v_edge(j, c)))));
  rebuild(st, {pa, pb}, extras);

  // Middle registers are measured in the group basis.
  std::vector<int> val(st.num_registers(), 0);
  nlohmann::json measured = nlohmann::json::array();
  for (int r = base; r < st.num_registers(); ++r) {
    val[r] = measure_group_basis(st, r, rng);
    measured.push_back(G.name(val[r]));
  }
  log.add({{"event", "measure_middle"}, {"values", measured}});

  // Charges of the new B column leave through its dangling edges.
  settle_column(st, 1, 0, Direction::Right, prep, rng, log);

  auto mul = [&](int x, int y) { return G.mul(x, y); };
  auto inv = [&](int x) { return G.inv(x); };
  int X = val[b_left[0]];
  for (int r : interior[0]) X = mul(X, val[r]);
  X = mul(X, val[a_right[0]]);
  auto [ax, bx] = factor(X);
  std::vector<int> z(vy), u(vy);
  z[0] = ax;
  u[0] = bx;
  for (int j = 0; j + 1 < vy; ++j) {
    int y = mul(mul(val[b_left[j]], val[verticals[j].front()]), inv(val[b_left[j + 1]]));
    int q = mul(mul(inv(val[a_right[j]]), val[verticals[j].back()]), val[a_right[j + 1]]);
    if (!A->contains(y) || !B->contains(q)) throw UnrepairableFluxes("middle measurement is inconsistent with a flat state");
    z[j + 1] = mul(inv(y), z[j]);
    u[j + 1] = mul(u[j], q);
  }
  nlohmann::json corr = nlohmann::json::array();
  for (int j = 0; j < vy; ++j) {
    apply_right(st, st.patches[0].reg(lat1->h_edge(j, 1)), inv(z[j]));
    apply_left(st, st.patches[1].reg(lat1->h_edge(j, 0)), u[j]);
    corr.push_back({{"row", j}, {"right_mult", G.name(z[j])}, {"left_mult", G.name(u[j])}});
  }
  log.add({{"event", "sweep"}, {"corrections", corr}});
  rebuild(st, {identity_plan(st, 0), identity_plan(st, 1)});
  checked_round(st, sc, rng, log, "split_final");
  return st;
}

// Puts a register that currently holds the identity into the uniform superposition over its alphabet.
void prepare_register_plus(SparseState& st, int r) {
  const auto& alpha = st.alphabet(r);
  std::vector<SparseState::Entry> out;
  out.reserve(st.size() * alpha->size());
  cplx s(1.0 / std::sqrt(static_cast<double>(alpha->size())), 0.0);
  for (const auto& e : st.entries()) {
    if (st.value(e.key, r) != 0) throw InvalidSpec("register is not in the identity state");
    for (int g : alpha->members()) out.push_back({st.with_value(e.key, r, g), e.amp * s});
  }
  if (out.size() > kOrbitCap) throw CapExceeded("plus preparation exceeds 10^7 configurations");
  st.set_entries(std::move(out));
}

}  // namespace

SparseState extend_grow(const SparseState& joint, const KnitDecomposition& knit, const ProtocolConfig& cfg, Rng& rng,
                        RunReport* report) {
  return with_restarts(cfg, report, "extend",
                       [&](SurgeryLog& log) { return extend_grow_once(joint, knit, cfg.surgery(), rng, log); });
}

SparseState extend(const SparseState& joint, const KnitDecomposition& knit, const ProtocolConfig& cfg, Rng& rng,
                   RunReport* report) {
  RunReport local;
  RunReport& rep = report ? *report : local;
  auto grown = extend_grow(joint, knit, cfg, rng, &rep);
  return with_restarts(cfg, &rep, "extend",
                       [&](SurgeryLog& log) { return extend_seams_once(grown, knit, cfg.surgery(), rng, log); });
}

SparseState extend(const SparseState& h_state, const SparseState& k_state, const KnitDecomposition& knit,
                   const ProtocolConfig& cfg, Rng& rng, RunReport* report) {
  return extend(tensor(h_state, k_state), knit, cfg, rng, report);
}

SplitSide split_side_from_string(const std::string& s) {
  if (s == "HK" || s == "hk") return SplitSide::HK;
  if (s == "KH" || s == "kh") return SplitSide::KH;
  throw InvalidSpec("unknown split side '" + s + "'");
}

SparseState split(const SparseState& g_state, const KnitDecomposition& knit, SplitSide side,
                  const ProtocolConfig& cfg, Rng& rng, RunReport* report) {
  return with_restarts(cfg, report, side == SplitSide::HK ? "split_hk" : "split_kh",
                       [&](SurgeryLog& log) { return split_once(g_state, knit, side, cfg.surgery(), rng, log); });
}

SparseState slide(const SparseState& h_state, const SparseState& k_state, const KnitDecomposition& knit,
                  const ProtocolConfig& cfg, Rng& rng, RunReport* report) {
  RunReport local;
  RunReport& rep = report ? *report : local;
  RunReport ext, spl;
  auto g = extend(h_state, k_state, knit, cfg, rng, &ext);
  auto out = split(g, knit, SplitSide::KH, cfg, rng, &spl);
  rep.op = "slide";
  rep.restarts = ext.restarts + spl.restarts;
  rep.phases.push_back({{"op", "extend"}, {"report", ext.to_json()}});
  rep.phases.push_back({{"op", "split_kh"}, {"report", spl.to_json()}});
  return out;
}

SparseState prepare_identity(const SubgroupPtr& G, const LatticePtr& lat, const ProtocolConfig& cfg, Rng& rng,
                             RunReport* report) {
  return with_restarts(cfg, report, "prepare_identity", [&](SurgeryLog& log) {
    auto st = product_state(G->parent(), std::vector<SubgroupPtr>(lat->num_edges(), G),
                            std::vector<int>(lat->num_edges(), 0));
    st.patches.push_back(PatchInfo{"G", lat, 0, std::vector<SubgroupPtr>(lat->num_vertices(), G)});
    const SurgeryConfig prep{Policy::Sample, cfg.max_attempts};
    for (int c = 0; c < lat->vx(); ++c) settle_column(st, 0, c, Direction::Left, prep, rng, log);
    checked_round(st, cfg.surgery(), rng, log, "prepared");
    return st;
  });
}

SparseState prepare_plus(const SubgroupPtr& G, const LatticePtr& lat, const ProtocolConfig& cfg, Rng& rng,
                         RunReport* report) {
  return with_restarts(cfg, report, "prepare_plus", [&](SurgeryLog& log) {
    auto st = product_state(G->parent(), std::vector<SubgroupPtr>(lat->num_edges(), G),
                            std::vector<int>(lat->num_edges(), 0));
    st.patches.push_back(PatchInfo{"G", lat, 0, std::vector<SubgroupPtr>(lat->num_vertices(), G)});
    for (int k = 0; k <= lat->vx(); ++k) prepare_register_plus(st, lat->h_edge(0, k));
    nlohmann::json fluxes = nlohmann::json::array();
    // Row by row: each new plaquette is closed by its top edge, measured, and its flux pushed out through that edge.
    for (int j = 0; j + 1 < lat->vy(); ++j)
      for (int col = 0; col <= lat->vx(); ++col) {
        if (col < lat->vx()) prepare_register_plus(st, lat->v_edge(j, col));
        prepare_register_plus(st, lat->h_edge(j + 1, col));
        int p = lat->plaquette_id(j, col);
        int m = plaquette_measure(st, 0, p, rng);
        fluxes.push_back(G->parent()->name(m));
        move_flux(st, 0, p, Direction::Up, m);
      }
    log.add({{"event", "plaquette_fluxes"}, {"values", fluxes}});
    checked_round(st, cfg.surgery(), rng, log, "prepared");
    return st;
  });
}

ReadoutResult readout(SparseState& st, Rng& rng, int patch) {
  const auto& P = st.patches.at(patch);
  const auto& lat = *P.lattice;
  const auto& G = *st.group();
  ReadoutResult out;
  out.config.resize(lat.num_edges());
  for (int e = 0; e < lat.num_edges(); ++e) out.config[e] = measure_group_basis(st, P.reg(e), rng);
  std::map<int, int> votes;
  for (int j = 0; j < lat.vy(); ++j) {
    int h = holonomy(lat, G, out.config, j);
    out.row_holonomies.push_back(h);
    ++votes[h];
  }
  auto best = std::max_element(votes.begin(), votes.end(), [](auto& a, auto& b) { return a.second < b.second; });
  if (votes.size() > 1) {
    out.repaired = true;
    int count = best->second;
    for (const auto& [h, c] : votes)
      if (h != best->first && c == count) throw UnrepairableFluxes("row holonomies have no majority");
  }
  out.label = best->first;
  return out;
}

LogicalBasis logical_basis_from_string(const std::string& s) {
  if (s == "group" || s == "Z" || s == "z") return LogicalBasis::Group;
  if (s == "X" || s == "x") return LogicalBasis::X;
  throw UnsupportedBasis("unknown logical basis '" + s + "'");
}

namespace {

int row0_label(const SparseState& st, int patch, SparseState::Key k) {
  const auto& P = st.patches[patch];
  int h = 0;
  for (int e : P.lattice->row_edges(0)) h = st.group()->mul(h, st.value(k, P.reg(e)));
  return h;
}

}  // namespace

std::pair<double, double> logical_x_weights(const SparseState& st, int patch, int g) {
  SparseState moved = st;
  transversal_left_patch(moved, patch, g);
  auto plus = add_scaled(st, 0.5, moved, 0.5);
  auto minus = add_scaled(st, 0.5, moved, -0.5);
  return {plus.norm2(), minus.norm2()};
}

double project_logical_x(SparseState& st, int patch, int g, int sign) {
  if (st.group()->mul(g, g) != 0 || g == 0) throw UnsupportedBasis("X projection needs an element of order 2");
  SparseState moved = st;
  transversal_left_patch(moved, patch, g);
  st = add_scaled(st, 0.5, moved, sign == 0 ? 0.5 : -0.5);
  return st.normalize();
}

int measure_logical_x(SparseState& st, int patch, int g, Rng& rng) {
  auto [wp, wm] = logical_x_weights(st, patch, g);
  int s = rng.categorical({wp, wm});
  project_logical_x(st, patch, g, s);
  return s;
}

int measure_logical_function(SparseState& st, int patch, const std::function<int(int)>& f, Rng& rng) {
  std::map<int, double> w;
  for (const auto& e : st.entries()) w[f(row0_label(st, patch, e.key))] += std::norm(e.amp);
  std::vector<int> keys;
  std::vector<double> ws;
  for (auto& [k, x] : w) {
    keys.push_back(k);
    ws.push_back(x);
  }
  int out = keys[rng.categorical(ws)];
  auto entries = st.entries();
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [&](const SparseState::Entry& e) { return f(row0_label(st, patch, e.key)) != out; }),
                entries.end());
  st.set_entries(std::move(entries));
  st.normalize();
  return out;
}

int logical_frame_measure(SparseState& st, int patch, LogicalBasis basis, Rng& rng) {
  if (basis == LogicalBasis::Group) return measure_logical_function(st, patch, [](int g) { return g; }, rng);
  const auto& P = st.patches.at(patch);
  auto alpha = st.alphabet(P.reg(0));
  if (alpha->size() != 2) throw UnsupportedBasis("X basis needs a two-element patch alphabet");
  return measure_logical_x(st, patch, alpha->embed(1), rng);
}

LogicalMap extract_logical_map(const GroupPtr& G, const std::vector<PatchSpec>& in_patches,
                               const std::vector<std::vector<int>>& inputs,
                               const std::function<SparseState(const SparseState&)>& op) {
  LogicalMap map;
  for (const auto& p : in_patches) map.inputs.push_back(p.name);
  for (const auto& in : inputs) {
    auto st = encode_logical(G, in_patches, {{in, cplx(1)}});
    auto out = op(st);
    if (map.outputs.empty())
      for (const auto& P : out.patches) map.outputs.push_back(P.name);
    auto dec = decode_logical(out);
    map.mapping[in] = dec.amps;
  }
  return map;
}

// ---------------------------------------------------------------------------
// Magic states

namespace {

struct D4Setup {
  GroupPtr G;
  int a, b, c, r, s;
};

D4Setup d4_setup() {
  D4Setup d;
  d.G = build_group(GroupSpec::dihedral(4));
  d.a = d.G->parse("a");
  d.b = d.G->parse("b");
  d.c = d.G->parse("c");
  d.r = d.G->parse("r");
  d.s = d.G->parse("s");
  return d;
}

// Contracts patch `patch` of a two-patch logical decode with the given bra over its labels.
std::map<int, cplx> contract_other(const LogicalDecode& dec, int keep, const std::map<int, cplx>& bra_other) {
  std::map<int, cplx> out;
  for (const auto& [labels, a] : dec.amps) {
    auto it = bra_other.find(labels[1 - keep]);
    if (it == bra_other.end()) continue;
    out[labels[keep]] += std::conj(it->second) * a;
  }
  return out;
}

double normalized_fidelity(const std::map<int, cplx>& v, const std::map<int, cplx>& target) {
  cplx ov = 0;
  double nv = 0, nt = 0;
  for (auto& [k, a] : v) nv += std::norm(a);
  for (auto& [k, a] : target) {
    nt += std::norm(a);
    auto it = v.find(k);
    if (it != v.end()) ov += std::conj(a) * it->second;
  }
  if (nv == 0 || nt == 0) return 0.0;
  return std::norm(ov) / (nv * nt);
}

}  // namespace

MagicCXResult magic_cx_protocol(const ProtocolConfig& cfg, Rng& rng, const LatticePtr& lat_in) {
  auto d = d4_setup();
  auto lat = lat_in ? lat_in : build_lattice(1, 2);
  auto H = subgroup_closure(d.G, {d.a, d.b});
  auto K = subgroup_closure(d.G, {d.c});
  auto knit = knit_decompose(d.G, H, K);
  auto hs = encode_logical(d.G, {{"H", lat, H}}, {{{0}, 1.0}, {{d.a}, 1.0}});
  auto ks = encode_logical(d.G, {{"K", lat, K}}, {{{0}, 1.0}, {{d.c}, 1.0}});
  MagicCXResult res;
  auto st = slide(hs, ks, knit, cfg, rng, &res.report);
  res.pre_measurement = st;
  auto [wp, wm] = logical_x_weights(st, 0, d.c);
  res.acceptance_probability = wp / (wp + wm);
  int outcome = measure_logical_x(st, 0, d.c, rng);
  res.accepted = outcome == 0;
  res.report.phases.push_back({{"op", "measure_x"}, {"patch", "K"}, {"outcome", outcome == 0 ? "+" : "-"}});
  res.state = st;
  if (res.accepted) {
    auto dec = decode_logical(st);
    double h = 1.0 / std::sqrt(2.0);
    auto v = contract_other(dec, 1, {{0, h}, {d.c, h}});
    // a^alpha b^beta -> (alpha, beta)
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be) {
        int g = d.G->mul(al ? d.a : 0, be ? d.b : 0);
        auto it = v.find(g);
        res.logical[{al, be}] = it == v.end() ? cplx(0) : it->second;
      }
    std::map<int, cplx> target = {{0, 2.0}, {d.a, 1.0}, {d.G->mul(d.a, d.b), 1.0}};
    res.fidelity = normalized_fidelity(v, target);
  }
  return res;
}

MagicCXStatistics magic_cx_statistics(const ProtocolConfig& cfg, int physical_shots, int samples) {
  MagicCXStatistics stats;
  auto d = d4_setup();
  SparseState reference;
  LogicalDecode ref_dec;
  for (int shot = 0; shot < physical_shots; ++shot) {
    Rng rng(Rng::derive(cfg.seed, static_cast<std::uint64_t>(shot)));
    auto res = magic_cx_protocol(cfg, rng);
    ++stats.physical_shots;
    stats.accepted += res.accepted ? 1 : 0;
    ++stats.samples;
    if (res.accepted) stats.min_fidelity = std::min(stats.min_fidelity, res.fidelity);
    auto dec = decode_logical(res.pre_measurement);
    if (shot == 0) {
      reference = res.pre_measurement;
      ref_dec = dec;
      stats.exact_probability = res.acceptance_probability;
    } else {
      cplx ov = 0;
      for (const auto& [k, a] : ref_dec.amps) {
        auto it = dec.amps.find(k);
        if (it != dec.amps.end()) ov += std::conj(a) * it->second;
      }
      // Shots may differ by a global phase only.
      if (std::abs(std::abs(ov) - 1.0) > 1e-9 || dec.leakage > 1e-9) stats.consistent_pre_state = false;
    }
  }
  Rng rng(Rng::derive(cfg.seed, 0xC0FFEEULL));
  for (int i = stats.samples; i < samples; ++i) {
    SparseState st = reference;
    stats.accepted += measure_logical_x(st, 0, d.c, rng) == 0 ? 1 : 0;
    ++stats.samples;
  }
  return stats;
}

MagicTResult magic_t_protocol(const ProtocolConfig& cfg, Rng& rng, const LatticePtr& lat_in) {
  auto d = d4_setup();
  auto lat = lat_in ? lat_in : build_lattice(1, 2);
  const auto& G = *d.G;
  auto Z4 = subgroup_closure(d.G, {d.r});
  auto Z2s = subgroup_closure(d.G, {d.s});
  auto ext_knit = knit_decompose(d.G, Z4, Z2s);
  auto Hab = subgroup_closure(d.G, {d.a, d.b});
  auto Kc = subgroup_closure(d.G, {d.c});
  auto split_knit = knit_decompose(d.G, Hab, Kc);

  const cplx w = std::polar(1.0, M_PI / 4);
  int r2 = G.mul(d.r, d.r), r3 = G.mul(r2, d.r);
  auto psi = encode_logical(d.G, {{"Z4", lat, Z4}}, {{{0}, 1.0}, {{d.r}, w}, {{r2}, -1.0}, {{r3}, w}});
  auto ks = code_state(Z2s, lat, 0, "Z2s");

  MagicTResult res;
  RunReport ext, spl;
  auto g = extend(psi, ks, ext_knit, cfg, rng, &ext);
  auto st = split(g, split_knit, SplitSide::KH, cfg, rng, &spl);
  res.report.op = "magic_t";
  res.report.restarts = ext.restarts + spl.restarts;
  res.report.phases.push_back({{"op", "extend"}, {"report", ext.to_json()}});
  res.report.phases.push_back({{"op", "split_kh"}, {"report", spl.to_json()}});

  // Patch 1 carries Z2^a x Z2^b; measure a in X and b in Z.
  res.outcome_a = measure_logical_x(st, 1, d.a, rng);
  int bbit_of_b = d.b;
  res.outcome_b = measure_logical_function(
      st, 1, [&](int h) { return split_knit.H->contains(h) && (h == bbit_of_b || h == G.mul(d.a, d.b)) ? 1 : 0; },
      rng);
  res.report.phases.push_back({{"op", "measure"}, {"a_x", res.outcome_a == 0 ? "+" : "-"}, {"b_z", res.outcome_b}});

  auto dec = decode_logical(st);
  // Contract the a,b patch with its measured logical state.
  int hb = res.outcome_b ? d.b : 0;
  double s = 1.0 / std::sqrt(2.0);
  std::map<int, cplx> bra = {{hb, s}, {G.mul(d.a, hb), res.outcome_a == 0 ? s : -s}};
  res.logical = contract_other(dec, 0, bra);
  std::map<int, cplx> t_plus = {{0, 1.0}, {d.c, w}}, t_minus = {{0, 1.0}, {d.c, -w}};
  double fi = normalized_fidelity(res.logical, t_plus), fz = normalized_fidelity(res.logical, t_minus);
  res.frame = fz > fi ? 1 : 0;
  res.fidelity = std::max(fi, fz);
  res.predicted_frame = res.outcome_a ^ res.outcome_b;
  res.state = st;
  return res;
}

}  // namespace gsc
