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

#include "gsc/patch_ops.hpp"

#include <cmath>

namespace gsc {

RegSource RegSource::copy(int r, SubgroupPtr alpha) {
  RegSource s;
  s.from = {r};
  s.alpha = std::move(alpha);
  return s;
}

RegSource RegSource::fresh(SubgroupPtr alpha, int value) {
  RegSource s;
  s.alpha = std::move(alpha);
  s.init = value;
  return s;
}

void rebuild(SparseState& st, const std::vector<PatchPlan>& plans, const std::vector<RegSource>& extras) {
  std::vector<RegSource> sources;
  std::vector<PatchInfo> patches;
  for (const auto& plan : plans) {
    if (static_cast<int>(plan.edges.size()) != plan.lattice->num_edges())
      throw InvalidSpec("patch plan edge count differs from its lattice");
    patches.push_back(PatchInfo{plan.name, plan.lattice, static_cast<int>(sources.size()), plan.vertex_gauge});
    sources.insert(sources.end(), plan.edges.begin(), plan.edges.end());
  }
  sources.insert(sources.end(), extras.begin(), extras.end());

  std::vector<bool> read(st.num_registers(), false);
  std::vector<SubgroupPtr> alphas;
  for (const auto& s : sources) {
    for (int r : s.from) read.at(r) = true;
    if (s.alpha)
      alphas.push_back(s.alpha);
    else if (!s.from.empty())
      alphas.push_back(st.alphabet(s.from[0]));
    else
      throw InvalidSpec("fresh register without an alphabet");
  }
  if (!st.entries().empty()) {
    auto first = st.decode(st.entries().front().key);
    for (const auto& e : st.entries()) {
      auto v = st.decode(e.key);
      for (int r = 0; r < st.num_registers(); ++r)
        if (!read[r] && v[r] != first[r])
          throw InvalidSpec("dropping register " + std::to_string(r) + " which is not in a definite state");
    }
  }
  std::vector<int> buf;
  remap(st, alphas, [&](const std::vector<int>& in, std::vector<int>& out) {
    for (std::size_t i = 0; i < sources.size(); ++i) {
      const auto& s = sources[i];
      if (s.fn) {
        buf.clear();
        for (int r : s.from) buf.push_back(in[r]);
        out[i] = s.fn(buf);
      } else {
        out[i] = s.from.empty() ? s.init : in[s.from[0]];
      }
    }
  });
  st.patches = std::move(patches);
}

PatchPlan identity_plan(const SparseState& st, int patch) {
  const auto& P = st.patches.at(patch);
  PatchPlan plan{P.name, P.lattice, P.vertex_gauge, {}};
  for (int e = 0; e < P.lattice->num_edges(); ++e) plan.edges.push_back(RegSource::copy(P.reg(e)));
  return plan;
}

std::vector<int> extra_registers(const SparseState& st) {
  std::vector<bool> covered(st.num_registers(), false);
  for (const auto& P : st.patches)
    for (int e = 0; e < P.lattice->num_edges(); ++e) covered[P.reg(e)] = true;
  std::vector<int> out;
  for (int r = 0; r < st.num_registers(); ++r)
    if (!covered[r]) out.push_back(r);
  return out;
}

namespace {

void rebuild_one(SparseState& st, int patch, const PatchPlan& replacement) {
  std::vector<PatchPlan> plans;
  for (int p = 0; p < static_cast<int>(st.patches.size()); ++p)
    plans.push_back(p == patch ? replacement : identity_plan(st, p));
  std::vector<RegSource> extras;
  for (int r : extra_registers(st)) extras.push_back(RegSource::copy(r));
  rebuild(st, plans, extras);
}

VertexOutcome measure_logged(SparseState& st, int patch, int v, Rng& rng, SurgeryLog& log, const char* what) {
  auto o = vertex_measure(st, patch, v, rng);
  log.add({{"event", what}, {"patch", patch}, {"v", v}, {"irrep", o.label}, {"i", o.i}, {"j", o.j}});
  return o;
}

}  // namespace

void attach_column(SparseState& st, int patch, Side side, const SubgroupPtr& X) {
  const auto& P = st.patches.at(patch);
  const auto& L = *P.lattice;
  int vx = L.vx(), vy = L.vy();
  auto NL = build_lattice(vx + 1, vy);
  PatchPlan plan{P.name, NL, std::vector<SubgroupPtr>(NL->num_vertices()), std::vector<RegSource>(NL->num_edges())};
  int shift = side == Side::Left ? 1 : 0;
  int fresh_col = side == Side::Left ? 0 : vx;
  for (int j = 0; j < vy; ++j) {
    for (int k = 0; k <= vx + 1; ++k) {
      bool fresh = side == Side::Left ? k == 0 : k == vx + 1;
      plan.edges[NL->h_edge(j, k)] = fresh ? RegSource::fresh(X) : RegSource::copy(P.reg(L.h_edge(j, k - shift)));
    }
    for (int c = 0; c <= vx; ++c) {
      plan.vertex_gauge[NL->vertex_id(j, c)] = c == fresh_col ? X : P.vertex_gauge[L.vertex_id(j, c - shift)];
      if (j + 1 < vy)
        plan.edges[NL->v_edge(j, c)] = c == fresh_col ? RegSource::fresh(X) : RegSource::copy(P.reg(L.v_edge(j, c - shift)));
    }
  }
  rebuild_one(st, patch, plan);
}

void regauge_column(SparseState& st, int patch, int col, const SubgroupPtr& X) {
  const auto& P = st.patches.at(patch);
  const auto& L = *P.lattice;
  PatchPlan plan = identity_plan(st, patch);
  for (int j = 0; j < L.vy(); ++j) {
    int v = L.vertex_id(j, col);
    plan.vertex_gauge[v] = X;
    const auto& V = L.vertex(v);
    for (const auto* list : {&V.out, &V.in})
      for (int e : *list) {
        for (int g : st.alphabet(P.reg(e))->members())
          if (!X->contains(g)) throw AlphabetMismatch("regauge must widen edge alphabets");
        plan.edges[e] = RegSource::copy(P.reg(e), X);
      }
  }
  rebuild_one(st, patch, plan);
}

namespace {

std::vector<cplx> fixed_vector_of(const Irrep& R, const Subgroup& Hv, const Subgroup& D) {
  CMatrix Pm(R.dim, R.dim);
  int count = 0;
  for (int g : D.members()) {
    int local = Hv.project(g);
    if (local < 0) return {};
    Pm = Pm + R.mats[local];
    ++count;
  }
  for (int c = 0; c < R.dim; ++c) {
    double n = 0;
    for (int r = 0; r < R.dim; ++r) n += std::norm(Pm(r, c));
    if (n / (count * count) > 1e-8) return {cplx(1)};
  }
  return {};
}

}  // namespace

void settle_column(SparseState& st, int patch, int col, Direction dir, const SurgeryConfig& cfg, Rng& rng,
                   SurgeryLog& log) {
  int vy = st.patches.at(patch).lattice->vy();
  for (int j = 0; j < vy; ++j) {
    const auto& L = *st.patches[patch].lattice;
    int v = L.vertex_id(j, col);
    auto o = measure_logged(st, patch, v, rng, log, "seam_measure");
    if (o.trivial()) continue;
    if (cfg.policy == Policy::PostselectTrivial) {
      SyndromeRecord rec;
      rec.policy = to_string(cfg.policy);
      rec.vertices.emplace_back(patch, v, o);
      throw PostselectionFailed("seam charge " + o.label + " at vertex " + std::to_string(v), rec);
    }
    while (true) {
      const auto& Lc = *st.patches[patch].lattice;
      bool outgoing = false;
      int e = charge_edge(Lc, v, dir, &outgoing);
      int w = outgoing ? Lc.edge(e).head : Lc.edge(e).tail;
      ChargeStrategySpec spec;
      spec.kind = ChargeStrategy::Matched;
      if (w >= 0) {
        auto Hv = st.patches[patch].vertex_gauge[v];
        auto D = st.patches[patch].vertex_gauge[w];
        const auto& R = representations(Hv->as_group())->irreps[o.irrep];
        if (!fixed_vector_of(R, *Hv, *D).empty()) {
          spec.kind = ChargeStrategy::PlusBasis;
          spec.destination = D;
        }
      }
      auto rep = move_charge(st, patch, v, dir, o, spec, rng, cfg.max_attempts);
      auto j = rep.to_json();
      j["event"] = "charge_move";
      j["patch"] = patch;
      j["v"] = v;
      j["direction"] = to_string(dir);
      j["strategy"] = spec.kind == ChargeStrategy::PlusBasis ? "plus_basis" : "matched";
      log.add(j);
      if (!rep.success) throw MaxAttemptsExceeded("charge at vertex " + std::to_string(v) + " did not clear");
      if (w < 0) break;
      o = measure_logged(st, patch, w, rng, log, "receiver_measure");
      if (o.trivial()) break;
      v = w;
    }
  }
}

void remove_column(SparseState& st, int patch, Side side, Rng& rng, SurgeryLog& log) {
  const auto P = st.patches.at(patch);
  const auto& L = *P.lattice;
  int vx = L.vx(), vy = L.vy();
  if (vx < 2) throw TooSmall("cannot remove the last column of a patch");
  const auto& G = *st.group();
  int col = side == Side::Left ? 0 : vx - 1;
  nlohmann::json rec = {{"event", "measure_out"}, {"patch", patch}, {"side", side == Side::Left ? "left" : "right"}};
  auto& vals = rec["values"] = nlohmann::json::array();
  for (int j = 0; j < vy; ++j) {
    int dangling = side == Side::Left ? L.h_edge(j, 0) : L.h_edge(j, vx);
    int x = measure_group_basis(st, P.reg(dangling), rng);
    vals.push_back(G.name(x));
    int inner = side == Side::Left ? L.h_edge(j, 1) : L.h_edge(j, vx - 1);
    if (side == Side::Left)
      apply_left(st, P.reg(inner), x);
    else
      apply_right(st, P.reg(inner), G.inv(x));
  }
  for (int j = 0; j + 1 < vy; ++j) vals.push_back(G.name(measure_group_basis(st, P.reg(L.v_edge(j, col)), rng)));
  log.add(rec);

  auto NL = build_lattice(vx - 1, vy);
  int shift = side == Side::Left ? 1 : 0;
  PatchPlan plan{P.name, NL, std::vector<SubgroupPtr>(NL->num_vertices()), std::vector<RegSource>(NL->num_edges())};
  for (int j = 0; j < vy; ++j) {
    for (int k = 0; k <= vx - 1; ++k) plan.edges[NL->h_edge(j, k)] = RegSource::copy(P.reg(L.h_edge(j, k + shift)));
    for (int c = 0; c < vx - 1; ++c) {
      plan.vertex_gauge[NL->vertex_id(j, c)] = P.vertex_gauge[L.vertex_id(j, c + shift)];
      if (j + 1 < vy) plan.edges[NL->v_edge(j, c)] = RegSource::copy(P.reg(L.v_edge(j, c + shift)));
    }
  }
  rebuild_one(st, patch, plan);
}

void merge_patches(SparseState& st, int left, int right, const SubgroupPtr& seam, const std::string& name) {
  const auto& PL = st.patches.at(left);
  const auto& PR = st.patches.at(right);
  const auto& LL = *PL.lattice;
  const auto& LR = *PR.lattice;
  if (LL.vy() != LR.vy()) throw InvalidSpec("merged patches need equal heights");
  int wl = LL.vx(), wr = LR.vx(), vy = LL.vy();
  auto NL = build_lattice(wl + wr, vy);
  const auto G = st.group();
  PatchPlan plan{name, NL, std::vector<SubgroupPtr>(NL->num_vertices()), std::vector<RegSource>(NL->num_edges())};
  for (int j = 0; j < vy; ++j) {
    for (int k = 0; k <= wl + wr; ++k) {
      auto& src = plan.edges[NL->h_edge(j, k)];
      if (k < wl) {
        src = RegSource::copy(PL.reg(LL.h_edge(j, k)));
      } else if (k == wl) {
        src.from = {PL.reg(LL.h_edge(j, wl)), PR.reg(LR.h_edge(j, 0))};
        src.alpha = seam;
        src.fn = [G](const std::vector<int>& v) { return G->mul(v[0], v[1]); };
      } else {
        src = RegSource::copy(PR.reg(LR.h_edge(j, k - wl)));
      }
    }
    for (int c = 0; c < wl + wr; ++c) {
      bool l = c < wl;
      plan.vertex_gauge[NL->vertex_id(j, c)] = l ? PL.vertex_gauge[LL.vertex_id(j, c)] : PR.vertex_gauge[LR.vertex_id(j, c - wl)];
      if (j + 1 < vy)
        plan.edges[NL->v_edge(j, c)] = RegSource::copy(l ? PL.reg(LL.v_edge(j, c)) : PR.reg(LR.v_edge(j, c - wl)));
    }
  }
  std::vector<PatchPlan> plans;
  for (int p = 0; p < static_cast<int>(st.patches.size()); ++p) {
    if (p == right) continue;
    plans.push_back(p == left ? plan : identity_plan(st, p));
  }
  std::vector<RegSource> extras;
  for (int r : extra_registers(st)) extras.push_back(RegSource::copy(r));
  rebuild(st, plans, extras);
}

SyndromeRecord checked_round(SparseState& st, const SurgeryConfig& cfg, Rng& rng, SurgeryLog& log,
                             const std::string& phase) {
  auto rec = detection_round(st, rng, cfg.policy);
  auto j = rec.to_json(*st.group());
  j["event"] = "detection_round";
  j["phase"] = phase;
  j["all_trivial"] = rec.all_trivial();
  log.add(j);
  return rec;
}

}  // namespace gsc
