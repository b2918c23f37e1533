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

#include <cmath>

#include "gsc/state.hpp"

namespace gsc {

void move_flux(SparseState& st, int patch, int p, Direction dir, int m) {
  const auto& P = st.patches.at(patch);
  const auto& lat = *P.lattice;
  int shared = -1;
  lat.plaquette_neighbor(p, dir, &shared);
  if (m == 0) return;
  const auto& cycle = lat.plaquette(p).cycle;
  int pos = -1;
  for (int k = 0; k < static_cast<int>(cycle.size()); ++k)
    if (cycle[k].edge == shared) pos = k;
  const auto& G = *st.group();
  int r = P.reg(shared);
  bool inverted = cycle[pos].inverted;
  auto entries = st.entries();
  for (auto& e : entries) {
    // Cycle reads A f B = m with f the shared edge factor; conjugate m by the tail B.
    int B = 0;
    for (int k = pos + 1; k < static_cast<int>(cycle.size()); ++k) {
      int x = st.value(e.key, P.reg(cycle[k].edge));
      B = G.mul(B, cycle[k].inverted ? G.inv(x) : x);
    }
    int x = st.value(e.key, r);
    int nx = inverted ? G.mul(G.mul(G.mul(B, m), G.inv(B)), x) : G.mul(x, G.mul(G.mul(B, G.inv(m)), G.inv(B)));
    e.key = st.with_value(e.key, r, nx);
  }
  st.set_entries(std::move(entries));
}

ChargeStrategy charge_strategy_from_string(const std::string& s) {
  if (s == "fixed") return ChargeStrategy::Fixed;
  if (s == "uniform_random") return ChargeStrategy::UniformRandom;
  if (s == "plus_basis" || s == "s3_plus_basis") return ChargeStrategy::PlusBasis;
  if (s == "matched") return ChargeStrategy::Matched;
  throw InvalidSpec("unknown charge strategy '" + s + "'");
}

nlohmann::json MoveReport::to_json() const {
  nlohmann::json j;
  j["attempts"] = attempts;
  j["successes"] = successes;
  j["success"] = success;
  auto& o = j["outcomes"] = nlohmann::json::array();
  for (const auto& x : outcomes) o.push_back({{"irrep", x.label}, {"i", x.i}, {"j", x.j}});
  return j;
}

int charge_edge(const Lattice& lat, int v, Direction dir, bool* outgoing) {
  const auto& V = lat.vertex(v);
  switch (dir) {
    case Direction::Right:
      *outgoing = true;
      return lat.h_edge(V.row, V.col + 1);
    case Direction::Left:
      *outgoing = false;
      return lat.h_edge(V.row, V.col);
    case Direction::Up:
      if (V.row + 1 >= lat.vy()) throw BoundaryBlocked("charges cannot cross the top smooth boundary");
      *outgoing = true;
      return lat.v_edge(V.row, V.col);
    case Direction::Down:
      if (V.row == 0) throw BoundaryBlocked("charges cannot cross the bottom smooth boundary");
      *outgoing = false;
      return lat.v_edge(V.row - 1, V.col);
  }
  return -1;
}

void apply_charge_edge_operator(SparseState& st, int patch, int v, Direction dir, int irrep,
                                const std::vector<cplx>& alpha, const std::vector<cplx>& beta) {
  const auto& P = st.patches.at(patch);
  bool outgoing = false;
  int e = charge_edge(*P.lattice, v, dir, &outgoing);
  auto H = P.vertex_gauge.at(v);
  for (int g : st.alphabet(P.reg(e))->members())
    if (!H->contains(g)) throw AlphabetMismatch("edge alphabet exceeds the source vertex gauge group");
  auto reps = representations(H->as_group());
  const auto& R = reps->irreps.at(irrep);
  const auto& G = *st.group();
  apply_diag_fn(st, P.reg(e), [&](int x) {
    int gout = outgoing ? x : G.inv(x);
    const auto& M = R.mats[H->project(gout)];
    cplx s = 0;
    for (int a = 0; a < R.dim; ++a)
      for (int b = 0; b < R.dim; ++b) s += alpha[a] * M(a, b) * beta[b];
    return s;
  });
}

namespace {

std::vector<cplx> unit(int d, int k) {
  std::vector<cplx> u(d, 0.0);
  u[k] = 1.0;
  return u;
}

// Unit vector fixed by R restricted to D, or empty.
std::vector<cplx> fixed_vector(const Irrep& R, const Subgroup& Hv, const Subgroup& D) {
  CMatrix Pm(R.dim, R.dim);
  int count = 0;
  for (int g : D.members()) {
    int local = Hv.project(g);
    if (local < 0) continue;
    Pm = Pm + R.mats[local];
    ++count;
  }
  for (int c = 0; c < R.dim; ++c) {
    std::vector<cplx> col(R.dim);
    double n = 0;
    for (int r = 0; r < R.dim; ++r) {
      col[r] = Pm(r, c) / static_cast<double>(count);
      n += std::norm(col[r]);
    }
    if (n > 1e-8) {
      for (auto& x : col) x /= std::sqrt(n);
      return col;
    }
  }
  return {};
}

}  // namespace

MoveReport move_charge(SparseState& st, int patch, int v, Direction dir, VertexOutcome last,
                       const ChargeStrategySpec& strategy, Rng& rng, int max_attempts) {
  MoveReport rep;
  if (max_attempts < 1) throw InvalidSpec("max_attempts must be at least 1");
  if (last.trivial()) {
    rep.success = true;
    return rep;
  }
  auto H = st.patches.at(patch).vertex_gauge.at(v);
  auto reps = representations(H->as_group());
  VertexOutcome cur = last;
  while (rep.attempts < max_attempts && !cur.trivial()) {
    const auto& R = reps->irreps.at(cur.irrep);
    std::vector<cplx> alpha, beta;
    switch (strategy.kind) {
      case ChargeStrategy::Fixed:
        alpha = unit(R.dim, std::min(strategy.i, R.dim - 1));
        beta = unit(R.dim, std::min(strategy.j, R.dim - 1));
        break;
      case ChargeStrategy::UniformRandom:
        alpha = unit(R.dim, rng.uniform_int(R.dim));
        beta = unit(R.dim, rng.uniform_int(R.dim));
        break;
      case ChargeStrategy::Matched:
        alpha = unit(R.dim, cur.i);
        beta = unit(R.dim, cur.j);
        break;
      case ChargeStrategy::PlusBasis:
        if (!strategy.destination) throw InvalidSpec("plus-basis strategy needs a destination subgroup");
        alpha = unit(R.dim, cur.i);
        beta = fixed_vector(R, *H, *strategy.destination);
        if (beta.empty()) throw InvalidSpec("charge " + R.label + " does not condense at the destination");
        break;
    }
    apply_charge_edge_operator(st, patch, v, dir, cur.irrep, alpha, beta);
    cur = vertex_measure(st, patch, v, rng);
    ++rep.attempts;
    rep.outcomes.push_back(cur);
  }
  rep.success = cur.trivial();
  rep.successes = rep.success ? 1 : 0;
  return rep;
}

}  // namespace gsc
