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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "gsc/state.hpp"

namespace gsc {

namespace {

double project_flux(SparseState& st, int patch, int p, int m, bool renormalize) {
  auto entries = st.entries();
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [&](const SparseState::Entry& e) { return patch_flux(st, patch, p, e.key) != m; }),
                entries.end());
  st.set_entries(std::move(entries));
  return renormalize ? st.normalize() : st.norm2();
}

struct VertexContext {
  const PatchInfo* P;
  SubgroupPtr H;
  GroupPtr HG;
  std::shared_ptr<const RepData> reps;
};

VertexContext vertex_context(const SparseState& st, int patch, int v) {
  VertexContext c;
  c.P = &st.patches.at(patch);
  c.H = c.P->vertex_gauge.at(v);
  c.HG = c.H->as_group();
  c.reps = representations(c.HG);
  return c;
}

// Vertex gauge action as key offsets indexed by the local values of the incident registers.
class GaugeTable {
public:
  static constexpr std::size_t kMaxSlots = 8;

  GaugeTable(const SparseState& st, const VertexContext& c, int v) : m_(c.H->size()) {
    const auto& G = *st.group();
    const auto& V = c.P->lattice->vertex(v);
    auto add = [&](int e, bool out) {
      int r = c.P->reg(e);
      const auto& A = st.alphabet(r);
      Slot s{r, st.stride(r), static_cast<SparseState::Key>(A->size()),
             std::vector<SparseState::Key>(static_cast<std::size_t>(m_) * A->size()),
             std::vector<char>(static_cast<std::size_t>(m_) * A->size())};
      for (int h = 0; h < m_; ++h) {
        int g = c.H->embed(h);
        for (int l = 0; l < A->size(); ++l) {
          int x = A->embed(l);
          int n = A->project(out ? G.mul(g, x) : G.mul(x, G.inv(g)));
          auto idx = static_cast<std::size_t>(l) * m_ + h;
          s.valid[idx] = n >= 0;
          s.delta[idx] = (static_cast<SparseState::Key>(n < 0 ? l : n) - static_cast<SparseState::Key>(l)) * s.stride;
        }
      }
      slots_.push_back(std::move(s));
    };
    for (int e : V.out) add(e, true);
    for (int e : V.in) add(e, false);
    if (slots_.size() > kMaxSlots) throw OutOfRange("vertex degree");
    build_canonical(*c.HG);
  }

  // Orbit representative (smallest key) and the coordinate c with k = A^c(rep).
  std::pair<SparseState::Key, int> canonical(SparseState::Key k) const {
    if (canon_.empty()) {
      auto L = locals(k);
      SparseState::Key best = k;
      int best_h = 0;
      for (int h = 1; h < m_; ++h) {
        auto x = apply(k, L, h);
        if (x < best) {
          best = x;
          best_h = h;
        }
      }
      return {best, inv_[best_h]};
    }
    std::size_t t = 0;
    for (const auto& s : slots_) t = t * s.size + (k / s.stride) % s.size;
    const auto& c = canon_[t];
    if (!c.valid) throw AlphabetMismatch("register cannot hold the gauged value");
    return {k + c.delta, c.coord};
  }

  struct Locals {
    std::size_t base[kMaxSlots];
  };

  Locals locals(SparseState::Key k) const {
    Locals L{};
    for (std::size_t i = 0; i < slots_.size(); ++i)
      L.base[i] = static_cast<std::size_t>((k / slots_[i].stride) % slots_[i].size) * m_;
    return L;
  }

  // Key of A_v^{H.embed(h)} applied to k.
  SparseState::Key apply(SparseState::Key k, const Locals& L, int h) const {
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      auto idx = L.base[i] + static_cast<std::size_t>(h);
      if (!slots_[i].valid[idx])
        throw AlphabetMismatch("register " + std::to_string(slots_[i].reg) + " cannot hold the gauged value");
      k += slots_[i].delta[idx];
    }
    return k;
  }

private:
  struct Slot {
    int reg;
    SparseState::Key stride, size;
    std::vector<SparseState::Key> delta;  // [l * m + h]
    std::vector<char> valid;
  };
  struct Canon {
    SparseState::Key delta;
    int coord;
    bool valid;
  };
  static constexpr std::size_t kMaxTable = std::size_t{1} << 16;

  void build_canonical(const GroupTable& HG) {
    inv_.resize(m_);
    for (int h = 0; h < m_; ++h) inv_[h] = HG.inv(h);
    std::size_t total = 1;
    for (const auto& s : slots_) {
      total *= s.size;
      if (total > kMaxTable) return;
    }
    canon_.resize(total);
    std::vector<std::size_t> digit(slots_.size());
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t r = t;
      for (std::size_t i = slots_.size(); i-- > 0;) {
        digit[i] = r % slots_[i].size;
        r /= slots_[i].size;
      }
      Canon best{0, 0, true};
      for (int h = 0; h < m_ && best.valid; ++h) {
        SparseState::Key d = 0;
        for (std::size_t i = 0; i < slots_.size(); ++i) {
          auto idx = digit[i] * m_ + h;
          if (!slots_[i].valid[idx]) best.valid = false;
          d += slots_[i].delta[idx];
        }
        // Offsets are wrapped unsigned differences; compare them as signed.
        if (h > 0 && static_cast<std::int64_t>(d) < static_cast<std::int64_t>(best.delta)) best = {d, inv_[h], true};
      }
      canon_[t] = best;
    }
  }

  int m_;
  std::vector<Slot> slots_;
  std::vector<int> inv_;
  std::vector<Canon> canon_;
};

// Open-addressing map from orbit representative to orbit index.
class OrbitIndex {
public:
  explicit OrbitIndex(std::size_t n) {
    std::size_t cap = 16;
    while (cap < 2 * n) cap <<= 1;
    keys_.assign(cap, kEmpty);
    vals_.assign(cap, -1);
    mask_ = cap - 1;
  }
  // Index of key, inserting next if absent.
  int find_or_insert(SparseState::Key key, int next) {
    std::size_t i = ((key * 0x9E3779B97F4A7C15ull) >> 20) & mask_;
    while (keys_[i] != kEmpty) {
      if (keys_[i] == key) return vals_[i];
      i = (i + 1) & mask_;
    }
    keys_[i] = key;
    vals_[i] = next;
    return next;
  }

private:
  static constexpr SparseState::Key kEmpty = ~SparseState::Key{0};
  std::vector<SparseState::Key> keys_;
  std::vector<int> vals_;
  std::size_t mask_;
};

// Gauge orbits at one vertex: representatives, amplitudes psi[o * m + c] of A^c(rep),
// and the (orbit, coordinate) slot of every stored entry in entry order.
struct OrbitSet {
  int m = 0;
  std::vector<SparseState::Key> rep;
  std::vector<cplx> psi;
  std::vector<std::pair<int, int>> slot;

  std::size_t size() const { return rep.size(); }
  const cplx* amps(std::size_t o) const { return psi.data() + o * m; }
};

OrbitSet vertex_orbits(const SparseState& st, const VertexContext& c, int v) {
  GaugeTable gauge(st, c, v);
  OrbitIndex index(st.size());
  OrbitSet out;
  out.m = c.H->size();
  out.slot.reserve(st.size());
  for (const auto& e : st.entries()) {
    auto [rep, coord] = gauge.canonical(e.key);
    int id = index.find_or_insert(rep, static_cast<int>(out.rep.size()));
    if (id == static_cast<int>(out.rep.size())) {
      out.rep.push_back(rep);
      out.psi.resize(out.psi.size() + out.m, cplx(0));
    }
    out.psi[static_cast<std::size_t>(id) * out.m + coord] += e.amp;
    out.slot.emplace_back(id, coord);
  }
  return out;
}

// Row j of F = sum_c psi(c) R(c), or all rows when j < 0; written to F (dim * dim).
void orbit_fourier(const Irrep& R, const cplx* psi, int m, int j, cplx* F) {
  const int d = R.dim;
  const int lo = j < 0 ? 0 : j * d, hi = j < 0 ? d * d : (j + 1) * d;
  for (int k = lo; k < hi; ++k) F[k] = 0;
  for (int c = 0; c < m; ++c) {
    if (psi[c] == cplx(0)) continue;
    const auto& M = R.mats[c].data;
    for (int k = lo; k < hi; ++k) F[k] += psi[c] * M[k];
  }
}

double apply_vertex_kraus(SparseState& st, const VertexContext& c, const OrbitSet& os, int v, int irrep, int i, int j,
                          bool renormalize) {
  if (irrep < 0 || irrep >= static_cast<int>(c.reps->irreps.size())) throw OutOfRange("irrep index");
  const auto& R = c.reps->irreps[irrep];
  if (i < 0 || j < 0 || i >= R.dim || j >= R.dim) throw OutOfRange("irrep matrix index");
  const int m = os.m, d = R.dim;
  const double scale = std::sqrt(static_cast<double>(d)) / m;
  // a(x) = scale * sum_l conj(R(x)_il) F_jl
  std::vector<cplx> row(static_cast<std::size_t>(m) * d);
  for (int x = 0; x < m; ++x)
    for (int l = 0; l < d; ++l) row[static_cast<std::size_t>(x) * d + l] = std::conj(R.mats[x](i, l)) * scale;
  std::vector<cplx> F(static_cast<std::size_t>(d) * d);
  const cplx* Fj = F.data() + static_cast<std::size_t>(j) * d;
  auto image = [&](int x) {
    cplx a = 0;
    for (int l = 0; l < d; ++l) a += row[static_cast<std::size_t>(x) * d + l] * Fj[l];
    return a;
  };
  if (os.size() * m == st.size()) {
    // Every orbit is fully populated: the support is unchanged, so update in place.
    std::vector<cplx> out(os.size() * m);
    for (std::size_t o = 0; o < os.size(); ++o) {
      orbit_fourier(R, os.amps(o), m, j, F.data());
      for (int x = 0; x < m; ++x) out[o * m + x] = image(x);
    }
    auto& entries = st.entries();
    for (std::size_t n = 0; n < entries.size(); ++n)
      entries[n].amp = out[static_cast<std::size_t>(os.slot[n].first) * m + os.slot[n].second];
    entries.erase(std::remove_if(entries.begin(), entries.end(),
                                 [](const SparseState::Entry& e) { return std::abs(e.amp) < kPruneTol; }),
                  entries.end());
    return renormalize ? st.normalize() : st.norm2();
  }
  GaugeTable gauge(st, c, v);
  std::vector<SparseState::Entry> entries;
  entries.reserve(os.size() * m);
  for (std::size_t o = 0; o < os.size(); ++o) {
    orbit_fourier(R, os.amps(o), m, j, F.data());
    auto L = gauge.locals(os.rep[o]);
    for (int x = 0; x < m; ++x) {
      cplx a = image(x);
      if (std::abs(a) < kPruneTol) continue;
      entries.push_back({gauge.apply(os.rep[o], L, x), a});
    }
  }
  st.set_entries(std::move(entries));
  return renormalize ? st.normalize() : st.norm2();
}

double apply_vertex_kraus(SparseState& st, int patch, int v, int irrep, int i, int j, bool renormalize) {
  auto c = vertex_context(st, patch, v);
  return apply_vertex_kraus(st, c, vertex_orbits(st, c, v), v, irrep, i, j, renormalize);
}

std::map<std::pair<int, int>, double> outcome_weights(const VertexContext& c, const OrbitSet& os) {
  const int m = os.m;
  std::map<std::pair<int, int>, double> w;
  for (int r = 0; r < static_cast<int>(c.reps->irreps.size()); ++r) {
    const auto& R = c.reps->irreps[r];
    const int d = R.dim;
    std::vector<double> acc(d, 0.0);
    std::vector<cplx> F(static_cast<std::size_t>(d) * d);
    for (std::size_t o = 0; o < os.size(); ++o) {
      orbit_fourier(R, os.amps(o), m, -1, F.data());
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) acc[j] += std::norm(F[static_cast<std::size_t>(j) * d + l]);
    }
    for (int j = 0; j < d; ++j) w[{r, j}] = acc[j] * d / m;
  }
  return w;
}

}  // namespace

bool SyndromeRecord::all_trivial() const {
  for (const auto& [patch, p, m] : plaquettes)
    if (m != 0) return false;
  for (const auto& [patch, v, o] : vertices)
    if (!o.trivial()) return false;
  return true;
}

nlohmann::json SyndromeRecord::to_json(const GroupTable& G) const {
  nlohmann::json j;
  j["round"] = round;
  j["policy"] = policy;
  auto& ps = j["plaquettes"] = nlohmann::json::array();
  for (const auto& [patch, p, m] : plaquettes) ps.push_back({{"patch", patch}, {"p", p}, {"m", G.name(m)}});
  auto& vs = j["vertices"] = nlohmann::json::array();
  for (const auto& [patch, v, o] : vertices)
    vs.push_back({{"patch", patch}, {"v", v}, {"irrep", o.label}, {"i", o.i}, {"j", o.j}});
  return j;
}

std::vector<double> plaquette_distribution(const SparseState& st, int patch, int p) {
  std::vector<double> w(st.group()->order(), 0.0);
  for (const auto& e : st.entries()) w[patch_flux(st, patch, p, e.key)] += std::norm(e.amp);
  return w;
}

double plaquette_project(SparseState& st, int patch, int p, int m) { return project_flux(st, patch, p, m, true); }

int plaquette_measure(SparseState& st, int patch, int p, Rng& rng) {
  auto& entries = st.entries();
  std::vector<int> flux(entries.size());
  std::vector<double> w(st.group()->order(), 0.0);
  for (std::size_t n = 0; n < entries.size(); ++n) {
    flux[n] = patch_flux(st, patch, p, entries[n].key);
    w[flux[n]] += std::norm(entries[n].amp);
  }
  int m = rng.categorical(w);
  std::size_t kept = 0;
  for (std::size_t n = 0; n < entries.size(); ++n)
    if (flux[n] == m) entries[kept++] = entries[n];
  entries.resize(kept);
  st.normalize();
  return m;
}

std::map<std::pair<int, int>, double> vertex_outcome_weights(const SparseState& st, int patch, int v) {
  auto c = vertex_context(st, patch, v);
  return outcome_weights(c, vertex_orbits(st, c, v));
}

double vertex_kraus(SparseState& st, int patch, int v, int irrep, int i, int j) {
  return apply_vertex_kraus(st, patch, v, irrep, i, j, true);
}

VertexOutcome vertex_measure(SparseState& st, int patch, int v, Rng& rng) {
  auto c = vertex_context(st, patch, v);
  auto orbits = vertex_orbits(st, c, v);
  std::vector<std::pair<int, int>> keys;
  std::vector<double> w;
  for (const auto& [k, x] : outcome_weights(c, orbits)) {
    keys.push_back(k);
    w.push_back(x);
  }
  auto [r, j] = keys[rng.categorical(w)];
  const auto& R = c.reps->irreps[r];
  int i = rng.uniform_int(R.dim);
  apply_vertex_kraus(st, c, orbits, v, r, i, j, true);
  return VertexOutcome{r, R.label, i, j};
}

double project_vertex_trivial(SparseState& st, int patch, int v) {
  return apply_vertex_kraus(st, patch, v, 0, 0, 0, true);
}

double plaquette_project_reference(SparseState& st, int patch, int p, int m) {
  const auto P = st.patches.at(patch);
  auto patches = st.patches;
  int anc = st.add_register(whole_group(st.group()), 0);
  for (const auto& pe : P.lattice->plaquette(p).cycle)
    apply_controlled(st, P.reg(pe.edge), anc, pe.inverted ? ControlKind::CR : ControlKind::CRbar);
  double w = project_register(st, anc, m);
  std::vector<int> order(anc);
  for (int r = 0; r < anc; ++r) order[r] = r;
  keep_registers(st, order);
  st.patches = patches;
  return w;
}

double vertex_kraus_reference(SparseState& st, int patch, int v, int irrep, int i, int j) {
  const auto P = st.patches.at(patch);
  auto patches = st.patches;
  auto H = P.vertex_gauge.at(v);
  auto reps = representations(H->as_group());
  const auto& R = reps->irreps.at(irrep);
  int m = H->size();
  int anc = st.add_register(H, 0);
  // |+> on the ancilla
  {
    std::vector<SparseState::Entry> entries;
    double a = 1.0 / std::sqrt(static_cast<double>(m));
    for (const auto& e : st.entries())
      for (int h : H->members()) entries.push_back({st.with_value(e.key, anc, h), e.amp * a});
    st.set_entries(std::move(entries));
  }
  const auto& V = P.lattice->vertex(v);
  for (int e : V.out) apply_controlled(st, anc, P.reg(e), ControlKind::CL);
  for (int e : V.in) apply_controlled(st, anc, P.reg(e), ControlKind::CR);
  // Project the ancilla onto sqrt(d/m) sum_h R(h)_{ij} |h>.
  double c = std::sqrt(static_cast<double>(R.dim) / m);
  std::vector<SparseState::Entry> entries;
  for (const auto& e : st.entries()) {
    int h = st.value(e.key, anc);
    entries.push_back({st.with_value(e.key, anc, 0), e.amp * c * std::conj(R.mats[H->project(h)](i, j))});
  }
  st.set_entries(std::move(entries));
  std::vector<int> order(anc);
  for (int r = 0; r < anc; ++r) order[r] = r;
  keep_registers(st, order);
  st.patches = patches;
  return st.normalize();
}

SyndromeRecord detection_round(SparseState& st, Rng& rng, Policy policy, int round) {
  SyndromeRecord rec;
  rec.round = round;
  rec.policy = to_string(policy);
  for (int patch = 0; patch < static_cast<int>(st.patches.size()); ++patch)
    for (int p = 0; p < st.patches[patch].lattice->num_plaquettes(); ++p) {
      int m = plaquette_measure(st, patch, p, rng);
      rec.plaquettes.emplace_back(patch, p, m);
      if (m != 0 && policy == Policy::PostselectTrivial)
        throw PostselectionFailed("nontrivial flux at plaquette " + std::to_string(p), rec);
    }
  for (int patch = 0; patch < static_cast<int>(st.patches.size()); ++patch)
    for (int v = 0; v < st.patches[patch].lattice->num_vertices(); ++v) {
      auto o = vertex_measure(st, patch, v, rng);
      rec.vertices.emplace_back(patch, v, o);
      if (!o.trivial() && policy == Policy::PostselectTrivial)
        throw PostselectionFailed("nontrivial charge at vertex " + std::to_string(v), rec);
    }
  return rec;
}

SyndromeRecord detection_round_patch(SparseState& st, int patch, Rng& rng, Policy policy, int round) {
  SyndromeRecord rec;
  rec.round = round;
  rec.policy = to_string(policy);
  const auto& lat = *st.patches.at(patch).lattice;
  for (int p = 0; p < lat.num_plaquettes(); ++p) {
    int m = plaquette_measure(st, patch, p, rng);
    rec.plaquettes.emplace_back(patch, p, m);
    if (m != 0 && policy == Policy::PostselectTrivial)
      throw PostselectionFailed("nontrivial flux at plaquette " + std::to_string(p), rec);
  }
  for (int v = 0; v < lat.num_vertices(); ++v) {
    auto o = vertex_measure(st, patch, v, rng);
    rec.vertices.emplace_back(patch, v, o);
    if (!o.trivial() && policy == Policy::PostselectTrivial)
      throw PostselectionFailed("nontrivial charge at vertex " + std::to_string(v), rec);
  }
  return rec;
}

SparseState postselected_round_map(const SparseState& in) {
  SparseState st = in;
  for (int patch = 0; patch < static_cast<int>(st.patches.size()); ++patch)
    for (int p = 0; p < st.patches[patch].lattice->num_plaquettes(); ++p) project_flux(st, patch, p, 0, false);
  for (int patch = 0; patch < static_cast<int>(st.patches.size()); ++patch)
    for (int v = 0; v < st.patches[patch].lattice->num_vertices(); ++v) {
      if (st.size() == 0) return st;
      apply_vertex_kraus(st, patch, v, 0, 0, 0, false);
    }
  return st;
}

}  // namespace gsc
