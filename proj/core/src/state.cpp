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

#include "gsc/state.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

namespace gsc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

bool same_members(const SubgroupPtr& a, const SubgroupPtr& b) {
  return a == b || a->members() == b->members();
}

void require_member(const SubgroupPtr& alpha, int g, const char* what) {
  if (g < 0 || g >= alpha->parent()->order() || !alpha->contains(g))
    throw AlphabetMismatch(std::string(what) + ": element " + std::to_string(g) +
                           " outside register alphabet");
}

// Applies a key permutation and restores the sorted order.
template <class F>
void permute_keys(SparseState& st, F&& fn) {
  auto entries = st.entries();
  for (auto& e : entries) e.key = fn(e.key);
  st.set_entries(std::move(entries));
}

}  // namespace

std::uint64_t Rng::next_u64() {
  ++counter_;
  return eng_();
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

int Rng::uniform_int(int n) {
  if (n <= 1) return 0;
  return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

int Rng::categorical(const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) total += std::max(w, 0.0);
  if (!(total > 0)) throw ZeroWeight("categorical distribution has zero mass");
  double u = uniform() * total, acc = 0;
  int last = -1;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
    if (weights[i] <= 0) continue;
    acc += weights[i];
    last = i;
    if (u < acc) return i;
  }
  return last;
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

const char* to_string(Policy p) { return p == Policy::Sample ? "sample" : "postselect"; }

Policy policy_from_string(const std::string& s) {
  if (s == "sample" || s == "sample_and_correct") return Policy::Sample;
  if (s == "postselect" || s == "postselect_trivial") return Policy::PostselectTrivial;
  throw InvalidSpec("unknown policy '" + s + "'");
}

// ---------------------------------------------------------------------------
// SparseState

SparseState::Key SparseState::with_value(Key k, int r, int g) const {
  int local = alpha_[r]->project(g);
  if (local < 0) throw AlphabetMismatch("register " + std::to_string(r) + " cannot hold element " + std::to_string(g));
  Key old = (k / stride_[r]) % alpha_[r]->size();
  return k - old * stride_[r] + static_cast<Key>(local) * stride_[r];
}

std::vector<int> SparseState::decode(Key k) const {
  std::vector<int> v(alpha_.size());
  for (std::size_t r = 0; r < alpha_.size(); ++r) {
    int sz = alpha_[r]->size();
    v[r] = alpha_[r]->embed(static_cast<int>(k % sz));
    k /= sz;
  }
  return v;
}

SparseState::Key SparseState::encode(const std::vector<int>& values) const {
  Key k = 0;
  for (std::size_t r = 0; r < alpha_.size(); ++r) {
    int local = alpha_[r]->project(values[r]);
    if (local < 0) throw AlphabetMismatch("register " + std::to_string(r) + " cannot hold element " +
                                          std::to_string(values[r]));
    k += static_cast<Key>(local) * stride_[r];
  }
  return k;
}

void SparseState::reset_layout(std::vector<SubgroupPtr> alphas) {
  alpha_ = std::move(alphas);
  stride_.assign(alpha_.size(), 1);
  unsigned __int128 s = 1;
  for (std::size_t r = 0; r < alpha_.size(); ++r) {
    if (alpha_[r]->parent() != G_ && alpha_[r]->parent()->mult_table() != G_->mult_table())
      throw AlphabetMismatch("register alphabet belongs to a different group");
    stride_[r] = static_cast<Key>(s);
    s *= static_cast<unsigned>(alpha_[r]->size());
    if (s > (static_cast<unsigned __int128>(1) << 63)) throw CapExceeded("register key space exceeds 2^63");
  }
}

int SparseState::add_register(SubgroupPtr alpha, int value) {
  require_member(alpha, value, "add_register");
  auto alphas = alpha_;
  alphas.push_back(std::move(alpha));
  reset_layout(std::move(alphas));
  int r = num_registers() - 1;
  for (auto& e : entries_) e.key += static_cast<Key>(alpha_[r]->project(value)) * stride_[r];
  return r;
}

void SparseState::set_entries(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.key < b.key; });
  std::vector<Entry> out;
  out.reserve(entries.size());
  for (const auto& e : entries) {
    if (!out.empty() && out.back().key == e.key)
      out.back().amp += e.amp;
    else
      out.push_back(e);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Entry& e) { return std::abs(e.amp) < kPruneTol; }),
            out.end());
  entries_ = std::move(out);
}

cplx SparseState::amplitude(Key k) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), k,
                             [](const Entry& e, Key key) { return e.key < key; });
  return (it != entries_.end() && it->key == k) ? it->amp : cplx(0);
}

double SparseState::norm2() const {
  double s = 0;
  for (const auto& e : entries_) s += std::norm(e.amp);
  return s;
}

double SparseState::normalize() {
  double w = norm2();
  if (!(w > kPruneTol * kPruneTol)) throw ZeroWeight("state has zero norm");
  double s = 1.0 / std::sqrt(w);
  for (auto& e : entries_) e.amp *= s;
  return w;
}

SparseState product_state(const GroupPtr& G, const std::vector<SubgroupPtr>& alphas,
                          const std::vector<int>& values) {
  SparseState st(G);
  st.reset_layout(alphas);
  st.set_entries({{st.encode(values), cplx(1)}});
  return st;
}

SparseState tensor(const SparseState& a, const SparseState& b) {
  if (a.group()->mult_table() != b.group()->mult_table()) throw AlphabetMismatch("tensor of states over different groups");
  SparseState out(a.group());
  auto alphas = a.alphabets();
  alphas.insert(alphas.end(), b.alphabets().begin(), b.alphabets().end());
  out.reset_layout(alphas);
  SparseState::Key shift = a.num_registers() < out.num_registers() ? out.stride(a.num_registers()) : 1;
  std::vector<SparseState::Entry> entries;
  entries.reserve(a.size() * b.size());
  for (const auto& eb : b.entries())
    for (const auto& ea : a.entries()) entries.push_back({ea.key + eb.key * shift, ea.amp * eb.amp});
  out.set_entries(std::move(entries));
  out.patches = a.patches;
  for (auto p : b.patches) {
    p.offset += a.num_registers();
    out.patches.push_back(p);
  }
  return out;
}

static void require_same_layout(const SparseState& a, const SparseState& b) {
  if (a.num_registers() != b.num_registers()) throw AlphabetMismatch("register counts differ");
  for (int r = 0; r < a.num_registers(); ++r)
    if (!same_members(a.alphabet(r), b.alphabet(r))) throw AlphabetMismatch("register alphabets differ");
}

cplx inner(const SparseState& a, const SparseState& b) {
  require_same_layout(a, b);
  cplx s = 0;
  auto ia = a.entries().begin(), ib = b.entries().begin();
  while (ia != a.entries().end() && ib != b.entries().end()) {
    if (ia->key < ib->key)
      ++ia;
    else if (ib->key < ia->key)
      ++ib;
    else {
      s += std::conj(ia->amp) * ib->amp;
      ++ia;
      ++ib;
    }
  }
  return s;
}

double fidelity(const SparseState& a, const SparseState& b) {
  return std::norm(inner(a, b)) / (a.norm2() * b.norm2());
}

SparseState add_scaled(const SparseState& a, cplx ca, const SparseState& b, cplx cb) {
  require_same_layout(a, b);
  SparseState out = a;
  std::vector<SparseState::Entry> entries;
  entries.reserve(a.size() + b.size());
  for (const auto& e : a.entries()) entries.push_back({e.key, ca * e.amp});
  for (const auto& e : b.entries()) entries.push_back({e.key, cb * e.amp});
  out.set_entries(std::move(entries));
  return out;
}

void remap(SparseState& st, std::vector<SubgroupPtr> new_alphas,
           const std::function<void(const std::vector<int>&, std::vector<int>&)>& fn) {
  SparseState next(st.group());
  next.reset_layout(std::move(new_alphas));
  std::vector<SparseState::Entry> entries;
  entries.reserve(st.size());
  std::vector<int> out(next.num_registers());
  for (const auto& e : st.entries()) {
    auto in = st.decode(e.key);
    std::fill(out.begin(), out.end(), 0);
    fn(in, out);
    entries.push_back({next.encode(out), e.amp});
  }
  std::size_t n = entries.size();
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  for (std::size_t i = 1; i < n; ++i)
    if (entries[i].key == entries[i - 1].key) throw NotBijective("register remap is not injective on the support");
  next.set_entries(std::move(entries));
  next.patches = std::move(st.patches);
  st = std::move(next);
}

void keep_registers(SparseState& st, const std::vector<int>& order) {
  std::vector<bool> kept(st.num_registers(), false);
  for (int r : order) kept[r] = true;
  if (!st.entries().empty()) {
    auto first = st.decode(st.entries().front().key);
    for (const auto& e : st.entries()) {
      auto v = st.decode(e.key);
      for (int r = 0; r < st.num_registers(); ++r)
        if (!kept[r] && v[r] != first[r])
          throw InvalidSpec("register " + std::to_string(r) + " is not in a definite state");
    }
  }
  std::vector<SubgroupPtr> alphas;
  for (int r : order) alphas.push_back(st.alphabet(r));
  remap(st, alphas, [&](const std::vector<int>& in, std::vector<int>& out) {
    for (std::size_t i = 0; i < order.size(); ++i) out[i] = in[order[i]];
  });
}

// ---------------------------------------------------------------------------
// Edge operators

void apply_left(SparseState& st, int r, int g) {
  require_member(st.alphabet(r), g, "apply_left");
  if (g == 0) return;
  const auto& G = *st.group();
  permute_keys(st, [&](SparseState::Key k) { return st.with_value(k, r, G.mul(g, st.value(k, r))); });
}

void apply_right(SparseState& st, int r, int g) {
  require_member(st.alphabet(r), g, "apply_right");
  if (g == 0) return;
  const auto& G = *st.group();
  int gi = G.inv(g);
  permute_keys(st, [&](SparseState::Key k) { return st.with_value(k, r, G.mul(st.value(k, r), gi)); });
}

void apply_auto(SparseState& st, int r, const Automorphism& phi) {
  for (int g : st.alphabet(r)->members())
    if (!st.alphabet(r)->contains(phi(g))) throw AlphabetMismatch("automorphism does not preserve the register alphabet");
  permute_keys(st, [&](SparseState::Key k) { return st.with_value(k, r, phi(st.value(k, r))); });
}

double apply_diag_fn(SparseState& st, int r, const std::function<cplx(int)>& f) {
  auto entries = st.entries();
  for (auto& e : entries) e.amp *= f(st.value(e.key, r));
  st.set_entries(std::move(entries));
  return st.normalize();
}

double apply_diag(SparseState& st, int r, const Irrep& R, int i, int j) {
  const auto& alpha = st.alphabet(r);
  bool by_parent = static_cast<int>(R.mats.size()) == st.group()->order();
  if (!by_parent && static_cast<int>(R.mats.size()) != alpha->size())
    throw AlphabetMismatch("irrep does not match the register alphabet");
  if (i < 0 || j < 0 || i >= R.dim || j >= R.dim) throw OutOfRange("irrep index");
  return apply_diag_fn(st, r, [&](int g) {
    return std::conj(R.mats[by_parent ? g : alpha->project(g)](i, j));
  });
}

void apply_controlled(SparseState& st, int ctrl, int target, ControlKind kind) {
  for (int g : st.alphabet(ctrl)->members())
    if (!st.alphabet(target)->contains(g)) throw AlphabetMismatch("control alphabet does not embed in target alphabet");
  const auto& G = *st.group();
  permute_keys(st, [&](SparseState::Key k) {
    int c = st.value(k, ctrl), t = st.value(k, target), nt = t;
    switch (kind) {
      case ControlKind::CL: nt = G.mul(c, t); break;
      case ControlKind::CLbar: nt = G.mul(G.inv(c), t); break;
      case ControlKind::CR: nt = G.mul(t, G.inv(c)); break;
      case ControlKind::CRbar: nt = G.mul(t, c); break;
    }
    return st.with_value(k, target, nt);
  });
}

std::vector<double> marginal(const SparseState& st, int r) {
  std::vector<double> w(st.group()->order(), 0.0);
  for (const auto& e : st.entries()) w[st.value(e.key, r)] += std::norm(e.amp);
  return w;
}

double project_register(SparseState& st, int r, int g) {
  auto entries = st.entries();
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [&](const SparseState::Entry& e) { return st.value(e.key, r) != g; }),
                entries.end());
  st.set_entries(std::move(entries));
  return st.normalize();
}

int measure_group_basis(SparseState& st, int r, Rng& rng) {
  int g = rng.categorical(marginal(st, r));
  project_register(st, r, g);
  return g;
}

// ---------------------------------------------------------------------------
// Patches

Configuration patch_config(const SparseState& st, int patch, SparseState::Key k) {
  const auto& P = st.patches.at(patch);
  Configuration c(P.lattice->num_edges());
  for (int e = 0; e < P.lattice->num_edges(); ++e) c[e] = st.value(k, P.reg(e));
  return c;
}

SparseState::Key vertex_gauge_key(const SparseState& st, const PatchInfo& P, int v, int g, SparseState::Key k) {
  const auto& G = *st.group();
  const auto& V = P.lattice->vertex(v);
  int gi = G.inv(g);
  for (int e : V.out) k = st.with_value(k, P.reg(e), G.mul(g, st.value(k, P.reg(e))));
  for (int e : V.in) k = st.with_value(k, P.reg(e), G.mul(st.value(k, P.reg(e)), gi));
  return k;
}

void apply_vertex_gauge(SparseState& st, int patch, int v, int g) {
  const auto& P = st.patches.at(patch);
  permute_keys(st, [&](SparseState::Key k) { return vertex_gauge_key(st, P, v, g, k); });
}

int patch_flux(const SparseState& st, int patch, int p, SparseState::Key k) {
  const auto& P = st.patches[patch];
  const auto& G = *st.group();
  int m = 0;
  for (const auto& pe : P.lattice->plaquette(p).cycle) {
    int x = st.value(k, P.reg(pe.edge));
    m = G.mul(m, pe.inverted ? G.inv(x) : x);
  }
  return m;
}

SparseState code_state(const GroupPtr& G, const LatticePtr& lat, int g, const std::string& name) {
  return code_state(whole_group(G), lat, g, name);
}

SparseState code_state(const SubgroupPtr& H, const LatticePtr& lat, int h, const std::string& name) {
  require_member(H, h, "code_state");
  double orbit = std::pow(static_cast<double>(H->size()), lat->num_vertices());
  if (orbit > static_cast<double>(kOrbitCap)) throw CapExceeded("gauge orbit exceeds 10^7 configurations");
  const auto& G = H->parent();
  SparseState st(G);
  st.reset_layout(std::vector<SubgroupPtr>(lat->num_edges(), H));
  PatchInfo P{name, lat, 0, std::vector<SubgroupPtr>(lat->num_vertices(), H)};
  std::vector<SparseState::Key> keys{st.encode(left_gauge_config(*lat, h))};
  for (int v = 0; v < lat->num_vertices(); ++v) {
    std::vector<SparseState::Key> next;
    next.reserve(keys.size() * H->size());
    for (auto k : keys)
      for (int g : H->members()) next.push_back(vertex_gauge_key(st, P, v, g, k));
    keys = std::move(next);
  }
  cplx amp(1.0 / std::sqrt(static_cast<double>(keys.size())), 0.0);
  std::vector<SparseState::Entry> entries;
  entries.reserve(keys.size());
  for (auto k : keys) entries.push_back({k, amp});
  st.set_entries(std::move(entries));
  st.patches.push_back(P);
  return st;
}

SparseState encode_logical(const GroupPtr& G, const std::vector<PatchSpec>& patches,
                           const std::map<std::vector<int>, cplx>& coeffs) {
  if (coeffs.empty()) throw ZeroWeight("no logical amplitudes");
  std::vector<std::map<int, SparseState>> cache(patches.size());
  SparseState out;
  std::vector<SparseState::Entry> entries;
  bool first = true;
  for (const auto& [labels, c] : coeffs) {
    if (labels.size() != patches.size()) throw InvalidSpec("label tuple length differs from patch count");
    SparseState st(G);
    for (std::size_t p = 0; p < patches.size(); ++p) {
      auto it = cache[p].find(labels[p]);
      if (it == cache[p].end())
        it = cache[p].emplace(labels[p], code_state(patches[p].alphabet, patches[p].lattice, labels[p], patches[p].name)).first;
      st = p == 0 ? it->second : tensor(st, it->second);
    }
    if (first) {
      out = st;
      first = false;
    }
    for (const auto& e : st.entries()) entries.push_back({e.key, c * e.amp});
  }
  out.set_entries(std::move(entries));
  out.normalize();
  return out;
}

LogicalDecode decode_logical(const SparseState& st) {
  int covered = 0;
  double orbit = 1.0;
  for (const auto& P : st.patches) {
    covered += P.lattice->num_edges();
    for (const auto& H : P.vertex_gauge) orbit *= H->size();
  }
  if (covered != st.num_registers()) throw InvalidSpec("decode_logical needs patches covering every register");
  LogicalDecode out;
  double scale = 1.0 / std::sqrt(orbit);
  double total = st.norm2();
  for (const auto& e : st.entries()) {
    std::vector<int> labels;
    bool flat = true;
    for (int p = 0; p < static_cast<int>(st.patches.size()) && flat; ++p) {
      const auto& P = st.patches[p];
      for (int q = 0; q < P.lattice->num_plaquettes(); ++q)
        if (patch_flux(st, p, q, e.key) != 0) {
          flat = false;
          break;
        }
      if (!flat) break;
      int h = 0;
      for (int edge : P.lattice->row_edges(0)) h = st.group()->mul(h, st.value(e.key, P.reg(edge)));
      labels.push_back(h);
    }
    if (flat) out.amps[labels] += e.amp * scale;
  }
  double captured = 0;
  for (auto it = out.amps.begin(); it != out.amps.end();) {
    if (std::abs(it->second) < 1e-12) {
      it = out.amps.erase(it);
    } else {
      captured += std::norm(it->second);
      ++it;
    }
  }
  out.leakage = std::max(0.0, 1.0 - captured / total);
  return out;
}

static void transform_patch_edges(SparseState& st, const std::vector<int>& regs, const std::function<int(int)>& f) {
  permute_keys(st, [&](SparseState::Key k) {
    for (int r : regs) k = st.with_value(k, r, f(st.value(k, r)));
    return k;
  });
}

void transversal_left_patch(SparseState& st, int patch, int g) {
  const auto& P = st.patches.at(patch);
  std::vector<int> regs;
  for (int e : P.lattice->left_edges()) {
    regs.push_back(P.reg(e));
    require_member(st.alphabet(P.reg(e)), g, "transversal_left");
  }
  const auto& G = *st.group();
  transform_patch_edges(st, regs, [&](int x) { return G.mul(g, x); });
}

void transversal_right_patch(SparseState& st, int patch, int g) {
  const auto& P = st.patches.at(patch);
  std::vector<int> regs;
  for (int e : P.lattice->right_edges()) {
    regs.push_back(P.reg(e));
    require_member(st.alphabet(P.reg(e)), g, "transversal_right");
  }
  const auto& G = *st.group();
  int gi = G.inv(g);
  transform_patch_edges(st, regs, [&](int x) { return G.mul(x, gi); });
}

void transversal_auto_patch(SparseState& st, int patch, const Automorphism& phi) {
  const auto& P = st.patches.at(patch);
  std::vector<int> regs;
  for (int e = 0; e < P.lattice->num_edges(); ++e) {
    regs.push_back(P.reg(e));
    for (int g : st.alphabet(P.reg(e))->members())
      if (!st.alphabet(P.reg(e))->contains(phi(g))) throw AlphabetMismatch("automorphism does not preserve the patch alphabet");
  }
  transform_patch_edges(st, regs, [&](int x) { return phi(x); });
}

// ---------------------------------------------------------------------------
// Snapshots: "GSCS" magic, group order, alphabets, patches, then (key, re, im) triples.

namespace {
template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <class T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw InvalidSpec("truncated state snapshot");
  return v;
}
void put_members(std::ostream& out, const SubgroupPtr& H) {
  put<std::uint32_t>(out, static_cast<std::uint32_t>(H->size()));
  for (int g : H->members()) put<std::uint32_t>(out, static_cast<std::uint32_t>(g));
}
SubgroupPtr get_members(std::istream& in, const GroupPtr& G, std::map<std::vector<int>, SubgroupPtr>& cache) {
  auto n = get<std::uint32_t>(in);
  std::vector<int> m(n);
  for (auto& g : m) g = static_cast<int>(get<std::uint32_t>(in));
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, std::make_shared<const Subgroup>(G, m)).first;
  return it->second;
}
}  // namespace

void save_state(const SparseState& st, std::ostream& out) {
  out.write("GSCS", 4);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(st.group()->order()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(st.num_registers()));
  for (const auto& a : st.alphabets()) put_members(out, a);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(st.patches.size()));
  for (const auto& P : st.patches) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(P.name.size()));
    out.write(P.name.data(), static_cast<std::streamsize>(P.name.size()));
    put<std::int32_t>(out, P.lattice->vx());
    put<std::int32_t>(out, P.lattice->vy());
    put<std::int32_t>(out, P.offset);
    for (const auto& H : P.vertex_gauge) put_members(out, H);
  }
  put<std::uint64_t>(out, st.size());
  for (const auto& e : st.entries()) {
    put<std::uint64_t>(out, e.key);
    put<double>(out, e.amp.real());
    put<double>(out, e.amp.imag());
  }
}

SparseState load_state(std::istream& in, const GroupPtr& G) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "GSCS") throw InvalidSpec("not a state snapshot");
  if (static_cast<int>(get<std::uint32_t>(in)) != G->order()) throw AlphabetMismatch("snapshot group order differs");
  std::map<std::vector<int>, SubgroupPtr> cache;
  auto nreg = get<std::uint32_t>(in);
  std::vector<SubgroupPtr> alphas;
  for (std::uint32_t r = 0; r < nreg; ++r) alphas.push_back(get_members(in, G, cache));
  SparseState st(G);
  st.reset_layout(alphas);
  auto npatch = get<std::uint32_t>(in);
  for (std::uint32_t p = 0; p < npatch; ++p) {
    PatchInfo P;
    auto len = get<std::uint32_t>(in);
    P.name.resize(len);
    in.read(P.name.data(), len);
    int vx = get<std::int32_t>(in), vy = get<std::int32_t>(in);
    P.lattice = build_lattice(vx, vy);
    P.offset = get<std::int32_t>(in);
    for (int v = 0; v < P.lattice->num_vertices(); ++v) P.vertex_gauge.push_back(get_members(in, G, cache));
    st.patches.push_back(P);
  }
  auto n = get<std::uint64_t>(in);
  std::vector<SparseState::Entry> entries(n);
  for (auto& e : entries) {
    e.key = get<std::uint64_t>(in);
    double re = get<double>(in), im = get<double>(in);
    e.amp = cplx(re, im);
  }
  st.set_entries(std::move(entries));
  return st;
}

}  // namespace gsc
