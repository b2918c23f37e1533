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

#include "gsc/engineering.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <regex>

#include "gsc/errors.hpp"

namespace gsc {

// ---------------------------------------------------------------------------
// Reversible gates

namespace {

void check_qubit(int n, int q) {
  if (q < 1 || q > n) throw OutOfRange("qubit " + std::to_string(q) + " outside 1.." + std::to_string(n));
}

int bit(int n, int x, int q) { return (x >> (n - q)) & 1; }

}  // namespace

ReversibleGate ReversibleGate::identity(int n) { return {n, perm_identity(std::size_t{1} << n), "I"}; }

ReversibleGate ReversibleGate::x(int n, int q) {
  check_qubit(n, q);
  return {n, x_gate(n, q), "X" + std::to_string(q)};
}

ReversibleGate ReversibleGate::cx(int n, int control, int target) {
  return mcx(n, {control}, target);
}

ReversibleGate ReversibleGate::ccx(int n, int c1, int c2, int target) { return mcx(n, {c1, c2}, target); }

ReversibleGate ReversibleGate::mcx(int n, const std::vector<int>& controls, int target) {
  check_qubit(n, target);
  std::string name = std::string(controls.size(), 'C') + "X";
  for (int c : controls) {
    check_qubit(n, c);
    if (c == target) throw InvalidSpec("control equals target");
    name += std::to_string(c);
  }
  name += std::to_string(target);
  return {n, mcx_gate(n, controls, target), name};
}

ReversibleGate ReversibleGate::swap(int n, int a, int b) {
  check_qubit(n, a);
  check_qubit(n, b);
  return {n, swap_gate(n, a, b), "SWAP" + std::to_string(a) + std::to_string(b)};
}

ReversibleGate ReversibleGate::from_cycles(int n, const std::string& cycles, const std::string& name) {
  return {n, perm_from_cycles(cycles, std::size_t{1} << n), name.empty() ? cycles : name};
}

ReversibleGate ReversibleGate::from_images(int n, const std::vector<std::uint32_t>& images, const std::string& name) {
  if (!perm_is_bijection(images, std::size_t{1} << n)) throw NotBijective("gate images are not a permutation");
  return {n, images, name.empty() ? perm_to_cycles(images) : name};
}

ReversibleGate ReversibleGate::then(const ReversibleGate& next) const {
  if (next.n != n) throw InvalidSpec("gates act on different qubit counts");
  return {n, perm_compose(next.perm, perm), next.name + " " + name};
}

ReversibleGate ReversibleGate::inverse() const { return {n, perm_inverse(perm), name + "^-1"}; }

nlohmann::json ReversibleGate::to_json() const {
  return {{"n", n}, {"name", name}, {"images", perm}, {"convention", "qubit 1 is the most significant bit"}};
}

ReversibleGate parse_gate(int n, const std::string& text) {
  if (!text.empty() && text[0] == '(') return ReversibleGate::from_cycles(n, text);
  static const std::regex re(R"(^(SWAP|C*X|I)(\d*)$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw InvalidSpec("cannot parse gate '" + text + "'");
  std::string kind = m[1], digits = m[2];
  std::vector<int> q;
  for (char c : digits) q.push_back(c - '0');
  if (kind == "I") return ReversibleGate::identity(n);
  if (kind == "SWAP") {
    if (q.size() != 2) throw InvalidSpec("SWAP needs two qubits");
    return ReversibleGate::swap(n, q[0], q[1]);
  }
  std::size_t controls = kind.size() - 1;
  if (q.size() != controls + 1) throw InvalidSpec("gate '" + text + "' has the wrong number of qubits");
  return ReversibleGate::mcx(n, std::vector<int>(q.begin(), q.end() - 1), q.back());
}

// ---------------------------------------------------------------------------
// G_CCX, G_CnX, G_Pi

nlohmann::json GccxReport::to_json() const {
  return {{"order", G->order()},
          {"relations_ok", relations_ok},
          {"short_relations_hold", short_relations_hold},
          {"knit_ok", knit_ok}};
}

GccxReport build_gccx() {
  GccxReport rep;
  rep.G = build_group(GroupSpec::named("GCCX"));
  const auto& G = *rep.G;
  int a = G.parse("a"), b = G.parse("b"), c = G.parse("c"), d = G.parse("d"), e = G.parse("e"), f = G.parse("f");
  auto m3 = [&](int x, int y, int z) { return G.mul(G.mul(x, y), z); };
  rep.relations_ok = m3(d, a, d) == G.mul(a, c) && m3(e, b, e) == G.mul(b, c) && m3(f, a, f) == G.mul(a, e) &&
                     m3(f, b, f) == G.mul(b, d) && G.order() == 64;
  rep.short_relations_hold = m3(f, a, f) == e && m3(f, b, f) == d;
  try {
    auto HK1 = subgroup_closure(rep.G, {a, b, c, d, e});
    auto K2 = subgroup_closure(rep.G, {f});
    knit_decompose(rep.G, HK1, K2);
    const auto& L = HK1->as_group();
    auto H = subgroup_closure(L, {HK1->project(a), HK1->project(b), HK1->project(c)});
    auto K1 = subgroup_closure(L, {HK1->project(d), HK1->project(e)});
    knit_decompose(L, H, K1);
    rep.knit_ok = is_normal(*HK1) && is_normal(*H) && H->size() == 8 && K1->size() == 4 && K2->size() == 2;
  } catch (const NotAKnitProduct&) {
    rep.knit_ok = false;
  }
  return rep;
}

nlohmann::json GcnxGroup::to_json() const {
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : level_gates) levels.push_back(l.size());
  return {{"n", n}, {"order", order}, {"level_counts", levels}, {"levels_in_group", levels_in_group},
          {"table", table != nullptr}};
}

GcnxGroup build_gcnx(int n) {
  if (n < 0) throw InvalidSpec("GCnX needs n >= 0");
  if (n > 5) throw CapExceeded("GCnX is limited to n <= 5");
  GcnxGroup out;
  out.n = n;
  int nq = n + 1;
  std::vector<int> all;
  for (int q = 1; q <= n; ++q) {
    out.generators.push_back(x_gate(nq, q));
    all.push_back(q);
  }
  out.generators.push_back(mcx_gate(nq, all, nq));
  StabChain chain(std::size_t{1} << nq, out.generators);
  out.order = chain.order();
  out.levels_in_group = true;
  out.level_gates.resize(n + 1);
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<int> controls;
    for (int q = 1; q <= n; ++q)
      if ((mask >> (q - 1)) & 1) controls.push_back(q);
    Perm p = mcx_gate(nq, controls, nq);
    out.levels_in_group = out.levels_in_group && chain.contains(p);
    out.level_gates[controls.size()].push_back(std::move(p));
  }
  if (out.order <= static_cast<std::uint64_t>(kDefaultOrderCap)) out.table = build_group(GroupSpec::named("GCnX", n));
  return out;
}

nlohmann::json GpiGroup::to_json() const {
  nlohmann::json j = {{"n", n},
                      {"order", order},
                      {"enumerated", !elements.empty()},
                      {"factorization_unique", factorization_unique},
                      {"factorization_checked", factorization_checked}};
  if (stabilizer) j["stabilizer_order"] = stabilizer->size();
  return j;
}

GpiGroup build_gpi(int n, const std::vector<ReversibleGate>& gates, std::uint64_t seed) {
  if (n < 1 || n > 16) throw InvalidSpec("G_Pi needs 1 <= n <= 16");
  GpiGroup out;
  out.n = n;
  std::size_t dim = std::size_t{1} << n;
  for (int q = 1; q <= n; ++q) out.generators.push_back(x_gate(n, q));
  for (const auto& g : gates) {
    if (g.n != n) throw InvalidSpec("gate " + g.name + " acts on a different number of qubits");
    out.generators.push_back(g.perm);
  }
  StabChain chain(dim, out.generators);
  out.order = chain.order();

  auto pauli = [&](std::uint32_t x) {
    Perm t(dim);
    for (std::size_t y = 0; y < dim; ++y) t[y] = static_cast<std::uint32_t>(y ^ x);
    return t;
  };
  // g = t_x k with k(0) = 0 forces x = g(0); uniqueness means no other x works.
  auto check = [&](const Perm& g) {
    int count = 0;
    for (std::uint32_t x = 0; x < dim; ++x) {
      Perm k = perm_compose(pauli(x), g);  // t_x is an involution
      if (k[0] == 0 && chain.contains(k)) ++count;
    }
    return count == 1;
  };

  out.factorization_unique = true;
  if (out.order <= kGpiEnumerationCap) {
    out.elements = perm_closure(dim, out.generators, kGpiEnumerationCap);
    for (const auto& g : out.elements) {
      out.factorization_unique = out.factorization_unique && check(g);
      ++out.factorization_checked;
    }
  } else {
    std::mt19937_64 eng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, out.generators.size() - 1);
    const std::uint64_t samples = std::min<std::uint64_t>(100000, dim <= 64 ? 100000 : 2000);
    for (std::uint64_t s = 0; s < samples; ++s) {
      Perm g = perm_identity(dim);
      for (int k = 0; k < 64; ++k) g = perm_compose(out.generators[pick(eng)], g);
      out.factorization_unique = out.factorization_unique && check(g);
      ++out.factorization_checked;
    }
  }

  if (out.order <= static_cast<std::uint64_t>(kDefaultOrderCap)) {
    std::vector<std::string> names;
    for (const auto& p : out.elements) names.push_back(perm_to_cycles(p));
    GroupSpec spec = GroupSpec::perm_generated(static_cast<int>(dim), out.generators);
    out.table = group_from_perms(spec, out.elements, names);
    std::map<Perm, int> index;
    for (int i = 0; i < static_cast<int>(out.elements.size()); ++i) index[out.elements[i]] = i;
    std::vector<int> paulis, stab;
    for (int i = 0; i < static_cast<int>(out.elements.size()); ++i) {
      const auto& p = out.elements[i];
      if (p[0] == 0) stab.push_back(i);
      if (p == pauli(p[0])) paulis.push_back(i);
    }
    out.paulis = std::make_shared<const Subgroup>(out.table, paulis);
    out.stabilizer = std::make_shared<const Subgroup>(out.table, stab);
    for (const auto& g : gates) out.gate_elements.push_back(index.at(g.perm));
  }
  return out;
}

// ---------------------------------------------------------------------------
// D_{2^n} words

std::int64_t reversing_binary(std::int64_t x) {
  if (x < 0) throw OutOfRange("reversing_binary needs x >= 0");
  if (x == 0) return 0;
  if (x % 2 == 0) return 2 * reversing_binary(x / 2);
  return 1 - 2 * reversing_binary(x / 2);
}

std::int64_t reversing_binary_inv(std::int64_t x) {
  return (x - 1) ^ (2 * x - 1);
}

namespace {

void check_d2n(int n) {
  if (n < 1 || n > 30) throw OutOfRange("D_{2^n} words need 1 <= n <= 30");
}

std::int64_t bits_to_int(const std::vector<int>& bits) {
  std::int64_t x = 0;
  for (int b : bits) x = 2 * x + (b & 1);
  return x;
}

std::vector<int> int_to_bits(std::int64_t x, int len) {
  std::vector<int> bits(len);
  for (int i = len - 1; i >= 0; --i, x >>= 1) bits[i] = static_cast<int>(x & 1);
  return bits;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Inverts q = f(x) + 2^{n-1} beta (mod 2^n) one bit of x at a time.
std::pair<int, std::int64_t> split_rotation(int n, std::int64_t q) {
  if (n == 1) return {static_cast<int>(q & 1), 0};
  std::int64_t half = std::int64_t{1} << (n - 1);
  int low = static_cast<int>(q & 1);
  std::int64_t next = low ? ((1 - q) % (2 * half) + 2 * half) % (2 * half) / 2 : q / 2;
  auto [beta, rest] = split_rotation(n - 1, next % half);
  return {beta, 2 * rest + low};
}

}  // namespace

std::pair<int, int> d2n_multiply(int n, std::pair<int, int> x, std::pair<int, int> y) {
  check_d2n(n);
  std::int64_t N = std::int64_t{1} << n;
  std::int64_t q = (y.first ? -x.second : x.second) + y.second;
  return {(x.first + y.first) & 1, static_cast<int>(((q % N) + N) % N)};
}

std::pair<int, int> d2n_encode(int n, const D2nWord& w) {
  check_d2n(n);
  if (static_cast<int>(w.bits.size()) != n - 1) throw OutOfRange("word needs n-1 U exponents");
  std::pair<int, int> g{0, 0};
  if (w.alpha) g = d2n_multiply(n, g, {1, 0});
  if (w.beta) g = d2n_multiply(n, g, {0, 1 << (n - 1)});
  for (int i = 0; i < n - 1; ++i)
    if (w.bits[i]) g = d2n_multiply(n, g, d2n_u(n, n - 2 - i));
  return g;
}

D2nWord d2n_decode(int n, int p, int q) {
  check_d2n(n);
  if (p < 0 || p > 1 || q < 0 || q >= (1 << n)) throw OutOfRange("(p, q) outside D_{2^n}");
  auto [beta, x] = split_rotation(n, q);
  D2nWord w;
  w.beta = beta;
  w.bits = int_to_bits(x, n - 1);
  int m = 0;
  for (int b : w.bits) m ^= b;
  w.alpha = p ^ m;
  return w;
}

D2nWord d2n_decode_closed_form(int n, int p, int q) {
  if (n < 2) throw OutOfRange("closed form needs n >= 2");
  std::int64_t h = std::int64_t{1} << (n - 2), H = std::int64_t{1} << (n - 1);
  D2nWord w;
  w.beta = static_cast<int>(floor_div(q + h - 2, H));
  std::int64_t mu = floor_div(q + h - 1 - H * w.beta, h);
  w.alpha = static_cast<int>(p ^ mu);
  std::int64_t arg = 1 - H * w.beta;
  std::int64_t x = (arg - 1) ^ (2 * arg - 1);
  w.bits = int_to_bits(x, n - 1);
  return w;
}

namespace {

ReversibleGate d2n_action(int n, const std::function<std::pair<int, int>(std::pair<int, int>)>& f,
                          const std::string& name) {
  int nq = n + 1;
  Perm perm(std::size_t{1} << nq);
  for (int idx = 0; idx < (1 << nq); ++idx) {
    D2nWord w{bit(nq, idx, 1), bit(nq, idx, 2), int_to_bits(idx & ((1 << (n - 1)) - 1), n - 1)};
    auto [p, q] = f(d2n_encode(n, w));
    auto out = d2n_decode(n, p, q);
    perm[idx] = static_cast<std::uint32_t>((out.alpha << n) | (out.beta << (n - 1)) | bits_to_int(out.bits));
  }
  return {nq, perm, name};
}

std::pair<int, int> d2n_inverse(int n, std::pair<int, int> g) {
  if (g.first) return g;
  return {0, ((1 << n) - g.second) % (1 << n)};
}

}  // namespace

ReversibleGate d2n_left_gate(int n, std::pair<int, int> g, const std::string& name) {
  return d2n_action(n, [&](std::pair<int, int> x) { return d2n_multiply(n, g, x); }, name);
}

ReversibleGate d2n_right_gate(int n, std::pair<int, int> g, const std::string& name) {
  auto gi = d2n_inverse(n, g);
  return d2n_action(n, [&](std::pair<int, int> x) { return d2n_multiply(n, x, gi); }, name);
}

// ---------------------------------------------------------------------------
// Clifford hierarchy

std::string HierarchyLevel::to_string() const {
  if (in_hierarchy()) return "C" + std::to_string(level);
  return "NotInHierarchyUpTo(" + std::to_string(cap) + ")";
}

MonomialOp MonomialOp::from_gate(const ReversibleGate& g) {
  return {g.n, g.perm, std::vector<int>(g.perm.size(), 0)};
}

MonomialOp MonomialOp::pauli_x(int n, int q) { return {n, x_gate(n, q), std::vector<int>(std::size_t{1} << n, 0)}; }

MonomialOp MonomialOp::pauli_z(int n, int q) {
  MonomialOp z{n, perm_identity(std::size_t{1} << n), std::vector<int>(std::size_t{1} << n)};
  for (int x = 0; x < (1 << n); ++x) z.phase[x] = 4 * bit(n, x, q);
  return z;
}

MonomialOp MonomialOp::t_gate(int n, int q) {
  MonomialOp t{n, perm_identity(std::size_t{1} << n), std::vector<int>(std::size_t{1} << n)};
  for (int x = 0; x < (1 << n); ++x) t.phase[x] = bit(n, x, q);
  return t;
}

MonomialOp MonomialOp::operator*(const MonomialOp& o) const {
  MonomialOp r{n, Perm(perm.size()), std::vector<int>(perm.size())};
  for (std::size_t x = 0; x < perm.size(); ++x) {
    r.perm[x] = perm[o.perm[x]];
    r.phase[x] = (o.phase[x] + phase[o.perm[x]]) & 7;
  }
  return r;
}

MonomialOp MonomialOp::adjoint() const {
  MonomialOp r{n, perm_inverse(perm), std::vector<int>(perm.size())};
  for (std::size_t x = 0; x < perm.size(); ++x) r.phase[perm[x]] = (8 - phase[x]) & 7;
  return r;
}

bool MonomialOp::is_pauli() const {
  std::uint32_t shift = perm[0];
  for (std::size_t x = 0; x < perm.size(); ++x)
    if (perm[x] != (x ^ shift)) return false;
  int z = 0;
  for (int q = 1; q <= n; ++q) {
    int d = (phase[std::size_t{1} << (n - q)] - phase[0]) & 7;
    if (d != 0 && d != 4) return false;
    if (d == 4) z |= 1 << (n - q);
  }
  for (std::size_t x = 0; x < perm.size(); ++x) {
    int parity = __builtin_popcount(static_cast<unsigned>(x) & static_cast<unsigned>(z)) & 1;
    if (((phase[x] - phase[0]) & 7) != 4 * parity) return false;
  }
  return true;
}

namespace {

int level_rec(const MonomialOp& U, int cap) {
  if (U.is_pauli()) return 1;
  if (cap <= 1) return 0;
  auto Ud = U.adjoint();
  int worst = 0;
  for (int q = 1; q <= U.n; ++q)
    for (const auto& P : {MonomialOp::pauli_x(U.n, q), MonomialOp::pauli_z(U.n, q)}) {
      int l = level_rec(U * P * Ud, cap - 1);
      if (l == 0) return 0;
      worst = std::max(worst, l);
    }
  return worst + 1;
}

}  // namespace

HierarchyLevel clifford_level(const MonomialOp& U, int cap) {
  if (U.n > 6) throw CapExceeded("clifford_level is limited to 6 qubits");
  if (cap < 1 || cap > 6) throw InvalidSpec("hierarchy cap must be in 1..6");
  return {level_rec(U, cap), cap};
}

HierarchyLevel clifford_level(const ReversibleGate& gate, int cap) {
  return clifford_level(MonomialOp::from_gate(gate), cap);
}

// ---------------------------------------------------------------------------
// Encoding tables

std::vector<int> evaluate_circuit(const std::string& circuit, const std::vector<int>& dims) {
  static const std::regex tok(R"((\w+)\(([^)]*)\))");
  struct Op {
    std::string kind;
    std::vector<int> wires;
  };
  int W = static_cast<int>(dims.size());
  std::vector<Op> ops;
  for (auto it = std::sregex_iterator(circuit.begin(), circuit.end(), tok); it != std::sregex_iterator(); ++it) {
    Op op{(*it)[1], {}};
    std::string args = (*it)[2];
    std::size_t pos = 0;
    while (pos <= args.size()) {
      std::size_t comma = args.find(',', pos);
      std::string a = args.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      a.erase(std::remove(a.begin(), a.end(), ' '), a.end());
      bool primed = !a.empty() && a.back() == '\'';
      if (primed) a.pop_back();
      int w = std::stoi(a) - 1 + (primed ? W / 2 : 0);
      if (w < 0 || w >= W) throw OutOfRange("wire " + a + " outside the register");
      op.wires.push_back(w);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    ops.push_back(std::move(op));
  }
  int total = 1;
  for (int d : dims) total *= d;
  std::vector<int> out(total);
  for (int idx = 0; idx < total; ++idx) {
    std::vector<int> v(W);
    for (int w = W - 1, r = idx; w >= 0; --w) {
      v[w] = r % dims[w];
      r /= dims[w];
    }
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
      const auto& o = *it;
      const auto& w = o.wires;
      auto need = [&](std::size_t k) {
        if (w.size() != k) throw InvalidSpec("gate " + o.kind + " has the wrong arity");
      };
      if (o.kind == "X") {
        need(1);
        v[w[0]] = (v[w[0]] + 1) % dims[w[0]];
      } else if (o.kind == "CX") {
        need(2);
        if (v[w[0]] == 1) v[w[1]] = (v[w[1]] + 1) % dims[w[1]];
      } else if (o.kind == "CCX") {
        need(3);
        if (v[w[0]] == 1 && v[w[1]] == 1) v[w[2]] = (v[w[2]] + 1) % dims[w[2]];
      } else if (o.kind == "Xq") {
        need(1);
        v[w[0]] = (v[w[0]] + 1) % dims[w[0]];
      } else if (o.kind == "CXq") {
        need(2);
        v[w[1]] = (v[w[1]] + v[w[0]]) % dims[w[1]];
      } else if (o.kind == "Cq") {
        need(1);
        v[w[0]] = (dims[w[0]] - v[w[0]]) % dims[w[0]];
      } else {
        throw InvalidSpec("unknown circuit gate '" + o.kind + "'");
      }
    }
    int r = 0;
    for (int k = 0; k < W; ++k) r = r * dims[k] + v[k];
    out[idx] = r;
  }
  return out;
}

bool EncodingTable::all_ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const EncodingEntry& e) { return e.ok; });
}

nlohmann::json EncodingTable::to_json() const {
  nlohmann::json j = {{"which", which}, {"dims", dims}, {"convention", convention}, {"all_ok", all_ok()}};
  auto& rows = j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json r = {{"op", e.op}, {"circuit", e.circuit}, {"ok", e.ok}, {"mismatches", e.mismatches}};
    if (!e.note.empty()) r["note"] = e.note;
    rows.push_back(r);
  }
  return j;
}

namespace {

void add_entry(EncodingTable& t, const std::string& op, const std::string& circuit, const std::vector<int>& dims,
               const std::function<int(int)>& expected, const std::string& note = "") {
  auto got = evaluate_circuit(circuit, dims);
  EncodingEntry e{op, circuit, note, true, 0};
  for (int x = 0; x < static_cast<int>(got.size()); ++x)
    if (got[x] != expected(x)) ++e.mismatches;
  e.ok = e.mismatches == 0;
  t.entries.push_back(e);
}

}  // namespace

EncodingTable pauli_encoding_table(const std::string& which) {
  EncodingTable t;
  t.which = which;
  if (which == "D4") {
    auto G = build_group(GroupSpec::named("D4_abc"));
    t.dims = {2, 2, 2};
    t.convention = "|alpha,beta,gamma> = a^alpha b^beta c^gamma; qubit 1 most significant; R^g: x -> x g^-1";
    int a = G->parse("a"), b = G->parse("b"), c = G->parse("c");
    auto L = [&](int g) { return [=](int x) { return G->mul(g, x); }; };
    auto R = [&](int g) { return [=](int x) { return G->mul(x, G->inv(g)); }; };
    add_entry(t, "L^1", "", t.dims, L(0), "identity element");
    add_entry(t, "L^a", "X(1)", t.dims, L(a));
    add_entry(t, "R^a", "X(1) CX(3,2)", t.dims, R(a));
    add_entry(t, "L^b", "X(2)", t.dims, L(b));
    add_entry(t, "R^b", "X(2)", t.dims, R(b));
    add_entry(t, "L^c", "X(3) CX(1,2)", t.dims, L(c));
    add_entry(t, "R^c", "X(3)", t.dims, R(c));
    add_entry(t, "CL", "CX(3,3') CX(2,2') CX(1,1') CCX(3,1',2')", {2, 2, 2, 2, 2, 2},
              [&](int xy) { return (xy / 8) * 8 + G->mul(xy / 8, xy % 8); }, "control on 1,2,3; target 1',2',3'");
  } else if (which == "S3") {
    auto G = build_group(GroupSpec::symmetric(3));
    t.dims = {3, 2};
    t.convention = "|alpha,beta> = r^alpha s^beta with r = (1 2 3), s = (1 2); qutrit 1, qubit 2";
    int r = G->parse("(1 2 3)"), s = G->parse("(1 2)");
    std::vector<int> elem(6), index(6);
    for (int al = 0; al < 3; ++al)
      for (int be = 0; be < 2; ++be) {
        int g = G->mul(G->pow(r, al), G->pow(s, be));
        elem[al * 2 + be] = g;
        index[g] = al * 2 + be;
      }
    auto L = [&](int g) { return [=](int x) { return index[G->mul(g, elem[x])]; }; };
    auto Rg = [&](int g) { return [=](int x) { return index[G->mul(elem[x], g)]; }; };
    add_entry(t, "L^1", "", t.dims, L(0), "identity element");
    add_entry(t, "L^r", "Xq(1)", t.dims, L(r));
    add_entry(t, "L^s", "Cq(1) X(2)", t.dims, L(s));
    add_entry(t, "R^r", "Xq(1) CXq(2,1)", t.dims, Rg(r), "acts as x -> x r");
    add_entry(t, "R^s", "X(2)", t.dims, Rg(s));
  } else if (which == "GCCX") {
    auto G = build_group(GroupSpec::named("GCCX"));
    t.dims = std::vector<int>(6, 2);
    t.convention = "|alpha..eta> = a^alpha b^beta c^gamma d^delta e^epsilon f^eta; qubit 1 most significant";
    auto L = [&](int g) { return [=](int x) { return G->mul(g, x); }; };
    auto R = [&](int g) { return [=](int x) { return G->mul(x, G->inv(g)); }; };
    const std::vector<std::pair<std::string, std::string>> left = {
        {"a", "X(1)"}, {"b", "X(2)"}, {"c", "X(3)"}, {"d", "X(4) CX(1,3)"}, {"e", "X(5) CX(2,3)"},
        {"f", "X(6) CX(2,4) CX(1,5) CCX(1,2,3)"}};
    const std::vector<std::pair<std::string, std::string>> right = {
        {"a", "X(1) CX(4,3) CX(6,5)"}, {"b", "X(2) CX(5,3) CX(6,4)"}, {"c", "X(3)"}, {"d", "X(4)"},
        {"e", "X(5)"}, {"f", "X(6)"}};
    add_entry(t, "L^1", "", t.dims, L(0), "identity element");
    for (const auto& [g, circ] : left) add_entry(t, "L^" + g, circ, t.dims, L(G->parse(g)));
    for (const auto& [g, circ] : right) add_entry(t, "R^" + g, circ, t.dims, R(G->parse(g)));
  } else {
    throw InvalidSpec("encoding tables exist for D4, S3 and GCCX");
  }
  return t;
}

}  // namespace gsc
