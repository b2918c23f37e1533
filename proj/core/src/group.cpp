// Copyright 2026 The gsc Authors.
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

#include "gsc/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <random>
#include <set>

#include "gsc/errors.hpp"

namespace gsc {

// ---- GroupSpec ---------------------------------------------------------------

GroupSpec GroupSpec::cyclic(int n) {
  GroupSpec s;
  s.kind = Kind::Cyclic;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::dihedral(int n) {
  GroupSpec s;
  s.kind = Kind::Dihedral;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::symmetric(int n) {
  GroupSpec s;
  s.kind = Kind::Symmetric;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::alternating(int n) {
  GroupSpec s;
  s.kind = Kind::Alternating;
  s.n = n;
  return s;
}
GroupSpec GroupSpec::direct_product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.kind = Kind::DirectProduct;
  s.factors = std::move(factors);
  return s;
}
GroupSpec GroupSpec::perm_generated(int degree, std::vector<Perm> generators) {
  GroupSpec s;
  s.kind = Kind::PermGenerated;
  s.degree = degree;
  s.generators = std::move(generators);
  return s;
}
GroupSpec GroupSpec::named(const std::string& name, int n) {
  GroupSpec s;
  s.kind = Kind::Named;
  s.name = name;
  s.n = n;
  return s;
}

std::string GroupSpec::label() const {
  switch (kind) {
    case Kind::Cyclic: return "Z" + std::to_string(n);
    case Kind::Dihedral: return "D" + std::to_string(n);
    case Kind::Symmetric: return "S" + std::to_string(n);
    case Kind::Alternating: return "A" + std::to_string(n);
    case Kind::DirectProduct: {
      std::string out;
      for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "x";
        out += factors[i].label();
      }
      return out.empty() ? "Z1" : out;
    }
    case Kind::PermGenerated: return "Perm" + std::to_string(degree);
    case Kind::Named:
      if (name == "GCnX") return "GC" + std::to_string(n) + "X";
      return name;
  }
  return "?";
}

// ---- GroupTable --------------------------------------------------------------

GroupTable::GroupTable(GroupSpec spec, int order, std::vector<int> mult, std::vector<int> inv,
                       std::vector<std::string> names)
    : spec_(std::move(spec)),
      order_(order),
      mult_(std::move(mult)),
      inv_(std::move(inv)),
      names_(std::move(names)) {
  for (int g = 0; g < order_; ++g) name_index_.emplace(names_[g], g);
}

int GroupTable::pow(int g, long k) const {
  if (k < 0) {
    g = inv(g);
    k = -k;
  }
  int r = identity;
  int base = g;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

int GroupTable::element_order(int g) const {
  int k = 1;
  int x = g;
  while (x != identity) {
    x = mul(x, g);
    ++k;
  }
  return k;
}

bool GroupTable::is_abelian() const {
  for (int a = 0; a < order_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::optional<int> GroupTable::try_parse(std::string_view word) const {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  word = trim(word);
  if (auto it = name_index_.find(word); it != name_index_.end()) return it->second;
  bool e_alias = std::any_of(aliases_.begin(), aliases_.end(), [](const auto& a) { return a.first == "e"; });
  if (word.empty() || word == "1" || (word == "e" && !e_alias) || word == "id") return identity;
  int acc = identity;
  std::size_t pos = 0;
  while (pos < word.size()) {
    char ch = word[pos];
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.') {
      ++pos;
      continue;
    }
    // longest alias match
    int best = -1;
    std::size_t best_len = 0;
    for (std::size_t i = 0; i < aliases_.size(); ++i) {
      const auto& a = aliases_[i].first;
      if (a.size() > best_len && word.substr(pos, a.size()) == a) {
        best = static_cast<int>(i);
        best_len = a.size();
      }
    }
    if (best < 0) return std::nullopt;
    pos += best_len;
    long e = 1;
    if (pos < word.size() && word[pos] == '^') {
      ++pos;
      std::size_t start = pos;
      if (pos < word.size() && word[pos] == '-') ++pos;
      while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) ++pos;
      if (start == pos) return std::nullopt;
      e = std::stol(std::string(word.substr(start, pos - start)));
    }
    acc = mul(acc, pow(aliases_[best].second, e));
  }
  return acc;
}

int GroupTable::parse(std::string_view word) const {
  auto r = try_parse(word);
  if (!r) throw InvalidSpec("cannot parse element '" + std::string(word) + "' in " + label());
  return *r;
}

int multiply(const GroupTable& G, int a, int b) { return G.mul(a, b); }
int inverse(const GroupTable& G, int a) { return G.inv(a); }
int conjugate(const GroupTable& G, int g, int h) { return G.conj(g, h); }

// ---- constructions -----------------------------------------------------------

namespace {

std::vector<int> inverse_from_mult(int n, const std::vector<int>& mult) {
  std::vector<int> inv(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mult[static_cast<std::size_t>(a) * n + b] == 0) {
        inv[a] = b;
        break;
      }
  return inv;
}

GroupPtr make_table(GroupSpec spec, int n, std::vector<int> mult, std::vector<std::string> names,
                    std::vector<std::pair<std::string, int>> aliases) {
  auto inv = inverse_from_mult(n, mult);
  auto G = std::make_shared<GroupTable>(std::move(spec), n, std::move(mult), std::move(inv),
                                        std::move(names));
  G->set_aliases(std::move(aliases));
  return G;
}

void check_cap(std::uint64_t order, int cap) {
  if (order > static_cast<std::uint64_t>(cap))
    throw OrderCapExceeded("order " + std::to_string(order) + " exceeds cap " + std::to_string(cap));
}

GroupPtr build_cyclic(const GroupSpec& spec, int cap) {
  int n = spec.n;
  if (n < 1) throw InvalidSpec("Cyclic(n) needs n >= 1");
  check_cap(n, cap);
  std::vector<int> mult(static_cast<std::size_t>(n) * n);
  std::vector<std::string> names(n);
  for (int a = 0; a < n; ++a) {
    names[a] = "r^" + std::to_string(a);
    for (int b = 0; b < n; ++b) mult[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  }
  std::vector<std::pair<std::string, int>> aliases;
  if (n > 1) aliases.emplace_back("r", 1);
  return make_table(spec, n, std::move(mult), std::move(names), std::move(aliases));
}

GroupPtr build_dihedral(const GroupSpec& spec, int cap) {
  int n = spec.n;
  if (n < 1) throw InvalidSpec("Dihedral(n) needs n >= 1");
  int N = 2 * n;
  check_cap(N, cap);
  // element r^p s^q has index p + n q
  std::vector<int> mult(static_cast<std::size_t>(N) * N);
  std::vector<std::string> names(N);
  for (int x = 0; x < N; ++x) {
    int p = x % n, q = x / n;
    names[x] = "r^" + std::to_string(p) + " s^" + std::to_string(q);
    for (int y = 0; y < N; ++y) {
      int p2 = y % n, q2 = y / n;
      int pp = q ? (p - p2) : (p + p2);
      pp = ((pp % n) + n) % n;
      mult[static_cast<std::size_t>(x) * N + y] = pp + n * ((q + q2) % 2);
    }
  }
  std::vector<std::pair<std::string, int>> aliases{{"r", 1 % n}, {"s", n}};
  if (n == 4) {
    aliases.emplace_back("a", n);          // a = s
    aliases.emplace_back("b", 2);          // b = r^2
    aliases.emplace_back("c", 1 + n);      // c = r s
  }
  return make_table(spec, N, std::move(mult), std::move(names), std::move(aliases));
}

std::vector<Perm> all_perms(int n, bool even_only) {
  Perm p = perm_identity(n);
  std::vector<Perm> out;
  do {
    if (even_only) {
      int inversions = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (p[i] > p[j]) ++inversions;
      if (inversions % 2) continue;
    }
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

GroupPtr build_from_sorted_perms(GroupSpec spec, std::vector<Perm> elems,
                                 std::vector<std::pair<std::string, Perm>> alias_perms) {
  std::vector<std::string> names;
  names.reserve(elems.size());
  for (const auto& p : elems) names.push_back(perm_to_cycles(p));
  auto G = group_from_perms(std::move(spec), elems, std::move(names));
  std::map<Perm, int> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  std::vector<std::pair<std::string, int>> aliases;
  for (auto& [nm, p] : alias_perms) {
    auto it = index.find(p);
    if (it != index.end()) aliases.emplace_back(nm, it->second);
  }
  std::const_pointer_cast<GroupTable>(G)->set_aliases(std::move(aliases));
  return G;
}

GroupPtr build_symmetric(const GroupSpec& spec, int cap, bool alternating) {
  int n = spec.n;
  if (n < 1) throw InvalidSpec("Symmetric/Alternating(n) needs n >= 1");
  if (n > 12) throw OrderCapExceeded("degree too large for a full table");
  std::uint64_t order = factorial(n) / ((alternating && n > 1) ? 2 : 1);
  check_cap(order, cap);
  auto elems = all_perms(n, alternating);  // lexicographic, identity first
  std::vector<std::pair<std::string, Perm>> aliases;
  if (n >= 2) {
    Perm r(n);
    for (int i = 0; i < n; ++i) r[i] = (i + 1) % n;
    Perm s = perm_identity(n);
    std::swap(s[0], s[1]);
    aliases.emplace_back("r", r);
    if (!alternating) aliases.emplace_back("s", s);
  }
  return build_from_sorted_perms(spec, std::move(elems), std::move(aliases));
}

GroupPtr build_direct(const GroupSpec& spec, int cap) {
  std::vector<GroupPtr> fs;
  std::uint64_t order = 1;
  for (const auto& f : spec.factors) {
    fs.push_back(build_group(f, cap));
    order *= fs.back()->order();
    check_cap(order, cap);
  }
  int N = static_cast<int>(order);
  auto digits = [&](int x) {
    std::vector<int> d(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) {
      d[i] = x % fs[i]->order();
      x /= fs[i]->order();
    }
    return d;
  };
  auto pack = [&](const std::vector<int>& d) {
    int x = 0;
    for (std::size_t i = fs.size(); i-- > 0;) x = x * fs[i]->order() + d[i];
    return x;
  };
  std::vector<int> mult(static_cast<std::size_t>(N) * N);
  std::vector<std::string> names(N);
  for (int x = 0; x < N; ++x) {
    auto dx = digits(x);
    std::string nm = "(";
    for (std::size_t i = 0; i < fs.size(); ++i) nm += (i ? ", " : "") + fs[i]->name(dx[i]);
    names[x] = nm + ")";
    for (int y = 0; y < N; ++y) {
      auto dy = digits(y);
      std::vector<int> dz(fs.size());
      for (std::size_t i = 0; i < fs.size(); ++i) dz[i] = fs[i]->mul(dx[i], dy[i]);
      mult[static_cast<std::size_t>(x) * N + y] = pack(dz);
    }
  }
  std::vector<std::pair<std::string, int>> aliases;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (const auto& [nm, g] : fs[i]->aliases()) {
      std::vector<int> d(fs.size(), 0);
      d[i] = g;
      aliases.emplace_back(nm + std::to_string(i + 1), pack(d));
    }
  return make_table(spec, N, std::move(mult), std::move(names), std::move(aliases));
}

GroupPtr build_d4_abc(const GroupSpec& spec) {
  // a = s, b = r^2, c = r s inside D4 = <r, s>; index 4 alpha + 2 beta + gamma
  auto D = build_group(GroupSpec::dihedral(4));
  int a = D->parse("s"), b = D->parse("r^2"), c = D->parse("r s");
  std::vector<int> to_d(8), from_d(8, -1);
  std::vector<std::string> names(8);
  for (int x = 0; x < 8; ++x) {
    int al = (x >> 2) & 1, be = (x >> 1) & 1, ga = x & 1;
    int g = D->mul(D->mul(D->pow(a, al), D->pow(b, be)), D->pow(c, ga));
    to_d[x] = g;
    from_d[g] = x;
    names[x] = "a^" + std::to_string(al) + " b^" + std::to_string(be) + " c^" + std::to_string(ga);
  }
  std::vector<int> mult(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) mult[x * 8 + y] = from_d[D->mul(to_d[x], to_d[y])];
  std::vector<std::pair<std::string, int>> aliases{
      {"a", 4}, {"b", 2}, {"c", 1}, {"s", 4}, {"r", from_d[D->parse("r")]}};
  return make_table(spec, 8, std::move(mult), std::move(names), std::move(aliases));
}

GroupPtr build_gccx(const GroupSpec& spec) {
  const int n = 3;
  std::vector<Perm> gens{x_gate(n, 1),         x_gate(n, 2),         x_gate(n, 3),
                         mcx_gate(n, {1}, 3), mcx_gate(n, {2}, 3), mcx_gate(n, {1, 2}, 3)};
  const char* letters = "abcdef";
  std::vector<Perm> elems(64);
  std::vector<std::string> names(64);
  std::map<Perm, int> seen;
  for (int x = 0; x < 64; ++x) {
    Perm p = perm_identity(1 << n);
    std::string nm;
    for (int i = 0; i < 6; ++i) {
      int bit = (x >> (5 - i)) & 1;
      if (bit) p = perm_compose(p, gens[i]);
      nm += (i ? " " : "") + std::string(1, letters[i]) + "^" + std::to_string(bit);
    }
    if (!seen.emplace(p, x).second) throw InvalidGenerators("GCCX normal form is not unique");
    elems[x] = p;
    names[x] = nm;
  }
  auto G = group_from_perms(spec, elems, names);
  std::vector<std::pair<std::string, int>> aliases;
  for (int i = 0; i < 6; ++i) aliases.emplace_back(std::string(1, letters[i]), 1 << (5 - i));
  std::const_pointer_cast<GroupTable>(G)->set_aliases(std::move(aliases));
  return G;
}

GroupPtr build_gcnx(const GroupSpec& spec, int cap) {
  int n = spec.n;
  if (n < 0) throw InvalidSpec("GCnX needs n >= 0");
  int nq = n + 1;
  std::vector<Perm> gens;
  for (int q = 1; q <= n; ++q) gens.push_back(x_gate(nq, q));
  std::vector<int> controls;
  for (int q = 1; q <= n; ++q) controls.push_back(q);
  gens.push_back(mcx_gate(nq, controls, nq));
  std::uint64_t order = perm_group_order(1u << nq, gens);
  check_cap(order, cap);
  auto elems = perm_closure(1u << nq, gens, static_cast<std::size_t>(cap));
  std::sort(elems.begin(), elems.end());
  std::vector<std::pair<std::string, Perm>> aliases;
  for (int q = 1; q <= n; ++q) aliases.emplace_back("x" + std::to_string(q), gens[q - 1]);
  aliases.emplace_back("t", gens.back());
  return build_from_sorted_perms(spec, std::move(elems), std::move(aliases));
}

}  // namespace

GroupPtr group_from_perms(GroupSpec spec, const std::vector<Perm>& elems,
                          std::vector<std::string> names) {
  int N = static_cast<int>(elems.size());
  if (N == 0 || !perm_is_identity(elems[0]))
    throw InvalidGenerators("element list must start with the identity");
  std::map<Perm, int> index;
  for (int i = 0; i < N; ++i) index[elems[i]] = i;
  std::vector<int> mult(static_cast<std::size_t>(N) * N);
  for (int x = 0; x < N; ++x)
    for (int y = 0; y < N; ++y) {
      auto it = index.find(perm_compose(elems[x], elems[y]));
      if (it == index.end()) throw InvalidGenerators("element list is not closed");
      mult[static_cast<std::size_t>(x) * N + y] = it->second;
    }
  return make_table(std::move(spec), N, std::move(mult), std::move(names), {});
}

GroupPtr build_group(const GroupSpec& spec, int cap) {
  switch (spec.kind) {
    case GroupSpec::Kind::Cyclic: return build_cyclic(spec, cap);
    case GroupSpec::Kind::Dihedral: return build_dihedral(spec, cap);
    case GroupSpec::Kind::Symmetric: return build_symmetric(spec, cap, false);
    case GroupSpec::Kind::Alternating: return build_symmetric(spec, cap, true);
    case GroupSpec::Kind::DirectProduct: return build_direct(spec, cap);
    case GroupSpec::Kind::PermGenerated: {
      for (const auto& g : spec.generators)
        if (!perm_is_bijection(g, spec.degree))
          throw InvalidGenerators("generator is not a bijection on " + std::to_string(spec.degree) +
                                  " points");
      std::uint64_t order = perm_group_order(spec.degree, spec.generators);
      check_cap(order, cap);
      auto elems = perm_closure(spec.degree, spec.generators, static_cast<std::size_t>(cap));
      std::sort(elems.begin(), elems.end());
      std::vector<std::pair<std::string, Perm>> aliases;
      for (std::size_t i = 0; i < spec.generators.size(); ++i)
        aliases.emplace_back("g" + std::to_string(i + 1), spec.generators[i]);
      return build_from_sorted_perms(spec, std::move(elems), std::move(aliases));
    }
    case GroupSpec::Kind::Named:
      if (spec.name == "D4_abc") return build_d4_abc(spec);
      if (spec.name == "GCCX") return build_gccx(spec);
      if (spec.name == "GCnX") return build_gcnx(spec, cap);
      throw InvalidSpec("unknown named group '" + spec.name + "'");
  }
  throw InvalidSpec("unknown group kind");
}

GroupCheck validate_group(const GroupTable& G, std::uint64_t seed) {
  GroupCheck c;
  int n = G.order();
  for (int g = 0; g < n; ++g) {
    if (G.mul(0, g) != g || G.mul(g, 0) != g) c.identity = false;
    if (G.inv(g) < 0 || G.mul(g, G.inv(g)) != 0 || G.mul(G.inv(g), g) != 0) c.inverse = false;
  }
  for (int a = 0; a < n && c.latin; ++a) {
    std::vector<char> row(n, 0), col(n, 0);
    for (int b = 0; b < n; ++b) {
      int x = G.mul(a, b), y = G.mul(b, a);
      if (x < 0 || x >= n || y < 0 || y >= n || row[x] || col[y]) {
        c.latin = false;
        break;
      }
      row[x] = col[y] = 1;
    }
  }
  if (c.latin) {
    if (n <= 64) {
      for (int a = 0; a < n && c.associative; ++a)
        for (int b = 0; b < n && c.associative; ++b)
          for (int d = 0; d < n; ++d)
            if (G.mul(G.mul(a, b), d) != G.mul(a, G.mul(b, d))) {
              c.associative = false;
              break;
            }
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<int> pick(0, n - 1);
      for (int t = 0; t < 100000; ++t) {
        int a = pick(rng), b = pick(rng), d = pick(rng);
        if (G.mul(G.mul(a, b), d) != G.mul(a, G.mul(b, d))) {
          c.associative = false;
          break;
        }
      }
    }
  }
  if (!c.identity) c.message += "identity law fails; ";
  if (!c.inverse) c.message += "inverse law fails; ";
  if (!c.latin) c.message += "not a Latin square; ";
  if (!c.associative) c.message += "not associative; ";
  return c;
}

// ---- subgroups ---------------------------------------------------------------

Subgroup::Subgroup(GroupPtr parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  local_.assign(parent_->order(), -1);
  for (std::size_t i = 0; i < members_.size(); ++i) local_[members_[i]] = static_cast<int>(i);
  if (members_.empty() || members_[0] != 0) throw InvalidGenerators("subgroup lacks identity");
  int m = size();
  std::vector<int> mult(static_cast<std::size_t>(m) * m);
  std::vector<int> inv(m);
  std::vector<std::string> names(m);
  for (int i = 0; i < m; ++i) {
    names[i] = parent_->name(members_[i]);
    int gi = local_[parent_->inv(members_[i])];
    if (gi < 0) throw InvalidGenerators("subset not closed under inverse");
    inv[i] = gi;
    for (int j = 0; j < m; ++j) {
      int p = local_[parent_->mul(members_[i], members_[j])];
      if (p < 0) throw InvalidGenerators("subset not closed under multiplication");
      mult[static_cast<std::size_t>(i) * m + j] = p;
    }
  }
  auto lg = std::make_shared<GroupTable>(GroupSpec::named(parent_->label() + "_sub"), m,
                                         std::move(mult), std::move(inv), std::move(names));
  std::vector<std::pair<std::string, int>> aliases;
  for (const auto& [nm, g] : parent_->aliases())
    if (local_[g] >= 0) aliases.emplace_back(nm, local_[g]);
  lg->set_aliases(std::move(aliases));
  local_group_ = lg;
}

SubgroupPtr subgroup_closure(const GroupPtr& G, const std::vector<int>& generators) {
  std::vector<char> in(G->order(), 0);
  std::vector<int> elems{0};
  in[0] = 1;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (int s : generators) {
      if (s < 0 || s >= G->order()) throw InvalidGenerators("generator index out of range");
      int x = G->mul(s, elems[k]);
      if (!in[x]) {
        in[x] = 1;
        elems.push_back(x);
      }
    }
  auto H = std::make_shared<Subgroup>(G, elems);
  std::string lbl = "<";
  for (std::size_t i = 0; i < generators.size(); ++i) lbl += (i ? "," : "") + G->name(generators[i]);
  H->label = lbl + ">";
  return H;
}

SubgroupPtr whole_group(const GroupPtr& G) {
  std::vector<int> all(G->order());
  std::iota(all.begin(), all.end(), 0);
  auto H = std::make_shared<Subgroup>(G, all);
  H->label = G->label();
  return H;
}

bool is_normal(const Subgroup& H) {
  const auto& G = *H.parent();
  for (int h : H.members())
    for (int g = 0; g < G.order(); ++g)
      if (!H.contains(G.conj(h, g))) return false;
  return true;
}

std::vector<std::vector<int>> conjugacy_classes(const GroupTable& G) {
  std::vector<int> cls(G.order(), -1);
  std::vector<std::vector<int>> out;
  for (int g = 0; g < G.order(); ++g) {
    if (cls[g] >= 0) continue;
    std::vector<int> c;
    for (int h = 0; h < G.order(); ++h) {
      int x = G.conj(g, h);
      if (cls[x] < 0) {
        cls[x] = static_cast<int>(out.size());
        c.push_back(x);
      }
    }
    std::sort(c.begin(), c.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<int> class_index(const GroupTable& G, const std::vector<std::vector<int>>& classes) {
  std::vector<int> idx(G.order(), -1);
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (int g : classes[c]) idx[g] = static_cast<int>(c);
  return idx;
}

// ---- knit products -----------------------------------------------------------

KnitDecomposition knit_decompose(const GroupPtr& G, const SubgroupPtr& H, const SubgroupPtr& K) {
  if (H->parent().get() != G.get() || K->parent().get() != G.get())
    throw NotAKnitProduct("subgroups belong to a different group");
  for (int h : H->members())
    if (h != 0 && K->contains(h)) throw NotAKnitProduct("intersection: H and K share a non-identity element");
  if (static_cast<long>(H->size()) * K->size() != G->order())
    throw NotAKnitProduct("order product: |H||K| = " + std::to_string(H->size() * K->size()) +
                          " != |G| = " + std::to_string(G->order()));
  KnitDecomposition d;
  d.G = G;
  d.H = H;
  d.K = K;
  d.factor_hk.assign(G->order(), {-1, -1});
  d.factor_kh.assign(G->order(), {-1, -1});
  for (int h : H->members())
    for (int k : K->members()) {
      int g = G->mul(h, k);
      if (d.factor_hk[g].first >= 0) throw NotAKnitProduct("factorization uniqueness fails for " + G->name(g));
      d.factor_hk[g] = {h, k};
      int g2 = G->mul(k, h);
      if (d.factor_kh[g2].first >= 0) throw NotAKnitProduct("factorization uniqueness fails for " + G->name(g2));
      d.factor_kh[g2] = {k, h};
    }
  d.transversal = K->members();
  return d;
}

// ---- automorphisms -----------------------------------------------------------

Automorphism Automorphism::compose(const Automorphism& other) const {
  Automorphism r;
  r.G = G;
  r.perm.resize(perm.size());
  for (std::size_t g = 0; g < perm.size(); ++g) r.perm[g] = perm[other.perm[g]];
  if (inner && other.inner) r.inner = G->mul(*inner, *other.inner);
  return r;
}

Automorphism Automorphism::inverse() const {
  Automorphism r;
  r.G = G;
  r.perm.resize(perm.size());
  for (std::size_t g = 0; g < perm.size(); ++g) r.perm[perm[g]] = static_cast<int>(g);
  if (inner) r.inner = G->inv(*inner);
  return r;
}

bool Automorphism::is_identity() const {
  for (std::size_t g = 0; g < perm.size(); ++g)
    if (perm[g] != static_cast<int>(g)) return false;
  return true;
}

void validate_automorphism(const Automorphism& phi) {
  const auto& G = *phi.G;
  int n = G.order();
  if (static_cast<int>(phi.perm.size()) != n) throw NotBijective("wrong length");
  std::vector<char> seen(n, 0);
  for (int g = 0; g < n; ++g) {
    int x = phi.perm[g];
    if (x < 0 || x >= n || seen[x]) throw NotBijective("image list is not a permutation");
    seen[x] = 1;
  }
  if (phi.perm[0] != 0) throw NotAHomomorphism("identity not fixed");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (phi.perm[G.mul(a, b)] != G.mul(phi.perm[a], phi.perm[b]))
        throw NotAHomomorphism("phi(" + G.name(a) + " * " + G.name(b) + ") mismatch");
}

Automorphism automorphism_from_images(const GroupPtr& G,
                                      const std::vector<std::pair<int, int>>& generator_images) {
  int n = G->order();
  std::vector<int> img(n, -1);
  img[0] = 0;
  std::vector<int> queue{0};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int x = queue[k];
    for (auto [s, t] : generator_images) {
      int y = G->mul(s, x);
      int iy = G->mul(t, img[x]);
      if (img[y] < 0) {
        img[y] = iy;
        queue.push_back(y);
      } else if (img[y] != iy) {
        throw NotAHomomorphism("word images disagree at " + G->name(y));
      }
    }
  }
  if (static_cast<int>(queue.size()) != n)
    throw NotAHomomorphism("generator list does not generate the group");
  Automorphism phi{G, img, std::nullopt};
  validate_automorphism(phi);
  for (int g = 0; g < n; ++g) {
    bool match = true;
    for (int x = 0; x < n && match; ++x) match = (G->conj(x, g) == img[x]);
    if (match) {
      phi.inner = g;
      break;
    }
  }
  return phi;
}

Automorphism inner_automorphism(const GroupPtr& G, int g) {
  Automorphism phi{G, std::vector<int>(G->order()), g};
  for (int x = 0; x < G->order(); ++x) phi.perm[x] = G->conj(x, g);
  return phi;
}

Automorphism identity_automorphism(const GroupPtr& G) { return inner_automorphism(G, 0); }

std::vector<int> small_generating_set(const GroupTable& G) {
  std::vector<int> gens;
  std::vector<char> in(G.order(), 0);
  in[0] = 1;
  std::vector<int> elems{0};
  auto close = [&]() {
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (int s : gens) {
        int x = G.mul(s, elems[k]);
        if (!in[x]) {
          in[x] = 1;
          elems.push_back(x);
        }
      }
  };
  for (int g = 1; g < G.order(); ++g) {
    if (in[g]) continue;
    gens.push_back(g);
    close();
    // restart closure with new generator applied to all elements
    for (std::size_t k = 0; k < elems.size(); ++k)
      for (int s : gens) {
        int x = G.mul(elems[k], s);
        if (!in[x]) {
          in[x] = 1;
          elems.push_back(x);
        }
      }
    close();
  }
  return gens;
}

}  // namespace gsc
