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

#include "gsc/perm.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "gsc/errors.hpp"

namespace gsc {

Perm perm_identity(std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

Perm perm_compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

bool perm_is_bijection(const Perm& p, std::size_t degree) {
  if (p.size() != degree) return false;
  std::vector<bool> seen(degree, false);
  for (auto x : p) {
    if (x >= degree || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

Perm perm_from_cycles(const std::string& text, std::size_t degree) {
  Perm p = perm_identity(degree);
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ') { ++pos; continue; }
    if (text[pos] != '(') throw InvalidGenerators("bad cycle string '" + text + "'");
    auto close = text.find(')', pos);
    if (close == std::string::npos) throw InvalidGenerators("unterminated cycle in '" + text + "'");
    std::istringstream in(text.substr(pos + 1, close - pos - 1));
    std::vector<std::uint32_t> cyc;
    std::string tok;
    while (in >> tok) {
      for (auto& ch : tok) if (ch == ',') ch = ' ';
      std::istringstream t2(tok);
      long v;
      while (t2 >> v) {
        if (v < 1 || static_cast<std::size_t>(v) > degree)
          throw InvalidGenerators("point out of range in '" + text + "'");
        cyc.push_back(static_cast<std::uint32_t>(v - 1));
      }
    }
    // Compose the cycle onto p (cycles applied right to left).
    Perm c = perm_identity(degree);
    for (std::size_t i = 0; i < cyc.size(); ++i) c[cyc[i]] = cyc[(i + 1) % cyc.size()];
    if (!perm_is_bijection(c, degree)) throw InvalidGenerators("repeated point in '" + text + "'");
    p = perm_compose(p, c);
    pos = close + 1;
  }
  return p;
}

std::string perm_to_cycles(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t x = i;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = p[x];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

StabChain::StabChain(std::size_t degree, const std::vector<Perm>& generators) : degree_(degree) {
  for (const auto& g : generators) {
    if (!perm_is_bijection(g, degree)) throw InvalidGenerators("generator is not a bijection");
    if (!perm_is_identity(g)) extend_level(0, g);
  }
}

std::pair<Perm, std::size_t> StabChain::sift(const Perm& g) const {
  Perm h = g;
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const auto& L = levels_[l];
    auto y = h[L.point];
    if (L.transversal[y].empty()) return {h, l};
    h = perm_compose(perm_inverse(L.transversal[y]), h);
  }
  return {h, levels_.size()};
}

void StabChain::rebuild_orbit(std::size_t i) {
  auto& L = levels_[i];
  L.transversal.assign(degree_, Perm{});
  L.transversal[L.point] = perm_identity(degree_);
  L.orbit.assign(1, L.point);
  for (std::size_t k = 0; k < L.orbit.size(); ++k) {
    auto x = L.orbit[k];
    for (const auto& s : L.gens) {
      auto y = s[x];
      if (L.transversal[y].empty()) {
        L.transversal[y] = perm_compose(s, L.transversal[x]);
        L.orbit.push_back(y);
      }
    }
  }
}

void StabChain::extend_level(std::size_t i, const Perm& g) {
  Perm r = g;
  std::size_t l = i;
  for (; l < levels_.size(); ++l) {
    const auto& L = levels_[l];
    auto y = r[L.point];
    if (L.transversal[y].empty()) break;
    r = perm_compose(perm_inverse(L.transversal[y]), r);
  }
  if (l >= levels_.size() && perm_is_identity(r)) return;
  add_generator(i, g);
}

void StabChain::add_generator(std::size_t i, const Perm& g) {
  if (i == levels_.size()) {
    std::uint32_t point = 0;
    while (point < degree_ && g[point] == point) ++point;
    levels_.push_back(Level{point, {}, {}, {}});
    base_.push_back(point);
  }
  auto& L = levels_[i];
  std::vector<std::uint32_t> old_orbit = L.orbit;
  L.gens.push_back(g);
  rebuild_orbit(i);
  std::vector<bool> was_old(degree_, false);
  for (auto x : old_orbit) was_old[x] = true;
  // Copy what we iterate over: recursion below may append levels and invalidate L.
  std::vector<std::uint32_t> orbit = levels_[i].orbit;
  std::vector<Perm> gens = levels_[i].gens;
  for (auto x : orbit) {
    for (std::size_t si = 0; si < gens.size(); ++si) {
      if (was_old[x] && si + 1 != gens.size()) continue;
      const auto& s = gens[si];
      const auto& tx = levels_[i].transversal[x];
      const auto& tsx = levels_[i].transversal[s[x]];
      Perm sch = perm_compose(perm_inverse(tsx), perm_compose(s, tx));
      if (!perm_is_identity(sch)) extend_level(i + 1, sch);
    }
  }
}

std::uint64_t StabChain::order() const {
  std::uint64_t n = 1;
  for (const auto& L : levels_) n *= L.orbit.size();
  return n;
}

bool StabChain::contains(const Perm& p) const {
  if (p.size() != degree_) return false;
  auto [r, l] = sift(p);
  return l == levels_.size() && perm_is_identity(r);
}

std::uint64_t perm_group_order(std::size_t degree, const std::vector<Perm>& generators) {
  return StabChain(degree, generators).order();
}

std::vector<Perm> perm_closure(std::size_t degree, const std::vector<Perm>& generators,
                               std::size_t cap) {
  for (const auto& g : generators)
    if (!perm_is_bijection(g, degree)) throw InvalidGenerators("generator is not a bijection");
  std::vector<Perm> elems{perm_identity(degree)};
  std::map<Perm, std::size_t> index{{elems[0], 0}};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& s : generators) {
      Perm q = perm_compose(s, elems[k]);
      if (index.emplace(q, elems.size()).second) {
        elems.push_back(std::move(q));
        if (elems.size() > cap)
          throw OrderCapExceeded("closure exceeds cap " + std::to_string(cap));
      }
    }
  }
  return elems;
}

// Bit-string helpers with qubit 1 as the most significant bit of an n-bit index.
Perm x_gate(int n, int q) {
  int dim = 1 << n;
  Perm p(dim);
  for (int x = 0; x < dim; ++x) p[x] = x ^ (1 << (n - q));
  return p;
}

Perm mcx_gate(int n, const std::vector<int>& controls, int target) {
  int dim = 1 << n;
  Perm p(dim);
  for (int x = 0; x < dim; ++x) {
    bool on = true;
    for (int c : controls) on = on && ((x >> (n - c)) & 1);
    p[x] = on ? (x ^ (1 << (n - target))) : x;
  }
  return p;
}

Perm swap_gate(int n, int a, int b) {
  int dim = 1 << n;
  Perm p(dim);
  for (int x = 0; x < dim; ++x) {
    int ba = (x >> (n - a)) & 1, bb = (x >> (n - b)) & 1;
    int y = x & ~(1 << (n - a)) & ~(1 << (n - b));
    p[x] = y | (bb << (n - a)) | (ba << (n - b));
  }
  return p;
}

}  // namespace gsc
