#include "oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace gsc::oracle {

ConfigSpace::ConfigSpace(GroupPtr g, LatticePtr l) : G(std::move(g)), lat(std::move(l)) {
  edges = lat->num_edges();
  dim = 1;
  for (int e = 0; e < edges; ++e) dim *= G->order();
}

std::int64_t ConfigSpace::index(const std::vector<int>& config) const {
  std::int64_t x = 0;
  for (int e = 0; e < edges; ++e) x = x * G->order() + config[e];
  return x;
}

std::vector<int> ConfigSpace::config(std::int64_t index) const {
  std::vector<int> c(edges);
  for (int e = edges - 1; e >= 0; --e) {
    c[e] = static_cast<int>(index % G->order());
    index /= G->order();
  }
  return c;
}

int flux(const ConfigSpace& S, const std::vector<int>& config, int p) {
  int m = 0;
  for (const auto& pe : S.lat->plaquette(p).cycle) {
    int x = config[pe.edge];
    m = S.G->mul(m, pe.inverted ? S.G->inv(x) : x);
  }
  return m;
}

bool flux_free(const ConfigSpace& S, const std::vector<int>& config) {
  for (int p = 0; p < S.lat->num_plaquettes(); ++p)
    if (flux(S, config, p) != 0) return false;
  return true;
}

std::vector<int> gauge(const ConfigSpace& S, std::vector<int> config, int v, int g) {
  for (int e = 0; e < S.edges; ++e) {
    const auto& E = S.lat->edge(e);
    if (E.tail == v) config[e] = S.G->mul(g, config[e]);
    if (E.head == v) config[e] = S.G->mul(config[e], S.G->inv(g));
  }
  return config;
}

SpMat code_projector(const ConfigSpace& S) {
  const auto n = S.dim;
  const double w = 1.0 / S.G->order();
  SpMat P(n, n);
  {
    std::vector<Eigen::Triplet<double>> t;
    for (std::int64_t x = 0; x < n; ++x)
      if (flux_free(S, S.config(x))) t.emplace_back(x, x, 1.0);
    P.setFromTriplets(t.begin(), t.end());
  }
  for (int v = 0; v < S.lat->num_vertices(); ++v) {
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(n) * S.G->order());
    for (std::int64_t x = 0; x < n; ++x) {
      auto c = S.config(x);
      for (int g = 0; g < S.G->order(); ++g) t.emplace_back(S.index(gauge(S, c, v, g)), x, w);
    }
    SpMat A(n, n);
    A.setFromTriplets(t.begin(), t.end());
    P = SpMat(P * A);
    P.prune(1e-15);
  }
  return P;
}

OrbitCount count_gauge_orbits(const ConfigSpace& S) {
  OrbitCount out;
  std::vector<char> seen(static_cast<std::size_t>(S.dim), 0);
  std::int64_t expected = 1;
  for (int v = 0; v < S.lat->num_vertices(); ++v) expected *= S.G->order();
  for (std::int64_t x = 0; x < S.dim; ++x) {
    auto c = S.config(x);
    if (!flux_free(S, c)) continue;
    ++out.flux_free;
    if (seen[x]) continue;
    ++out.orbits;
    std::vector<std::int64_t> stack{x};
    seen[x] = 1;
    std::int64_t size = 0;
    while (!stack.empty()) {
      auto y = stack.back();
      stack.pop_back();
      ++size;
      auto cy = S.config(y);
      for (int v = 0; v < S.lat->num_vertices(); ++v)
        for (int g = 1; g < S.G->order(); ++g) {
          auto z = S.index(gauge(S, cy, v, g));
          if (!seen[z]) {
            seen[z] = 1;
            stack.push_back(z);
          }
        }
    }
    if (size != expected) out.free_action = false;
  }
  return out;
}

std::map<std::int64_t, cplx> to_dense_map(const ConfigSpace& S, const SparseState& st) {
  std::map<std::int64_t, cplx> out;
  const auto& P = st.patches.at(0);
  for (const auto& e : st.entries()) {
    std::vector<int> c(S.edges);
    for (int k = 0; k < S.edges; ++k) c[k] = st.value(e.key, P.reg(k));
    out[S.index(c)] += e.amp;
  }
  return out;
}

SparseState basis_state(const ConfigSpace& S, std::int64_t index) {
  auto st = code_state(S.G, S.lat, 0);
  auto c = S.config(index);
  std::vector<int> values(st.num_registers(), 0);
  for (int k = 0; k < S.edges; ++k) values[st.patches[0].reg(k)] = c[k];
  st.set_entries({{st.encode(values), cplx(1.0)}});
  return st;
}

std::vector<std::pair<int, int>> factorizations(const GroupTable& G, const std::vector<int>& X,
                                                const std::vector<int>& Y, int g) {
  std::vector<std::pair<int, int>> out;
  for (int x : X)
    for (int y : Y)
      if (G.mul(x, y) == g) out.emplace_back(x, y);
  return out;
}

double vacuum_weight(const Irrep& R, int i, int a) {
  cplx s = 0;
  for (const auto& M : R.mats) s += M(i, i) * std::conj(M(a, a));
  return std::real(s) / static_cast<double>(R.mats.size());
}

namespace {

std::vector<int> generated(const GroupTable& G, const std::vector<int>& gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<int> out{0};
  in[0] = 1;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (int s : gens) {
      int y = G.mul(out[k], s);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  return out;
}

std::vector<int> generating_set(const GroupTable& G) {
  for (int a = 0; a < G.order(); ++a)
    if (static_cast<int>(generated(G, {a}).size()) == G.order()) return {a};
  for (int a = 1; a < G.order(); ++a)
    for (int b = a + 1; b < G.order(); ++b)
      if (static_cast<int>(generated(G, {a, b}).size()) == G.order()) return {a, b};
  for (int a = 1; a < G.order(); ++a)
    for (int b = a + 1; b < G.order(); ++b)
      for (int c = b + 1; c < G.order(); ++c)
        if (static_cast<int>(generated(G, {a, b, c}).size()) == G.order()) return {a, b, c};
  throw std::runtime_error("oracle: no generating set of size <= 3");
}

}  // namespace

std::vector<std::vector<int>> all_automorphisms(const GroupTable& G) {
  auto gens = generating_set(G);
  std::vector<std::vector<int>> out;
  std::vector<int> img(gens.size(), 0);
  while (true) {
    // Extend along a BFS spanning tree of the Cayley graph, then check the hom property.
    std::vector<int> phi(G.order(), -1);
    phi[0] = 0;
    std::vector<int> order{0};
    for (std::size_t k = 0; k < order.size(); ++k)
      for (std::size_t s = 0; s < gens.size(); ++s) {
        int y = G.mul(order[k], gens[s]);
        if (phi[y] < 0) {
          phi[y] = G.mul(phi[order[k]], img[s]);
          order.push_back(y);
        }
      }
    bool ok = std::set<int>(phi.begin(), phi.end()).size() == static_cast<std::size_t>(G.order());
    for (int x = 0; x < G.order() && ok; ++x)
      for (int y = 0; y < G.order() && ok; ++y) ok = phi[G.mul(x, y)] == G.mul(phi[x], phi[y]);
    if (ok) out.push_back(phi);
    std::size_t k = 0;
    while (k < img.size() && ++img[k] == G.order()) img[k++] = 0;
    if (k == img.size()) break;
  }
  return out;
}

std::vector<std::vector<int>> perm_closure(const std::vector<std::vector<int>>& gens) {
  const std::size_t n = gens.at(0).size();
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::set<std::vector<int>> seen{id};
  std::vector<std::vector<int>> out{id};
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& s : gens) {
      std::vector<int> y(n);
      for (std::size_t i = 0; i < n; ++i) y[i] = s[out[k][i]];
      if (seen.insert(y).second) out.push_back(y);
    }
  return out;
}

}  // namespace gsc::oracle
