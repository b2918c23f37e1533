#include "gsc/lattice.hpp"

#include <sstream>

#include "gsc/errors.hpp"

namespace gsc {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::Left: return "left";
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Down: return "down";
  }
  return "?";
}

Direction direction_from_string(const std::string& s) {
  if (s == "left") return Direction::Left;
  if (s == "right") return Direction::Right;
  if (s == "up") return Direction::Up;
  if (s == "down") return Direction::Down;
  throw InvalidSpec("unknown direction '" + s + "'");
}

Lattice::Lattice(int vx, int vy) : vx_(vx), vy_(vy) {
  if (vx < 1 || vy < 2) throw TooSmall("lattice needs vx >= 1 and vy >= 2");
  for (int j = 0; j < vy; ++j)
    for (int c = 0; c < vx; ++c) vertices_.push_back(Vertex{vertex_id(j, c), j, c, {}, {}});
  for (int j = 0; j < vy; ++j)
    for (int k = 0; k <= vx; ++k) {
      Edge e;
      e.id = h_edge(j, k);
      e.orient = Orientation::Right;
      e.row = j;
      e.col = k;
      e.tail = k > 0 ? vertex_id(j, k - 1) : -1;
      e.head = k < vx ? vertex_id(j, k) : -1;
      e.dangling = (k == 0 || k == vx);
      edges_.push_back(e);
    }
  for (int j = 0; j + 1 < vy; ++j)
    for (int c = 0; c < vx; ++c) {
      Edge e;
      e.id = v_edge(j, c);
      e.orient = Orientation::Up;
      e.row = j;
      e.col = c;
      e.tail = vertex_id(j, c);
      e.head = vertex_id(j + 1, c);
      edges_.push_back(e);
    }
  for (const auto& e : edges_) {
    if (e.tail >= 0) vertices_[e.tail].out.push_back(e.id);
    if (e.head >= 0) vertices_[e.head].in.push_back(e.id);
  }
  for (int j = 0; j + 1 < vy; ++j)
    for (int col = 0; col <= vx; ++col) {
      Plaquette p;
      p.id = plaquette_id(j, col);
      p.row = j;
      p.col = col;
      if (col == 0) {
        p.kind = Plaquette::Kind::LeftBoundary;
        p.cycle = {{h_edge(j, 0), false}, {v_edge(j, 0), false}, {h_edge(j + 1, 0), true}};
      } else if (col == vx) {
        p.kind = Plaquette::Kind::RightBoundary;
        p.base = vertex_id(j, vx - 1);
        p.cycle = {{h_edge(j, vx), false}, {h_edge(j + 1, vx), true}, {v_edge(j, vx - 1), true}};
      } else {
        p.kind = Plaquette::Kind::Interior;
        p.base = vertex_id(j, col - 1);
        p.cycle = {{h_edge(j, col), false},
                   {v_edge(j, col), false},
                   {h_edge(j + 1, col), true},
                   {v_edge(j, col - 1), true}};
      }
      plaquettes_.push_back(p);
    }
}

std::vector<int> Lattice::left_edges() const {
  std::vector<int> out;
  for (int j = 0; j < vy_; ++j) out.push_back(h_edge(j, 0));
  return out;
}

std::vector<int> Lattice::right_edges() const {
  std::vector<int> out;
  for (int j = 0; j < vy_; ++j) out.push_back(h_edge(j, vx_));
  return out;
}

std::vector<int> Lattice::row_edges(int row) const {
  std::vector<int> out;
  for (int k = 0; k <= vx_; ++k) out.push_back(h_edge(row, k));
  return out;
}

int Lattice::plaquette_neighbor(int p, Direction d, int* shared_edge) const {
  const auto& P = plaquettes_[p];
  int j = P.row, col = P.col;
  switch (d) {
    case Direction::Left:
      if (col == 0) throw BoundaryBlocked("left rough boundary");
      *shared_edge = v_edge(j, col - 1);
      return plaquette_id(j, col - 1);
    case Direction::Right:
      if (col == vx_) throw BoundaryBlocked("right rough boundary");
      *shared_edge = v_edge(j, col);
      return plaquette_id(j, col + 1);
    case Direction::Up:
      *shared_edge = h_edge(j + 1, col);
      return (j + 2 < vy_) ? plaquette_id(j + 1, col) : -1;
    case Direction::Down:
      *shared_edge = h_edge(j, col);
      return (j > 0) ? plaquette_id(j - 1, col) : -1;
  }
  return -1;
}

std::string Lattice::describe() const {
  return "(" + std::to_string(vx_) + "," + std::to_string(vy_) + ")";
}

LatticePtr build_lattice(int vx, int vy) { return std::make_shared<const Lattice>(vx, vy); }

int plaquette_flux(const Lattice& lat, int p, const Configuration& config, const GroupTable& G) {
  int m = 0;
  for (const auto& pe : lat.plaquette(p).cycle) {
    int x = config[pe.edge];
    m = G.mul(m, pe.inverted ? G.inv(x) : x);
  }
  return m;
}

Configuration apply_gauge(const Lattice& lat, const Configuration& config, int v, int g,
                          const GroupTable& G) {
  Configuration out = config;
  const auto& V = lat.vertex(v);
  for (int e : V.out) out[e] = G.mul(g, out[e]);
  for (int e : V.in) out[e] = G.mul(out[e], G.inv(g));
  return out;
}

bool is_flux_free(const Lattice& lat, const GroupTable& G, const Configuration& config) {
  for (int p = 0; p < lat.num_plaquettes(); ++p)
    if (plaquette_flux(lat, p, config, G) != 0) return false;
  return true;
}

GaugeReduction left_gauge_reduce(const Lattice& lat, const GroupTable& G, const Configuration& config) {
  if (!is_flux_free(lat, G, config)) throw NotFluxFree("configuration carries flux");
  GaugeReduction r;
  r.canonical = config;
  for (int j = lat.vy() - 1; j >= 0; --j)
    for (int c = lat.vx() - 1; c >= 0; --c) {
      int v = lat.vertex_id(j, c);
      int k = G.inv(r.canonical[lat.h_edge(j, c + 1)]);
      r.canonical = apply_gauge(lat, r.canonical, v, k, G);
      r.word.emplace_back(v, G.inv(k));
    }
  r.label = r.canonical[lat.h_edge(0, 0)];
  return r;
}

Configuration apply_gauge_word(const Lattice& lat, const GroupTable& G, Configuration config,
                               const std::vector<std::pair<int, int>>& word) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) config = apply_gauge(lat, config, it->first, it->second, G);
  return config;
}

int holonomy(const Lattice& lat, const GroupTable& G, const Configuration& config, int row) {
  int h = 0;
  for (int e : lat.row_edges(row)) h = G.mul(h, config[e]);
  return h;
}

int holonomy_checked(const Lattice& lat, const GroupTable& G, const Configuration& config) {
  int h0 = holonomy(lat, G, config, 0);
  for (int j = 1; j < lat.vy(); ++j)
    if (holonomy(lat, G, config, j) != h0)
      throw FluxPresentWarning("row holonomies disagree (row 0 vs row " + std::to_string(j) + ")");
  return h0;
}

Configuration left_gauge_config(const Lattice& lat, int g) {
  Configuration c(lat.num_edges(), 0);
  for (int e : lat.left_edges()) c[e] = g;
  return c;
}

std::string render_configuration(const Lattice& lat, const GroupTable& G, const Configuration& config) {
  std::ostringstream out;
  for (int j = lat.vy() - 1; j >= 0; --j) {
    out << "  ";
    for (int k = 0; k <= lat.vx(); ++k) {
      out << "-[" << G.name(config[lat.h_edge(j, k)]) << "]->";
      if (k < lat.vx()) out << "o";
    }
    out << "\n";
    if (j > 0) {
      out << "  ";
      for (int c = 0; c < lat.vx(); ++c) out << "   ^[" << G.name(config[lat.v_edge(j - 1, c)]) << "]";
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace gsc
