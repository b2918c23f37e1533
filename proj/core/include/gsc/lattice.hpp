#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gsc/group.hpp"

namespace gsc {

enum class Orientation { Right, Up };
enum class Direction { Left, Right, Up, Down };

const char* to_string(Direction d);
Direction direction_from_string(const std::string& s);

struct Edge {
  int id = 0;
  Orientation orient = Orientation::Right;
  int tail = -1;  // vertex id or -1 when dangling outside the patch
  int head = -1;
  bool dangling = false;
  int row = 0;  // horizontal h(row, col): col in 0..vx; vertical v(row, col) joins row and row+1
  int col = 0;
};

struct Vertex {
  int id = 0, row = 0, col = 0;
  std::vector<int> out, in;  // incident edges pointing away from / toward the vertex
};

struct PlaqEdge {
  int edge;
  bool inverted;
};

struct Plaquette {
  enum class Kind { Interior, LeftBoundary, RightBoundary };
  int id = 0;
  Kind kind = Kind::Interior;
  int row = 0;  // lower vertex row
  int col = 0;  // 0 = left boundary, vx = right boundary, k = interior between columns k-1 and k
  std::vector<PlaqEdge> cycle;  // counterclockwise from the base point
  int base = -1;                // base vertex (bottom-left), -1 for the left boundary plaquette
};

// Rectangular patch with rough left/right and smooth top/bottom boundaries.
// Horizontal edges h(j,k), k = 0..vx, point right; h(j,0) and h(j,vx) dangle.
// Vertical edges v(j,c) point up from (j,c) to (j+1,c). Horizontal ids come first.
class Lattice {
public:
  Lattice(int vx, int vy);

  int vx() const { return vx_; }
  int vy() const { return vy_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_plaquettes() const { return static_cast<int>(plaquettes_.size()); }

  const Edge& edge(int e) const { return edges_[e]; }
  const Vertex& vertex(int v) const { return vertices_[v]; }
  const Plaquette& plaquette(int p) const { return plaquettes_[p]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Plaquette>& plaquettes() const { return plaquettes_; }

  int h_edge(int row, int k) const { return row * (vx_ + 1) + k; }
  int v_edge(int row, int col) const { return vy_ * (vx_ + 1) + row * vx_ + col; }
  int vertex_id(int row, int col) const { return row * vx_ + col; }
  int plaquette_id(int row, int col) const { return row * (vx_ + 1) + col; }

  std::vector<int> left_edges() const;   // h(j,0) for all rows
  std::vector<int> right_edges() const;  // h(j,vx) for all rows
  std::vector<int> row_edges(int row) const;

  // Neighbouring plaquette across the side `d`, or -1 at a smooth boundary.
  // Throws BoundaryBlocked at a rough boundary.
  int plaquette_neighbor(int p, Direction d, int* shared_edge) const;

  std::string describe() const;

private:
  int vx_, vy_;
  std::vector<Edge> edges_;
  std::vector<Vertex> vertices_;
  std::vector<Plaquette> plaquettes_;
};

using LatticePtr = std::shared_ptr<const Lattice>;

LatticePtr build_lattice(int vx, int vy);

using Configuration = std::vector<int>;

int plaquette_flux(const Lattice& lat, int p, const Configuration& config, const GroupTable& G);
Configuration apply_gauge(const Lattice& lat, const Configuration& config, int v, int g,
                          const GroupTable& G);

struct GaugeReduction {
  Configuration canonical;
  int label = 0;
  std::vector<std::pair<int, int>> word;  // (vertex, element): applying all to canonical gives config
};
GaugeReduction left_gauge_reduce(const Lattice& lat, const GroupTable& G, const Configuration& config);
Configuration apply_gauge_word(const Lattice& lat, const GroupTable& G, Configuration config,
                               const std::vector<std::pair<int, int>>& word);

int holonomy(const Lattice& lat, const GroupTable& G, const Configuration& config, int row);
// Holonomy checked on every row; throws FluxPresentWarning when rows disagree.
int holonomy_checked(const Lattice& lat, const GroupTable& G, const Configuration& config);
bool is_flux_free(const Lattice& lat, const GroupTable& G, const Configuration& config);

// Left-gauge representative with label g.
Configuration left_gauge_config(const Lattice& lat, int g);

std::string render_configuration(const Lattice& lat, const GroupTable& G, const Configuration& config);

}  // namespace gsc
