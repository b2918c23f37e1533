#pragma once

#include <complex>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "gsc/group.hpp"

namespace gsc {

using cplx = std::complex<double>;

// Small dense row-major complex matrix used in the public interface.
struct CMatrix {
  int rows = 0, cols = 0;
  std::vector<cplx> data;

  CMatrix() = default;
  CMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  static CMatrix identity(int n);

  cplx& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * cols + j]; }
  const cplx& operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * cols + j]; }

  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix adjoint() const;
  CMatrix conj() const;
  CMatrix kron(const CMatrix& o) const;
  cplx trace() const;
  double max_abs() const;
};

inline constexpr double kTol = 1e-10;

struct CharacterTable {
  GroupPtr G;
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;
  std::vector<std::vector<cplx>> chars;  // [irrep][class]
  std::vector<int> dims;
  std::vector<std::string> labels;

  int num_irreps() const { return static_cast<int>(dims.size()); }
  cplx chi(int irrep, int g) const { return chars[irrep][class_of[g]]; }
};

struct Irrep {
  std::string label;
  int dim = 1;
  std::vector<CMatrix> mats;  // indexed by group element

  const CMatrix& operator()(int g) const { return mats[g]; }
};

struct RepData {
  CharacterTable table;
  std::vector<Irrep> irreps;  // same order as table rows
  int trivial = 0;
};

inline constexpr std::uint64_t kRepSeed = 0xD1C50;
inline constexpr int kIrrepCap = 256;

CharacterTable character_table(const GroupPtr& G, std::uint64_t seed = kRepSeed);
std::vector<Irrep> irrep_matrices(const GroupPtr& G, int cap = kIrrepCap,
                                  std::uint64_t seed = kRepSeed);
// Cached character table + irreps for a group (thread safe).
std::shared_ptr<const RepData> representations(const GroupPtr& G);

struct IrrepBasisState {
  int irrep, i, j;
  std::vector<cplx> vec;  // length |G|
};
std::vector<IrrepBasisState> irrep_basis_states(const GroupPtr& G);

// Multiplicity of each irrep of H (order of representations(H.as_group())) in Res R.
std::vector<int> restrict_multiplicities(const Subgroup& H, const Irrep& R);
// n_i = <Res R_i, 1_H> for each irrep of G.
std::vector<int> induced_trivial_multiplicities(const Subgroup& H);

// Pi^W_{ab} = (d_W/|G|) sum_g conj(W(g)_{ab}) R^V(g); a, b are 0-based.
CMatrix isotypic_projector(const std::vector<CMatrix>& RV, const Irrep& W, int a, int b);

struct FusionDecomposition {
  int r1 = 0, r2 = 0;
  std::vector<std::pair<int, int>> summands;         // (irrep index, multiplicity)
  CMatrix cg;                                         // rows: i*d2 + j, cols: (mu, nu, kappa)
  std::vector<std::tuple<int, int, int>> columns;     // (mu, nu, kappa) per column
};
FusionDecomposition clebsch_gordan(const GroupPtr& G, int r1, int r2);
// Same for a pair of explicit irreps; set conj2 to fuse with the conjugate of the second.
FusionDecomposition clebsch_gordan(const GroupPtr& G, const Irrep& R1, const Irrep& R2,
                                   bool conj2 = false);

// Rounds x to an integer, throwing NumericalDegeneracy if it is further than 1e-6 away.
int round_multiplicity(double x);

}  // namespace gsc
