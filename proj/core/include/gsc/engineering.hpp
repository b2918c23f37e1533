#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsc/group.hpp"
#include "gsc/perm.hpp"

namespace gsc {

// Permutation of the 2^n computational basis states; qubit 1 is the most significant bit.
struct ReversibleGate {
  int n = 0;
  Perm perm;
  std::string name;

  static ReversibleGate identity(int n);
  static ReversibleGate x(int n, int q);
  static ReversibleGate cx(int n, int control, int target);
  static ReversibleGate ccx(int n, int c1, int c2, int target);
  static ReversibleGate mcx(int n, const std::vector<int>& controls, int target);
  static ReversibleGate swap(int n, int a, int b);
  // 1-based cycle notation over basis indices + 1, or an explicit image list.
  static ReversibleGate from_cycles(int n, const std::string& cycles, const std::string& name = "");
  static ReversibleGate from_images(int n, const std::vector<std::uint32_t>& images, const std::string& name = "");

  ReversibleGate then(const ReversibleGate& next) const;  // next * this
  ReversibleGate inverse() const;
  nlohmann::json to_json() const;
};
// Parses "X1", "CX12", "CCX123", "SWAP13" (single-digit qubit indices) or a cycle string.
ReversibleGate parse_gate(int n, const std::string& text);

// G_CCX with generators a..f = X1, X2, X3, CX13, CX23, CCX123.
struct GccxReport {
  GroupPtr G;
  bool relations_ok = false;          // dad = ac, ebe = bc, faf = ae, fbf = bd
  bool short_relations_hold = false;  // faf = e and fbf = d
  bool knit_ok = false;       // ((Z2^3 x| Z2^2) x| Z2)
  nlohmann::json to_json() const;
};
GccxReport build_gccx();

struct GcnxGroup {
  int n = 0;
  std::uint64_t order = 0;
  std::vector<Perm> generators;                 // X_1..X_n and C^nX on n+1 qubits
  std::vector<std::vector<Perm>> level_gates;   // level k: controlled X_{n+1} with k controls
  bool levels_in_group = false;
  GroupPtr table;                               // only when order <= 4096
  nlohmann::json to_json() const;
};
GcnxGroup build_gcnx(int n);

// G_Pi = Z2^n |x| K_Pi generated by the Pauli X's and the given gates.
struct GpiGroup {
  int n = 0;
  std::uint64_t order = 0;
  std::vector<Perm> generators;
  std::vector<Perm> elements;           // when order <= 2e5
  GroupPtr table;                       // when order <= 4096
  SubgroupPtr paulis, stabilizer;       // Z2^n and K_Pi (stabilizer of 0...0)
  std::vector<int> gate_elements;       // index of each input gate in `table`
  bool factorization_unique = false;
  std::uint64_t factorization_checked = 0;
  nlohmann::json to_json() const;
};
inline constexpr std::uint64_t kGpiEnumerationCap = 200000;
GpiGroup build_gpi(int n, const std::vector<ReversibleGate>& gates, std::uint64_t seed = 1);

// Reversing binary representation and its inverse.
std::int64_t reversing_binary(std::int64_t x);
std::int64_t reversing_binary_inv(std::int64_t x);

// D_{2^n} words a^alpha b^beta U_{n-2}^{b_{n-2}} ... U_0^{b_0} with a = s, b = r^{2^{n-1}}, U_j = s r^{2^j},
// against the normal form s^p r^q. bits[i] is the exponent of U_{n-2-i}.
struct D2nWord {
  int alpha = 0, beta = 0;
  std::vector<int> bits;
  bool operator==(const D2nWord& o) const { return alpha == o.alpha && beta == o.beta && bits == o.bits; }
};
std::pair<int, int> d2n_encode(int n, const D2nWord& w);
D2nWord d2n_decode(int n, int p, int q);
// Inverse map transcribed literally from the published closed form; kept for comparison.
D2nWord d2n_decode_closed_form(int n, int p, int q);
// (p, q) multiplication in D_{2^n}: s^p1 r^q1 s^p2 r^q2.
std::pair<int, int> d2n_multiply(int n, std::pair<int, int> x, std::pair<int, int> y);
// Left/right multiplication by a group element in the n+1 qubit word encoding.
ReversibleGate d2n_left_gate(int n, std::pair<int, int> g, const std::string& name = "");
ReversibleGate d2n_right_gate(int n, std::pair<int, int> g, const std::string& name = "");
inline std::pair<int, int> d2n_u(int n, int j) { return {1, (1 << j) % (1 << n)}; }

// Clifford hierarchy.
struct HierarchyLevel {
  int level = 0;  // 0 when not found up to cap
  int cap = 0;
  bool in_hierarchy() const { return level > 0; }
  std::string to_string() const;
};
// Monomial operator U|x> = w^{phase[x]} |perm[x]>, w = exp(i pi / 4).
struct MonomialOp {
  int n = 0;
  Perm perm;
  std::vector<int> phase;  // mod 8

  static MonomialOp from_gate(const ReversibleGate& g);
  static MonomialOp pauli_x(int n, int q);
  static MonomialOp pauli_z(int n, int q);
  static MonomialOp t_gate(int n, int q);
  MonomialOp operator*(const MonomialOp& o) const;  // this after o
  MonomialOp adjoint() const;
  bool is_pauli() const;  // up to a global eighth root of unity
};
HierarchyLevel clifford_level(const MonomialOp& U, int cap = 5);
HierarchyLevel clifford_level(const ReversibleGate& gate, int cap = 5);

// Appendix-style qudit encodings of L^g, R^g and the controlled left action.
struct EncodingEntry {
  std::string op;        // e.g. "L^c"
  std::string circuit;   // e.g. "X(3) CX(1,2)"; operator product, rightmost gate first
  std::string note;
  bool ok = false;
  int mismatches = 0;
};
struct EncodingTable {
  std::string which;
  std::vector<int> dims;  // local wire dimensions, most significant first
  std::string convention;
  std::vector<EncodingEntry> entries;
  bool all_ok() const;
  nlohmann::json to_json() const;
};
EncodingTable pauli_encoding_table(const std::string& which);
// Evaluates a circuit word on a mixed-radix basis; returns the image of every basis index.
std::vector<int> evaluate_circuit(const std::string& circuit, const std::vector<int>& dims);

}  // namespace gsc
