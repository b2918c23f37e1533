#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsc/errors.hpp"
#include "gsc/group.hpp"
#include "gsc/lattice.hpp"
#include "gsc/rep.hpp"

namespace gsc {

inline constexpr double kPruneTol = 1e-14;
inline constexpr std::uint64_t kOrbitCap = 10'000'000;

class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

  std::uint64_t next_u64();
  double uniform();
  int uniform_int(int n);
  int categorical(const std::vector<double>& weights);

  // Independent stream for (seed, index), used for per-shot seeding.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::mt19937_64 eng_;
};

enum class Policy { Sample, PostselectTrivial };
const char* to_string(Policy p);
Policy policy_from_string(const std::string& s);

struct PatchInfo {
  std::string name;
  LatticePtr lattice;
  int offset = 0;                         // register of edge 0
  std::vector<SubgroupPtr> vertex_gauge;  // per vertex

  int reg(int e) const { return offset + e; }
};

// Sparse amplitude vector over group-basis configurations of a register list.
// Each register has an alphabet (a subgroup of the ambient group G); values are
// stored as local indices packed in a mixed-radix key, and exposed as elements of G.
class SparseState {
public:
  using Key = std::uint64_t;
  struct Entry {
    Key key;
    cplx amp;
  };

  SparseState() = default;
  explicit SparseState(GroupPtr G) : G_(std::move(G)) {}

  const GroupPtr& group() const { return G_; }
  int num_registers() const { return static_cast<int>(alpha_.size()); }
  const SubgroupPtr& alphabet(int r) const { return alpha_[r]; }
  const std::vector<SubgroupPtr>& alphabets() const { return alpha_; }
  Key stride(int r) const { return stride_[r]; }

  int value(Key k, int r) const {
    return alpha_[r]->embed(static_cast<int>((k / stride_[r]) % alpha_[r]->size()));
  }
  Key with_value(Key k, int r, int g) const;
  std::vector<int> decode(Key k) const;
  Key encode(const std::vector<int>& values) const;

  // Appends a register in the basis state |value> and returns its index.
  int add_register(SubgroupPtr alpha, int value);

  std::vector<Entry>& entries() { return entries_; }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Sorts by key, merges duplicates and prunes dust.
  void set_entries(std::vector<Entry> entries);
  cplx amplitude(Key k) const;

  double norm2() const;
  // Renormalizes; returns the squared norm before normalization. Throws ZeroWeight.
  double normalize();

  std::vector<PatchInfo> patches;

  // Used by remap: replaces the register layout without touching entries.
  void reset_layout(std::vector<SubgroupPtr> alphas);

private:
  GroupPtr G_;
  std::vector<SubgroupPtr> alpha_;
  std::vector<Key> stride_;
  std::vector<Entry> entries_;
};

SparseState product_state(const GroupPtr& G, const std::vector<SubgroupPtr>& alphas,
                          const std::vector<int>& values);
SparseState tensor(const SparseState& a, const SparseState& b);
cplx inner(const SparseState& a, const SparseState& b);  // <a|b>, identical layouts
double fidelity(const SparseState& a, const SparseState& b);
SparseState add_scaled(const SparseState& a, cplx ca, const SparseState& b, cplx cb);

// Re-encodes every entry through fn (values in, values out) under new alphabets.
// fn must be injective on the support; collisions throw NotBijective.
void remap(SparseState& st, std::vector<SubgroupPtr> new_alphas,
           const std::function<void(const std::vector<int>&, std::vector<int>&)>& fn);
// Keeps registers in `order`; every other register must hold a definite value.
void keep_registers(SparseState& st, const std::vector<int>& order);

enum class ControlKind { CL, CLbar, CR, CRbar };

void apply_left(SparseState& st, int r, int g);
void apply_right(SparseState& st, int r, int g);  // x -> x g^-1
void apply_auto(SparseState& st, int r, const Automorphism& phi);
// Multiplies each amplitude by conj(R(x)_{ij}); returns the weight before renormalization.
double apply_diag(SparseState& st, int r, const Irrep& R, int i, int j);
double apply_diag_fn(SparseState& st, int r, const std::function<cplx(int)>& f);
void apply_controlled(SparseState& st, int ctrl, int target, ControlKind kind);

int measure_group_basis(SparseState& st, int r, Rng& rng);
std::vector<double> marginal(const SparseState& st, int r);  // indexed by element of G
double project_register(SparseState& st, int r, int g);

// Patch helpers.
Configuration patch_config(const SparseState& st, int patch, SparseState::Key k);
void apply_vertex_gauge(SparseState& st, int patch, int v, int g);
SparseState::Key vertex_gauge_key(const SparseState& st, const PatchInfo& P, int v, int g,
                                  SparseState::Key k);
int patch_flux(const SparseState& st, int patch, int p, SparseState::Key k);

// Code states. The alphabet variant builds an H-patch inside the ambient group.
SparseState code_state(const GroupPtr& G, const LatticePtr& lat, int g, const std::string& name = "G");
SparseState code_state(const SubgroupPtr& H, const LatticePtr& lat, int h, const std::string& name = "H");

struct PatchSpec {
  std::string name;
  LatticePtr lattice;
  SubgroupPtr alphabet;
};
// sum_labels c |labels>_L over the given patches, normalized.
SparseState encode_logical(const GroupPtr& G, const std::vector<PatchSpec>& patches,
                           const std::map<std::vector<int>, cplx>& coeffs);

struct LogicalDecode {
  std::map<std::vector<int>, cplx> amps;  // label tuple (one entry per patch) -> amplitude
  double leakage = 0.0;
};
LogicalDecode decode_logical(const SparseState& st);

// Physical transversal operators on a patch.
void transversal_left_patch(SparseState& st, int patch, int g);
void transversal_right_patch(SparseState& st, int patch, int g);
void transversal_auto_patch(SparseState& st, int patch, const Automorphism& phi);

// Syndrome measurement.
struct VertexOutcome {
  int irrep = 0;
  std::string label = "A";
  int i = 0, j = 0;
  bool trivial() const { return irrep == 0; }
};

struct SyndromeRecord {
  int round = 0;
  std::string policy = "sample";
  std::vector<std::tuple<int, int, int>> plaquettes;           // (patch, p, m)
  std::vector<std::tuple<int, int, VertexOutcome>> vertices;  // (patch, v, outcome)
  bool all_trivial() const;
  nlohmann::json to_json(const GroupTable& G) const;
};

class PostselectionFailed : public Error {
public:
  PostselectionFailed(const std::string& what, SyndromeRecord rec)
      : Error("PostselectionFailed: " + what), record(std::move(rec)) {}
  const char* kind() const noexcept override { return "PostselectionFailed"; }
  SyndromeRecord record;
};

int plaquette_measure(SparseState& st, int patch, int p, Rng& rng);
double plaquette_project(SparseState& st, int patch, int p, int m);
std::vector<double> plaquette_distribution(const SparseState& st, int patch, int p);

// Per-outcome probabilities of the vertex Kraus family, keyed by (irrep, j); i is uniform.
std::map<std::pair<int, int>, double> vertex_outcome_weights(const SparseState& st, int patch, int v);
// Applies K_{R,ij}; returns its weight and renormalizes (ZeroWeight if it vanishes).
double vertex_kraus(SparseState& st, int patch, int v, int irrep, int i, int j);
VertexOutcome vertex_measure(SparseState& st, int patch, int v, Rng& rng);
double project_vertex_trivial(SparseState& st, int patch, int v);

// Reference paths with the ancilla materialized as an extra register.
double plaquette_project_reference(SparseState& st, int patch, int p, int m);
double vertex_kraus_reference(SparseState& st, int patch, int v, int irrep, int i, int j);

SyndromeRecord detection_round(SparseState& st, Rng& rng, Policy policy, int round = 0);
SyndromeRecord detection_round_patch(SparseState& st, int patch, Rng& rng, Policy policy, int round = 0);
// Postselected round as an unnormalized linear map.
SparseState postselected_round_map(const SparseState& st);

// Movement.
void move_flux(SparseState& st, int patch, int p, Direction dir, int m);

enum class ChargeStrategy { Fixed, UniformRandom, PlusBasis, Matched };
ChargeStrategy charge_strategy_from_string(const std::string& s);

struct ChargeStrategySpec {
  ChargeStrategy kind = ChargeStrategy::Fixed;
  int i = 0, j = 0;                   // Fixed: row i and column j of the edge operator
  SubgroupPtr destination;            // PlusBasis: gauge group of the receiving vertex
  // Matched uses the row and column of the latest source outcome.
};

struct MoveReport {
  int attempts = 0;
  int successes = 0;
  std::vector<VertexOutcome> outcomes;  // source outcome after each attempt
  bool success = false;
  nlohmann::json to_json() const;
};

MoveReport move_charge(SparseState& st, int patch, int v, Direction dir, VertexOutcome last,
                       const ChargeStrategySpec& strategy, Rng& rng, int max_attempts);
// Edge operator used by move_charge for one attempt; exposed for tests.
void apply_charge_edge_operator(SparseState& st, int patch, int v, Direction dir, int irrep,
                                const std::vector<cplx>& alpha, const std::vector<cplx>& beta);
int charge_edge(const Lattice& lat, int v, Direction dir, bool* outgoing);

// Binary snapshot.
void save_state(const SparseState& st, std::ostream& out);
SparseState load_state(std::istream& in, const GroupPtr& G);

}  // namespace gsc
