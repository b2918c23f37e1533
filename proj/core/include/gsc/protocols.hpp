#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsc/patch_ops.hpp"
#include "gsc/state.hpp"

namespace gsc {

struct ProtocolConfig {
  Policy policy = Policy::Sample;
  int max_attempts = 64;    // charge moves per seam charge
  int max_restarts = 1000;  // postselected restarts
  int seam_columns = 1;
  std::uint64_t seed = 0;

  SurgeryConfig surgery() const { return SurgeryConfig{policy, max_attempts}; }
  void validate() const;
};

struct RunReport {
  std::string op;
  int restarts = 0;
  nlohmann::json phases = nlohmann::json::array();
  nlohmann::json to_json() const;
};

// Logical action: input label tuple -> output label tuple amplitudes.
struct LogicalMap {
  std::vector<std::string> inputs, outputs;
  std::map<std::vector<int>, std::map<std::vector<int>, cplx>> mapping;

  bool is_permutation(double tol = 1e-9) const;
  std::map<std::vector<int>, std::vector<int>> permutation(double tol = 1e-9) const;
  nlohmann::json to_json(const GroupTable& G) const;
};

SparseState transversal_left(SparseState st, int g, int patch = 0);
SparseState transversal_right(SparseState st, int g, int patch = 0);
SparseState transversal_auto(SparseState st, const Automorphism& phi, int patch = 0);

// Growth stage of extend: widens each width-1 patch by one settled column, then runs a detection round.
// Its output does not depend on the sampled outcomes, so postselection restarts of extend resume after it.
SparseState extend_grow(const SparseState& joint, const KnitDecomposition& knit, const ProtocolConfig& cfg, Rng& rng,
                        RunReport* report = nullptr);
// Extension of [H-patch, K-patch] (left, right) into one G-patch.
SparseState extend(const SparseState& joint, const KnitDecomposition& knit, const ProtocolConfig& cfg, Rng& rng,
                   RunReport* report = nullptr);
SparseState extend(const SparseState& h_state, const SparseState& k_state, const KnitDecomposition& knit,
                   const ProtocolConfig& cfg, Rng& rng, RunReport* report = nullptr);

enum class SplitSide { HK, KH };
SplitSide split_side_from_string(const std::string& s);

// Splits a G-patch into two patches: [H, K] for HK, [K, H] for KH.
SparseState split(const SparseState& g_state, const KnitDecomposition& knit, SplitSide side,
                  const ProtocolConfig& cfg, Rng& rng, RunReport* report = nullptr);

// Extend followed by Split_KH: [H, K] -> [K', H'].
SparseState slide(const SparseState& h_state, const SparseState& k_state, const KnitDecomposition& knit,
                  const ProtocolConfig& cfg, Rng& rng, RunReport* report = nullptr);

SparseState prepare_identity(const SubgroupPtr& G, const LatticePtr& lat, const ProtocolConfig& cfg, Rng& rng,
                             RunReport* report = nullptr);
SparseState prepare_plus(const SubgroupPtr& G, const LatticePtr& lat, const ProtocolConfig& cfg, Rng& rng,
                         RunReport* report = nullptr);

struct ReadoutResult {
  int label = 0;
  Configuration config;
  bool repaired = false;
  std::vector<int> row_holonomies;
};
// Measures every edge of the patch and returns the holonomy (majority over rows when fluxes are present).
ReadoutResult readout(SparseState& st, Rng& rng, int patch = 0);

enum class LogicalBasis { Group, X };
LogicalBasis logical_basis_from_string(const std::string& s);

// Group basis: returns the measured label. X basis (order-2 patches): 0 for +, 1 for -.
int logical_frame_measure(SparseState& st, int patch, LogicalBasis basis, Rng& rng);
// Projects onto the (+1 for sign 0, -1 for sign 1) eigenspace of L_L^g; returns the branch weight.
double project_logical_x(SparseState& st, int patch, int g, int sign);
std::pair<double, double> logical_x_weights(const SparseState& st, int patch, int g);
int measure_logical_x(SparseState& st, int patch, int g, Rng& rng);
// Measures a classical function of the patch label (e.g. one bit of a Z2^k label).
int measure_logical_function(SparseState& st, int patch, const std::function<int(int)>& f, Rng& rng);

// Runs `op` on each basis input and decodes the result.
LogicalMap extract_logical_map(const GroupPtr& G, const std::vector<PatchSpec>& in_patches,
                               const std::vector<std::vector<int>>& inputs,
                               const std::function<SparseState(const SparseState&)>& op);

struct MagicCXResult {
  bool accepted = false;
  double acceptance_probability = 0.0;  // Born weight of the + branch
  double fidelity = 0.0;                // with (2|00> + |10> + |11>)/sqrt6, when accepted
  std::map<std::vector<int>, cplx> logical;  // (alpha, beta) -> amplitude of the data patch
  SparseState pre_measurement;
  SparseState state;
  RunReport report;
};
MagicCXResult magic_cx_protocol(const ProtocolConfig& cfg, Rng& rng, const LatticePtr& lat = nullptr);

struct MagicCXStatistics {
  int physical_shots = 0;
  int samples = 0;
  int accepted = 0;
  double exact_probability = 0.0;
  double min_fidelity = 1.0;
  bool consistent_pre_state = true;
};
// Runs `physical_shots` full protocol shots, then draws `samples` X-measurements of the
// (shot-independent) pre-measurement logical state.
MagicCXStatistics magic_cx_statistics(const ProtocolConfig& cfg, int physical_shots, int samples);

struct MagicTResult {
  int outcome_a = 0;  // 0: +, 1: -
  int outcome_b = 0;  // Z outcome
  int frame = 0;      // 0: I, 1: Z
  int predicted_frame = 0;
  double fidelity = 0.0;  // with Z^frame T|+>
  std::map<int, cplx> logical;  // c-patch label -> amplitude
  SparseState state;
  RunReport report;
};
MagicTResult magic_t_protocol(const ProtocolConfig& cfg, Rng& rng, const LatticePtr& lat = nullptr);

}  // namespace gsc
