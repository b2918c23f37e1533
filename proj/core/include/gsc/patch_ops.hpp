#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsc/state.hpp"

namespace gsc {

// Where a register of a rebuilt layout takes its value from.
struct RegSource {
  std::vector<int> from;                            // old registers read
  SubgroupPtr alpha;                                // new alphabet (defaults to the old one)
  int init = 0;                                     // value when `from` is empty
  std::function<int(const std::vector<int>&)> fn;   // combines the values of `from`

  static RegSource copy(int r, SubgroupPtr alpha = nullptr);
  static RegSource fresh(SubgroupPtr alpha, int value = 0);
};

struct PatchPlan {
  std::string name;
  LatticePtr lattice;
  std::vector<SubgroupPtr> vertex_gauge;
  std::vector<RegSource> edges;  // one per lattice edge
};

// Replaces the register layout: patches first (in order), then `extras`.
// Old registers that are not read by any source must hold definite values.
void rebuild(SparseState& st, const std::vector<PatchPlan>& plans, const std::vector<RegSource>& extras = {});

// Plan reproducing an existing patch unchanged.
PatchPlan identity_plan(const SparseState& st, int patch);
// Registers not covered by any patch.
std::vector<int> extra_registers(const SparseState& st);

enum class Side { Left, Right };

struct SurgeryLog {
  nlohmann::json events = nlohmann::json::array();
  void add(nlohmann::json e) { events.push_back(std::move(e)); }
};

struct SurgeryConfig {
  Policy policy = Policy::Sample;
  int max_attempts = 64;
};

// Adds a column of fresh identity edges with alphabet X on one side of a patch.
void attach_column(SparseState& st, int patch, Side side, const SubgroupPtr& X);

// Measures every vertex of a column with its gauge group and moves charges toward `dir`.
// Charges arriving at a neighbouring vertex are re-measured there and pushed further when
// they do not condense; at a dangling edge they leave the patch.
void settle_column(SparseState& st, int patch, int col, Direction dir, const SurgeryConfig& cfg, Rng& rng,
                   SurgeryLog& log);

// Widens the alphabets of edges incident to a column and sets its vertex gauge.
void regauge_column(SparseState& st, int patch, int col, const SubgroupPtr& X);

// Measures out the outermost column on `side` and folds its values into the new boundary edges.
void remove_column(SparseState& st, int patch, Side side, Rng& rng, SurgeryLog& log);

// Merges two horizontally adjacent patches (left, right) of equal height into one patch.
// Seam registers combine as x*y in the alphabet `seam`.
void merge_patches(SparseState& st, int left, int right, const SubgroupPtr& seam, const std::string& name);

// One detection round; under postselection a nontrivial outcome throws PostselectionFailed.
SyndromeRecord checked_round(SparseState& st, const SurgeryConfig& cfg, Rng& rng, SurgeryLog& log,
                             const std::string& phase);

}  // namespace gsc
