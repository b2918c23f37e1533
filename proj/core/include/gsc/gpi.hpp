#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsc/engineering.hpp"
#include "gsc/protocols.hpp"

namespace gsc {

enum class GpiPath { Logical, Physical };

struct GpiRow {
  std::string gate;
  std::uint32_t input = 0;
  std::uint32_t output = 0;    // most likely data label after the split
  std::uint32_t expected = 0;  // pi(input)
  double output_weight = 0.0;  // probability of `expected` on the data patch
  double ancilla_fidelity = 0.0;  // overlap of the full state with |pi(x)> (x) |+_K>
  double leakage = 0.0;
  bool ok = false;
};

struct GpiResult {
  int n = 0;
  std::uint64_t group_order = 0;
  GpiPath path = GpiPath::Logical;
  std::vector<GpiRow> rows;
  RunReport report;

  bool all_ok() const;
  nlohmann::json to_json() const;
};

// Applies each gate in turn to every input through Extend -> L^{O_pi} -> Split_HK with a
// Z2^n data patch and a K_Pi ancilla in |+>. The physical path simulates the lattice and
// needs |G_Pi| <= physical_cap; the logical path acts on the label tables directly.
GpiResult gpi_protocol(int n, const std::vector<ReversibleGate>& gates, std::vector<std::uint32_t> inputs,
                       const ProtocolConfig& cfg, Rng& rng, GpiPath path = GpiPath::Logical,
                       const LatticePtr& lat = nullptr);

inline constexpr std::uint64_t kGpiPhysicalCap = 8;

}  // namespace gsc
