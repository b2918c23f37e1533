// Copyright 2026 The gsc Authors
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

#include "gsc/gpi.hpp"

#include <cmath>
#include <map>

#include "gsc/errors.hpp"

namespace gsc {

bool GpiResult::all_ok() const {
  for (const auto& r : rows)
    if (!r.ok) return false;
  return true;
}

nlohmann::json GpiResult::to_json() const {
  auto round9 = [](double x) { return std::round(x * 1e9) / 1e9; };
  nlohmann::json j;
  j["n"] = n;
  j["group_order"] = group_order;
  j["path"] = path == GpiPath::Logical ? "logical" : "physical";
  j["bit_order"] = "qubit 1 is the most significant bit";
  auto& a = j["rows"] = nlohmann::json::array();
  for (const auto& r : rows)
    a.push_back({{"gate", r.gate},
                 {"input", r.input},
                 {"output", r.output},
                 {"expected", r.expected},
                 {"output_weight", round9(r.output_weight)},
                 {"ancilla_fidelity", round9(r.ancilla_fidelity)},
                 {"leakage", round9(r.leakage)},
                 {"ok", r.ok}});
  j["all_ok"] = all_ok();
  j["report"] = report.to_json();
  return j;
}

namespace {

// amps: (data label, ancilla label) -> amplitude, labels as G_Pi table indices.
void analyse(const GpiGroup& gp, const std::map<std::pair<int, int>, cplx>& amps, int expected_el, GpiRow& row) {
  std::map<int, double> weight;
  double total = 0;
  for (const auto& [key, a] : amps) {
    weight[key.first] += std::norm(a);
    total += std::norm(a);
  }
  int best = -1;
  for (const auto& [h, w] : weight)
    if (best < 0 || w > weight[best]) best = h;
  row.output = best < 0 ? 0 : gp.elements[best][0];
  row.output_weight = total > 0 ? weight[expected_el] / total : 0.0;
  const auto& K = gp.stabilizer->members();
  cplx ov = 0;
  double amp = 1.0 / std::sqrt(static_cast<double>(K.size()));
  for (int k : K) {
    auto it = amps.find({expected_el, k});
    if (it != amps.end()) ov += amp * it->second;
  }
  row.ancilla_fidelity = total > 0 ? std::norm(ov) / total : 0.0;
  row.ok = row.output == row.expected && row.ancilla_fidelity > 1 - 1e-9 && row.leakage < 1e-9;
}

}  // namespace

GpiResult gpi_protocol(int n, const std::vector<ReversibleGate>& gates, std::vector<std::uint32_t> inputs,
                       const ProtocolConfig& cfg, Rng& rng, GpiPath path, const LatticePtr& lat_in) {
  cfg.validate();
  auto gp = build_gpi(n, gates, cfg.seed);
  if (!gp.table) throw CapExceeded("G_Pi of order " + std::to_string(gp.order) + " exceeds the table cap");
  if (path == GpiPath::Physical && gp.order > kGpiPhysicalCap)
    throw CapExceeded("physical G_Pi protocol supports order <= " + std::to_string(kGpiPhysicalCap));
  const std::uint32_t dim = 1u << n;
  if (inputs.empty())
    for (std::uint32_t x = 0; x < dim; ++x) inputs.push_back(x);

  GpiResult res;
  res.n = n;
  res.group_order = gp.order;
  res.path = path;
  res.report.op = "gpi";
  const auto& G = gp.table;
  auto knit = knit_decompose(G, gp.paulis, gp.stabilizer);
  std::vector<int> pauli_of(dim, -1);
  for (int h : gp.paulis->members()) pauli_of[gp.elements[h][0]] = h;
  auto lat = lat_in ? lat_in : build_lattice(1, 2);

  for (std::size_t gi = 0; gi < gates.size(); ++gi) {
    int o = gp.gate_elements[gi];
    for (auto x : inputs) {
      if (x >= dim) throw OutOfRange("input " + std::to_string(x) + " does not fit in " + std::to_string(n) + " bits");
      GpiRow row;
      row.gate = gates[gi].name;
      row.input = x;
      row.expected = gates[gi].perm[x];
      int expected_el = pauli_of[row.expected];
      std::map<std::pair<int, int>, cplx> amps;
      if (path == GpiPath::Logical) {
        double a = 1.0 / std::sqrt(static_cast<double>(gp.stabilizer->size()));
        for (int k : gp.stabilizer->members()) {
          int g = G->mul(o, G->mul(pauli_of[x], k));
          auto [h2, k2] = knit.factor_hk[g];
          amps[{h2, k2}] += a;
        }
      } else {
        auto hs = code_state(gp.paulis, lat, pauli_of[x], "data");
        auto ks = prepare_plus(gp.stabilizer, lat, cfg, rng, &res.report);
        auto st = extend(hs, ks, knit, cfg, rng, &res.report);
        st = transversal_left(std::move(st), o, 0);
        st = split(st, knit, SplitSide::HK, cfg, rng, &res.report);
        auto dec = decode_logical(st);
        row.leakage = dec.leakage;
        for (const auto& [labels, a] : dec.amps) amps[{labels[0], labels[1]}] += a;
      }
      analyse(gp, amps, expected_el, row);
      res.rows.push_back(row);
    }
  }
  return res;
}

}  // namespace gsc
