#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "gsc/group.hpp"
#include "gsc/lattice.hpp"
#include "gsc/rep.hpp"

namespace gsc {

// {"variant": "cyclic" | "dihedral" | "symmetric" | "alternating" | "direct_product" | "perm" | "named",
//  "params": {...}}
nlohmann::json group_spec_to_json(const GroupSpec& spec);
GroupSpec group_spec_from_json(const nlohmann::json& j);
// Short forms: "Z3", "D4", "S3", "A4", "Z2xZ2", "D4_abc", "GCCX", "GC3X", or a JSON object.
GroupSpec parse_group_spec(const std::string& text);

nlohmann::json group_table_to_json(const GroupTable& G);
nlohmann::json subgroup_to_json(const Subgroup& H);
nlohmann::json classes_to_json(const GroupTable& G);

nlohmann::json character_table_to_json(const CharacterTable& T);
// Restriction multiplicities of every irrep of G to H and the decomposition of Ind(1_H).
nlohmann::json multiplicity_report(const GroupPtr& G, const SubgroupPtr& H);
// "shape": [d1*d2, columns]; "data": flat [re, im] pairs row-major.
nlohmann::json fusion_to_json(const FusionDecomposition& F, const CharacterTable& T);

nlohmann::json lattice_to_json(const Lattice& lat);
LatticePtr lattice_from_json(const nlohmann::json& j);
nlohmann::json configuration_to_json(const Configuration& config, const GroupTable& G);
Configuration configuration_from_json(const nlohmann::json& j, const GroupTable& G);

}  // namespace gsc
