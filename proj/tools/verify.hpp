#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

namespace gsc::cli {

struct VerifyOptions {
  std::uint64_t seed = 0;
  bool inject_mutation = false;  // corrupts one D4 table entry before the group suite
};

// suite: all, group, rep, lattice, sim, protocols, engineering. Throws ScriptError for unknown suites.
nlohmann::json run_verify(const std::string& suite, const VerifyOptions& opt);

}  // namespace gsc::cli
