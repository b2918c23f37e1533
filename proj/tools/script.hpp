#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "gsc/protocols.hpp"

namespace gsc::cli {

inline constexpr int kScriptVersion = 1;

struct RunOptions {
  std::uint64_t seed = 0;
  std::optional<Policy> policy;
  std::optional<int> max_attempts;
};

// Parses and runs a protocol script. Throws ScriptError on malformed input.
// The returned report carries "pass" at top level.
nlohmann::json run_script(const nlohmann::json& script, const RunOptions& opt);

}  // namespace gsc::cli
