#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pixcode {

/// What produced a set of output files. Contains no timestamps so reruns
/// are byte-identical.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  nlohmann::json parameters = nlohmann::json::object();
  std::string tool_version = PIXCODE_VERSION;
  std::optional<std::uint64_t> seed;

  nlohmann::json to_json() const;
};

}  // namespace pixcode
