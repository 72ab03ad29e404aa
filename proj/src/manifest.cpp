#include "pixcode/manifest.hpp"

namespace pixcode {

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["tool"] = "pixcode";
  j["tool_version"] = tool_version;
  j["subcommand"] = subcommand;
  j["inputs"] = inputs;
  j["outputs"] = outputs;
  j["parameters"] = parameters;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  return j;
}

}  // namespace pixcode
