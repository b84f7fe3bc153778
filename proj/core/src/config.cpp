#include "horobm/config.hpp"

#include "horobm/errors.hpp"
#include "json.hpp"

namespace horobm {

ExperimentConfig load_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw error(std::string("config parse: ") + e.what());
  }
  ExperimentConfig cfg;
  if (!j.contains("experiment")) throw error("config: missing \"experiment\"");
  cfg.experiment = j.at("experiment").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("svg")) cfg.svg = j.at("svg").get<bool>();
  cfg.raw = json_text;
  return cfg;
}

}  // namespace horobm
