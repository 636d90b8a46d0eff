#include "cachedof/schedule_io.hpp"

namespace cachedof {

using nlohmann::ordered_json;

ordered_json config_to_json(const NetworkConfig& cfg) {
  return ordered_json{{"k_t", cfg.k_t}, {"k_r", cfg.k_r}, {"n_files", cfg.n_files}, {"tau", cfg.tau}};
}

NetworkConfig config_from_json(const ordered_json& j) {
  try {
    NetworkConfig cfg{j.at("k_t").get<int>(), j.at("k_r").get<int>(), j.at("n_files").get<int>(),
                      j.at("tau").get<int>()};
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

ordered_json message_to_json(const MessageId& m) {
  return ordered_json{{"receiver", m.receiver},
                      {"master", m.master},
                      {"coop_window", m.coop_window},
                      {"excluded_window", m.excluded_window}};
}

MessageId message_from_json(const ordered_json& j) {
  MessageId m;
  m.receiver = j.at("receiver").get<int>();
  m.master = j.at("master").get<int>();
  m.coop_window = j.at("coop_window").get<std::vector<int>>();
  m.excluded_window = j.at("excluded_window").get<std::vector<int>>();
  return m;
}

ordered_json placement_to_json(const NetworkConfig& cfg, const CachePlacement& placement) {
  ordered_json caches = ordered_json::array();
  for (std::size_t i = 0; i < placement.caches.size(); ++i) {
    ordered_json subfiles = ordered_json::array();
    for (const auto& s : placement.caches[i]) {
      subfiles.push_back(ordered_json{{"file", s.file}, {"storage_set", s.storage_set}});
    }
    caches.push_back(ordered_json{{"transmitter", i + 1}, {"subfiles", std::move(subfiles)}});
  }
  return ordered_json{{"config", config_to_json(cfg)}, {"caches", std::move(caches)}};
}

ordered_json schedule_to_json(const ScheduleDocument& doc) {
  ordered_json blocks = ordered_json::array();
  for (std::size_t b = 0; b < doc.blocks.size(); ++b) {
    ordered_json messages = ordered_json::array();
    for (const auto& m : doc.blocks[b].messages) messages.push_back(message_to_json(m));
    blocks.push_back(ordered_json{{"index", b}, {"pi", doc.blocks[b].pi}, {"messages", std::move(messages)}});
  }
  return ordered_json{
      {"config", config_to_json(doc.config)}, {"demand", doc.demand.files}, {"blocks", std::move(blocks)}};
}

ScheduleDocument schedule_from_json(const ordered_json& j) {
  ScheduleDocument doc;
  try {
    doc.config = config_from_json(j.at("config"));
    doc.demand.files = j.at("demand").get<std::vector<int>>();
    doc.demand.validate(doc.config);
    const auto& blocks = j.at("blocks");
    doc.blocks.resize(blocks.size());
    for (const auto& b : blocks) {
      auto index = b.at("index").get<std::size_t>();
      if (index >= doc.blocks.size()) throw ConfigError("block index out of range");
      auto& block = doc.blocks[index];
      block.pi = b.at("pi").get<Permutation>();
      for (const auto& m : b.at("messages")) block.messages.push_back(message_from_json(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed schedule: ") + e.what());
  }
  return doc;
}

}  // namespace cachedof
