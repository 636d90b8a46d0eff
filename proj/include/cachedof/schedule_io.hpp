#pragma once

// JSON export of placements and block schedules.
//
// Schedule document:
//   {
//     "config": {"k_t": 3, "k_r": 3, "n_files": 3, "tau": 2},
//     "demand": [1, 2, 3],
//     "blocks": [
//       {"index": 0, "pi": [1, 2, 3],
//        "messages": [{"receiver": 1, "master": 1,
//                      "coop_window": [1, 2], "excluded_window": [3]}, ...]},
//       ...
//     ]
//   }
//
// Placement document:
//   {"config": {...},
//    "caches": [{"transmitter": 1, "subfiles": [{"file": 1, "storage_set": [1, 2]}, ...]}, ...]}

#include "cachedof/network_model.hpp"

#include "json.hpp"

#include <vector>

namespace cachedof {

nlohmann::ordered_json config_to_json(const NetworkConfig& cfg);
NetworkConfig config_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json message_to_json(const MessageId& m);
MessageId message_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json placement_to_json(const NetworkConfig& cfg, const CachePlacement& placement);

struct ScheduleDocument {
  NetworkConfig config;
  DemandVector demand;
  std::vector<TransmissionBlock> blocks;
};

nlohmann::ordered_json schedule_to_json(const ScheduleDocument& doc);

// Throws ConfigError on a document that does not describe a valid schedule.
ScheduleDocument schedule_from_json(const nlohmann::ordered_json& j);

}  // namespace cachedof
