#pragma once

#include "json.hpp"

#include "enumkg/records.hpp"

namespace enumkg::ingest {

inline nlohmann::json to_json(const ParseReport& r) {
  nlohmann::json warnings = nlohmann::json::array();
  for (const auto& w : r.warnings) warnings.push_back({{"item", w.item}, {"reason", w.reason}});
  return {{"source", r.source},
          {"version", r.version},
          {"date", r.date},
          {"records", r.records},
          {"skipped_deprecated", r.skipped_deprecated},
          {"warnings", warnings}};
}

}  // namespace enumkg::ingest
