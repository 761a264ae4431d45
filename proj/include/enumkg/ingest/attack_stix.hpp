#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "enumkg/errors.hpp"
#include "enumkg/names.hpp"
#include "enumkg/records.hpp"

namespace enumkg::ingest {

namespace stix {

using json = nlohmann::json;

inline std::string string_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

inline bool flag_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it != obj.end() && it->is_boolean() && it->get<bool>();
}

inline std::set<std::string> string_set(const json& obj, const char* key) {
  std::set<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) return out;
  for (const auto& v : *it) {
    if (v.is_string()) out.insert(v.get<std::string>());
  }
  return out;
}

inline bool is_retired(const json& obj) {
  return flag_field(obj, "revoked") || flag_field(obj, "x_mitre_deprecated");
}

// external_id of every external reference whose source_name matches.
inline std::vector<std::string> external_ids(const json& obj, std::string_view source) {
  std::vector<std::string> out;
  auto it = obj.find("external_references");
  if (it == obj.end() || !it->is_array()) return out;
  for (const auto& ref : *it) {
    if (!ref.is_object() || string_field(ref, "source_name") != source) continue;
    auto id = string_field(ref, "external_id");
    if (!id.empty()) out.push_back(std::move(id));
  }
  return out;
}

inline std::optional<std::string> attack_id(const json& obj) {
  auto found = external_ids(obj, "mitre-attack");
  if (found.empty()) return std::nullopt;
  return found.front();
}

}  // namespace stix

// Parses an ATT&CK Enterprise STIX 2.x bundle. Retired objects (revoked or
// x_mitre_deprecated) are dropped unless `options.include_deprecated`.
inline AttackBundle parse_attack_bundle(std::string_view document, const ParseOptions& options = {}) {
  using stix::json;
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError("attack", e.byte, e.what());
  }
  if (!root.is_object() || !root.contains("objects") || !root["objects"].is_array()) {
    throw ParseError("attack", 0, "not a STIX bundle: missing 'objects' array");
  }
  const json& objects = root["objects"];

  AttackBundle out;
  ParseReport& report = out.report;
  report.source = "attack";

  auto keep = [&](const json& obj) {
    if (!stix::is_retired(obj)) return true;
    if (options.include_deprecated) return true;
    ++report.skipped_deprecated;
    return false;
  };

  std::map<std::string, Tactic> tactics_by_shortname;
  std::map<std::string, std::string> data_source_names;  // stix id -> name
  std::vector<const json*> patterns;
  std::vector<const json*> components;
  std::vector<const json*> detects;

  for (const auto& obj : objects) {
    if (!obj.is_object()) continue;
    const auto type = stix::string_field(obj, "type");
    if (type == "x-mitre-collection") {
      report.version = stix::string_field(obj, "x_mitre_version");
      report.date = stix::string_field(obj, "modified");
    } else if (type == "x-mitre-tactic") {
      if (!keep(obj)) continue;
      auto id = stix::attack_id(obj);
      auto shortname = stix::string_field(obj, "x_mitre_shortname");
      if (!id || !ids::is_tactic(*id) || shortname.empty()) {
        report.warn(stix::string_field(obj, "id"), "tactic without ATT&CK id or shortname");
        continue;
      }
      tactics_by_shortname[shortname] =
          Tactic{NodeId(Namespace::Tactic, *id), stix::string_field(obj, "name"), shortname};
    } else if (type == "x-mitre-data-source") {
      data_source_names[stix::string_field(obj, "id")] = stix::string_field(obj, "name");
    } else if (type == "attack-pattern") {
      if (keep(obj)) patterns.push_back(&obj);
    } else if (type == "x-mitre-data-component") {
      if (keep(obj)) components.push_back(&obj);
    } else if (type == "relationship") {
      if (stix::string_field(obj, "relationship_type") == "detects" && !stix::is_retired(obj)) {
        detects.push_back(&obj);
      }
    }
  }

  std::map<std::string, Technique> techniques;    // by ATT&CK id
  std::map<std::string, std::string> technique_by_stix;  // stix id -> ATT&CK id
  for (const json* p : patterns) {
    const auto& obj = *p;
    const auto stix_id = stix::string_field(obj, "id");
    auto id = stix::attack_id(obj);
    if (!id || !ids::is_technique(*id)) {
      report.warn(stix_id, "attack-pattern without an ATT&CK external id");
      continue;
    }
    if (techniques.count(*id)) {
      report.warn(stix_id, "duplicate technique id " + *id);
      continue;
    }
    Technique t;
    t.id = technique_id(*id);
    t.stix_id = stix_id;
    t.name = stix::string_field(obj, "name");
    t.revoked_or_deprecated = stix::is_retired(obj);
    for (const auto& capec : stix::external_ids(obj, "capec")) {
      if (ids::is_capec(capec)) {
        t.capec_refs.insert(NodeId(Namespace::Capec, capec));
      } else {
        report.warn(*id, "unrecognized CAPEC reference '" + capec + "'");
      }
    }
    if (auto kc = obj.find("kill_chain_phases"); kc != obj.end() && kc->is_array()) {
      for (const auto& phase : *kc) {
        if (!phase.is_object() || stix::string_field(phase, "kill_chain_name") != "mitre-attack")
          continue;
        auto name = stix::string_field(phase, "phase_name");
        auto tactic = tactics_by_shortname.find(name);
        if (tactic == tactics_by_shortname.end()) {
          report.warn(*id, "unknown kill-chain phase '" + name + "'");
          continue;
        }
        t.tactic_refs.insert(tactic->second.id);
      }
    }
    t.platforms = stix::string_set(obj, "x_mitre_platforms");
    t.permissions_required = stix::string_set(obj, "x_mitre_permissions_required");
    t.effective_permissions = stix::string_set(obj, "x_mitre_effective_permissions");
    t.impact_types = stix::string_set(obj, "x_mitre_impact_type");
    technique_by_stix[stix_id] = *id;
    techniques.emplace(*id, std::move(t));
  }

  std::map<NodeId, DataComponent> data_components;
  std::map<std::string, NodeId> component_by_stix;
  for (const json* c : components) {
    const auto& obj = *c;
    const auto stix_id = stix::string_field(obj, "id");
    const auto name = stix::string_field(obj, "name");
    std::string canonical;
    try {
      canonical = canonicalize_name(name, NameStyle::Concatenated);
    } catch (const InvalidArgument&) {
      report.warn(stix_id, "data component with unusable name '" + name + "'");
      continue;
    }
    NodeId id(Namespace::DataComponent, canonical);
    auto source = data_source_names.find(stix::string_field(obj, "x_mitre_data_source_ref"));
    auto [it, inserted] = data_components.try_emplace(id);
    if (inserted) {
      it->second.id = id;
      it->second.component_name = name;
      it->second.source_name = source == data_source_names.end() ? "" : source->second;
    } else {
      report.warn(stix_id, "data component name collides with an earlier one; merged into " +
                               id.local);
    }
    component_by_stix.emplace(stix_id, id);
  }

  for (const json* r : detects) {
    const auto& obj = *r;
    auto src = component_by_stix.find(stix::string_field(obj, "source_ref"));
    auto dst = technique_by_stix.find(stix::string_field(obj, "target_ref"));
    if (src == component_by_stix.end() || dst == technique_by_stix.end()) {
      report.warn(stix::string_field(obj, "id"), "detects relationship with unknown endpoint");
      continue;
    }
    auto& technique = techniques.at(dst->second);
    data_components.at(src->second).detected_technique_refs.insert(technique.id);
    technique.data_component_refs.insert(src->second);
  }

  for (auto& [_, tactic] : tactics_by_shortname) out.tactics.push_back(std::move(tactic));
  std::sort(out.tactics.begin(), out.tactics.end(),
            [](const Tactic& a, const Tactic& b) { return a.id < b.id; });
  for (auto& [_, t] : techniques) out.techniques.push_back(std::move(t));
  for (auto& [_, dc] : data_components) out.data_components.push_back(std::move(dc));
  report.records = out.techniques.size();
  return out;
}

}  // namespace enumkg::ingest
