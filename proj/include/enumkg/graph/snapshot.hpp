#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "enumkg/graph/knowledge_graph.hpp"

namespace enumkg {

inline constexpr std::string_view kSnapshotFormat = "enumkg-snapshot";
inline constexpr int kSnapshotVersion = 1;

namespace detail {

using json = nlohmann::json;

struct PayloadWriter {
  json& out;
  void operator()(const TechniqueNode& t) const {
    out["stix_id"] = t.stix_id;
    out["name"] = t.name;
    out["platforms"] = t.platforms;
    out["permissions_required"] = t.permissions_required;
    out["effective_permissions"] = t.effective_permissions;
    out["impact_types"] = t.impact_types;
    out["revoked_or_deprecated"] = t.revoked_or_deprecated;
  }
  void operator()(const TacticNode& t) const {
    out["name"] = t.name;
    out["shortname"] = t.shortname;
  }
  void operator()(const CapecNode& p) const {
    out["name"] = p.name;
    out["abstraction"] = p.abstraction;
    out["status"] = p.status;
  }
  void operator()(const CweNode& w) const {
    out["name"] = w.name;
    out["abstraction"] = w.abstraction;
    out["status"] = w.status;
  }
  void operator()(const CveNode&) const {}
  void operator()(const DataComponentNode& d) const {
    out["source_name"] = d.source_name;
    out["component_name"] = d.component_name;
  }
  void operator()(const RestrictionNode& r) const {
    out["category"] = std::string(to_string(r.category));
    out["value"] = r.value;
  }
  void operator()(const ThreatNode&) const {}
};

inline std::string str(const json& j, const char* key) { return j.value(key, std::string{}); }

inline std::set<std::string> str_set(const json& j, const char* key) {
  return j.value(key, std::set<std::string>{});
}

inline NodePayload read_payload(Namespace ns, const json& j) {
  switch (ns) {
    case Namespace::Attck:
      return TechniqueNode{str(j, "stix_id"),
                           str(j, "name"),
                           str_set(j, "platforms"),
                           str_set(j, "permissions_required"),
                           str_set(j, "effective_permissions"),
                           str_set(j, "impact_types"),
                           j.value("revoked_or_deprecated", false)};
    case Namespace::Tactic: return TacticNode{str(j, "name"), str(j, "shortname")};
    case Namespace::Capec: return CapecNode{str(j, "name"), str(j, "abstraction"), str(j, "status")};
    case Namespace::Cwe: return CweNode{str(j, "name"), str(j, "abstraction"), str(j, "status")};
    case Namespace::Cve: return CveNode{};
    case Namespace::DataComponent:
      return DataComponentNode{str(j, "source_name"), str(j, "component_name")};
    case Namespace::Restriction: {
      auto category = restriction_category_from_string(str(j, "category"));
      if (!category) throw InvalidArgument("unknown restriction category '" + str(j, "category") + "'");
      return RestrictionNode{*category, str(j, "value")};
    }
    case Namespace::Threat: return ThreatNode{};
  }
  return ThreatNode{};
}

}  // namespace detail

// Canonical JSON form: node arrays grouped by namespace and sorted by id,
// pair lists sorted by their rendered ids. Object keys are emitted sorted.
inline nlohmann::json snapshot_to_json(const KnowledgeGraph& g) {
  using detail::json;
  json doc;
  doc["format"] = kSnapshotFormat;
  doc["version"] = kSnapshotVersion;

  const auto& meta = g.metadata();
  json sources = json::object();
  for (const auto& [name, info] : meta.sources) {
    sources[name] = {{"version", info.version}, {"date", info.date}};
  }
  doc["metadata"] = {
      {"sources", sources},
      {"build_timestamp", meta.build_timestamp},
      {"closed", meta.closed},
      {"base_pair_counts", meta.base_pair_counts},
      {"dropped_references", meta.dropped_references},
  };

  json nodes = json::object();
  for (auto ns : kAllNamespaces) nodes[std::string(to_string(ns))] = json::array();
  for (const auto& [id, payload] : g.nodes()) {
    json entry = {{"id", id.local}};
    std::visit(detail::PayloadWriter{entry}, payload);
    nodes[std::string(to_string(id.ns))].push_back(std::move(entry));
  }
  for (auto& [_, list] : nodes.items()) {
    std::sort(list.begin(), list.end(), [](const json& a, const json& b) {
      return a["id"].get<std::string>() < b["id"].get<std::string>();
    });
  }
  doc["nodes"] = std::move(nodes);

  json relations = json::object();
  for (auto r : kAllRelations) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& [a, b] : g.relation(r)) pairs.emplace_back(a.str(), b.str());
    std::sort(pairs.begin(), pairs.end());
    json list = json::array();
    for (auto& [a, b] : pairs) list.push_back(json::array({std::move(a), std::move(b)}));
    relations[std::string(to_string(r))] = std::move(list);
  }
  doc["relations"] = std::move(relations);
  return doc;
}

inline std::string snapshot_to_string(const KnowledgeGraph& g) {
  return snapshot_to_json(g).dump(1, '\t') + "\n";
}

inline KnowledgeGraph snapshot_from_json(const nlohmann::json& doc) {
  using detail::json;
  KnowledgeGraph g;
  try {
    if (!doc.is_object() || doc.value("format", std::string{}) != kSnapshotFormat) {
      throw ParseError("snapshot", 0, "not an enumkg snapshot");
    }
    if (doc.value("version", 0) != kSnapshotVersion) {
      throw ParseError("snapshot", 0, "unsupported snapshot version");
    }
    const auto& meta = doc.at("metadata");
    auto& m = g.metadata();
    for (const auto& [name, info] : meta.at("sources").items()) {
      m.sources[name] = SourceInfo{detail::str(info, "version"), detail::str(info, "date")};
    }
    m.build_timestamp = detail::str(meta, "build_timestamp");
    m.closed = meta.value("closed", false);
    m.base_pair_counts = meta.value("base_pair_counts", std::map<std::string, std::size_t>{});
    m.dropped_references = meta.value("dropped_references", std::map<std::string, std::size_t>{});

    for (const auto& [ns_name, list] : doc.at("nodes").items()) {
      auto ns = namespace_from_string(ns_name);
      if (!ns) throw InvalidArgument("unknown namespace '" + ns_name + "'");
      for (const auto& entry : list) {
        g.add_node(NodeId(*ns, entry.at("id").get<std::string>()), detail::read_payload(*ns, entry));
      }
    }
    for (const auto& [rel_name, list] : doc.at("relations").items()) {
      auto r = relation_from_string(rel_name);
      if (!r) throw InvalidArgument("unknown relation '" + rel_name + "'");
      for (const auto& pair : list) {
        g.add_edge(*r, parse_node_id(pair.at(0).get<std::string>()),
                   parse_node_id(pair.at(1).get<std::string>()));
      }
    }
  } catch (const json::exception& e) {
    throw ParseError("snapshot", 0, e.what());
  } catch (const NotFoundError& e) {
    throw ParseError("snapshot", 0, std::string("dangling pair endpoint: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError("snapshot", 0, e.what());
  } catch (const ConsistencyError& e) {
    throw ParseError("snapshot", 0, e.what());
  }
  return g;
}

inline KnowledgeGraph snapshot_from_string(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("snapshot", e.byte, e.what());
  }
  return snapshot_from_json(doc);
}

// One "subject<TAB>predicate<TAB>object" line per pair, ids rendered as
// namespace:local, lines sorted bytewise, LF endings.
inline std::string export_triples(const KnowledgeGraph& g) {
  std::vector<std::string> lines;
  for (auto r : kAllRelations) {
    const auto predicate = std::string(to_string(r));
    for (const auto& [a, b] : g.relation(r)) {
      lines.push_back(a.str() + '\t' + predicate + '\t' + b.str());
    }
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace enumkg
