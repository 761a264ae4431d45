#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "enumkg/node_id.hpp"

namespace enumkg {

struct Technique {
  NodeId id;              // ATTCK
  std::string stix_id;
  std::string name;
  std::set<NodeId> tactic_refs;          // TACTIC
  std::set<NodeId> capec_refs;           // CAPEC
  std::set<std::string> platforms;
  std::set<std::string> permissions_required;
  std::set<std::string> effective_permissions;
  std::set<std::string> impact_types;
  std::set<NodeId> data_component_refs;  // DATACOMPONENT
  bool revoked_or_deprecated = false;
};

struct Tactic {
  NodeId id;  // TACTIC, e.g. TA0002
  std::string name;
  std::string shortname;  // kill-chain phase name, e.g. "execution"
};

struct DataComponent {
  NodeId id;  // DATACOMPONENT, canonicalized component name
  std::string source_name;
  std::string component_name;
  std::set<NodeId> detected_technique_refs;  // ATTCK
};

struct CapecPattern {
  NodeId id;  // CAPEC
  std::string name;
  std::string abstraction;
  std::set<NodeId> related_weaknesses;     // CWE
  std::set<NodeId> attack_taxonomy_refs;   // ATTCK
  std::string status;
};

struct CweWeakness {
  NodeId id;  // CWE
  std::string name;
  std::string abstraction;
  std::set<NodeId> related_capecs;  // CAPEC
  std::set<NodeId> observed_cves;   // CVE
  std::string status;
};

struct ParseWarning {
  std::string item;
  std::string reason;
};

// What a parser skipped and why. Serialized with `build --report`.
struct ParseReport {
  std::string source;  // "attack" | "capec" | "cwe"
  std::string version;
  std::string date;
  std::size_t records = 0;
  std::size_t skipped_deprecated = 0;
  std::vector<ParseWarning> warnings;

  void warn(std::string item, std::string reason) {
    warnings.push_back({std::move(item), std::move(reason)});
  }
};

struct ParseOptions {
  bool include_deprecated = false;
};

struct AttackBundle {
  std::vector<Technique> techniques;
  std::vector<Tactic> tactics;
  std::vector<DataComponent> data_components;
  ParseReport report;
};

struct CapecCatalog {
  std::vector<CapecPattern> patterns;
  ParseReport report;
};

struct CweCatalog {
  std::vector<CweWeakness> weaknesses;
  ParseReport report;
};

}  // namespace enumkg
