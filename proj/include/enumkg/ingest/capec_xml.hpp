#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>

#include "enumkg/ingest/xml_util.hpp"
#include "enumkg/records.hpp"

namespace enumkg::ingest {

// Parses a CAPEC catalog (Attack_Pattern_Catalog, schema 3.x).
inline CapecCatalog parse_capec_catalog(std::string_view document, const ParseOptions& options = {}) {
  const auto doc = xml::read(document, "capec");
  const auto& root = xml::root_element(doc, "Attack_Pattern_Catalog", "capec");

  CapecCatalog out;
  ParseReport& report = out.report;
  report.source = "capec";
  report.version = xml::attribute(root, "Version");
  report.date = xml::attribute(root, "Date");

  std::map<NodeId, CapecPattern> patterns;
  xml::for_each_child(root, "Attack_Patterns", "Attack_Pattern", [&](const xml::ptree& node) {
    const auto raw_id = xml::attribute(node, "ID");
    const auto local = "CAPEC-" + raw_id;
    if (!ids::is_capec(local)) {
      report.warn("Attack_Pattern ID='" + raw_id + "'", "non-numeric pattern id");
      return;
    }
    CapecPattern p;
    p.id = NodeId(Namespace::Capec, local);
    p.name = xml::attribute(node, "Name");
    p.abstraction = xml::attribute(node, "Abstraction");
    p.status = xml::attribute(node, "Status");
    if (p.status == "Deprecated" && !options.include_deprecated) {
      ++report.skipped_deprecated;
      return;
    }
    xml::for_each_child(node, "Related_Weaknesses", "Related_Weakness", [&](const xml::ptree& rw) {
      const auto cwe = "CWE-" + xml::attribute(rw, "CWE_ID");
      if (ids::is_cwe(cwe)) {
        p.related_weaknesses.insert(NodeId(Namespace::Cwe, cwe));
      } else {
        report.warn(local, "unrecognized Related_Weakness '" + cwe + "'");
      }
    });
    xml::for_each_child(node, "Taxonomy_Mappings", "Taxonomy_Mapping", [&](const xml::ptree& tm) {
      if (xml::attribute(tm, "Taxonomy_Name") != "ATTACK") return;
      const auto entry = xml::trimmed(tm.get("Entry_ID", ""));
      const auto technique = "T" + entry;
      if (ids::is_technique(technique)) {
        p.attack_taxonomy_refs.insert(technique_id(technique));
      } else {
        report.warn(local, "non-numeric ATTACK taxonomy entry '" + entry + "'");
      }
    });
    if (patterns.count(p.id)) {
      report.warn(local, "duplicate pattern id");
      return;
    }
    patterns.emplace(p.id, std::move(p));
  });

  for (auto& [_, p] : patterns) out.patterns.push_back(std::move(p));
  report.records = out.patterns.size();
  return out;
}

}  // namespace enumkg::ingest
