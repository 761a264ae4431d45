#pragma once

#include <map>
#include <regex>
#include <string>
#include <string_view>

#include "enumkg/ingest/xml_util.hpp"
#include "enumkg/records.hpp"

namespace enumkg::ingest {

// Parses a CWE catalog (Weakness_Catalog, schema 6.x/7.x). Only CVEs named
// in Observed_Example references are materialized.
inline CweCatalog parse_cwe_catalog(std::string_view document, const ParseOptions& options = {}) {
  const auto doc = xml::read(document, "cwe");
  const auto& root = xml::root_element(doc, "Weakness_Catalog", "cwe");

  CweCatalog out;
  ParseReport& report = out.report;
  report.source = "cwe";
  report.version = xml::attribute(root, "Version");
  report.date = xml::attribute(root, "Date");

  static const std::regex cve_pattern("CVE-[0-9]{4}-[0-9]+");

  std::map<NodeId, CweWeakness> weaknesses;
  xml::for_each_child(root, "Weaknesses", "Weakness", [&](const xml::ptree& node) {
    const auto raw_id = xml::attribute(node, "ID");
    const auto local = "CWE-" + raw_id;
    if (!ids::is_cwe(local)) {
      report.warn("Weakness ID='" + raw_id + "'", "non-numeric weakness id");
      return;
    }
    CweWeakness w;
    w.id = NodeId(Namespace::Cwe, local);
    w.name = xml::attribute(node, "Name");
    w.abstraction = xml::attribute(node, "Abstraction");
    w.status = xml::attribute(node, "Status");
    if (w.status == "Deprecated" && !options.include_deprecated) {
      ++report.skipped_deprecated;
      return;
    }
    xml::for_each_child(node, "Related_Attack_Patterns", "Related_Attack_Pattern",
                        [&](const xml::ptree& rap) {
                          const auto capec = "CAPEC-" + xml::attribute(rap, "CAPEC_ID");
                          if (ids::is_capec(capec)) {
                            w.related_capecs.insert(NodeId(Namespace::Capec, capec));
                          } else {
                            report.warn(local, "unrecognized Related_Attack_Pattern '" + capec + "'");
                          }
                        });
    xml::for_each_child(node, "Observed_Examples", "Observed_Example", [&](const xml::ptree& ex) {
      const auto reference = xml::trimmed(ex.get("Reference", ""));
      std::smatch m;
      if (std::regex_search(reference, m, cve_pattern)) {
        w.observed_cves.insert(NodeId(Namespace::Cve, m.str()));
      } else {
        report.warn(local, "Observed_Example without CVE id '" + reference + "'");
      }
    });
    if (weaknesses.count(w.id)) {
      report.warn(local, "duplicate weakness id");
      return;
    }
    weaknesses.emplace(w.id, std::move(w));
  });

  for (auto& [_, w] : weaknesses) out.weaknesses.push_back(std::move(w));
  report.records = out.weaknesses.size();
  return out;
}

}  // namespace enumkg::ingest
