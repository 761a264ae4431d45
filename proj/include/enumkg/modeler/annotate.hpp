#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "enumkg/graph/knowledge_graph.hpp"
#include "enumkg/modeler/diagram.hpp"
#include "enumkg/modeler/resolve.hpp"

namespace enumkg::modeler {

// Tool-generated annotations carry this token at the start of their
// description; re-runs replace exactly those entries.
inline constexpr std::string_view kAnnotationMarker = "[enumkg]";

struct ModelOptions {
  std::string status = "Open";
  std::string severity = "Medium";
};

inline bool is_generated(const nlohmann::json& threat) {
  if (!threat.is_object()) return false;
  auto it = threat.find("description");
  return it != threat.end() && it->is_string() &&
         it->get<std::string>().starts_with(kAnnotationMarker);
}

inline ThreatAnnotation make_annotation(const KnowledgeGraph& g, const NodeId& threat,
                                        const Resolution& resolution, const ModelOptions& options) {
  const auto technique = technique_of(threat);
  const auto& info = g.payload<TechniqueNode>(technique);
  std::string type = "Attack technique";
  auto tactics = g.relation(Relation::RefToTactic).image(technique);
  if (!tactics.empty()) type = g.payload<TacticNode>(*tactics.begin()).name;

  std::string description(kAnnotationMarker);
  description += " Selected by: ";
  if (resolution.all_threats_candidate) {
    description += "restriction labels only";
  } else {
    const auto& labels = resolution.selected_by.at(threat);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) description += ", ";
      description += labels[i];
    }
  }
  if (!resolution.filters.empty()) {
    description += ". Restricted by: ";
    for (std::size_t i = 0; i < resolution.filters.size(); ++i) {
      if (i) description += ", ";
      description += resolution.filters[i];
    }
  }
  description += ".";
  return ThreatAnnotation{technique,   technique.local + " " + info.name, type, options.status,
                          options.severity, std::move(description), ""};
}

// Resolves every known element against the graph, filling `threats` (sorted
// by technique id) and recording unresolved-label warnings.
inline void resolve_diagram(const KnowledgeGraph& g, Diagram& d, const ModelOptions& options = {}) {
  for (auto& e : d.elements) {
    if (e.kind == ElementKind::Unknown) continue;
    for (const auto& label : e.labels) {
      if (!g.contains(label.target)) {
        e.warnings.push_back("unresolved label " + label.raw + ": " + label.target.str() +
                             " is not in the graph");
      }
    }
    auto resolution = resolve_element(g, e, inherited_restrictions(d, e));
    e.threats.clear();
    for (const auto& threat : resolution.threats) {
      e.threats.push_back(make_annotation(g, threat, resolution, options));
    }
    std::sort(e.threats.begin(), e.threats.end(),
              [](const ThreatAnnotation& a, const ThreatAnnotation& b) {
                return a.technique_id < b.technique_id;
              });
    e.resolved = true;
  }
}

inline nlohmann::json to_json(const ThreatAnnotation& t) {
  return {{"title", t.title},     {"type", t.type},
          {"status", t.status},   {"severity", t.severity},
          {"description", t.description}, {"mitigation", t.mitigation}};
}

// The input document with each resolved cell's tool-generated threats
// replaced by the element's current annotations. Human-authored threats are
// kept in place, ahead of the generated ones.
inline nlohmann::json annotate_diagram(const KnowledgeGraph&, const Diagram& d) {
  nlohmann::json out = d.document;
  for (const auto& e : d.elements) {
    if (!e.resolved) continue;
    auto& cell = out["detail"]["diagrams"][e.diagram_index]["diagramJson"]["cells"][e.cell_index];
    auto existing = cell.find("threats");
    if (existing == cell.end()) {
      if (e.threats.empty()) continue;
      cell["threats"] = nlohmann::json::array();
    } else if (!existing->is_array()) {
      continue;
    }
    auto& threats = cell["threats"];
    nlohmann::json kept = nlohmann::json::array();
    for (auto& t : threats) {
      if (!is_generated(t)) kept.push_back(std::move(t));
    }
    for (const auto& t : e.threats) kept.push_back(to_json(t));
    threats = std::move(kept);
  }
  return out;
}

inline std::string diagram_to_string(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

// Per-element label sets, warnings and threat counts.
inline nlohmann::json model_report(const KnowledgeGraph& g, const Diagram& d) {
  nlohmann::json elements = nlohmann::json::array();
  std::size_t total = 0;
  for (const auto& e : d.elements) {
    nlohmann::json labels = nlohmann::json::array();
    nlohmann::json unresolved = nlohmann::json::array();
    for (const auto& l : e.labels) {
      labels.push_back(l.raw);
      if (!g.contains(l.target)) unresolved.push_back(l.raw);
    }
    nlohmann::json techniques = nlohmann::json::array();
    for (const auto& t : e.threats) techniques.push_back(t.technique_id.local);
    total += e.threats.size();
    elements.push_back({{"id", e.element_id},
                        {"name", e.name},
                        {"kind", std::string(to_string(e.kind))},
                        {"labels", labels},
                        {"unresolved_labels", unresolved},
                        {"warnings", e.warnings},
                        {"threat_count", e.threats.size()},
                        {"techniques", techniques}});
  }
  return {{"elements", elements}, {"total_threats", total}};
}

}  // namespace enumkg::modeler
