#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "enumkg/errors.hpp"
#include "enumkg/modeler/labels.hpp"

namespace enumkg::modeler {

enum class ElementKind { Process, Store, Actor, Flow, Boundary, Unknown };

constexpr std::string_view to_string(ElementKind k) {
  switch (k) {
    case ElementKind::Process: return "Process";
    case ElementKind::Store: return "Store";
    case ElementKind::Actor: return "Actor";
    case ElementKind::Flow: return "Flow";
    case ElementKind::Boundary: return "Boundary";
    case ElementKind::Unknown: return "Unknown";
  }
  return "?";
}

inline ElementKind element_kind_from_cell_type(std::string_view type) {
  if (type == "tm.Process") return ElementKind::Process;
  if (type == "tm.Store") return ElementKind::Store;
  if (type == "tm.Actor") return ElementKind::Actor;
  if (type == "tm.Flow") return ElementKind::Flow;
  if (type == "tm.Boundary") return ElementKind::Boundary;
  return ElementKind::Unknown;
}

struct ThreatAnnotation {
  NodeId technique_id;
  std::string title;
  std::string type;
  std::string status;
  std::string severity;
  std::string description;
  std::string mitigation;
};

struct DiagramElement {
  std::string element_id;
  ElementKind kind{ElementKind::Unknown};
  std::string cell_type;
  std::string name;
  std::string description;
  std::vector<Label> labels;
  std::optional<std::string> source_ref;  // flows only
  std::optional<std::string> target_ref;  // flows only
  std::vector<ThreatAnnotation> threats;
  std::vector<std::string> warnings;
  // Location of the originating cell in the document.
  std::size_t diagram_index = 0;
  std::size_t cell_index = 0;
  bool resolved = false;
};

struct Diagram {
  nlohmann::json document;  // the input, kept for round-trip output
  std::vector<DiagramElement> elements;

  const DiagramElement* find(std::string_view element_id) const {
    for (const auto& e : elements) {
      if (e.element_id == element_id) return &e;
    }
    return nullptr;
  }
};

namespace detail {

using json = nlohmann::json;

inline std::string text_at(const json& j, std::initializer_list<const char*> path) {
  const json* cur = &j;
  for (const char* key : path) {
    if (!cur->is_object()) return {};
    auto it = cur->find(key);
    if (it == cur->end()) return {};
    cur = &*it;
  }
  return cur->is_string() ? cur->get<std::string>() : std::string{};
}

inline std::string cell_name(const json& cell, ElementKind kind) {
  if (auto n = text_at(cell, {"name"}); !n.empty()) return n;
  if (kind == ElementKind::Flow) {
    auto labels = cell.find("labels");
    if (labels != cell.end() && labels->is_array() && !labels->empty()) {
      return text_at((*labels)[0], {"attrs", "text", "text"});
    }
    return {};
  }
  return text_at(cell, {"attrs", "text", "text"});
}

}  // namespace detail

// Parses a Threat Dragon v1 document:
//   detail.diagrams[*].diagramJson.cells[*]
// One element per non-boundary cell. Unknown cell types are kept with a
// warning and skipped by resolution.
inline Diagram parse_diagram(std::string_view document) {
  using detail::json;
  Diagram d;
  try {
    d.document = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError("diagram", e.byte, e.what());
  }
  const auto& doc = d.document;
  if (!doc.is_object() || !doc.contains("detail") || !doc["detail"].is_object() ||
      !doc["detail"].contains("diagrams") || !doc["detail"]["diagrams"].is_array()) {
    throw ParseError("diagram", 0, "not a Threat Dragon v1 document: missing detail.diagrams");
  }

  const auto& diagrams = doc["detail"]["diagrams"];
  for (std::size_t di = 0; di < diagrams.size(); ++di) {
    const auto& dj = diagrams[di];
    if (!dj.is_object()) continue;
    auto dj_json = dj.find("diagramJson");
    if (dj_json == dj.end() || !dj_json->is_object()) continue;
    auto cells = dj_json->find("cells");
    if (cells == dj_json->end() || !cells->is_array()) continue;

    for (std::size_t ci = 0; ci < cells->size(); ++ci) {
      const auto& cell = (*cells)[ci];
      if (!cell.is_object()) continue;
      DiagramElement e;
      e.cell_type = detail::text_at(cell, {"type"});
      e.kind = element_kind_from_cell_type(e.cell_type);
      if (e.kind == ElementKind::Boundary) continue;
      e.element_id = detail::text_at(cell, {"id"});
      e.name = detail::cell_name(cell, e.kind);
      e.description = detail::text_at(cell, {"description"});
      e.diagram_index = di;
      e.cell_index = ci;
      if (e.kind == ElementKind::Unknown) {
        e.warnings.push_back("unknown cell type '" + e.cell_type + "'; element not resolved");
      }
      if (e.kind == ElementKind::Flow) {
        auto src = detail::text_at(cell, {"source", "id"});
        auto dst = detail::text_at(cell, {"target", "id"});
        if (!src.empty()) e.source_ref = src;
        if (!dst.empty()) e.target_ref = dst;
        if (src.empty() || dst.empty()) {
          e.warnings.push_back("flow is not attached at both ends");
        }
      }
      auto scan = scan_labels(e.description);
      e.labels = std::move(scan.labels);
      for (const auto& err : scan.malformed) e.warnings.push_back(err.what());
      d.elements.push_back(std::move(e));
    }
  }
  return d;
}

}  // namespace enumkg::modeler
