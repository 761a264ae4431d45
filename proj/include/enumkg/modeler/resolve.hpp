#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "enumkg/graph/knowledge_graph.hpp"
#include "enumkg/modeler/diagram.hpp"

namespace enumkg::modeler {

struct Resolution {
  std::set<NodeId> threats;
  // Per threat, the raw labels that put it into the candidate set.
  std::map<NodeId, std::vector<std::string>> selected_by;
  // Restriction labels every result satisfies, own and inherited.
  std::vector<std::string> filters;
  bool all_threats_candidate = false;
};

namespace detail {

inline std::string restriction_label(const NodeId& r) { return "restriction#HasRestriction_" + r.local; }

}  // namespace detail

// Let DC, EN and RS be the element's resolvable data-component, enum and
// restriction labels, RS extended by `inherited_restrictions`.
//   B = U{threats with hasDataComponent d : d in DC} U U{threats with refToEnum e : e in EN}
//   B = all threats when DC and EN are empty but RS is not
//   result = B n {threats carrying every r in RS}
// Labels naming ids absent from the graph never contribute.
inline Resolution resolve_element(const KnowledgeGraph& g, const DiagramElement& element,
                                  const std::set<NodeId>& inherited_restrictions = {}) {
  Resolution out;
  std::set<NodeId> own_restrictions;
  std::vector<const Label*> content;
  for (const auto& label : element.labels) {
    if (!g.contains(label.target)) continue;
    if (label.kind == LabelKind::Restriction) {
      own_restrictions.insert(label.target);
    } else {
      content.push_back(&label);
    }
  }
  std::set<NodeId> restrictions = own_restrictions;
  for (const auto& r : inherited_restrictions) {
    if (g.contains(r)) restrictions.insert(r);
  }
  if (content.empty() && restrictions.empty()) return out;

  std::map<NodeId, std::vector<std::string>> candidates;
  if (!content.empty()) {
    for (const Label* label : content) {
      const auto rel =
          label->kind == LabelKind::DataComponent ? Relation::HasDataComponent : Relation::RefToEnum;
      for (const auto& t : g.relation(rel).preimage(label->target)) {
        if (t.ns != Namespace::Threat) continue;
        auto& by = candidates[t];
        if (std::find(by.begin(), by.end(), label->raw) == by.end()) by.push_back(label->raw);
      }
    }
  } else {
    out.all_threats_candidate = true;
    for (const auto& t : g.nodes_in(Namespace::Threat)) candidates[t];
  }

  const auto& has_restriction = g.relation(Relation::HasRestriction);
  for (auto& [threat, labels] : candidates) {
    bool admitted = std::all_of(restrictions.begin(), restrictions.end(), [&](const NodeId& r) {
      return has_restriction.contains(threat, r);
    });
    if (!admitted) continue;
    out.threats.insert(threat);
    out.selected_by.emplace(threat, std::move(labels));
  }
  for (const auto& r : own_restrictions) out.filters.push_back(detail::restriction_label(r));
  for (const auto& r : restrictions) {
    if (!own_restrictions.count(r)) out.filters.push_back(detail::restriction_label(r) + " (inherited)");
  }
  return out;
}

inline std::set<NodeId> resolve_threats(const KnowledgeGraph& g, const DiagramElement& element,
                                        const std::set<NodeId>& inherited_restrictions = {}) {
  return resolve_element(g, element, inherited_restrictions).threats;
}

// Restriction targets of an element's labels.
inline std::set<NodeId> restriction_targets(const DiagramElement& element) {
  std::set<NodeId> out;
  for (const auto& label : element.labels) {
    if (label.kind == LabelKind::Restriction) out.insert(label.target);
  }
  return out;
}

// Restrictions a flow inherits: those labeled on its target element.
inline std::set<NodeId> inherited_restrictions(const Diagram& d, const DiagramElement& element) {
  if (element.kind != ElementKind::Flow || !element.target_ref) return {};
  const auto* target = d.find(*element.target_ref);
  if (target == nullptr) return {};
  return restriction_targets(*target);
}

}  // namespace enumkg::modeler
