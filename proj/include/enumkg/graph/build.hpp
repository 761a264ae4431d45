#pragma once

#include <algorithm>
#include <span>
#include <string>

#include "enumkg/graph/knowledge_graph.hpp"
#include "enumkg/names.hpp"
#include "enumkg/records.hpp"

namespace enumkg {

namespace detail {

class GraphBuilder {
public:
  explicit GraphBuilder(KnowledgeGraph& g) : g_(g) {}

  // Adds the pair if both endpoints exist; otherwise counts it as dropped.
  void link(Relation r, const NodeId& from, const NodeId& to) {
    if (g_.contains(from) && g_.contains(to)) {
      g_.add_edge(r, from, to);
    } else {
      ++g_.metadata().dropped_references[std::string(to_string(r))];
    }
  }

  void restrict(const NodeId& threat, RestrictionCategory category, const std::string& value) {
    std::string canonical;
    try {
      canonical = canonicalize_name(value, NameStyle::Underscored);
    } catch (const InvalidArgument&) {
      ++g_.metadata().dropped_references[std::string(to_string(Relation::HasRestriction))];
      return;
    }
    NodeId id(Namespace::Restriction, std::string(to_string(category)) + "_" + canonical);
    if (!g_.contains(id)) g_.add_node(id, RestrictionNode{category, value});
    g_.add_edge(Relation::HasRestriction, threat, id);
  }

private:
  KnowledgeGraph& g_;
};

}  // namespace detail

// Assembles parsed records into a graph holding base relations only. Every
// technique gets a companion Threat node; restriction nodes are created per
// distinct (category, value); CVE stubs per distinct observed CVE.
inline KnowledgeGraph build_graph(std::span<const Technique> techniques,
                                  std::span<const Tactic> tactics,
                                  std::span<const DataComponent> data_components,
                                  std::span<const CapecPattern> capecs,
                                  std::span<const CweWeakness> cwes) {
  KnowledgeGraph g;
  for (const auto& t : tactics) g.add_node(t.id, TacticNode{t.name, t.shortname});
  for (const auto& t : techniques) {
    g.add_node(t.id, TechniqueNode{t.stix_id, t.name, t.platforms, t.permissions_required,
                                   t.effective_permissions, t.impact_types,
                                   t.revoked_or_deprecated});
    g.add_node(threat_of(t.id), ThreatNode{});
  }
  for (const auto& dc : data_components) {
    g.add_node(dc.id, DataComponentNode{dc.source_name, dc.component_name});
  }
  for (const auto& p : capecs) g.add_node(p.id, CapecNode{p.name, p.abstraction, p.status});
  for (const auto& w : cwes) {
    g.add_node(w.id, CweNode{w.name, w.abstraction, w.status});
  }
  for (const auto& w : cwes) {
    for (const auto& cve : w.observed_cves) {
      if (!g.contains(cve)) g.add_node(cve, CveNode{});
    }
  }

  detail::GraphBuilder b(g);
  for (const auto& t : techniques) {
    const auto threat = threat_of(t.id);
    b.link(Relation::RefToAttck, threat, t.id);
    for (const auto& tactic : t.tactic_refs) b.link(Relation::RefToTactic, t.id, tactic);
    for (const auto& capec : t.capec_refs) b.link(Relation::RefToCapec, t.id, capec);
    for (const auto& dc : t.data_component_refs) b.link(Relation::HasDataComponent, threat, dc);
    for (const auto& v : t.platforms) b.restrict(threat, RestrictionCategory::Platform, v);
    for (const auto& v : t.permissions_required)
      b.restrict(threat, RestrictionCategory::PermissionsRequired, v);
    for (const auto& v : t.effective_permissions)
      b.restrict(threat, RestrictionCategory::EffectivePermissions, v);
    for (const auto& v : t.impact_types) b.restrict(threat, RestrictionCategory::ImpactType, v);
  }
  for (const auto& dc : data_components) {
    for (const auto& t : dc.detected_technique_refs) {
      b.link(Relation::HasDataComponent, threat_id(t.local), dc.id);
    }
  }
  for (const auto& p : capecs) {
    for (const auto& t : p.attack_taxonomy_refs) b.link(Relation::IsRefToAttck, p.id, t);
    for (const auto& w : p.related_weaknesses) b.link(Relation::RefToCwe, p.id, w);
  }
  for (const auto& w : cwes) {
    for (const auto& c : w.related_capecs) b.link(Relation::IsRefToCapec, w.id, c);
    for (const auto& cve : w.observed_cves) b.link(Relation::RefToCve, w.id, cve);
  }

  for (auto r : kAllRelations) {
    if (!is_reasoned(r)) {
      g.metadata().base_pair_counts[std::string(to_string(r))] = g.relation(r).size();
    }
  }
  return g;
}

inline KnowledgeGraph build_graph(const AttackBundle& attack, const CapecCatalog& capec,
                                  const CweCatalog& cwe) {
  auto g = build_graph(attack.techniques, attack.tactics, attack.data_components, capec.patterns,
                       cwe.weaknesses);
  auto& meta = g.metadata();
  std::string newest;
  for (const auto* report : {&attack.report, &capec.report, &cwe.report}) {
    meta.sources[report->source] = SourceInfo{report->version, report->date};
    newest = std::max(newest, report->date);
  }
  meta.build_timestamp = newest;
  return g;
}

}  // namespace enumkg
