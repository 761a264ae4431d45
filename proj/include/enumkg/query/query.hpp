#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "enumkg/graph/knowledge_graph.hpp"

namespace enumkg::query {

struct Neighborhood {
  std::map<Relation, std::set<NodeId>> outgoing;  // node -> x
  std::map<Relation, std::set<NodeId>> incoming;  // x -> node

  bool empty() const { return outgoing.empty() && incoming.empty(); }
};

// Per relation, the targets of edges leaving `node` and the sources of edges
// entering it. Relations with no such edges are omitted.
inline Neighborhood neighbors(const KnowledgeGraph& g, const NodeId& node) {
  if (!g.contains(node)) throw NotFoundError(node.str());
  Neighborhood out;
  for (auto r : kAllRelations) {
    for (const auto& [a, b] : g.relation(r)) {
      if (a == node) out.outgoing[r].insert(b);
      if (b == node) out.incoming[r].insert(a);
    }
  }
  return out;
}

// Techniques whose threat reaches `target` (a CAPEC, CWE or CVE) through
// refToEnum.
inline std::set<NodeId> techniques_for(const KnowledgeGraph& g, const NodeId& target) {
  if (target.ns != Namespace::Capec && target.ns != Namespace::Cwe && target.ns != Namespace::Cve) {
    throw InvalidArgument("techniques_for expects a CAPEC, CWE or CVE id, got " + target.str());
  }
  if (!g.contains(target)) throw NotFoundError(target.str());
  std::set<NodeId> out;
  for (const auto& threat : g.relation(Relation::RefToEnum).preimage(target)) {
    out.insert(technique_of(threat));
  }
  return out;
}

struct ReferenceRow {
  std::string label;
  std::size_t triples = 0;
};

struct Involvement {
  std::string label;
  Namespace subject{};
  Relation relation{};
  std::size_t involved = 0;
  std::size_t total = 0;
  int percent = 0;
};

struct GraphStats {
  std::map<Namespace, std::size_t> node_counts;
  std::map<Relation, std::size_t> pair_counts;
  std::vector<ReferenceRow> references;
  std::vector<Involvement> involvement;
};

inline int rounded_percent(std::size_t part, std::size_t total) {
  if (total == 0) return 0;
  return static_cast<int>(std::lround(100.0 * static_cast<double>(part) / static_cast<double>(total)));
}

// Instance totals, directional and unified reference counts, and the share of
// items of each enumeration taking part in a cross-reference relation.
inline GraphStats stats(const KnowledgeGraph& g) {
  GraphStats s;
  for (auto ns : kAllNamespaces) s.node_counts[ns] = 0;
  for (const auto& [id, _] : g.nodes()) ++s.node_counts[id.ns];
  for (auto r : kAllRelations) s.pair_counts[r] = g.relation(r).size();

  auto base = [&](Relation r) {
    const auto& counts = g.metadata().base_pair_counts;
    auto it = counts.find(std::string(to_string(r)));
    return it == counts.end() ? g.relation(r).size() : it->second;
  };
  s.references = {
      {"ATT&CK -> CAPEC", base(Relation::RefToCapec)},
      {"CAPEC -> ATT&CK", base(Relation::IsRefToAttck)},
      {"ATT&CK <-> CAPEC (reasoned)", g.relation(Relation::RefToCapec).size()},
      {"CAPEC -> CWE", base(Relation::RefToCwe)},
      {"CWE -> CAPEC", base(Relation::IsRefToCapec)},
      {"CAPEC <-> CWE (reasoned)", g.relation(Relation::RefToCwe).size()},
      {"CWE -> CVE", base(Relation::RefToCve)},
  };

  auto involvement = [&](std::string label, Namespace ns, Relation r) {
    Involvement row{std::move(label), ns, r, g.relation(r).domain().size(), s.node_counts[ns], 0};
    row.percent = rounded_percent(row.involved, row.total);
    s.involvement.push_back(std::move(row));
  };
  involvement("ATT&CKs that have relations to CAPECs", Namespace::Attck, Relation::RefToCapec);
  involvement("CAPECs that have relations to ATT&CKs", Namespace::Capec, Relation::IsRefToAttck);
  involvement("CAPECs that have relations to CWEs", Namespace::Capec, Relation::RefToCwe);
  involvement("CWEs that have relations to CAPECs", Namespace::Cwe, Relation::IsRefToCapec);
  involvement("CWEs that have relations to CVEs", Namespace::Cwe, Relation::RefToCve);
  return s;
}

enum class HistogramAxis { DataComponent, Restriction };

struct HistogramRow {
  NodeId id;
  std::size_t threats = 0;
  friend bool operator==(const HistogramRow&, const HistogramRow&) = default;
};

// Distinct threats per data component (or restriction), descending by count,
// ties by id ascending. Nodes with no threats are listed with a zero count.
inline std::vector<HistogramRow> histogram(const KnowledgeGraph& g, HistogramAxis axis) {
  const auto ns = axis == HistogramAxis::DataComponent ? Namespace::DataComponent
                                                       : Namespace::Restriction;
  const auto rel = axis == HistogramAxis::DataComponent ? Relation::HasDataComponent
                                                        : Relation::HasRestriction;
  std::map<NodeId, std::size_t> counts;
  for (const auto& id : g.nodes_in(ns)) counts[id] = 0;
  for (const auto& [threat, target] : g.relation(rel)) ++counts[target];

  std::vector<HistogramRow> rows;
  rows.reserve(counts.size());
  for (const auto& [id, n] : counts) rows.push_back({id, n});
  std::stable_sort(rows.begin(), rows.end(), [](const HistogramRow& a, const HistogramRow& b) {
    return a.threats > b.threats;
  });
  return rows;
}

inline std::vector<HistogramRow> at_least(std::vector<HistogramRow> rows, std::size_t min_count) {
  std::erase_if(rows, [&](const HistogramRow& r) { return r.threats < min_count; });
  return rows;
}

inline std::set<NodeId> list_restrictions(const KnowledgeGraph& g) {
  return g.nodes_in(Namespace::Restriction);
}

inline std::set<NodeId> list_datacomponents(const KnowledgeGraph& g) {
  return g.nodes_in(Namespace::DataComponent);
}

// Enumeration items usable with `enum#` labels: every refToEnum target.
inline std::set<NodeId> list_enums(const KnowledgeGraph& g) {
  return g.relation(Relation::RefToEnum).range();
}

}  // namespace enumkg::query
