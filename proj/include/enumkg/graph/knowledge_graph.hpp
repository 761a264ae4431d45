#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "enumkg/errors.hpp"
#include "enumkg/node_id.hpp"
#include "enumkg/relation.hpp"

namespace enumkg {

enum class Relation : std::uint8_t {
  RefToAttck,
  RefToTactic,
  RefToCapec,
  IsRefToAttck,
  RefToCwe,
  IsRefToCapec,
  RefToCve,
  RefToCapecReasoned,
  RefToCweReasoned,
  RefToCveReasoned,
  RefToEnum,
  HasDataComponent,
  HasRestriction,
};

inline constexpr std::size_t kRelationCount = 13;

inline constexpr std::array<Relation, kRelationCount> kAllRelations = {
    Relation::RefToAttck,         Relation::RefToTactic,      Relation::RefToCapec,
    Relation::IsRefToAttck,       Relation::RefToCwe,         Relation::IsRefToCapec,
    Relation::RefToCve,           Relation::RefToCapecReasoned, Relation::RefToCweReasoned,
    Relation::RefToCveReasoned,   Relation::RefToEnum,        Relation::HasDataComponent,
    Relation::HasRestriction,
};

constexpr std::string_view to_string(Relation r) {
  switch (r) {
    case Relation::RefToAttck: return "refToATTCK";
    case Relation::RefToTactic: return "refToTactic";
    case Relation::RefToCapec: return "refToCAPEC";
    case Relation::IsRefToAttck: return "isRefToATTCK";
    case Relation::RefToCwe: return "refToCWE";
    case Relation::IsRefToCapec: return "isRefToCAPEC";
    case Relation::RefToCve: return "refToCVE";
    case Relation::RefToCapecReasoned: return "refToCAPECreasoned";
    case Relation::RefToCweReasoned: return "refToCWEreasoned";
    case Relation::RefToCveReasoned: return "refToCVEreasoned";
    case Relation::RefToEnum: return "refToEnum";
    case Relation::HasDataComponent: return "hasDataComponent";
    case Relation::HasRestriction: return "hasRestriction";
  }
  return "?";
}

inline std::optional<Relation> relation_from_string(std::string_view s) {
  for (auto r : kAllRelations) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

constexpr bool is_reasoned(Relation r) {
  return r == Relation::RefToCapecReasoned || r == Relation::RefToCweReasoned ||
         r == Relation::RefToCveReasoned || r == Relation::RefToEnum;
}

// Allowed (source, target) namespaces per relation.
struct Signature {
  Namespace from;
  std::uint32_t targets;  // bit per Namespace

  constexpr bool accepts(Namespace a, Namespace b) const {
    return a == from && (targets & (1u << static_cast<unsigned>(b))) != 0;
  }
};

constexpr std::uint32_t ns_bit(Namespace ns) { return 1u << static_cast<unsigned>(ns); }

constexpr Signature signature(Relation r) {
  using N = Namespace;
  switch (r) {
    case Relation::RefToAttck: return {N::Threat, ns_bit(N::Attck)};
    case Relation::RefToTactic: return {N::Attck, ns_bit(N::Tactic)};
    case Relation::RefToCapec: return {N::Attck, ns_bit(N::Capec)};
    case Relation::IsRefToAttck: return {N::Capec, ns_bit(N::Attck)};
    case Relation::RefToCwe: return {N::Capec, ns_bit(N::Cwe)};
    case Relation::IsRefToCapec: return {N::Cwe, ns_bit(N::Capec)};
    case Relation::RefToCve: return {N::Cwe, ns_bit(N::Cve)};
    case Relation::RefToCapecReasoned: return {N::Threat, ns_bit(N::Capec)};
    case Relation::RefToCweReasoned: return {N::Threat, ns_bit(N::Cwe)};
    case Relation::RefToCveReasoned: return {N::Threat, ns_bit(N::Cve)};
    case Relation::RefToEnum:
      return {N::Threat, ns_bit(N::Attck) | ns_bit(N::Capec) | ns_bit(N::Cwe) | ns_bit(N::Cve)};
    case Relation::HasDataComponent: return {N::Threat, ns_bit(N::DataComponent)};
    case Relation::HasRestriction: return {N::Threat, ns_bit(N::Restriction)};
  }
  return {N::Threat, 0};
}

enum class RestrictionCategory { Platform, PermissionsRequired, EffectivePermissions, ImpactType };

constexpr std::string_view to_string(RestrictionCategory c) {
  switch (c) {
    case RestrictionCategory::Platform: return "Platform";
    case RestrictionCategory::PermissionsRequired: return "PermissionsRequired";
    case RestrictionCategory::EffectivePermissions: return "EffectivePermissions";
    case RestrictionCategory::ImpactType: return "ImpactType";
  }
  return "?";
}

inline std::optional<RestrictionCategory> restriction_category_from_string(std::string_view s) {
  for (auto c : {RestrictionCategory::Platform, RestrictionCategory::PermissionsRequired,
                 RestrictionCategory::EffectivePermissions, RestrictionCategory::ImpactType}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

struct TechniqueNode {
  std::string stix_id;
  std::string name;
  std::set<std::string> platforms;
  std::set<std::string> permissions_required;
  std::set<std::string> effective_permissions;
  std::set<std::string> impact_types;
  bool revoked_or_deprecated = false;
  friend bool operator==(const TechniqueNode&, const TechniqueNode&) = default;
};

struct TacticNode {
  std::string name;
  std::string shortname;
  friend bool operator==(const TacticNode&, const TacticNode&) = default;
};

struct CapecNode {
  std::string name;
  std::string abstraction;
  std::string status;
  friend bool operator==(const CapecNode&, const CapecNode&) = default;
};

struct CweNode {
  std::string name;
  std::string abstraction;
  std::string status;
  friend bool operator==(const CweNode&, const CweNode&) = default;
};

struct CveNode {
  friend bool operator==(const CveNode&, const CveNode&) = default;
};

struct DataComponentNode {
  std::string source_name;
  std::string component_name;
  friend bool operator==(const DataComponentNode&, const DataComponentNode&) = default;
};

struct RestrictionNode {
  RestrictionCategory category{RestrictionCategory::Platform};
  std::string value;
  friend bool operator==(const RestrictionNode&, const RestrictionNode&) = default;
};

struct ThreatNode {
  friend bool operator==(const ThreatNode&, const ThreatNode&) = default;
};

using NodePayload = std::variant<TechniqueNode, TacticNode, CapecNode, CweNode, CveNode,
                                 DataComponentNode, RestrictionNode, ThreatNode>;

// The payload alternative a namespace must carry.
constexpr std::size_t payload_index(Namespace ns) {
  switch (ns) {
    case Namespace::Attck: return 0;
    case Namespace::Tactic: return 1;
    case Namespace::Capec: return 2;
    case Namespace::Cwe: return 3;
    case Namespace::Cve: return 4;
    case Namespace::DataComponent: return 5;
    case Namespace::Restriction: return 6;
    case Namespace::Threat: return 7;
  }
  return 0;
}

struct SourceInfo {
  std::string version;
  std::string date;
  friend bool operator==(const SourceInfo&, const SourceInfo&) = default;
};

struct GraphMetadata {
  std::map<std::string, SourceInfo> sources;  // "attack" | "capec" | "cwe"
  // Newest declared catalog date; content-derived so rebuilds stay byte-identical.
  std::string build_timestamp;
  bool closed = false;
  // Pair counts of the base relations as ingested, before symmetrization.
  std::map<std::string, std::size_t> base_pair_counts;
  // References naming ids absent from the graph, per relation.
  std::map<std::string, std::size_t> dropped_references;
  friend bool operator==(const GraphMetadata&, const GraphMetadata&) = default;
};

using PairRelation = BinaryRelation<NodeId>;

class KnowledgeGraph {
public:
  // Throws ConsistencyError when the id already exists.
  void add_node(const NodeId& id, NodePayload payload) {
    if (payload.index() != payload_index(id.ns)) {
      throw InvalidArgument("payload kind does not match namespace of " + id.str());
    }
    if (!nodes_.emplace(id, std::move(payload)).second) {
      throw ConsistencyError("duplicate node " + id.str());
    }
  }

  bool contains(const NodeId& id) const { return nodes_.count(id) > 0; }

  const NodePayload& node(const NodeId& id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw NotFoundError(id.str());
    return it->second;
  }

  template <typename T>
  const T& payload(const NodeId& id) const {
    return std::get<T>(node(id));
  }

  const std::map<NodeId, NodePayload>& nodes() const noexcept { return nodes_; }

  std::set<NodeId> nodes_in(Namespace ns) const {
    std::set<NodeId> out;
    for (const auto& [id, _] : nodes_) {
      if (id.ns == ns) out.insert(out.end(), id);
    }
    return out;
  }

  std::size_t count(Namespace ns) const {
    std::size_t n = 0;
    for (const auto& [id, _] : nodes_) n += id.ns == ns;
    return n;
  }

  // Inserts a pair after checking the signature, endpoint existence and the
  // no-self-loop rule.
  bool add_edge(Relation r, const NodeId& from, const NodeId& to) {
    check_pair(r, from, to);
    return relations_[index(r)].insert(from, to);
  }

  const PairRelation& relation(Relation r) const { return relations_[index(r)]; }

  void replace_relation(Relation r, PairRelation pairs) {
    for (const auto& [a, b] : pairs) check_pair(r, a, b);
    relations_[index(r)] = std::move(pairs);
  }

  GraphMetadata& metadata() noexcept { return metadata_; }
  const GraphMetadata& metadata() const noexcept { return metadata_; }

  bool closed() const noexcept { return metadata_.closed; }

  friend bool operator==(const KnowledgeGraph&, const KnowledgeGraph&) = default;

private:
  static constexpr std::size_t index(Relation r) { return static_cast<std::size_t>(r); }

  void check_pair(Relation r, const NodeId& from, const NodeId& to) const {
    if (!signature(r).accepts(from.ns, to.ns)) {
      throw InvalidArgument(std::string(to_string(r)) + " does not accept " + from.str() + " -> " +
                            to.str());
    }
    if (from == to) throw InvalidArgument("self-loop on " + from.str());
    if (!contains(from)) throw NotFoundError(from.str());
    if (!contains(to)) throw NotFoundError(to.str());
  }

  std::map<NodeId, NodePayload> nodes_;
  std::array<PairRelation, kRelationCount> relations_;
  GraphMetadata metadata_;
};

inline NodeId threat_of(const NodeId& technique) { return threat_id(technique.local); }
inline NodeId technique_of(const NodeId& threat) { return technique_id(threat.local); }

}  // namespace enumkg
