#pragma once

#include <array>
#include <cctype>
#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "enumkg/errors.hpp"

namespace enumkg {

enum class Namespace {
  Attck,
  Tactic,
  Capec,
  Cwe,
  Cve,
  DataComponent,
  Restriction,
  Threat,
};

inline constexpr std::array kAllNamespaces = {
    Namespace::Attck, Namespace::Tactic,        Namespace::Capec,       Namespace::Cwe,
    Namespace::Cve,   Namespace::DataComponent, Namespace::Restriction, Namespace::Threat,
};

constexpr std::string_view to_string(Namespace ns) {
  switch (ns) {
    case Namespace::Attck: return "ATTCK";
    case Namespace::Tactic: return "TACTIC";
    case Namespace::Capec: return "CAPEC";
    case Namespace::Cwe: return "CWE";
    case Namespace::Cve: return "CVE";
    case Namespace::DataComponent: return "DATACOMPONENT";
    case Namespace::Restriction: return "RESTRICTION";
    case Namespace::Threat: return "THREAT";
  }
  return "?";
}

inline std::optional<Namespace> namespace_from_string(std::string_view s) {
  for (auto ns : kAllNamespaces) {
    if (to_string(ns) == s) return ns;
  }
  return std::nullopt;
}

namespace ids {

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

inline bool prefixed_number(std::string_view s, std::string_view prefix) {
  return s.starts_with(prefix) && all_digits(s.substr(prefix.size()));
}

}  // namespace detail

// [A-Za-z0-9_.-]+
inline bool is_valid_local(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-'))
      return false;
  }
  return true;
}

// T[0-9]+(\.[0-9]+)?
inline bool is_technique(std::string_view s) {
  if (!s.starts_with('T')) return false;
  s.remove_prefix(1);
  auto dot = s.find('.');
  if (dot == std::string_view::npos) return detail::all_digits(s);
  return detail::all_digits(s.substr(0, dot)) && detail::all_digits(s.substr(dot + 1));
}

inline bool is_tactic(std::string_view s) { return detail::prefixed_number(s, "TA"); }
inline bool is_capec(std::string_view s) { return detail::prefixed_number(s, "CAPEC-"); }
inline bool is_cwe(std::string_view s) { return detail::prefixed_number(s, "CWE-"); }

// CVE-[0-9]{4}-[0-9]+
inline bool is_cve(std::string_view s) {
  if (!s.starts_with("CVE-") || s.size() < 10) return false;
  auto year = s.substr(4, 4);
  return detail::all_digits(year) && s[8] == '-' && detail::all_digits(s.substr(9));
}

// Enumeration namespace implied by an identifier's shape, if any.
inline std::optional<Namespace> infer_enumeration(std::string_view s) {
  if (is_technique(s)) return Namespace::Attck;
  if (is_capec(s)) return Namespace::Capec;
  if (is_cwe(s)) return Namespace::Cwe;
  if (is_cve(s)) return Namespace::Cve;
  return std::nullopt;
}

}  // namespace ids

struct NodeId {
  Namespace ns{Namespace::Attck};
  std::string local;

  NodeId() = default;
  NodeId(Namespace n, std::string l) : ns(n), local(std::move(l)) {
    if (!ids::is_valid_local(local)) {
      throw InvalidArgument("invalid node id '" + local + "' in namespace " +
                            std::string(to_string(ns)));
    }
  }

  // "NAMESPACE:local"
  std::string str() const { return std::string(to_string(ns)) + ":" + local; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const NodeId& id) { return os << id.str(); }

inline NodeId technique_id(std::string local) { return {Namespace::Attck, std::move(local)}; }
inline NodeId threat_id(std::string local) { return {Namespace::Threat, std::move(local)}; }

// Accepts either the rendered "NAMESPACE:local" form or a bare enumeration id
// whose namespace is unambiguous (T1059, TA0002, CAPEC-242, CWE-284, CVE-2021-1234).
inline NodeId parse_node_id(std::string_view text) {
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto ns = namespace_from_string(text.substr(0, colon));
    if (!ns) throw InvalidArgument("unknown namespace in '" + std::string(text) + "'");
    return NodeId(*ns, std::string(text.substr(colon + 1)));
  }
  if (ids::is_tactic(text)) return NodeId(Namespace::Tactic, std::string(text));
  if (auto ns = ids::infer_enumeration(text)) return NodeId(*ns, std::string(text));
  throw InvalidArgument("cannot infer namespace of '" + std::string(text) +
                        "'; use NAMESPACE:local");
}

}  // namespace enumkg

template <>
struct std::hash<enumkg::NodeId> {
  std::size_t operator()(const enumkg::NodeId& id) const noexcept {
    return std::hash<std::string>{}(id.local) * 31 + static_cast<std::size_t>(id.ns);
  }
};
