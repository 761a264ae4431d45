#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "enumkg/errors.hpp"
#include "enumkg/node_id.hpp"

namespace enumkg::modeler {

enum class LabelKind { DataComponent, Restriction, Enum };

constexpr std::string_view to_string(LabelKind k) {
  switch (k) {
    case LabelKind::DataComponent: return "class";
    case LabelKind::Restriction: return "restriction";
    case LabelKind::Enum: return "enum";
  }
  return "?";
}

struct Label {
  LabelKind kind{LabelKind::DataComponent};
  std::string raw;
  NodeId target;
  friend bool operator==(const Label&, const Label&) = default;
};

struct LabelScan {
  std::vector<Label> labels;
  std::vector<LabelError> malformed;
};

namespace detail {

inline bool is_id_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
}

inline std::string_view strip_prefix(std::string_view s, std::string_view prefix) {
  return s.starts_with(prefix) ? s.substr(prefix.size()) : s;
}

inline std::string_view strip_suffix(std::string_view s, std::string_view suffix) {
  return s.ends_with(suffix) ? s.substr(0, s.size() - suffix.size()) : s;
}

// nullopt: not a label token. Throws LabelError for a sigil that cannot form
// a label.
inline std::optional<Label> parse_token(std::string_view token, std::size_t offset) {
  LabelKind kind;
  std::string_view ident;
  if (token.starts_with("class#")) {
    kind = LabelKind::DataComponent;
    ident = token.substr(6);
  } else if (token.starts_with("restriction#")) {
    kind = LabelKind::Restriction;
    ident = token.substr(12);
  } else if (token.starts_with("enum#")) {
    kind = LabelKind::Enum;
    ident = token.substr(5);
  } else {
    return std::nullopt;
  }
  // Sentence punctuation directly after a label is not part of it.
  while (!ident.empty() && std::string_view(",;:).").find(ident.back()) != std::string_view::npos) {
    ident.remove_suffix(1);
  }
  const std::string raw = std::string(token.substr(0, token.find('#') + 1)) + std::string(ident);
  if (ident.empty()) throw LabelError(offset, std::string(token), "empty identifier");
  for (char c : ident) {
    if (!is_id_char(c)) return std::nullopt;
  }

  switch (kind) {
    case LabelKind::DataComponent: {
      auto name = strip_suffix(strip_prefix(ident, "HasDataComponent_"), "_DataComponent");
      if (name.empty()) throw LabelError(offset, raw, "empty data component name");
      return Label{kind, raw, NodeId(Namespace::DataComponent, std::string(name))};
    }
    case LabelKind::Restriction: {
      auto name = strip_prefix(ident, "HasRestriction_");
      if (name.empty()) throw LabelError(offset, raw, "empty restriction name");
      return Label{kind, raw, NodeId(Namespace::Restriction, std::string(name))};
    }
    case LabelKind::Enum: {
      auto ns = ids::infer_enumeration(ident);
      if (!ns) throw LabelError(offset, raw, "not an ATT&CK, CAPEC, CWE or CVE id");
      return Label{kind, raw, NodeId(*ns, std::string(ident))};
    }
  }
  return std::nullopt;
}

template <typename OnLabel, typename OnError>
void scan(std::string_view text, OnLabel&& on_label, OnError&& on_error) {
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) break;
    try {
      if (auto label = parse_token(text.substr(start, i - start), start)) on_label(std::move(*label));
    } catch (const LabelError& e) {
      on_error(e);
    }
  }
}

}  // namespace detail

// Labels in whitespace-separated `text`, in order of appearance. Tokens that
// are not labels are ignored. Throws LabelError (with the token's byte offset)
// for a sigil with an empty or unusable identifier.
inline std::vector<Label> extract_labels(std::string_view text) {
  std::vector<Label> out;
  detail::scan(
      text, [&](Label l) { out.push_back(std::move(l)); },
      [](const LabelError& e) { throw e; });
  return out;
}

// Like extract_labels, but collects malformed tokens instead of throwing.
inline LabelScan scan_labels(std::string_view text) {
  LabelScan out;
  detail::scan(
      text, [&](Label l) { out.labels.push_back(std::move(l)); },
      [&](const LabelError& e) { out.malformed.push_back(e); });
  return out;
}

}  // namespace enumkg::modeler
