#pragma once

#include <sstream>
#include <string>
#include <string_view>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "enumkg/errors.hpp"

namespace enumkg::ingest::xml {

using boost::property_tree::ptree;

inline ptree read(std::string_view document, const std::string& source) {
  ptree tree;
  std::istringstream in{std::string(document)};
  try {
    boost::property_tree::read_xml(in, tree);
  } catch (const boost::property_tree::xml_parser_error& e) {
    throw ParseError(source, e.line(), "malformed XML: " + e.message());
  }
  return tree;
}

inline std::string attribute(const ptree& node, const char* name) {
  if (auto attrs = node.get_child_optional("<xmlattr>")) {
    if (auto v = attrs->get_optional<std::string>(name)) return *v;
  }
  return {};
}

inline std::string trimmed(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

inline std::string text(const ptree& node) { return trimmed(node.data()); }

// Visits every direct child named `tag` of the element at `path` (if any).
template <typename Fn>
void for_each_child(const ptree& parent, const char* path, const char* tag, Fn&& fn) {
  auto container = parent.get_child_optional(path);
  if (!container) return;
  for (const auto& [name, child] : *container) {
    if (name == tag) fn(child);
  }
}

// The single root element named `root`, or a ParseError.
inline const ptree& root_element(const ptree& doc, const char* root, const std::string& source) {
  auto it = doc.find(root);
  if (it == doc.not_found()) {
    throw ParseError(source, 0, std::string("missing root element <") + root + ">");
  }
  return it->second;
}

}  // namespace enumkg::ingest::xml
