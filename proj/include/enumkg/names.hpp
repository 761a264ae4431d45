#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "enumkg/errors.hpp"

namespace enumkg {

enum class NameStyle {
  Concatenated,  // data components: "Process Creation" -> "ProcessCreation"
  Underscored,   // restriction values: "Office 365" -> "Office_365"
};

// Turns a catalog display name into a node-id-safe token. Runs of characters
// outside [A-Za-z0-9] are dropped (Concatenated) or collapsed to a single '_'
// (Underscored); runs at either end are always dropped.
inline std::string canonicalize_name(std::string_view raw, NameStyle style) {
  std::string out;
  out.reserve(raw.size());
  bool pending_gap = false;
  for (char c : raw) {
    if (std::isalnum(static_cast<unsigned char>(c)) && static_cast<unsigned char>(c) < 0x80) {
      if (pending_gap && !out.empty() && style == NameStyle::Underscored) out.push_back('_');
      pending_gap = false;
      out.push_back(c);
    } else {
      pending_gap = true;
    }
  }
  if (out.empty()) {
    throw InvalidArgument("name '" + std::string(raw) + "' has no usable characters");
  }
  return out;
}

}  // namespace enumkg
