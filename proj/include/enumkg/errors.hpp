#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace enumkg {

// Base for every error the library raises. CLI exit codes are derived from
// the concrete type (see cli/commands.hpp).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input document (JSON/XML). `offset` is a byte offset for JSON
// and a line number for XML, as reported by the respective parser.
class ParseError : public Error {
public:
  ParseError(std::string source, std::size_t offset, const std::string& what)
      : Error(source + ": " + what), source_(std::move(source)), offset_(offset) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t offset() const noexcept { return offset_; }

private:
  std::string source_;
  std::size_t offset_;
};

// Two records claim the same node identity.
class ConsistencyError : public Error {
public:
  using Error::Error;
};

// Lookup of an identifier absent from the graph.
class NotFoundError : public Error {
public:
  explicit NotFoundError(std::string id)
      : Error("not found: " + id), id_(std::move(id)) {}

  const std::string& id() const noexcept { return id_; }

private:
  std::string id_;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// A `class#` / `restriction#` / `enum#` token that cannot form a label.
class LabelError : public Error {
public:
  LabelError(std::size_t position, std::string token, const std::string& what)
      : Error("malformed label '" + token + "' at offset " + std::to_string(position) +
              ": " + what),
        position_(position),
        token_(std::move(token)) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& token() const noexcept { return token_; }

private:
  std::size_t position_;
  std::string token_;
};

}  // namespace enumkg
