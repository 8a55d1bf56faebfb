#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dtgraph {

enum class ErrorKind {
  Validation,
  Integrity,
  DuplicateId,
  DuplicateEdge,
  Parse,
  Conflict,
  UnsupportedSize,
  Overflow,
  UnknownType,
  TaxonomyCycle,
  UnknownParent,
  DuplicateType,
  AliasConflict,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library is an Error. Callers that need to
// distinguish failure modes switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// A schema or content violation inside a source document. record() is the
// zero-based index into the document's "records" array when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::optional<std::size_t> record = std::nullopt)
      : Error(ErrorKind::Parse, format(message, record)), record_(record) {}

  std::optional<std::size_t> record() const noexcept { return record_; }

 private:
  static std::string format(const std::string& message, std::optional<std::size_t> record) {
    if (!record) return message;
    return "record " + std::to_string(*record) + ": " + message;
  }

  std::optional<std::size_t> record_;
};

}  // namespace dtgraph
