#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gradord {

enum class ErrorKind {
  MalformedTable,
  InvalidStructure,
  UnsupportedKind,
  MixedBase,
  MixedLattice,
  EmptyUngenerated,
  SignatureMismatch,
  ProductTooLarge,
  IncompatiblePreorder,
  BadThreshold,
  SyntaxError,
  UnknownSymbol,
  ArityError,
  EnumerationTooLarge,
  TargetNotInClass,
  MixedAttributes,
  ParseError,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map them onto stable exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

/// One violated axiom together with the lexicographically first tuple that
/// witnesses the violation.
struct Violation {
  std::string axiom;
  std::vector<std::size_t> witness;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool violates(std::string_view axiom) const;
  const Violation* find(std::string_view axiom) const;
  std::string describe() const;
};

/// Outcome of a single predicate check. `witness` is empty when it holds.
struct Check {
  bool holds = true;
  std::vector<std::size_t> witness;
  std::string detail;

  explicit operator bool() const noexcept { return holds; }

  static Check pass() { return {}; }
  static Check fail(std::vector<std::size_t> witness, std::string detail = {}) {
    return Check{false, std::move(witness), std::move(detail)};
  }
};

std::string format_tuple(const std::vector<std::size_t>& tuple);

}  // namespace gradord
