#include "gradord/error.hpp"

#include <sstream>

namespace gradord {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::InvalidStructure: return "InvalidStructure";
    case ErrorKind::UnsupportedKind: return "UnsupportedKind";
    case ErrorKind::MixedBase: return "MixedBase";
    case ErrorKind::MixedLattice: return "MixedLattice";
    case ErrorKind::EmptyUngenerated: return "EmptyUngenerated";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::ProductTooLarge: return "ProductTooLarge";
    case ErrorKind::IncompatiblePreorder: return "IncompatiblePreorder";
    case ErrorKind::BadThreshold: return "BadThreshold";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorKind::TargetNotInClass: return "TargetNotInClass";
    case ErrorKind::MixedAttributes: return "MixedAttributes";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::string format_tuple(const std::vector<std::size_t>& tuple) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out << ", ";
    out << tuple[i];
  }
  out << ')';
  return out.str();
}

bool ValidationReport::violates(std::string_view axiom) const { return find(axiom) != nullptr; }

const Violation* ValidationReport::find(std::string_view axiom) const {
  for (const auto& v : violations)
    if (v.axiom == axiom) return &v;
  return nullptr;
}

std::string ValidationReport::describe() const {
  if (ok()) return "valid";
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    const auto& v = violations[i];
    if (i) out << '\n';
    out << v.axiom << " violated at " << format_tuple(v.witness);
    if (!v.detail.empty()) out << ": " << v.detail;
  }
  return out.str();
}

}  // namespace gradord
