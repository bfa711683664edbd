#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gradord {

/// An element of a finite universe, identified by its index.
using Element = std::uint32_t;

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// A type: function symbols with finite arities, names unique.
class Signature {
 public:
  Signature() = default;
  /// Throws SignatureMismatch on duplicate names.
  explicit Signature(std::vector<Symbol> symbols);

  /// Parses "f/2,c/0" (whitespace tolerated, empty string = no symbols).
  static Signature parse(std::string_view text);
  std::string render() const;

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;
  bool has_constants() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Total operation table M^arity -> M, row-major with the first argument
/// most significant.
struct Operation {
  std::size_t arity = 0;
  std::vector<Element> table;

  Element apply(std::span<const Element> args, std::size_t universe) const {
    std::size_t index = 0;
    for (Element a : args) index = index * universe + a;
    return table[index];
  }

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// universe^arity, throwing ProductTooLarge beyond `cap`.
std::size_t table_size(std::size_t universe, std::size_t arity, std::size_t cap = SIZE_MAX);

/// Odometer over all argument tuples in {0..universe-1}^arity (row-major
/// order). Returns false after the last tuple.
bool next_tuple(std::vector<Element>& tuple, std::size_t universe);

}  // namespace gradord
