#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gradord/algebra.hpp"
#include "gradord/signature.hpp"

namespace gradord {

/// A finite, ordered set of variable names.
class VariableSet {
 public:
  VariableSet() = default;
  explicit VariableSet(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find(std::string_view name) const;

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  std::vector<std::string> names_;
};

/// A term over a signature and a variable set. Variables and symbols are
/// referred to by index; rendering needs the signature and the variable set.
struct Term {
  enum class Kind { Variable, Apply };

  Kind kind = Kind::Variable;
  std::size_t index = 0;
  std::vector<Term> args;

  static Term variable(std::size_t index) { return Term{Kind::Variable, index, {}}; }
  static Term apply(std::size_t symbol, std::vector<Term> args) { return Term{Kind::Apply, symbol, std::move(args)}; }

  bool is_variable() const noexcept { return kind == Kind::Variable; }
  std::size_t depth() const;
  std::size_t node_count() const;
};

bool operator==(const Term& a, const Term& b);
/// Total structural order, used for deterministic containers.
bool operator<(const Term& a, const Term& b);

/// Grammar: term := ident | ident '(' term (',' term)* ')'.
/// A bare identifier names a variable of X if there is one, otherwise a
/// nullary symbol. Throws SyntaxError (with byte offset), UnknownSymbol or
/// ArityError.
Term parse_term(std::string_view text, const Signature& signature, const VariableSet& variables);
std::string render_term(const Term& term, const Signature& signature, const VariableSet& variables);

/// Identifiers of `text` that are not function symbols, in order of first
/// appearance.
VariableSet infer_variables(std::string_view text, const Signature& signature);

/// Marks the variables occurring in `term` (resizing `seen` as needed).
void collect_variables(const Term& term, std::vector<bool>& seen);

/// Value of `term` under `valuation` (indexed like the variable set):
/// the unique homomorphic extension of the valuation to terms.
Element eval_term(const FuzzyOrderedAlgebra& algebra, std::span<const Element> valuation, const Term& term);

/// All terms of depth <= `depth` (variables and constants have depth 0),
/// ordered by depth and then by construction. Throws EnumerationTooLarge if
/// more than `cap` terms would be produced.
std::vector<Term> enumerate_terms(const Signature& signature, std::size_t variable_count, std::size_t depth,
                                  std::size_t cap);

}  // namespace gradord
