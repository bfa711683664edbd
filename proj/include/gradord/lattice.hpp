#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gradord/error.hpp"

namespace gradord {

/// A truth degree: a dense index into the carrier of its lattice. The index
/// carries no order of its own; use the owning lattice's `leq`.
struct Degree {
  std::uint16_t index = 0;

  friend bool operator==(Degree, Degree) = default;
};

enum class ChainKind { Godel, Lukasiewicz, Boolean };

/// Raw, unvalidated tables. All binary tables are row-major size*size.
struct LatticeTables {
  std::size_t size = 0;
  std::vector<bool> leq;
  std::vector<std::uint16_t> meet;
  std::vector<std::uint16_t> join;
  std::vector<std::uint16_t> otimes;
  std::vector<std::uint16_t> residuum;
  std::uint16_t bot = 0;
  std::uint16_t top = 0;
  std::vector<std::string> labels;
};

/// Checks every residuated-lattice axiom. Throws MalformedTable when the
/// tables have the wrong shape or contain out-of-range entries.
ValidationReport validate_lattice(const LatticeTables& tables);

/// Fills meet/join from `leq` and the residuum from `leq` and `otimes`,
/// leaving other fields untouched. Entries are arbitrary where the bound or
/// the residuum does not exist; validate_lattice reports those cases.
void derive_missing_tables(LatticeTables& tables, bool derive_meet_join, bool derive_residuum);

/// A finite complete residuated lattice. Instances only exist once their
/// tables have passed validate_lattice, so all lattice laws can be assumed.
class ResiduatedLattice {
 public:
  /// Throws InvalidStructure (with the report text) on invalid tables.
  static std::shared_ptr<const ResiduatedLattice> create(LatticeTables tables);

  std::size_t size() const noexcept { return tables_.size; }
  Degree bot() const noexcept { return Degree{tables_.bot}; }
  Degree top() const noexcept { return Degree{tables_.top}; }

  bool leq(Degree a, Degree b) const { return tables_.leq[at(a, b)]; }
  bool lt(Degree a, Degree b) const { return a != b && leq(a, b); }
  Degree meet(Degree a, Degree b) const { return Degree{tables_.meet[at(a, b)]}; }
  Degree join(Degree a, Degree b) const { return Degree{tables_.join[at(a, b)]}; }
  Degree otimes(Degree a, Degree b) const { return Degree{tables_.otimes[at(a, b)]}; }
  Degree residuum(Degree a, Degree b) const { return Degree{tables_.residuum[at(a, b)]}; }

  /// Infimum of a set of degrees; the empty infimum is top.
  Degree inf(std::span<const Degree> degrees) const;
  /// Supremum of a set of degrees; the empty supremum is bot.
  Degree sup(std::span<const Degree> degrees) const;

  Degree element(std::size_t index) const;
  std::vector<Degree> elements() const;
  bool is_chain() const;

  const std::string& label(Degree d) const { return tables_.labels[d.index]; }
  std::optional<Degree> find_label(std::string_view label) const;
  /// Like find_label but throws ParseError for unknown labels. Numeric
  /// spellings ("0.5" for "1/2") match numeric labels by value.
  Degree parse_label(std::string_view label) const;

  const LatticeTables& tables() const noexcept { return tables_; }
  /// Name used when serializing (e.g. "lukasiewicz:3"); empty for custom.
  const std::string& builtin_name() const noexcept { return builtin_; }

  friend bool operator==(const ResiduatedLattice& a, const ResiduatedLattice& b);

 private:
  explicit ResiduatedLattice(LatticeTables tables) : tables_(std::move(tables)) {}
  std::size_t at(Degree a, Degree b) const { return std::size_t{a.index} * tables_.size + b.index; }

  LatticeTables tables_;
  std::string builtin_;

  friend std::shared_ptr<const ResiduatedLattice> make_chain(std::size_t, ChainKind);
};

using LatticePtr = std::shared_ptr<const ResiduatedLattice>;

std::string_view to_string(ChainKind kind);
std::optional<ChainKind> parse_chain_kind(std::string_view name);

/// The finite chain {0, 1/(n-1), ..., 1} with the Gödel (minimum) or
/// Łukasiewicz t-norm; Boolean is only available for n = 2.
LatticePtr make_chain(std::size_t n, ChainKind kind);

Degree inf_set(const ResiduatedLattice& lattice, std::span<const Degree> degrees);
Degree sup_set(const ResiduatedLattice& lattice, std::span<const Degree> degrees);

/// True when both pointers denote the same lattice (identity or equal tables).
bool same_lattice(const LatticePtr& a, const LatticePtr& b);

}  // namespace gradord
