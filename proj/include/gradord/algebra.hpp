#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gradord/error.hpp"
#include "gradord/lattice.hpp"
#include "gradord/relation.hpp"
#include "gradord/signature.hpp"

namespace gradord {

/// Hard cap on universes built by constructions (products, free algebras).
inline constexpr std::size_t kDefaultUniverseCap = 4096;
/// Largest universe for which isomorphisms are searched exhaustively.
inline constexpr std::size_t kIsomorphismSearchLimit = 10;

/// A finite algebra with L-order ⟨M, ≼, F⟩. The L-equality is not stored:
/// it is always the symmetric interior of the order.
///
/// Construction only checks that the tables are total and in range; the
/// order axioms are checked by validate_algebra so that invalid structures
/// can still be represented and diagnosed.
class FuzzyOrderedAlgebra {
 public:
  FuzzyOrderedAlgebra(Signature signature, std::size_t size, std::vector<Operation> ops, LRelation order,
                      std::vector<std::string> names = {});

  const Signature& signature() const noexcept { return signature_; }
  std::size_t size() const noexcept { return size_; }
  const std::vector<Operation>& ops() const noexcept { return ops_; }
  const Operation& op(std::size_t k) const { return ops_[k]; }
  const LRelation& order() const noexcept { return order_; }
  const LatticePtr& lattice() const noexcept { return order_.lattice(); }
  const ResiduatedLattice& degrees() const noexcept { return order_.degrees(); }

  Element apply(std::size_t k, std::span<const Element> args) const { return ops_[k].apply(args, size_); }
  /// ≈ := ≼ ∩ ≽.
  LRelation equality() const { return symmetric_interior(order_); }

  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Element e) const { return names_[e]; }
  std::optional<Element> find_element(std::string_view name) const;

  friend bool operator==(const FuzzyOrderedAlgebra& a, const FuzzyOrderedAlgebra& b);

 private:
  Signature signature_;
  std::size_t size_ = 0;
  std::vector<Operation> ops_;
  LRelation order_;
  std::vector<std::string> names_;
};

using AlgebraPtr = std::shared_ptr<const FuzzyOrderedAlgebra>;

template <class... Args>
AlgebraPtr make_algebra(Args&&... args) {
  return std::make_shared<const FuzzyOrderedAlgebra>(std::forward<Args>(args)...);
}

/// A map between universes; whether it is a homomorphism is checked
/// separately by check_homomorphism.
struct Homomorphism {
  AlgebraPtr source;
  AlgebraPtr target;
  std::vector<Element> map;

  Element operator()(Element a) const { return map[a]; }
};

/// Reflexivity, ⊗-transitivity and operation compatibility of ≼ plus
/// separability; then the derived ≈ is checked against the L-equality axioms
/// and the two order/equality links. Axiom names:
///   order-reflexive, order-transitive, order-compatible, separability,
///   eq-separating-reflexive, eq-symmetric, eq-transitive, eq-compatible,
///   order-antisymmetric, order-eq-compatible
ValidationReport validate_algebra(const FuzzyOrderedAlgebra& algebra);

/// All of the above axioms, but against an explicitly supplied ≈ instead of
/// the derived one. Separability is not checked (it is part of
/// eq-separating-reflexive).
ValidationReport validate_with_equality(const FuzzyOrderedAlgebra& algebra, const LRelation& equality);

/// Five conditions that are equivalent for a structure with an explicit ≈
/// satisfying the L-equality axioms and a ≼ that is reflexive,
/// antisymmetric w.r.t. ≈, ⊗-transitive and compatible with operations:
///   [0] all order axioms incl. order-eq-compatible hold,
///   [1] order-eq-compatible holds,
///   [2] ≈ ⊆ ≼,
///   [3] ≈ = ≼ ∩ ≽,
///   [4] ≈ is the greatest symmetric relation contained in ≼.
struct EquivalenceReport {
  bool hypotheses_hold = false;
  std::string hypothesis_failure;
  std::array<bool, 5> conditions{};

  bool all_true() const;
  bool all_false() const;
  /// Vacuously true when the hypotheses fail (nothing is claimed then).
  bool agree() const { return !hypotheses_hold || all_true() || all_false(); }
};

EquivalenceReport check_order_equality_equivalence(const FuzzyOrderedAlgebra& algebra, const LRelation& equality);

/// One-element algebra with every operation constant and ≼ = 1.
AlgebraPtr make_trivial(const Signature& signature, const LatticePtr& lattice);

/// Expands an algebra with L-equality into one with L-order by taking ≼ := ≈.
AlgebraPtr discrete_expansion(const Signature& signature, std::size_t size, std::vector<Operation> ops,
                              const LRelation& equality, std::vector<std::string> names = {});

struct Subalgebra {
  AlgebraPtr algebra;
  Homomorphism inclusion;
};

/// Least subuniverse containing `seed`, with operations and order restricted.
/// Throws EmptyUngenerated for an empty seed without constants.
Subalgebra generated_subalgebra(const AlgebraPtr& algebra, std::span<const Element> seed);

struct Product {
  AlgebraPtr algebra;
  std::vector<Homomorphism> projections;
  std::vector<std::size_t> factor_sizes;

  /// Component tuple of a product element (row-major, first factor most
  /// significant).
  std::vector<Element> components(Element e) const;
  Element index_of(std::span<const Element> components) const;
};

/// Componentwise operations, order as the pointwise infimum of the factor
/// orders. The empty family yields the trivial algebra over `signature`.
Product direct_product(std::span<const AlgebraPtr> family, const Signature& signature, const LatticePtr& lattice,
                       std::size_t cap = kDefaultUniverseCap);
/// Non-empty family; signature and lattice are taken from the first factor.
Product direct_product(std::span<const AlgebraPtr> family, std::size_t cap = kDefaultUniverseCap);

/// Operation equation (detail "operation", witness (op, args...)) and order
/// monotonicity (detail "order", witness (a, b)).
Check check_homomorphism(const Homomorphism& h);
/// Homomorphism whose order degrees (and hence equality degrees) are
/// preserved exactly.
Check check_embedding(const Homomorphism& h);
bool is_surjective(const Homomorphism& h);
bool is_injective(const Homomorphism& h);
/// Diagrammatic composition: (first ; second)(a) = second(first(a)).
Homomorphism compose(const Homomorphism& first, const Homomorphism& second);

/// θ_h(a, b) = h(a) ≼ h(b), a compatible L-preorder on the source.
LRelation induced_preorder(const Homomorphism& h);

struct Quotient {
  AlgebraPtr algebra;
  Homomorphism natural;
  /// Least universe index of each block.
  std::vector<Element> representatives;
};

/// Factor algebra by a compatible L-preorder. Blocks are the 1-cut classes of
/// Q ∩ Q⁻¹ and [a] ≼ [b] = Q(a, b). Throws IncompatiblePreorder otherwise.
Quotient quotient(const AlgebraPtr& algebra, const LRelation& preorder);

struct Factorization {
  Quotient quotient;
  /// g([a]) = h(a), an embedding of the quotient by θ_h into the target.
  Homomorphism embedding;
};

Factorization factorize_through(const Homomorphism& h);

/// Same operations, identity L-relation as the order.
AlgebraPtr skeleton(const FuzzyOrderedAlgebra& algebra);
/// Degrees equal to 1 stay 1, every other degree becomes `c`. Throws
/// BadThreshold for c = 1.
AlgebraPtr threshold(const FuzzyOrderedAlgebra& algebra, Degree c);

/// Exhaustive search for an isomorphism (bijective embedding) a -> b.
/// Throws EnumerationTooLarge above `limit` elements.
std::optional<std::vector<Element>> find_isomorphism(const FuzzyOrderedAlgebra& a, const FuzzyOrderedAlgebra& b,
                                                     std::size_t limit = kIsomorphismSearchLimit);

}  // namespace gradord
