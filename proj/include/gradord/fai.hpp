#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gradord/algebra.hpp"
#include "gradord/ineq.hpp"

namespace gradord {

/// An L-set A: Y -> L, indexed like the attribute list.
struct LSet {
  std::vector<Degree> degrees;

  std::size_t size() const noexcept { return degrees.size(); }
  Degree operator[](std::size_t y) const { return degrees[y]; }

  friend bool operator==(const LSet&, const LSet&) = default;
};

LSet empty_lset(const ResiduatedLattice& lattice, std::size_t attributes);
LSet full_lset(const ResiduatedLattice& lattice, std::size_t attributes);
/// Attribute-wise join.
LSet lset_union(const ResiduatedLattice& lattice, const LSet& a, const LSet& b);
/// All of L^Y in lexicographic order (first attribute most significant).
/// Throws EnumerationTooLarge beyond `cap`.
std::vector<LSet> all_lsets(const ResiduatedLattice& lattice, std::size_t attributes,
                            std::size_t cap = kDefaultEnumerationCap);
/// Position of `a` in all_lsets.
std::size_t lset_index(const ResiduatedLattice& lattice, const LSet& a);

/// "{p:1, q:1/2}"; attributes at degree 0 are omitted.
std::string render_lset(const ResiduatedLattice& lattice, const std::vector<std::string>& attributes, const LSet& a);

/// A ⇒ B.
struct FAI {
  LSet antecedent;
  LSet consequent;

  friend bool operator==(const FAI&, const FAI&) = default;
};

/// Graded set of FAIs over attributes Y, 0 for every FAI not listed.
class FAITheory {
 public:
  FAITheory(std::vector<std::string> attributes, LatticePtr lattice);

  const std::vector<std::string>& attributes() const noexcept { return attributes_; }
  const LatticePtr& lattice() const noexcept { return lattice_; }
  const std::vector<std::pair<FAI, Degree>>& entries() const noexcept { return entries_; }

  Degree degree(const FAI& fai) const;
  /// Setting 0 removes the entry. Throws MixedAttributes on a size mismatch.
  void set(FAI fai, Degree degree);

 private:
  std::vector<std::string> attributes_;
  LatticePtr lattice_;
  std::vector<std::pair<FAI, Degree>> entries_;
};

/// S(A, B) = ⋀_y A(y) → B(y). Throws MixedAttributes.
Degree subsethood(const ResiduatedLattice& lattice, const LSet& a, const LSet& b);
/// ||A ⇒ B||_M = S(A, M) → S(B, M).
Degree fai_degree(const ResiduatedLattice& lattice, const LSet& model, const FAI& fai);

/// Mod(T): every M in L^Y with T(A ⇒ B) <= ||A ⇒ B||_M for all entries.
std::vector<LSet> enumerate_models(const FAITheory& theory, std::size_t cap = kDefaultEnumerationCap);
/// ||A ⇒ B||_T, the infimum over Mod(T).
Degree entailment_degree(const FAITheory& theory, const FAI& fai, std::size_t cap = kDefaultEnumerationCap);
Degree entailment_degree(const ResiduatedLattice& lattice, const std::vector<LSet>& models, const FAI& fai);

/// The L-relation ||A ⇒ B||_T on L^Y (indexed like all_lsets).
LRelation entailment_relation(const FAITheory& theory, std::size_t cap = kDefaultEnumerationCap);

/// Signature of M_T and of the base algebra.
Signature fai_signature();

/// ⟨L^Y, ≼, ∪, 0_Y, 1_Y⟩ with A ≼ B = S(B, A), elements as in all_lsets.
AlgebraPtr fai_base_algebra(const std::vector<std::string>& attributes, const LatticePtr& lattice,
                            std::size_t cap = kDefaultUniverseCap);

struct FAIQuotient {
  AlgebraPtr algebra;
  std::vector<LSet> lsets;
  /// Class of each L-set, indexed like `lsets`.
  std::vector<Element> class_of;
  /// Least L-set index in each class.
  std::vector<std::size_t> representatives;
};

/// M_T: classes of mutual full entailment, ∪ and the constants computed on
/// representatives, [A] ≼ [B] = ||A ⇒ B||_T.
FAIQuotient build_quotient_algebra(const FAITheory& theory, std::size_t cap = kDefaultUniverseCap);

struct RouteReport {
  /// Q = ||· ⇒ ·||_T is a compatible L-preorder over the base algebra.
  Check preorder;
  bool isomorphic = false;
  /// quotient(base, Q) -> M_T.
  std::optional<std::vector<Element>> isomorphism;
  /// Whether the block-to-class map was tried before a search.
  bool canonical = false;

  bool ok() const noexcept { return preorder.holds && isomorphic; }
};

/// Builds M_T a second way, as the factor algebra of the base algebra by Q,
/// and compares it with build_quotient_algebra.
RouteReport quotient_route_check(const FAITheory& theory, std::size_t cap = kDefaultUniverseCap);

}  // namespace gradord
