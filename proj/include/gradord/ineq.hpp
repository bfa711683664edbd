#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gradord/algebra.hpp"
#include "gradord/term.hpp"

namespace gradord {

/// Default cap on enumerated valuations (and other enumerations).
inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// The atomic formula lhs ≼ rhs.
struct Inequality {
  Term lhs;
  Term rhs;

  friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// Parses "t <= t'".
Inequality parse_inequality(std::string_view text, const Signature& signature, const VariableSet& variables);
std::string render_inequality(const Inequality& ineq, const Signature& signature, const VariableSet& variables);

/// A graded theory: degrees prescribed to inequalities, 0 for every
/// inequality that is not listed. Only non-zero entries are stored.
class Theory {
 public:
  Theory(Signature signature, VariableSet variables, LatticePtr lattice);

  const Signature& signature() const noexcept { return signature_; }
  const VariableSet& variables() const noexcept { return variables_; }
  const LatticePtr& lattice() const noexcept { return lattice_; }
  const std::vector<std::pair<Inequality, Degree>>& entries() const noexcept { return entries_; }

  Degree degree(const Inequality& ineq) const;
  /// Sets the prescribed degree; setting 0 removes the entry.
  void set(Inequality ineq, Degree degree);

 private:
  Signature signature_;
  VariableSet variables_;
  LatticePtr lattice_;
  std::vector<std::pair<Inequality, Degree>> entries_;
};

/// ||t ≼ t'||_{M,v} = v̂(t) ≼ v̂(t').
Degree degree_at_valuation(const FuzzyOrderedAlgebra& algebra, std::span<const Element> valuation,
                           const Inequality& ineq);

/// An infimum together with a valuation (and class member) attaining it.
/// Valuations are indexed like the variable set; variables that do not
/// occur in the inequality are set to 0.
struct AttainedDegree {
  Degree degree;
  std::optional<std::size_t> member;
  std::vector<Element> valuation;
};

/// ||t ≼ t'||_M: the infimum over all valuations of the variables that occur
/// in the inequality. Throws EnumerationTooLarge beyond `cap` valuations.
AttainedDegree evaluate_in_algebra(const FuzzyOrderedAlgebra& algebra, const Inequality& ineq,
                                   std::size_t cap = kDefaultEnumerationCap);
Degree degree_in_algebra(const FuzzyOrderedAlgebra& algebra, const Inequality& ineq,
                         std::size_t cap = kDefaultEnumerationCap);

/// ||t ≼ t'||_K: infimum over the members of an explicit finite class; 1 for
/// the empty class.
AttainedDegree evaluate_in_class(std::span<const AlgebraPtr> members, const Inequality& ineq, const LatticePtr& lattice,
                                 std::size_t cap = kDefaultEnumerationCap);
Degree degree_in_class(std::span<const AlgebraPtr> members, const Inequality& ineq, const LatticePtr& lattice,
                       std::size_t cap = kDefaultEnumerationCap);

struct ModelCheck {
  bool holds = true;
  /// Index into Theory::entries() of the first violated entry.
  std::optional<std::size_t> entry;
  Degree required;
  AttainedDegree actual;

  explicit operator bool() const noexcept { return holds; }
};

/// Σ(t ≼ t') <= ||t ≼ t'||_M for every listed entry.
ModelCheck is_model(const FuzzyOrderedAlgebra& algebra, const Theory& theory,
                    std::size_t cap = kDefaultEnumerationCap);
std::vector<AlgebraPtr> mod_filter(const Theory& theory, std::span<const AlgebraPtr> candidates,
                                   std::size_t cap = kDefaultEnumerationCap);

/// One coordinate of the free algebra: a class member and a valuation of X
/// into it.
struct FreeComponent {
  std::size_t member = 0;
  std::vector<Element> valuation;
};

/// The K-free algebra over a finite X, realized as the subalgebra of the
/// product over all (member, valuation) coordinates generated by the
/// variables and constants. Each element is the value tuple of some term.
struct FreeAlgebra {
  AlgebraPtr algebra;
  std::vector<AlgebraPtr> members;
  VariableSet variables;
  std::vector<FreeComponent> components;
  std::vector<std::vector<Element>> tuples;
  /// The element denoted by each variable.
  std::vector<Element> generators;
  /// A smallest-found term denoting each element.
  std::vector<Term> representatives;

  /// The natural homomorphism from terms onto the free algebra.
  Element element_of(const Term& term) const;
  /// θ_K(t, t') read off the free algebra order.
  Degree theta(const Term& lhs, const Term& rhs) const;
};

/// Throws EnumerationTooLarge when the coordinates exceed
/// `enumeration_cap` or the carrier exceeds `universe_cap`;
/// EmptyUngenerated when X is empty and there are no constants.
FreeAlgebra free_algebra(std::span<const AlgebraPtr> members, const VariableSet& variables,
                         std::size_t universe_cap = kDefaultUniverseCap,
                         std::size_t enumeration_cap = kDefaultEnumerationCap);

struct FreeInclusion {
  Product product;
  Homomorphism inclusion;
};

/// The inclusion of the free algebra into the explicit product of its
/// coordinate algebras.
FreeInclusion free_algebra_inclusion(const FreeAlgebra& free, std::size_t cap = kDefaultUniverseCap);

/// The unique h* with v̂ = natural ; h*, for a valuation into a member of
/// the class. Throws TargetNotInClass when `target` is not a member.
Homomorphism sur_reflection(const FreeAlgebra& free, const AlgebraPtr& target, std::span<const Element> valuation);

/// Checks v̂(t) = h*(natural(t)) on all terms up to `depth`; the witness is
/// the index of the first failing term in enumeration order.
Check check_factorization(const FreeAlgebra& free, const Homomorphism& reflection, std::span<const Element> valuation,
                          std::size_t depth, std::size_t cap = kDefaultEnumerationCap);

/// The degrees ||t ≼ t'||_K for all terms up to `depth`, as a sparse theory.
Theory theory_of_class(std::span<const AlgebraPtr> members, const VariableSet& variables, std::size_t depth,
                       std::size_t cap = kDefaultEnumerationCap);

/// Every prescribed degree is 0 or 1.
bool is_crisp(const Theory& theory);

}  // namespace gradord
