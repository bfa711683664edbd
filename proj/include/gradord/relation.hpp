#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gradord/error.hpp"
#include "gradord/lattice.hpp"
#include "gradord/signature.hpp"

namespace gradord {

/// A binary L-relation R: M x M -> L on a finite set M = {0..n-1}.
class LRelation {
 public:
  LRelation(LatticePtr lattice, std::size_t base_size, Degree fill);
  LRelation(LatticePtr lattice, std::size_t base_size, std::vector<Degree> cells);

  static LRelation identity(LatticePtr lattice, std::size_t base_size);
  static LRelation constant(LatticePtr lattice, std::size_t base_size, Degree value);

  std::size_t base_size() const noexcept { return n_; }
  const LatticePtr& lattice() const noexcept { return lattice_; }
  const ResiduatedLattice& degrees() const noexcept { return *lattice_; }

  Degree operator()(std::size_t a, std::size_t b) const { return cells_[a * n_ + b]; }
  void set(std::size_t a, std::size_t b, Degree d) { cells_[a * n_ + b] = d; }
  std::span<const Degree> cells() const noexcept { return cells_; }

  /// Pointwise R <= S (the fuzzy inclusion R ⊆ S).
  bool contained_in(const LRelation& other) const;

  friend bool operator==(const LRelation& a, const LRelation& b);

 private:
  LatticePtr lattice_;
  std::size_t n_ = 0;
  std::vector<Degree> cells_;
};

/// Throws MixedBase / MixedLattice unless both relations live on the same
/// base set and lattice.
void require_same_base(const LRelation& a, const LRelation& b);

LRelation inverse(const LRelation& r);
/// Pointwise infimum of a family; an empty family yields the all-top relation.
LRelation intersect(std::span<const LRelation> family, const LatticePtr& lattice, std::size_t base_size);
LRelation intersect(const LRelation& a, const LRelation& b);
/// R ∩ R⁻¹, the greatest symmetric relation contained in R.
LRelation symmetric_interior(const LRelation& r);

Check is_reflexive(const LRelation& r);
Check is_symmetric(const LRelation& r);
/// R(a,b) ⊗ R(b,c) <= R(a,c) for all a, b, c.
Check is_otimes_transitive(const LRelation& r);
/// R(a,b) = 1 iff a = b.
Check is_separating_reflexive(const LRelation& r);

/// R(a1,b1) ⊗ ... ⊗ R(an,bn) <= R(f(a1..an), f(b1..bn)) for every operation.
/// The witness is (operation index, a1..an, b1..bn).
Check is_compatible(const LRelation& r, std::span<const Operation> ops);

/// The three conditions defining an L-preorder compatible with an algebra
/// whose order is `base_order`: containment of the order, ⊗-transitivity,
/// operation compatibility. `detail` names the violated condition.
Check is_compatible_preorder(const LRelation& q, std::span<const Operation> ops, const LRelation& base_order);

/// Least ⊗-transitive, operation-compatible relation containing both `seed`
/// and `base_order`, computed as an inflationary fixpoint.
LRelation preorder_closure(std::span<const Operation> ops, const LRelation& seed, const LRelation& base_order);

}  // namespace gradord
