#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gradord/algebra.hpp"
#include "gradord/fai.hpp"
#include "gradord/ineq.hpp"

namespace gradord {

/// mt19937_64 is fully specified by the standard, so a seed reproduces the
/// same stream everywhere. Distributions are avoided for the same reason.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform-ish in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool coin() { return (engine_() & 1U) != 0; }
  /// Stream for the i-th instance of a suite, independent of other instances.
  static Rng derive(std::uint64_t seed, std::uint64_t instance) {
    return Rng(seed * 0x9E3779B97F4A7C15ULL + instance * 0xBF58476D1CE4E5B9ULL + 1);
  }

 private:
  std::mt19937_64 engine_;
};

std::vector<Operation> random_operations(const Signature& signature, std::size_t size, Rng& rng);

/// An algebra with L-order: random operations and the least compatible
/// preorder above a random seed whose off-diagonal degrees stay below 1,
/// which keeps the result separable.
AlgebraPtr random_algebra(const Signature& signature, std::size_t size, const LatticePtr& lattice, Rng& rng);

/// The least compatible L-preorder above the order of `algebra` and a random
/// seed (degree 1 allowed, so blocks may merge).
LRelation random_compatible_preorder(const FuzzyOrderedAlgebra& algebra, Rng& rng);

/// A theory of which `algebra` is a model: random inequalities up to `depth`
/// with degrees at or below their degree in `algebra`.
Theory random_theory_for(const FuzzyOrderedAlgebra& algebra, const VariableSet& variables, std::size_t depth,
                         std::size_t entries, Rng& rng);

/// Same algebra with one diagonal order cell set to 0, so order-reflexive
/// fails at a known element.
AlgebraPtr corrupt_algebra(const FuzzyOrderedAlgebra& algebra, Rng& rng);

/// All operation tables of `arity` on `size` elements.
std::vector<Operation> all_operations(std::size_t size, std::size_t arity, std::size_t cap = kDefaultEnumerationCap);

/// All L-relations on `size` elements.
std::vector<LRelation> all_relations(const LatticePtr& lattice, std::size_t size,
                                     std::size_t cap = kDefaultEnumerationCap);

struct SuiteOptions {
  std::uint64_t seed = 1;
  /// Seeded instances for the sampled suites.
  std::size_t instances = 200;
  /// Largest universe for generated algebras.
  std::size_t max_size = 3;
  /// Largest chain length for the lattices used.
  std::size_t max_lattice = 3;
  std::size_t depth = 2;
  /// Inject a corrupted algebra as a negative control.
  bool corrupt = false;
  std::size_t cap = kDefaultEnumerationCap;
};

struct SuiteReport {
  std::string suite;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Descriptions of the first failures, each with its witness.
  std::vector<std::string> findings;

  bool passed() const noexcept { return failures == 0; }
};

/// Over every algebra on two elements with one binary operation and every
/// pair (≼, ≈) meeting the hypotheses: the order/equality conditions agree.
SuiteReport verify_thm2(const SuiteOptions& options);
/// Same universe: whenever ≼ is reflexive, ⊗-transitive, compatible and
/// separable, the derived ≈ meets every equality axiom.
SuiteReport verify_thm3(const SuiteOptions& options);
/// Subalgebras, quotients and binary self-products of models stay models.
SuiteReport verify_hsp(const SuiteOptions& options);
/// Free algebra order against class degrees, plus the sur-reflection.
SuiteReport verify_eq41(const SuiteOptions& options);
/// M_T is an algebra with L-order and agrees with the factor-algebra route.
SuiteReport verify_fai(const SuiteOptions& options);
/// Skeletons drop non-full degrees to 0; skeleton-closed classes have crisp
/// theories.
SuiteReport verify_skeleton_crisp(const SuiteOptions& options);

const std::vector<std::string>& suite_names();
/// Throws ParseError for an unknown suite.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options);

}  // namespace gradord
