#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "gradord/algebra.hpp"
#include "gradord/verify.hpp"
#include "oracles.hpp"

using namespace gradord;

namespace {

LRelation rel(const LatticePtr& L, std::size_t n, std::initializer_list<std::uint16_t> cells) {
  std::vector<Degree> ds;
  for (auto c : cells) ds.push_back(Degree{c});
  return LRelation(L, n, ds);
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

// Two elements, f = join of the chain a < b, ≼(b,a) = 1/2.
AlgebraPtr chain2(const LatticePtr& L) {
  return make_algebra(Signature::parse("f/2"), 2, std::vector<Operation>{{2, {0, 1, 1, 1}}},
                      rel(L, 2, {2, 2, 1, 2}), std::vector<std::string>{"a", "b"});
}

Homomorphism identity_on(const AlgebraPtr& A) {
  std::vector<Element> map(A->size());
  std::iota(map.begin(), map.end(), Element{0});
  return {A, A, map};
}

}  // namespace

TEST_CASE("trivial and discrete algebras are valid") {
  const auto L = make_chain(3, ChainKind::Lukasiewicz);
  const auto T = make_trivial(Signature::parse("f/2,c/0,g/1"), L);
  CHECK(T->size() == 1);
  CHECK(validate_algebra(*T).ok());

  // Equality on {a,b,c}: a ≈ b at 1/2, everything else crisp. ≼ := ≈.
  const auto eq = rel(L, 3, {2, 1, 0, 1, 2, 0, 0, 0, 2});
  const auto D = discrete_expansion(Signature::parse("g/1"), 3, {{1, {1, 0, 2}}}, eq);
  CHECK(validate_algebra(*D).ok());
  CHECK(D->equality() == eq);
}

TEST_CASE("inseparable order is reported") {
  const auto L = make_chain(2, ChainKind::Godel);
  FuzzyOrderedAlgebra A(Signature{}, 2, {}, LRelation::constant(L, 2, L->top()));
  const auto r = validate_algebra(A);
  REQUIRE(r.violates("separability"));
  CHECK(r.find("separability")->witness == std::vector<std::size_t>{0, 1});
}

TEST_CASE("malformed tables are rejected at construction") {
  const auto L = make_chain(2, ChainKind::Godel);
  const auto id = LRelation::identity(L, 2);
  CHECK(kind_of([&] { FuzzyOrderedAlgebra(Signature::parse("f/1"), 2, {{1, {0}}}, id); }) ==
        ErrorKind::MalformedTable);
  CHECK(kind_of([&] { FuzzyOrderedAlgebra(Signature::parse("f/1"), 2, {{1, {0, 2}}}, id); }) ==
        ErrorKind::MalformedTable);
  CHECK(kind_of([&] { FuzzyOrderedAlgebra(Signature::parse("f/1"), 2, {}, id); }) == ErrorKind::MalformedTable);
  CHECK(kind_of([&] { FuzzyOrderedAlgebra(Signature{}, 3, {}, id); }) == ErrorKind::MalformedTable);
}

TEST_CASE("each order axiom has its own witness") {
  const auto L = make_chain(3, ChainKind::Godel);
  const auto A = chain2(L);
  REQUIRE(validate_algebra(*A).ok());

  // f(a,a) = b but f(a,b) = a, while ≼(a,b) = 1 and ≼(b,a) = 1/2.
  FuzzyOrderedAlgebra swapped(A->signature(), 2, {{2, {1, 0, 0, 0}}}, A->order());
  const auto r = validate_algebra(swapped);
  CHECK(r.violates("order-compatible"));
  CHECK_FALSE(r.violates("order-reflexive"));

  FuzzyOrderedAlgebra irreflexive(A->signature(), 2, A->ops(), rel(L, 2, {2, 2, 1, 1}));
  CHECK(validate_algebra(irreflexive).find("order-reflexive")->witness == std::vector<std::size_t>{1});

  FuzzyOrderedAlgebra cyclic(Signature{}, 3, {}, rel(L, 3, {2, 2, 0, 0, 2, 2, 0, 0, 2}));
  CHECK(validate_algebra(cyclic).find("order-transitive")->witness == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("order and equality conditions agree") {
  const auto L = make_chain(3, ChainKind::Godel);
  const auto A = chain2(L);

  auto r = check_order_equality_equivalence(*A, A->equality());
  CHECK(r.hypotheses_hold);
  CHECK(r.all_true());

  // Identity for both.
  FuzzyOrderedAlgebra plain(Signature{}, 2, {}, LRelation::identity(L, 2));
  CHECK(check_order_equality_equivalence(plain, LRelation::identity(L, 2)).all_true());

  // ≈ raised above the symmetric interior: a ≈ b = 1/2 but ≼(a,b) ∧ ≼(b,a)
  // is 0 in this order, so every condition fails.
  FuzzyOrderedAlgebra loose(Signature{}, 2, {}, LRelation::identity(L, 2));
  auto eq = LRelation::identity(L, 2);
  eq.set(0, 1, Degree{1});
  eq.set(1, 0, Degree{1});
  r = check_order_equality_equivalence(loose, eq);
  CHECK(r.hypotheses_hold);
  CHECK(r.all_false());
  CHECK(r.agree());
}

TEST_CASE("generated subalgebras") {
  const auto L = make_chain(3, ChainKind::Godel);
  // f cycles a -> b -> a and fixes c.
  const auto A = make_algebra(Signature::parse("f/1"), 3, std::vector<Operation>{{1, {1, 0, 2}}},
                              LRelation::identity(L, 3));
  const std::vector<Element> seed{0};
  const auto S = generated_subalgebra(A, seed);
  CHECK(S.algebra->size() == 2);
  CHECK(S.inclusion.map == std::vector<Element>{0, 1});
  CHECK(check_embedding(S.inclusion));
  CHECK(validate_algebra(*S.algebra).ok());

  const std::vector<Element> all{0, 1, 2};
  CHECK(*generated_subalgebra(A, all).algebra == *A);

  CHECK(kind_of([&] { generated_subalgebra(A, std::vector<Element>{}); }) == ErrorKind::EmptyUngenerated);

  // A constant generates from nothing.
  const auto C = make_algebra(Signature::parse("f/1,c/0"), 3, std::vector<Operation>{{1, {1, 0, 2}}, {0, {2}}},
                              LRelation::identity(L, 3));
  CHECK(generated_subalgebra(C, std::vector<Element>{}).algebra->size() == 1);
}

TEST_CASE("direct products") {
  const auto L = make_chain(3, ChainKind::Godel);
  const auto A = chain2(L);
  const auto sig = A->signature();

  const auto empty = direct_product(std::span<const AlgebraPtr>{}, sig, L);
  CHECK(empty.algebra->size() == 1);
  CHECK(validate_algebra(*empty.algebra).ok());

  const std::vector<AlgebraPtr> one{A};
  const auto single = direct_product(one);
  CHECK(find_isomorphism(*single.algebra, *A).has_value());

  const std::vector<AlgebraPtr> two{A, A};
  const auto P = direct_product(two);
  REQUIRE(P.algebra->size() == 4);
  CHECK(validate_algebra(*P.algebra).ok());
  const std::vector<Element> ab{0, 1}, ba{1, 0};
  const Element x = P.index_of(ab), y = P.index_of(ba);
  CHECK(P.components(x) == ab);
  CHECK(P.algebra->order()(x, y) == L->meet(A->order()(0, 1), A->order()(1, 0)));
  for (const auto& pi : P.projections) CHECK(check_homomorphism(pi));

  const auto other = make_trivial(Signature::parse("g/1"), L);
  const std::vector<AlgebraPtr> mixed{A, other};
  CHECK(kind_of([&] { direct_product(mixed); }) == ErrorKind::SignatureMismatch);
  const std::vector<AlgebraPtr> many(13, A);
  CHECK(kind_of([&] { direct_product(many); }) == ErrorKind::ProductTooLarge);
  CHECK(kind_of([&] { direct_product(two, 3); }) == ErrorKind::ProductTooLarge);
}

TEST_CASE("product order is the pointwise infimum") {
  // Exhaustive over every pair of random factors with |A|·|B| <= 9.
  Rng rng(7);
  for (const auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz}) {
    const auto L = make_chain(3, kind);
    for (int round = 0; round < 20; ++round) {
      const auto sig = Signature::parse("f/1,g/2");
      const auto A = random_algebra(sig, 1 + rng.below(3), L, rng);
      const auto B = random_algebra(sig, 1 + rng.below(3), L, rng);
      const std::vector<AlgebraPtr> family{A, B};
      const auto P = direct_product(family);
      CHECK(validate_algebra(*P.algebra).ok());
      for (Element x = 0; x < P.algebra->size(); ++x)
        for (Element y = 0; y < P.algebra->size(); ++y) {
          const auto cx = P.components(x), cy = P.components(y);
          CHECK(P.algebra->order()(x, y) == L->meet(A->order()(cx[0], cy[0]), B->order()(cx[1], cy[1])));
        }
    }
  }
}

TEST_CASE("homomorphism checks") {
  const auto L = make_chain(3, ChainKind::Godel);
  const auto A = chain2(L);
  const auto id = identity_on(A);
  CHECK(check_homomorphism(id));
  CHECK(check_embedding(id));
  CHECK(is_surjective(id));
  CHECK(is_injective(id));
  CHECK(compose(id, id).map == id.map);

  // g(x) = 1 - x is not idempotent; sending everything to that element breaks
  // the operation equation.
  const auto G = make_algebra(Signature::parse("g/1"), 2, std::vector<Operation>{{1, {1, 0}}},
                              LRelation::identity(L, 2));
  const Homomorphism constant{G, G, {0, 0}};
  const auto c = check_homomorphism(constant);
  CHECK_FALSE(c);
  CHECK(c.detail == "operation");

  // Monotone but not order-preserving exactly: into an all-top target.
  const auto T = make_trivial(A->signature(), L);
  const Homomorphism collapse{A, T, {0, 0}};
  CHECK(check_homomorphism(collapse));
  CHECK_FALSE(check_embedding(collapse));
  CHECK(induced_preorder(collapse) == LRelation::constant(L, 2, L->top()));
  CHECK(induced_preorder(id) == A->order());
}

TEST_CASE("quotients") {
  const auto L = make_chain(3, ChainKind::Godel);
  const auto A = chain2(L);

  const auto same = quotient(A, A->order());
  CHECK(same.algebra->size() == 2);
  CHECK(find_isomorphism(*same.algebra, *A).has_value());

  const auto all = quotient(A, LRelation::constant(L, 2, L->top()));
  CHECK(all.algebra->size() == 1);
  CHECK(all.natural.map == std::vector<Element>{0, 0});

  // Below the order: not a compatible preorder.
  const auto bad = LRelation::identity(L, 2);
  CHECK(kind_of([&] { quotient(A, bad); }) == ErrorKind::IncompatiblePreorder);
}

TEST_CASE("quotient laws on random algebras") {
  Rng rng(11);
  const auto sig = Signature::parse("f/1,g/2");
  for (const auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz}) {
    const auto L = make_chain(3, kind);
    for (int round = 0; round < 60; ++round) {
      const auto A = random_algebra(sig, 1 + rng.below(4), L, rng);
      REQUIRE(validate_algebra(*A).ok());
      const auto Q = random_compatible_preorder(*A, rng);
      REQUIRE(is_compatible_preorder(Q, A->ops(), A->order()));
      const auto F = quotient(A, Q);
      CHECK(validate_algebra(*F.algebra).ok());
      CHECK(check_homomorphism(F.natural));
      CHECK(is_surjective(F.natural));
      // Blocks are the 1-cuts of Q ∩ Q⁻¹, and ≈ of the quotient is Q ∧ Q⁻¹.
      for (Element a = 0; a < A->size(); ++a)
        for (Element b = 0; b < A->size(); ++b) {
          const bool together = Q(a, b) == L->top() && Q(b, a) == L->top();
          CHECK((F.natural(a) == F.natural(b)) == together);
          CHECK(F.algebra->order()(F.natural(a), F.natural(b)) == Q(a, b));
          CHECK(F.algebra->equality()(F.natural(a), F.natural(b)) == L->meet(Q(a, b), Q(b, a)));
        }
      // Representatives are least in their block.
      for (Element a = 0; a < A->size(); ++a) CHECK(F.representatives[F.natural(a)] <= a);

      // θ of the natural map is Q again; factoring it yields the quotient.
      CHECK(induced_preorder(F.natural) == Q);
      const auto fz = factorize_through(F.natural);
      CHECK(check_embedding(fz.embedding));
      CHECK(is_surjective(fz.embedding));
      CHECK(find_isomorphism(*fz.quotient.algebra, *F.algebra).has_value());
      CHECK(compose(fz.quotient.natural, fz.embedding).map == F.natural.map);
    }
  }
}

TEST_CASE("factorization of a non-surjective embedding") {
  const auto L = make_chain(3, ChainKind::Godel);
  const auto A = make_algebra(Signature::parse("f/1"), 3, std::vector<Operation>{{1, {1, 0, 2}}},
                              rel(L, 3, {2, 1, 0, 1, 2, 0, 0, 0, 2}));
  REQUIRE(validate_algebra(*A).ok());
  const auto S = generated_subalgebra(A, std::vector<Element>{0});
  const auto fz = factorize_through(S.inclusion);
  CHECK(fz.quotient.algebra->size() == 2);
  CHECK(check_embedding(fz.embedding));
  CHECK_FALSE(is_surjective(fz.embedding));
  CHECK(compose(fz.quotient.natural, fz.embedding).map == S.inclusion.map);
}

TEST_CASE("induced preorders are compatible") {
  Rng rng(5);
  const auto sig = Signature::parse("f/1,g/2");
  const auto L = make_chain(3, ChainKind::Lukasiewicz);
  for (int round = 0; round < 60; ++round) {
    const auto A = random_algebra(sig, 1 + rng.below(3), L, rng);
    const auto F = quotient(A, random_compatible_preorder(*A, rng));
    // Natural maps and projections are the homomorphisms at hand.
    const auto theta = induced_preorder(F.natural);
    CHECK(oracle::literal_transitive(theta));
    CHECK(oracle::literal_compatible(theta, A->ops()));
    CHECK(A->order().contained_in(theta));
  }
}

TEST_CASE("skeleton and threshold") {
  const auto L = make_chain(3, ChainKind::Godel);
  const auto A = chain2(L);
  const auto S = skeleton(*A);
  CHECK(S->order() == LRelation::identity(L, 2));
  CHECK(S->ops() == A->ops());
  CHECK(validate_algebra(*S).ok());
  // A is an image of its skeleton under the identity.
  CHECK(check_homomorphism(Homomorphism{S, A, {0, 1}}));

  const auto T = make_trivial(A->signature(), L);
  CHECK(*skeleton(*T) == *T);

  const auto half = threshold(*A, Degree{1});
  CHECK(half->order() == rel(L, 2, {2, 2, 1, 2}));
  CHECK(validate_algebra(*half).ok());
  CHECK(kind_of([&] { threshold(*A, L->top()); }) == ErrorKind::BadThreshold);

  // With 1 only on the diagonal, c = 0 reproduces the skeleton.
  const auto D = make_algebra(A->signature(), 2, A->ops(), rel(L, 2, {2, 1, 0, 2}));
  CHECK(threshold(*D, L->bot())->order() == skeleton(*D)->order());
}

TEST_CASE("isomorphism search") {
  const auto L = make_chain(3, ChainKind::Lukasiewicz);
  Rng rng(3);
  const auto sig = Signature::parse("f/1,g/2");
  for (int round = 0; round < 30; ++round) {
    const auto A = random_algebra(sig, 1 + rng.below(4), L, rng);
    const std::size_t n = A->size();
    std::vector<Element> perm(n);
    std::iota(perm.begin(), perm.end(), Element{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    // B is A relabelled by perm.
    std::vector<Element> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = static_cast<Element>(i);
    std::vector<Operation> ops;
    for (const auto& op : A->ops()) {
      Operation p{op.arity, std::vector<Element>(op.table.size())};
      std::vector<Element> args(op.arity, 0);
      do {
        std::vector<Element> src;
        for (auto x : args) src.push_back(inv[x]);
        std::size_t index = 0;
        for (auto x : args) index = index * n + x;
        p.table[index] = perm[op.apply(src, n)];
      } while (next_tuple(args, n));
      ops.push_back(p);
    }
    LRelation order(L, n, L->bot());
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) order.set(perm[a], perm[b], A->order()(a, b));
    const auto B = make_algebra(sig, n, ops, order);
    const auto iso = find_isomorphism(*A, *B);
    REQUIRE(iso.has_value());
    CHECK(check_embedding(Homomorphism{A, B, *iso}));
  }

  const auto A = make_trivial(sig, L);
  const auto big = make_algebra(Signature{}, 11, std::vector<Operation>{}, LRelation::identity(L, 11));
  CHECK(kind_of([&] { find_isomorphism(*big, *big); }) == ErrorKind::EnumerationTooLarge);
  CHECK_FALSE(find_isomorphism(*A, *random_algebra(sig, 2, L, rng)).has_value());
}
