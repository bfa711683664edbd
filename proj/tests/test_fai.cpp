#include "doctest.h"
#include "gradord/fai.hpp"
#include "gradord/verify.hpp"
#include "oracles.hpp"

using namespace gradord;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

LSet lset(std::initializer_list<std::uint16_t> degrees) {
  LSet a;
  for (auto d : degrees) a.degrees.push_back(Degree{d});
  return a;
}

FAITheory random_theory(const std::vector<std::string>& Y, const LatticePtr& L, std::size_t entries, Rng& rng) {
  FAITheory T(Y, L);
  for (std::size_t i = 0; i < entries; ++i) {
    LSet a, b;
    for (std::size_t y = 0; y < Y.size(); ++y) {
      a.degrees.push_back(L->element(rng.below(L->size())));
      b.degrees.push_back(L->element(rng.below(L->size())));
    }
    T.set({a, b}, L->element(1 + rng.below(L->size() - 1)));
  }
  return T;
}

}  // namespace

TEST_CASE("l-sets") {
  const auto L = make_chain(3, ChainKind::Godel);
  const auto all = all_lsets(*L, 2);
  REQUIRE(all.size() == 9);
  CHECK(all.front() == empty_lset(*L, 2));
  CHECK(all.back() == full_lset(*L, 2));
  CHECK(all[1] == lset({0, 1}));
  CHECK(all[3] == lset({1, 0}));
  for (std::size_t i = 0; i < all.size(); ++i) CHECK(lset_index(*L, all[i]) == i);
  CHECK(lset_union(*L, lset({2, 0}), lset({1, 1})) == lset({2, 1}));
  CHECK(render_lset(*L, {"p", "q"}, lset({2, 1})) == "{p:1, q:1/2}");
  CHECK(render_lset(*L, {"p", "q"}, lset({0, 1})) == "{q:1/2}");
  CHECK(render_lset(*L, {"p", "q"}, lset({0, 0})) == "{}");
  CHECK(kind_of([&] { all_lsets(*L, 3, 26); }) == ErrorKind::EnumerationTooLarge);
}

TEST_CASE("subsethood") {
  const auto L = make_chain(3, ChainKind::Lukasiewicz);
  CHECK(subsethood(*L, lset({2}), lset({1})) == Degree{1});
  for (const auto& a : all_lsets(*L, 2)) {
    CHECK(subsethood(*L, a, a) == L->top());
    CHECK(subsethood(*L, empty_lset(*L, 2), a) == L->top());
  }
  CHECK(kind_of([&] { subsethood(*L, lset({1}), lset({1, 1})); }) == ErrorKind::MixedAttributes);
}

TEST_CASE("degree of an implication in a model") {
  const auto G = make_chain(3, ChainKind::Godel);
  CHECK(fai_degree(*G, lset({1}), {lset({1}), lset({2})}) == Degree{1});
  for (const auto& m : all_lsets(*G, 2)) {
    CHECK(fai_degree(*G, m, {lset({2, 1}), lset({2, 1})}) == G->top());
    // Nothing of A is in M, so the implication holds fully.
    if (m[0] == G->bot()) CHECK(fai_degree(*G, m, {lset({2, 0}), lset({2, 2})}) == G->top());
  }
}

TEST_CASE("models of a theory") {
  const auto L = make_chain(3, ChainKind::Lukasiewicz);
  const std::vector<std::string> Y{"p", "q"};
  FAITheory empty(Y, L);
  CHECK(enumerate_models(empty).size() == 9);

  FAITheory reflexive(Y, L);
  reflexive.set({lset({2, 1}), lset({2, 1})}, L->top());
  CHECK(enumerate_models(reflexive).size() == 9);

  FAITheory forcing(Y, L);
  forcing.set({empty_lset(*L, 2), lset({2, 0})}, L->top());
  const auto models = enumerate_models(forcing);
  CHECK(models.size() == 3);
  for (const auto& m : models) CHECK(m[0] == L->top());

  CHECK(kind_of([&] { forcing.set({lset({1}), lset({1})}, L->top()); }) == ErrorKind::MixedAttributes);
  CHECK(kind_of([] { FAITheory({"p", "p"}, make_chain(2, ChainKind::Godel)); }) == ErrorKind::ParseError);

  forcing.set({empty_lset(*L, 2), lset({2, 0})}, L->bot());
  CHECK(forcing.entries().empty());
}

TEST_CASE("entailment against the oracle") {
  Rng rng(17);
  const std::vector<std::string> Y{"p", "q"};
  for (const auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz}) {
    for (std::size_t n : {2, 3, 4}) {
      const auto L = make_chain(n, kind);
      const auto lsets = all_lsets(*L, 2);
      for (int round = 0; round < 15; ++round) {
        const auto T = random_theory(Y, L, rng.below(4), rng);
        const auto R = entailment_relation(T);
        for (std::size_t a = 0; a < lsets.size(); ++a)
          for (std::size_t b = 0; b < lsets.size(); ++b) {
            const FAI f{lsets[a], lsets[b]};
            CHECK(R(a, b) == oracle::fai_entailment(T, f));
            CHECK(entailment_degree(T, f) == R(a, b));
          }
      }
    }
  }
}

TEST_CASE("entailment laws") {
  Rng rng(19);
  const std::vector<std::string> Y{"p", "q"};
  for (const auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz}) {
    const auto L = make_chain(3, kind);
    const auto lsets = all_lsets(*L, 2);
    const std::size_t n = lsets.size();
    for (int round = 0; round < 20; ++round) {
      const auto T = random_theory(Y, L, 1 + rng.below(3), rng);
      const auto R = entailment_relation(T);
      for (std::size_t a = 0; a < n; ++a) {
        CHECK(R(a, a) == L->top());
        for (std::size_t b = 0; b < n; ++b) {
          // Anything implies its subsets fully.
          if (subsethood(*L, lsets[b], lsets[a]) == L->top()) CHECK(R(a, b) == L->top());
          for (std::size_t c = 0; c < n; ++c) CHECK(L->leq(L->otimes(R(a, b), R(b, c)), R(a, c)));
        }
      }
      // Unions of implications.
      for (int k = 0; k < 50; ++k) {
        const std::size_t a = rng.below(n), b = rng.below(n), c = rng.below(n), d = rng.below(n);
        const auto ac = lset_index(*L, lset_union(*L, lsets[a], lsets[c]));
        const auto bd = lset_index(*L, lset_union(*L, lsets[b], lsets[d]));
        CHECK(L->leq(L->otimes(R(a, b), R(c, d)), R(ac, bd)));
      }
      // Entries are entailed at least to their prescribed degree.
      for (const auto& [f, d] : T.entries()) CHECK(L->leq(d, entailment_degree(T, f)));
    }
  }
}

TEST_CASE("empty theory: entailment is the infimum over all l-sets") {
  const auto L = make_chain(3, ChainKind::Lukasiewicz);
  FAITheory T({"p"}, L);
  const auto all = all_lsets(*L, 1);
  for (const auto& a : all)
    for (const auto& b : all) {
      Degree d = L->top();
      for (const auto& m : all) d = L->meet(d, fai_degree(*L, m, {a, b}));
      CHECK(entailment_degree(T, {a, b}) == d);
    }
}

TEST_CASE("quotient algebra") {
  const auto L = make_chain(3, ChainKind::Godel);
  FAITheory empty({"p"}, L);
  const auto Q = build_quotient_algebra(empty);
  CHECK(Q.algebra->size() == 3);
  CHECK(validate_algebra(*Q.algebra).ok());
  CHECK(Q.algebra->signature() == fai_signature());

  FAITheory collapsing({"p", "q"}, L);
  collapsing.set({empty_lset(*L, 2), full_lset(*L, 2)}, L->top());
  CHECK(enumerate_models(collapsing) == std::vector<LSet>{full_lset(*L, 2)});
  const auto C = build_quotient_algebra(collapsing);
  CHECK(C.algebra->size() == 1);

  const auto base = fai_base_algebra({"p", "q"}, L);
  CHECK(base->size() == 9);
  CHECK(validate_algebra(*base).ok());
}

TEST_CASE("union is independent of representatives") {
  Rng rng(23);
  const std::vector<std::string> Y{"p", "q"};
  for (const auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz}) {
    const auto L = make_chain(3, kind);
    for (int round = 0; round < 30; ++round) {
      const auto T = random_theory(Y, L, rng.below(3), rng);
      const auto Q = build_quotient_algebra(T);
      CHECK(validate_algebra(*Q.algebra).ok());
      const auto cup = *fai_signature().find("cup");
      for (std::size_t a = 0; a < Q.lsets.size(); ++a)
        for (std::size_t b = 0; b < Q.lsets.size(); ++b) {
          const auto u = lset_index(*L, lset_union(*L, Q.lsets[a], Q.lsets[b]));
          const std::vector<Element> args{Q.class_of[a], Q.class_of[b]};
          CHECK(Q.algebra->apply(cup, args) == Q.class_of[u]);
          CHECK(Q.algebra->order()(Q.class_of[a], Q.class_of[b]) == entailment_degree(T, {Q.lsets[a], Q.lsets[b]}));
        }
    }
  }
}

TEST_CASE("factor-algebra route agrees") {
  const auto L2 = make_chain(2, ChainKind::Godel);
  CHECK(quotient_route_check(FAITheory({"p"}, L2)).ok());

  const auto L = make_chain(3, ChainKind::Lukasiewicz);
  FAITheory collapsing({"p", "q"}, L);
  collapsing.set({empty_lset(*L, 2), full_lset(*L, 2)}, L->top());
  CHECK(quotient_route_check(collapsing).ok());

  Rng rng(29);
  for (const auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz}) {
    const auto K = make_chain(3, kind);
    for (int round = 0; round < 20; ++round) {
      const auto T = random_theory({"p", "q"}, K, 1 + rng.below(2), rng);
      const auto r = quotient_route_check(T);
      CHECK(r.preorder.holds);
      CHECK(r.isomorphic);
      REQUIRE(r.isomorphism.has_value());
    }
  }
}
