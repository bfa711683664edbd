#include "doctest.h"
#include "gradord/lattice.hpp"
#include "gradord/verify.hpp"
#include "oracles.hpp"

using namespace gradord;

namespace {

Degree d(std::uint16_t i) { return Degree{i}; }

}  // namespace

TEST_CASE("builtin chains satisfy every axiom") {
  for (auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz})
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto L = make_chain(n, kind);
      CHECK(validate_lattice(L->tables()).ok());
      CHECK(L->is_chain());
      CHECK(L->bot() == d(0));
      CHECK(L->top() == d(static_cast<std::uint16_t>(n - 1)));
    }
  CHECK(validate_lattice(make_chain(2, ChainKind::Boolean)->tables()).ok());
}

TEST_CASE("boolean chain only exists on two elements") {
  CHECK_THROWS_AS(make_chain(3, ChainKind::Boolean), Error);
  try {
    make_chain(3, ChainKind::Boolean);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedKind);
  }
  CHECK_THROWS_AS(make_chain(1, ChainKind::Godel), Error);
}

TEST_CASE("lukasiewicz three-chain arithmetic") {
  const auto L = make_chain(3, ChainKind::Lukasiewicz);
  const Degree half = L->parse_label("1/2");
  CHECK(L->otimes(half, half) == L->bot());
  CHECK(L->residuum(L->top(), half) == half);
  CHECK(L->residuum(half, L->bot()) == half);
  CHECK(L->label(half) == "1/2");
}

TEST_CASE("godel residuum is top on the order, b otherwise") {
  const auto L = make_chain(4, ChainKind::Godel);
  for (Degree a : L->elements())
    for (Degree b : L->elements()) CHECK(L->residuum(a, b) == (L->leq(a, b) ? L->top() : b));
}

TEST_CASE("residuum agrees with the scanning oracle") {
  for (auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz})
    for (std::size_t n = 2; n <= 6; ++n) {
      const auto L = make_chain(n, kind);
      for (Degree a : L->elements())
        for (Degree b : L->elements()) {
          const auto expected = oracle::residuum(*L, a, b);
          REQUIRE(expected.has_value());
          CHECK(L->residuum(a, b) == *expected);
        }
    }
}

TEST_CASE("labels are reduced fractions and numeric spellings resolve") {
  const auto L = make_chain(5, ChainKind::Lukasiewicz);
  CHECK(L->label(d(2)) == "1/2");
  CHECK(L->label(d(3)) == "3/4");
  CHECK(L->parse_label("0.5") == d(2));
  CHECK(L->parse_label("0.75") == d(3));
  CHECK(L->parse_label("1") == L->top());
  CHECK(L->parse_label("2/4") == d(2));
  CHECK_THROWS_AS(L->parse_label("1/3"), Error);
  CHECK(L->builtin_name() == "lukasiewicz:5");
}

TEST_CASE("swapped product cell breaks commutativity at (0, 1/2)") {
  auto t = make_chain(3, ChainKind::Godel)->tables();
  t.otimes[0 * 3 + 1] = 1;
  const auto report = validate_lattice(t);
  REQUIRE(report.violates("otimes-commutative"));
  CHECK(report.find("otimes-commutative")->witness == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(ResiduatedLattice::create(t), Error);
}

TEST_CASE("shape errors are malformed tables") {
  auto t = make_chain(3, ChainKind::Godel)->tables();
  auto short_meet = t;
  short_meet.meet.pop_back();
  auto out_of_range = t;
  out_of_range.join[4] = 7;
  auto bad_top = t;
  bad_top.top = 3;
  auto dup = t;
  dup.labels[1] = "0";
  LatticeTables empty;
  for (const auto* bad : {&short_meet, &out_of_range, &bad_top, &dup, &empty}) {
    try {
      validate_lattice(*bad);
      FAIL("expected MalformedTable");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MalformedTable);
    }
  }
}

TEST_CASE("meet, join and residuum can be derived") {
  LatticeTables t;
  t.size = 4;
  t.labels = {"0", "a", "b", "1"};
  t.bot = 0;
  t.top = 3;
  const bool leq[16] = {1, 1, 1, 1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1};
  t.leq.assign(leq, leq + 16);
  t.otimes = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3};
  derive_missing_tables(t, true, true);
  const auto report = validate_lattice(t);
  CHECK(report.ok());
  const auto L = ResiduatedLattice::create(t);
  CHECK_FALSE(L->is_chain());
  CHECK(L->meet(d(1), d(2)) == d(0));
  CHECK(L->join(d(1), d(2)) == d(3));
  CHECK(L->residuum(d(1), d(2)) == d(2));
  CHECK(L->builtin_name().empty());
}

TEST_CASE("inf and sup of sets, empty cases") {
  const auto L = make_chain(4, ChainKind::Lukasiewicz);
  std::vector<Degree> none;
  CHECK(L->inf(none) == L->top());
  CHECK(L->sup(none) == L->bot());
  std::vector<Degree> some{d(2), d(1), d(3)};
  CHECK(L->inf(some) == d(1));
  CHECK(L->sup(some) == d(3));
}

TEST_CASE("property: residuated laws hold on every builtin chain") {
  for (auto kind : {ChainKind::Godel, ChainKind::Lukasiewicz})
    for (std::size_t n = 2; n <= 7; ++n) {
      const auto L = make_chain(n, kind);
      for (Degree a : L->elements())
        for (Degree b : L->elements())
          for (Degree c : L->elements()) {
            CHECK(L->otimes(L->otimes(a, b), c) == L->otimes(a, L->otimes(b, c)));
            CHECK(L->leq(L->otimes(a, b), c) == L->leq(a, L->residuum(b, c)));
            // a ⊗ (a → b) <= b
            CHECK(L->leq(L->otimes(a, L->residuum(a, b)), b));
          }
    }
}

TEST_CASE("property: seeded single-cell corruptions are caught with true witnesses") {
  Rng rng(42);
  std::size_t caught = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng.below(6);
    const auto kind = rng.coin() ? ChainKind::Godel : ChainKind::Lukasiewicz;
    auto t = make_chain(n, kind)->tables();
    const std::size_t cell = rng.below(n * n);
    const auto old = t.otimes[cell];
    t.otimes[cell] = static_cast<std::uint16_t>((old + 1 + rng.below(n - 1)) % n);
    const auto report = validate_lattice(t);
    REQUIRE_FALSE(report.ok());
    ++caught;
    for (const auto& v : report.violations) CHECK_MESSAGE(oracle::lattice_witness_breaks(t, v), v.axiom);
  }
  CHECK(caught == 200);
}
