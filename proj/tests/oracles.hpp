#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the data types, and favour the literal definitions over
// speed.

#include <array>
#include <functional>
#include <vector>

#include "gradord/algebra.hpp"
#include "gradord/fai.hpp"
#include "gradord/ineq.hpp"

namespace oracle {

using namespace gradord;

// Largest c with a ⊗ c <= b, found by scanning L; nullopt if not unique.
inline std::optional<Degree> residuum(const ResiduatedLattice& L, Degree a, Degree b) {
  std::vector<Degree> candidates;
  for (Degree c : L.elements())
    if (L.leq(L.otimes(a, c), b)) candidates.push_back(c);
  for (Degree c : candidates) {
    bool greatest = true;
    for (Degree d : candidates) greatest = greatest && L.leq(d, c);
    if (greatest) return c;
  }
  return std::nullopt;
}

// Calls `visit` for every map {0..n-1}^cells -> vector, odometer order.
inline void each_tuple(std::size_t cells, std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> t(cells, 0);
  while (true) {
    visit(t);
    std::size_t i = cells;
    while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
    if (i == 0) return;
  }
}

inline bool literal_transitive(const LRelation& r) {
  const auto& L = r.degrees();
  const std::size_t n = r.base_size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (!L.leq(L.otimes(r(a, b), r(b, c)), r(a, c))) return false;
  return true;
}

// Unary and binary operations only.
inline bool literal_compatible(const LRelation& r, const std::vector<Operation>& ops) {
  const auto& L = r.degrees();
  const std::size_t n = r.base_size();
  for (const auto& op : ops) {
    if (op.arity == 1) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (!L.leq(r(a, b), r(op.table[a], op.table[b]))) return false;
    } else if (op.arity == 2) {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            for (std::size_t d = 0; d < n; ++d)
              if (!L.leq(L.otimes(r(a, b), r(c, d)), r(op.table[a * n + c], op.table[b * n + d]))) return false;
    }
  }
  return true;
}

// The five order/equality conditions for an explicit ≈ (e) and ≼ (o),
// each written out literally. Index 0 is the full definition.
struct OrderEqualityConditions {
  bool hypotheses = false;
  std::array<bool, 5> holds{};
};

inline OrderEqualityConditions order_equality_conditions(const LRelation& e, const LRelation& o,
                                                         const std::vector<Operation>& ops) {
  const auto& L = e.degrees();
  const std::size_t n = e.base_size();
  OrderEqualityConditions out;

  bool eq_ok = literal_transitive(e) && literal_compatible(e, ops);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      eq_ok = eq_ok && ((e(a, b) == L.top()) == (a == b));
      eq_ok = eq_ok && e(a, b) == e(b, a);
    }
  bool ord_ok = literal_transitive(o) && literal_compatible(o, ops);
  for (std::size_t a = 0; a < n; ++a) {
    ord_ok = ord_ok && o(a, a) == L.top();
    for (std::size_t b = 0; b < n; ++b) ord_ok = ord_ok && L.leq(L.meet(o(a, b), o(b, a)), e(a, b));
  }
  out.hypotheses = eq_ok && ord_ok;

  bool c2 = true, c3 = true, c4 = true;
  for (std::size_t a1 = 0; a1 < n; ++a1)
    for (std::size_t a2 = 0; a2 < n; ++a2) {
      c3 = c3 && L.leq(e(a1, a2), o(a1, a2));
      c4 = c4 && e(a1, a2) == L.meet(o(a1, a2), o(a2, a1));
      for (std::size_t b1 = 0; b1 < n; ++b1)
        for (std::size_t b2 = 0; b2 < n; ++b2)
          c2 = c2 && L.leq(L.otimes(e(a1, b1), e(a2, b2)), L.residuum(o(a1, a2), o(b1, b2)));
    }
  // Greatest symmetric relation below o, by enumerating every candidate.
  bool e_below = true, e_greatest = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) e_below = e_below && e(a, b) == e(b, a) && L.leq(e(a, b), o(a, b));
  each_tuple(n * n, L.size(), [&](const std::vector<std::size_t>& cells) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Degree s = L.element(cells[a * n + b]);
        if (cells[a * n + b] != cells[b * n + a] || !L.leq(s, o(a, b))) return;
      }
    for (std::size_t i = 0; i < n * n; ++i)
      e_greatest = e_greatest && L.leq(L.element(cells[i]), e.cells()[i]);
  });
  out.holds = {out.hypotheses && c2, c2, c3, c4, e_below && e_greatest};
  return out;
}

// Intersection of every compatible L-preorder containing seed and base.
inline LRelation least_compatible_preorder(const LatticePtr& lattice, const std::vector<Operation>& ops,
                                           const LRelation& seed, const LRelation& base) {
  const auto& L = *lattice;
  const std::size_t n = seed.base_size();
  std::vector<Degree> meet(n * n, L.top());
  each_tuple(n * n, L.size(), [&](const std::vector<std::size_t>& cells) {
    std::vector<Degree> degrees;
    for (auto c : cells) degrees.push_back(L.element(c));
    LRelation q(lattice, n, degrees);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!L.leq(seed(a, b), q(a, b)) || !L.leq(base(a, b), q(a, b))) return;
    if (!literal_transitive(q) || !literal_compatible(q, ops)) return;
    for (std::size_t i = 0; i < n * n; ++i) meet[i] = L.meet(meet[i], degrees[i]);
  });
  return LRelation(lattice, n, meet);
}

// Value of a term by structural recursion over the raw tables.
inline Element evaluate(const FuzzyOrderedAlgebra& A, const std::vector<std::size_t>& valuation, const Term& t) {
  if (t.is_variable()) return static_cast<Element>(valuation[t.index]);
  std::size_t index = 0;
  for (const auto& a : t.args) index = index * A.size() + evaluate(A, valuation, a);
  return A.op(t.index).table[index];
}

// ||lhs ≼ rhs||_A over every valuation of all `variables` (occurring or not).
inline Degree inequality_degree(const FuzzyOrderedAlgebra& A, std::size_t variables, const Term& lhs,
                                const Term& rhs) {
  const auto& L = A.degrees();
  Degree d = L.top();
  each_tuple(variables, A.size(), [&](const std::vector<std::size_t>& v) {
    d = L.meet(d, A.order()(evaluate(A, v, lhs), evaluate(A, v, rhs)));
  });
  return d;
}

// ⋀_M (S(A,M) → S(B,M)) over the models of the theory, all written out.
inline Degree fai_entailment(const FAITheory& T, const FAI& query) {
  const auto& L = *T.lattice();
  const std::size_t ny = T.attributes().size();
  auto subset = [&](const LSet& a, const LSet& b) {
    Degree d = L.top();
    for (std::size_t y = 0; y < ny; ++y) d = L.meet(d, L.residuum(a[y], b[y]));
    return d;
  };
  auto degree_in = [&](const LSet& m, const FAI& f) {
    return L.residuum(subset(f.antecedent, m), subset(f.consequent, m));
  };
  Degree out = L.top();
  each_tuple(ny, L.size(), [&](const std::vector<std::size_t>& cells) {
    LSet m;
    for (auto c : cells) m.degrees.push_back(L.element(c));
    for (const auto& [f, d] : T.entries())
      if (!L.leq(d, degree_in(m, f))) return;
    out = L.meet(out, degree_in(m, query));
  });
  return out;
}

// Re-checks a reported lattice violation on the raw tables: true when the
// witness really breaks the named axiom.
inline bool lattice_witness_breaks(const LatticeTables& t, const Violation& v) {
  const std::size_t n = t.size;
  const auto& w = v.witness;
  auto leq = [&](std::size_t a, std::size_t b) { return static_cast<bool>(t.leq[a * n + b]); };
  auto ot = [&](std::size_t a, std::size_t b) -> std::size_t { return t.otimes[a * n + b]; };
  auto in_range = [&](std::size_t k) {
    if (w.size() != k) return false;
    for (auto x : w)
      if (x >= n) return false;
    return true;
  };
  const auto& ax = v.axiom;
  if (ax == "leq-reflexive") return in_range(1) && !leq(w[0], w[0]);
  if (ax == "leq-antisymmetric") return in_range(2) && w[0] != w[1] && leq(w[0], w[1]) && leq(w[1], w[0]);
  if (ax == "leq-transitive") return in_range(3) && leq(w[0], w[1]) && leq(w[1], w[2]) && !leq(w[0], w[2]);
  if (ax == "bot-least") return in_range(1) && !leq(t.bot, w[0]);
  if (ax == "top-greatest") return in_range(1) && !leq(w[0], t.top);
  if (ax == "meet-glb" || ax == "join-lub") {
    const bool meet = ax == "meet-glb";
    if (w.size() < 2 || w.size() > 3 || w[0] >= n || w[1] >= n) return false;
    const std::size_t m = (meet ? t.meet : t.join)[w[0] * n + w[1]];
    if (w.size() == 2) return meet ? (!leq(m, w[0]) || !leq(m, w[1])) : (!leq(w[0], m) || !leq(w[1], m));
    if (w[2] >= n) return false;
    return meet ? (leq(w[2], w[0]) && leq(w[2], w[1]) && !leq(w[2], m))
                : (leq(w[0], w[2]) && leq(w[1], w[2]) && !leq(m, w[2]));
  }
  if (ax == "otimes-commutative") return in_range(2) && ot(w[0], w[1]) != ot(w[1], w[0]);
  if (ax == "otimes-associative") return in_range(3) && ot(ot(w[0], w[1]), w[2]) != ot(w[0], ot(w[1], w[2]));
  if (ax == "otimes-unit") return in_range(1) && (ot(w[0], t.top) != w[0] || ot(t.top, w[0]) != w[0]);
  if (ax == "adjointness")
    return in_range(3) && leq(ot(w[0], w[1]), w[2]) != leq(w[0], t.residuum[w[1] * n + w[2]]);
  return false;
}

}  // namespace oracle
