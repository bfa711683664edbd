#include "gradord/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace gradord {

namespace {

std::vector<std::size_t> op_witness(std::size_t k, std::span<const Element> as, std::span<const Element> bs = {}) {
  std::vector<std::size_t> w{k};
  w.insert(w.end(), as.begin(), as.end());
  w.insert(w.end(), bs.begin(), bs.end());
  return w;
}

void require_compatible_types(const FuzzyOrderedAlgebra& a, const FuzzyOrderedAlgebra& b) {
  if (!(a.signature() == b.signature()))
    throw Error(ErrorKind::SignatureMismatch, "signatures " + a.signature().render() + " and " + b.signature().render());
  if (!same_lattice(a.lattice(), b.lattice())) throw Error(ErrorKind::MixedLattice, "algebras over different lattices");
}

// Checks shared by validate_algebra and validate_with_equality.
void check_equality_axioms(const FuzzyOrderedAlgebra& A, const LRelation& eq, ValidationReport& report) {
  const auto& L = A.degrees();
  const std::size_t n = A.size();
  const auto& ord = A.order();
  auto add = [&report](const char* axiom, const Check& c) {
    if (!c) report.violations.push_back({axiom, c.witness, c.detail});
  };
  add("eq-separating-reflexive", is_separating_reflexive(eq));
  add("eq-symmetric", is_symmetric(eq));
  add("eq-transitive", is_otimes_transitive(eq));
  add("eq-compatible", is_compatible(eq, A.ops()));
  add("order-antisymmetric", [&] {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (!L.leq(L.meet(ord(a, b), ord(b, a)), eq(a, b))) return Check::fail({a, b});
    return Check::pass();
  }());
  add("order-eq-compatible", [&] {
    for (std::size_t a1 = 0; a1 < n; ++a1)
      for (std::size_t b1 = 0; b1 < n; ++b1)
        for (std::size_t a2 = 0; a2 < n; ++a2)
          for (std::size_t b2 = 0; b2 < n; ++b2)
            if (!L.leq(L.otimes(eq(a1, b1), eq(a2, b2)), L.residuum(ord(a1, a2), ord(b1, b2))))
              return Check::fail({a1, b1, a2, b2});
    return Check::pass();
  }());
}

void check_order_axioms(const FuzzyOrderedAlgebra& A, ValidationReport& report) {
  auto add = [&report](const char* axiom, const Check& c) {
    if (!c) report.violations.push_back({axiom, c.witness, c.detail});
  };
  add("order-reflexive", is_reflexive(A.order()));
  add("order-transitive", is_otimes_transitive(A.order()));
  add("order-compatible", is_compatible(A.order(), A.ops()));
}

}  // namespace

FuzzyOrderedAlgebra::FuzzyOrderedAlgebra(Signature signature, std::size_t size, std::vector<Operation> ops,
                                         LRelation order, std::vector<std::string> names)
    : signature_(std::move(signature)), size_(size), ops_(std::move(ops)), order_(std::move(order)),
      names_(std::move(names)) {
  if (size_ == 0) throw Error(ErrorKind::MalformedTable, "empty universe");
  if (ops_.size() != signature_.size())
    throw Error(ErrorKind::MalformedTable, "operation count differs from the signature");
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const auto& op = ops_[k];
    if (op.arity != signature_[k].arity)
      throw Error(ErrorKind::MalformedTable, "arity of table '" + signature_[k].name + "' differs from signature");
    if (op.table.size() != table_size(size_, op.arity))
      throw Error(ErrorKind::MalformedTable, "table '" + signature_[k].name + "' is not total");
    for (Element e : op.table)
      if (e >= size_) throw Error(ErrorKind::MalformedTable, "table '" + signature_[k].name + "' leaves the universe");
  }
  if (order_.base_size() != size_) throw Error(ErrorKind::MalformedTable, "order table is not size x size");
  if (names_.empty())
    for (std::size_t i = 0; i < size_; ++i) names_.push_back("e" + std::to_string(i));
  if (names_.size() != size_) throw Error(ErrorKind::MalformedTable, "element name count differs from size");
}

std::optional<Element> FuzzyOrderedAlgebra::find_element(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Element>(i);
  return std::nullopt;
}

bool operator==(const FuzzyOrderedAlgebra& a, const FuzzyOrderedAlgebra& b) {
  return a.size_ == b.size_ && a.signature_ == b.signature_ && a.ops_ == b.ops_ && a.order_ == b.order_;
}

ValidationReport validate_algebra(const FuzzyOrderedAlgebra& A) {
  ValidationReport report;
  check_order_axioms(A, report);
  const auto& ord = A.order();
  const auto top = A.degrees().top();
  for (std::size_t a = 0; a < A.size() && !report.violates("separability"); ++a)
    for (std::size_t b = 0; b < A.size(); ++b)
      if (a != b && ord(a, b) == top && ord(b, a) == top) {
        report.violations.push_back({"separability", {a, b}, "distinct elements below each other to degree 1"});
        break;
      }
  check_equality_axioms(A, A.equality(), report);
  return report;
}

ValidationReport validate_with_equality(const FuzzyOrderedAlgebra& A, const LRelation& eq) {
  require_same_base(A.order(), eq);
  ValidationReport report;
  check_order_axioms(A, report);
  check_equality_axioms(A, eq, report);
  return report;
}

bool EquivalenceReport::all_true() const {
  return std::all_of(conditions.begin(), conditions.end(), [](bool c) { return c; });
}

bool EquivalenceReport::all_false() const {
  return std::none_of(conditions.begin(), conditions.end(), [](bool c) { return c; });
}

EquivalenceReport check_order_equality_equivalence(const FuzzyOrderedAlgebra& A, const LRelation& eq) {
  EquivalenceReport out;
  const auto report = validate_with_equality(A, eq);
  for (const auto& v : report.violations)
    if (v.axiom != "order-eq-compatible") {
      out.hypotheses_hold = false;
      out.hypothesis_failure = v.axiom + " at " + format_tuple(v.witness);
      return out;
    }
  out.hypotheses_hold = true;

  const auto& L = A.degrees();
  const auto& ord = A.order();
  const std::size_t n = A.size();
  const bool compatible = !report.violates("order-eq-compatible");
  out.conditions[0] = report.ok();
  out.conditions[1] = compatible;
  out.conditions[2] = eq.contained_in(ord);
  out.conditions[3] = eq == intersect(ord, inverse(ord));
  // Greatest symmetric sub-relation, evaluated without the meet table: a
  // symmetric R ⊆ ≼ can reach degree d at (a,b) iff d lies below both
  // ≼(a,b) and ≼(b,a).
  bool interior = is_symmetric(eq).holds && out.conditions[2];
  for (std::size_t a = 0; a < n && interior; ++a)
    for (std::size_t b = 0; b < n && interior; ++b)
      for (Degree d : L.elements())
        if (L.leq(d, ord(a, b)) && L.leq(d, ord(b, a)) && !L.leq(d, eq(a, b))) {
          interior = false;
          break;
        }
  out.conditions[4] = interior;
  return out;
}

AlgebraPtr make_trivial(const Signature& signature, const LatticePtr& lattice) {
  std::vector<Operation> ops;
  for (const auto& s : signature.symbols()) ops.push_back(Operation{s.arity, {0}});
  return make_algebra(signature, 1, std::move(ops), LRelation::identity(lattice, 1), std::vector<std::string>{"o"});
}

AlgebraPtr discrete_expansion(const Signature& signature, std::size_t size, std::vector<Operation> ops,
                              const LRelation& equality, std::vector<std::string> names) {
  return make_algebra(signature, size, std::move(ops), equality, std::move(names));
}

Subalgebra generated_subalgebra(const AlgebraPtr& algebra, std::span<const Element> seed) {
  const auto& A = *algebra;
  const std::size_t n = A.size();
  if (seed.empty() && !A.signature().has_constants())
    throw Error(ErrorKind::EmptyUngenerated, "empty seed and no constants");
  std::vector<bool> member(n, false);
  for (Element e : seed) {
    if (e >= n) throw Error(ErrorKind::MalformedTable, "seed element out of range");
    member[e] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Element> current;
    for (std::size_t e = 0; e < n; ++e)
      if (member[e]) current.push_back(static_cast<Element>(e));
    for (std::size_t k = 0; k < A.ops().size(); ++k) {
      const std::size_t arity = A.op(k).arity;
      std::vector<std::size_t> pos(arity, 0);
      if (arity > 0 && current.empty()) continue;
      std::vector<Element> args(arity);
      for (;;) {
        for (std::size_t i = 0; i < arity; ++i) args[i] = current[pos[i]];
        const Element r = A.apply(k, args);
        if (!member[r]) member[r] = changed = true;
        std::size_t i = arity;
        while (i > 0 && ++pos[i - 1] == current.size()) pos[--i] = 0;
        if (i == 0) break;
      }
    }
  }
  std::vector<Element> elems;
  std::vector<Element> local(n, 0);
  for (std::size_t e = 0; e < n; ++e)
    if (member[e]) {
      local[e] = static_cast<Element>(elems.size());
      elems.push_back(static_cast<Element>(e));
    }
  const std::size_t m = elems.size();
  std::vector<Operation> ops;
  for (std::size_t k = 0; k < A.ops().size(); ++k) {
    const std::size_t arity = A.op(k).arity;
    Operation op{arity, std::vector<Element>(table_size(m, arity))};
    std::vector<Element> args(arity, 0), outer(arity);
    std::size_t idx = 0;
    do {
      for (std::size_t i = 0; i < arity; ++i) outer[i] = elems[args[i]];
      op.table[idx++] = local[A.apply(k, outer)];
    } while (next_tuple(args, m));
    ops.push_back(std::move(op));
  }
  LRelation order(A.lattice(), m, A.degrees().bot());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back(A.name(elems[i]));
    for (std::size_t j = 0; j < m; ++j) order.set(i, j, A.order()(elems[i], elems[j]));
  }
  auto sub = make_algebra(A.signature(), m, std::move(ops), std::move(order), std::move(names));
  return Subalgebra{sub, Homomorphism{sub, algebra, elems}};
}

std::vector<Element> Product::components(Element e) const {
  std::vector<Element> out(factor_sizes.size());
  for (std::size_t i = factor_sizes.size(); i-- > 0;) {
    out[i] = static_cast<Element>(e % factor_sizes[i]);
    e = static_cast<Element>(e / factor_sizes[i]);
  }
  return out;
}

Element Product::index_of(std::span<const Element> comps) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factor_sizes.size(); ++i) idx = idx * factor_sizes[i] + comps[i];
  return static_cast<Element>(idx);
}

Product direct_product(std::span<const AlgebraPtr> family, const Signature& signature, const LatticePtr& lattice,
                       std::size_t cap) {
  Product out;
  std::size_t total = 1;
  for (const auto& f : family) {
    if (!(f->signature() == signature)) throw Error(ErrorKind::SignatureMismatch, "factor signature differs");
    if (!same_lattice(f->lattice(), lattice)) throw Error(ErrorKind::MixedLattice, "factor over a different lattice");
    if (total > cap / f->size())
      throw Error(ErrorKind::ProductTooLarge, "product universe exceeds cap " + std::to_string(cap));
    total *= f->size();
    out.factor_sizes.push_back(f->size());
  }
  if (total > cap) throw Error(ErrorKind::ProductTooLarge, "product universe exceeds cap " + std::to_string(cap));
  const auto& L = *lattice;

  std::vector<std::vector<Element>> comps(total);
  for (std::size_t e = 0; e < total; ++e) comps[e] = out.components(static_cast<Element>(e));

  std::vector<Operation> ops;
  for (std::size_t k = 0; k < signature.size(); ++k) {
    const std::size_t arity = signature[k].arity;
    Operation op{arity, std::vector<Element>(table_size(total, arity, std::size_t{1} << 26))};
    std::vector<Element> args(arity, 0), factor_args(arity), result(family.size());
    std::size_t idx = 0;
    do {
      for (std::size_t i = 0; i < family.size(); ++i) {
        for (std::size_t j = 0; j < arity; ++j) factor_args[j] = comps[args[j]][i];
        result[i] = family[i]->apply(k, factor_args);
      }
      op.table[idx++] = out.index_of(result);
    } while (next_tuple(args, total));
    ops.push_back(std::move(op));
  }

  LRelation order(lattice, total, L.top());
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      Degree d = L.top();
      for (std::size_t i = 0; i < family.size(); ++i) d = L.meet(d, family[i]->order()(comps[a][i], comps[b][i]));
      order.set(a, b, d);
    }

  std::vector<std::string> names;
  for (std::size_t e = 0; e < total; ++e) {
    if (family.empty()) {
      names.push_back("o");
      continue;
    }
    std::string name = "(";
    for (std::size_t i = 0; i < family.size(); ++i) name += (i ? "," : "") + family[i]->name(comps[e][i]);
    names.push_back(name + ")");
  }
  out.algebra = make_algebra(signature, total, std::move(ops), std::move(order), std::move(names));
  for (std::size_t i = 0; i < family.size(); ++i) {
    Homomorphism p{out.algebra, family[i], std::vector<Element>(total)};
    for (std::size_t e = 0; e < total; ++e) p.map[e] = comps[e][i];
    out.projections.push_back(std::move(p));
  }
  return out;
}

Product direct_product(std::span<const AlgebraPtr> family, std::size_t cap) {
  if (family.empty()) throw Error(ErrorKind::SignatureMismatch, "empty family needs an explicit signature and lattice");
  return direct_product(family, family.front()->signature(), family.front()->lattice(), cap);
}

Check check_homomorphism(const Homomorphism& h) {
  const auto& M = *h.source;
  const auto& N = *h.target;
  require_compatible_types(M, N);
  if (h.map.size() != M.size()) return Check::fail({h.map.size()}, "map");
  for (std::size_t a = 0; a < M.size(); ++a)
    if (h.map[a] >= N.size()) return Check::fail({a}, "map");
  for (std::size_t k = 0; k < M.ops().size(); ++k) {
    std::vector<Element> args(M.op(k).arity, 0), image(M.op(k).arity);
    do {
      for (std::size_t i = 0; i < args.size(); ++i) image[i] = h(args[i]);
      if (h(M.apply(k, args)) != N.apply(k, image)) return Check::fail(op_witness(k, args), "operation");
    } while (next_tuple(args, M.size()));
  }
  const auto& L = M.degrees();
  for (std::size_t a = 0; a < M.size(); ++a)
    for (std::size_t b = 0; b < M.size(); ++b)
      if (!L.leq(M.order()(a, b), N.order()(h(a), h(b)))) return Check::fail({a, b}, "order");
  return Check::pass();
}

Check check_embedding(const Homomorphism& h) {
  if (auto c = check_homomorphism(h); !c) return c;
  const auto& M = *h.source;
  const auto& N = *h.target;
  for (std::size_t a = 0; a < M.size(); ++a)
    for (std::size_t b = 0; b < M.size(); ++b)
      if (M.order()(a, b) != N.order()(h(a), h(b))) return Check::fail({a, b}, "order-exact");
  const auto eqM = M.equality();
  const auto eqN = N.equality();
  for (std::size_t a = 0; a < M.size(); ++a)
    for (std::size_t b = 0; b < M.size(); ++b)
      if (eqM(a, b) != eqN(h(a), h(b))) return Check::fail({a, b}, "equality-exact");
  return Check::pass();
}

bool is_surjective(const Homomorphism& h) {
  std::vector<bool> hit(h.target->size(), false);
  for (Element e : h.map) hit[e] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_injective(const Homomorphism& h) {
  std::vector<bool> hit(h.target->size(), false);
  for (Element e : h.map) {
    if (hit[e]) return false;
    hit[e] = true;
  }
  return true;
}

Homomorphism compose(const Homomorphism& first, const Homomorphism& second) {
  Homomorphism out{first.source, second.target, std::vector<Element>(first.map.size())};
  for (std::size_t a = 0; a < first.map.size(); ++a) out.map[a] = second(first(a));
  return out;
}

LRelation induced_preorder(const Homomorphism& h) {
  const std::size_t n = h.source->size();
  LRelation theta(h.source->lattice(), n, h.source->degrees().bot());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) theta.set(a, b, h.target->order()(h(a), h(b)));
  return theta;
}

Quotient quotient(const AlgebraPtr& algebra, const LRelation& q) {
  const auto& A = *algebra;
  if (auto c = is_compatible_preorder(q, A.ops(), A.order()); !c)
    throw Error(ErrorKind::IncompatiblePreorder, c.detail + " violated at " + format_tuple(c.witness));
  const std::size_t n = A.size();
  const auto top = A.degrees().top();
  std::vector<Element> block_of(n);
  std::vector<Element> reps;
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < reps.size() && !found; ++b)
      if (q(a, reps[b]) == top && q(reps[b], a) == top) {
        block_of[a] = static_cast<Element>(b);
        found = true;
      }
    if (!found) {
      block_of[a] = static_cast<Element>(reps.size());
      reps.push_back(static_cast<Element>(a));
    }
  }
  const std::size_t m = reps.size();
  std::vector<Operation> ops;
  for (std::size_t k = 0; k < A.ops().size(); ++k) {
    const std::size_t arity = A.op(k).arity;
    Operation op{arity, std::vector<Element>(table_size(m, arity))};
    std::vector<Element> args(arity, 0), outer(arity);
    std::size_t idx = 0;
    do {
      for (std::size_t i = 0; i < arity; ++i) outer[i] = reps[args[i]];
      op.table[idx++] = block_of[A.apply(k, outer)];
    } while (next_tuple(args, m));
    ops.push_back(std::move(op));
  }
  LRelation order(A.lattice(), m, A.degrees().bot());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back("[" + A.name(reps[i]) + "]");
    for (std::size_t j = 0; j < m; ++j) order.set(i, j, q(reps[i], reps[j]));
  }
  auto factor = make_algebra(A.signature(), m, std::move(ops), std::move(order), std::move(names));
  return Quotient{factor, Homomorphism{algebra, factor, std::move(block_of)}, std::move(reps)};
}

Factorization factorize_through(const Homomorphism& h) {
  auto q = quotient(h.source, induced_preorder(h));
  Homomorphism g{q.algebra, h.target, std::vector<Element>(q.representatives.size())};
  for (std::size_t b = 0; b < q.representatives.size(); ++b) g.map[b] = h(q.representatives[b]);
  return Factorization{std::move(q), std::move(g)};
}

AlgebraPtr skeleton(const FuzzyOrderedAlgebra& A) {
  return make_algebra(A.signature(), A.size(), A.ops(), LRelation::identity(A.lattice(), A.size()), A.names());
}

AlgebraPtr threshold(const FuzzyOrderedAlgebra& A, Degree c) {
  const auto& L = A.degrees();
  if (c.index >= L.size()) throw Error(ErrorKind::BadThreshold, "threshold outside the lattice");
  if (c == L.top()) throw Error(ErrorKind::BadThreshold, "threshold must be below 1");
  LRelation order = A.order();
  for (std::size_t a = 0; a < A.size(); ++a)
    for (std::size_t b = 0; b < A.size(); ++b) order.set(a, b, A.order()(a, b) == L.top() ? L.top() : c);
  return make_algebra(A.signature(), A.size(), A.ops(), std::move(order), A.names());
}

std::optional<std::vector<Element>> find_isomorphism(const FuzzyOrderedAlgebra& a, const FuzzyOrderedAlgebra& b,
                                                     std::size_t limit) {
  if (!(a.signature() == b.signature()) || !same_lattice(a.lattice(), b.lattice())) return std::nullopt;
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  if (n > limit)
    throw Error(ErrorKind::EnumerationTooLarge,
                "isomorphism search limited to " + std::to_string(limit) + " elements, got " + std::to_string(n));

  std::vector<Element> map(n, 0);
  std::vector<bool> used(n, false);

  // Each operation application is checked once, right after the largest
  // index among its arguments and result has been assigned.
  auto consistent = [&](std::size_t k) {
    for (std::size_t j = 0; j <= k; ++j)
      if (a.order()(k, j) != b.order()(map[k], map[j]) || a.order()(j, k) != b.order()(map[j], map[k])) return false;
    for (std::size_t op = 0; op < a.ops().size(); ++op) {
      const std::size_t arity = a.op(op).arity;
      std::vector<Element> args(arity, 0), image(arity);
      do {
        const Element r = a.apply(op, args);
        Element highest = r;
        for (Element x : args) highest = std::max(highest, x);
        if (highest != k) continue;
        for (std::size_t i = 0; i < arity; ++i) image[i] = map[args[i]];
        if (b.apply(op, image) != map[r]) return false;
      } while (next_tuple(args, k + 1));
    }
    return true;
  };

  std::size_t k = 0;
  std::vector<std::size_t> next(n, 0);
  while (true) {
    bool placed = false;
    while (next[k] < n) {
      const Element candidate = static_cast<Element>(next[k]++);
      if (used[candidate]) continue;
      map[k] = candidate;
      if (!consistent(k)) continue;
      used[candidate] = true;
      placed = true;
      break;
    }
    if (placed) {
      if (k + 1 == n) return map;
      next[++k] = 0;
      continue;
    }
    if (k == 0) return std::nullopt;
    next[k] = 0;
    --k;
    used[map[k]] = false;
  }
}

}  // namespace gradord
