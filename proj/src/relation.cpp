#include "gradord/relation.hpp"

namespace gradord {

LRelation::LRelation(LatticePtr lattice, std::size_t base_size, Degree fill)
    : lattice_(std::move(lattice)), n_(base_size), cells_(base_size * base_size, fill) {
  if (!lattice_) throw Error(ErrorKind::MalformedTable, "relation without a lattice");
  if (fill.index >= lattice_->size()) throw Error(ErrorKind::MalformedTable, "relation entry outside the lattice");
}

LRelation::LRelation(LatticePtr lattice, std::size_t base_size, std::vector<Degree> cells)
    : lattice_(std::move(lattice)), n_(base_size), cells_(std::move(cells)) {
  if (!lattice_) throw Error(ErrorKind::MalformedTable, "relation without a lattice");
  if (cells_.size() != n_ * n_) throw Error(ErrorKind::MalformedTable, "relation table is not size x size");
  for (Degree d : cells_)
    if (d.index >= lattice_->size()) throw Error(ErrorKind::MalformedTable, "relation entry outside the lattice");
}

LRelation LRelation::identity(LatticePtr lattice, std::size_t base_size) {
  LRelation r(lattice, base_size, lattice->bot());
  for (std::size_t a = 0; a < base_size; ++a) r.set(a, a, lattice->top());
  return r;
}

LRelation LRelation::constant(LatticePtr lattice, std::size_t base_size, Degree value) {
  return LRelation(std::move(lattice), base_size, value);
}

bool LRelation::contained_in(const LRelation& other) const {
  require_same_base(*this, other);
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (!lattice_->leq(cells_[i], other.cells_[i])) return false;
  return true;
}

bool operator==(const LRelation& a, const LRelation& b) {
  return a.n_ == b.n_ && a.cells_ == b.cells_ && same_lattice(a.lattice_, b.lattice_);
}

void require_same_base(const LRelation& a, const LRelation& b) {
  if (a.base_size() != b.base_size())
    throw Error(ErrorKind::MixedBase, "relations on bases of size " + std::to_string(a.base_size()) + " and " +
                                          std::to_string(b.base_size()));
  if (!same_lattice(a.lattice(), b.lattice())) throw Error(ErrorKind::MixedLattice, "relations over different lattices");
}

LRelation inverse(const LRelation& r) {
  LRelation out = r;
  for (std::size_t a = 0; a < r.base_size(); ++a)
    for (std::size_t b = 0; b < r.base_size(); ++b) out.set(a, b, r(b, a));
  return out;
}

LRelation intersect(std::span<const LRelation> family, const LatticePtr& lattice, std::size_t base_size) {
  LRelation out(lattice, base_size, lattice->top());
  for (const auto& r : family) {
    require_same_base(out, r);
    for (std::size_t a = 0; a < base_size; ++a)
      for (std::size_t b = 0; b < base_size; ++b) out.set(a, b, lattice->meet(out(a, b), r(a, b)));
  }
  return out;
}

LRelation intersect(const LRelation& a, const LRelation& b) {
  const LRelation pair[] = {a, b};
  return intersect(pair, a.lattice(), a.base_size());
}

LRelation symmetric_interior(const LRelation& r) { return intersect(r, inverse(r)); }

Check is_reflexive(const LRelation& r) {
  const auto top = r.degrees().top();
  for (std::size_t a = 0; a < r.base_size(); ++a)
    if (r(a, a) != top) return Check::fail({a}, "degree below 1 on the diagonal");
  return Check::pass();
}

Check is_symmetric(const LRelation& r) {
  for (std::size_t a = 0; a < r.base_size(); ++a)
    for (std::size_t b = 0; b < r.base_size(); ++b)
      if (r(a, b) != r(b, a)) return Check::fail({a, b});
  return Check::pass();
}

Check is_otimes_transitive(const LRelation& r) {
  const auto& L = r.degrees();
  const std::size_t n = r.base_size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (!L.leq(L.otimes(r(a, b), r(b, c)), r(a, c))) return Check::fail({a, b, c});
  return Check::pass();
}

Check is_separating_reflexive(const LRelation& r) {
  const auto top = r.degrees().top();
  for (std::size_t a = 0; a < r.base_size(); ++a)
    for (std::size_t b = 0; b < r.base_size(); ++b)
      if ((r(a, b) == top) != (a == b)) return Check::fail({a, b});
  return Check::pass();
}

Check is_compatible(const LRelation& r, std::span<const Operation> ops) {
  const auto& L = r.degrees();
  const std::size_t n = r.base_size();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const auto& op = ops[k];
    std::vector<Element> as(op.arity, 0);
    do {
      std::vector<Element> bs(op.arity, 0);
      do {
        Degree premise = L.top();
        for (std::size_t i = 0; i < op.arity; ++i) premise = L.otimes(premise, r(as[i], bs[i]));
        if (!L.leq(premise, r(op.apply(as, n), op.apply(bs, n)))) {
          std::vector<std::size_t> w{k};
          w.insert(w.end(), as.begin(), as.end());
          w.insert(w.end(), bs.begin(), bs.end());
          return Check::fail(std::move(w), "operation " + std::to_string(k) + " not compatible");
        }
      } while (next_tuple(bs, n));
    } while (next_tuple(as, n));
  }
  return Check::pass();
}

Check is_compatible_preorder(const LRelation& q, std::span<const Operation> ops, const LRelation& base_order) {
  require_same_base(q, base_order);
  const auto& L = q.degrees();
  for (std::size_t a = 0; a < q.base_size(); ++a)
    for (std::size_t b = 0; b < q.base_size(); ++b)
      if (!L.leq(base_order(a, b), q(a, b))) return Check::fail({a, b}, "contains-order");
  if (auto t = is_otimes_transitive(q); !t) return Check::fail(t.witness, "transitive");
  if (auto c = is_compatible(q, ops); !c) return Check::fail(c.witness, "compatible");
  return Check::pass();
}

LRelation preorder_closure(std::span<const Operation> ops, const LRelation& seed, const LRelation& base_order) {
  require_same_base(seed, base_order);
  const auto& L = seed.degrees();
  const std::size_t n = seed.base_size();
  LRelation q = seed;
  auto raise = [&](std::size_t a, std::size_t b, Degree d) {
    const Degree joined = L.join(q(a, b), d);
    if (joined == q(a, b)) return false;
    q.set(a, b, joined);
    return true;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) raise(a, b, base_order(a, b));

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) changed |= raise(a, c, L.otimes(q(a, b), q(b, c)));
    for (const auto& op : ops) {
      std::vector<Element> as(op.arity, 0);
      do {
        std::vector<Element> bs(op.arity, 0);
        do {
          Degree premise = L.top();
          for (std::size_t i = 0; i < op.arity; ++i) premise = L.otimes(premise, q(as[i], bs[i]));
          changed |= raise(op.apply(as, n), op.apply(bs, n), premise);
        } while (next_tuple(bs, n));
      } while (next_tuple(as, n));
    }
  }
  return q;
}

}  // namespace gradord
