#include "gradord/fai.hpp"

#include <algorithm>

namespace gradord {

namespace {

void require_same_attributes(const LSet& a, const LSet& b) {
  if (a.size() != b.size())
    throw Error(ErrorKind::MixedAttributes,
                "L-sets over " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " attributes");
}

void require_fits(const FAITheory& theory, const LSet& a) {
  if (a.size() != theory.attributes().size())
    throw Error(ErrorKind::MixedAttributes, "L-set does not match the theory's attributes");
  for (Degree d : a.degrees)
    if (d.index >= theory.lattice()->size()) throw Error(ErrorKind::MalformedTable, "L-set degree outside the lattice");
}

// S[a * models + m] = S(lsets[a], models[m]).
std::vector<Degree> subsethood_table(const ResiduatedLattice& L, const std::vector<LSet>& lsets,
                                     const std::vector<LSet>& models) {
  std::vector<Degree> table(lsets.size() * models.size());
  for (std::size_t a = 0; a < lsets.size(); ++a)
    for (std::size_t m = 0; m < models.size(); ++m) table[a * models.size() + m] = subsethood(L, lsets[a], models[m]);
  return table;
}

LRelation entailment_from_models(const LatticePtr& lattice, const std::vector<LSet>& lsets,
                                 const std::vector<LSet>& models) {
  const auto& L = *lattice;
  const auto s = subsethood_table(L, lsets, models);
  const std::size_t n = lsets.size(), k = models.size();
  LRelation out(lattice, n, L.top());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      Degree d = L.top();
      for (std::size_t m = 0; m < k && d != L.bot(); ++m) d = L.meet(d, L.residuum(s[a * k + m], s[b * k + m]));
      out.set(a, b, d);
    }
  return out;
}

std::vector<std::string> lset_names(const ResiduatedLattice& L, const std::vector<std::string>& attributes,
                                    const std::vector<LSet>& lsets) {
  std::vector<std::string> names;
  names.reserve(lsets.size());
  for (const auto& a : lsets) names.push_back(render_lset(L, attributes, a));
  return names;
}

}  // namespace

LSet empty_lset(const ResiduatedLattice& lattice, std::size_t attributes) {
  return LSet{std::vector<Degree>(attributes, lattice.bot())};
}

LSet full_lset(const ResiduatedLattice& lattice, std::size_t attributes) {
  return LSet{std::vector<Degree>(attributes, lattice.top())};
}

LSet lset_union(const ResiduatedLattice& lattice, const LSet& a, const LSet& b) {
  require_same_attributes(a, b);
  LSet out = a;
  for (std::size_t y = 0; y < a.size(); ++y) out.degrees[y] = lattice.join(a[y], b[y]);
  return out;
}

std::vector<LSet> all_lsets(const ResiduatedLattice& lattice, std::size_t attributes, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t y = 0; y < attributes; ++y) {
    if (total > cap / lattice.size())
      throw Error(ErrorKind::EnumerationTooLarge, "|L|^|Y| exceeds cap " + std::to_string(cap));
    total *= lattice.size();
  }
  std::vector<LSet> out;
  out.reserve(total);
  std::vector<Element> odometer(attributes, 0);
  do {
    LSet a;
    for (Element e : odometer) a.degrees.push_back(Degree{static_cast<std::uint16_t>(e)});
    out.push_back(std::move(a));
  } while (next_tuple(odometer, lattice.size()));
  return out;
}

std::size_t lset_index(const ResiduatedLattice& lattice, const LSet& a) {
  std::size_t index = 0;
  for (Degree d : a.degrees) index = index * lattice.size() + d.index;
  return index;
}

std::string render_lset(const ResiduatedLattice& lattice, const std::vector<std::string>& attributes, const LSet& a) {
  std::string out = "{";
  bool first = true;
  for (std::size_t y = 0; y < a.size(); ++y) {
    if (a[y] == lattice.bot()) continue;
    if (!first) out += ", ";
    first = false;
    out += attributes[y] + ":" + lattice.label(a[y]);
  }
  return out + "}";
}

FAITheory::FAITheory(std::vector<std::string> attributes, LatticePtr lattice)
    : attributes_(std::move(attributes)), lattice_(std::move(lattice)) {
  for (std::size_t i = 0; i < attributes_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (attributes_[i] == attributes_[j]) throw Error(ErrorKind::ParseError, "duplicate attribute '" + attributes_[i] + "'");
}

Degree FAITheory::degree(const FAI& fai) const {
  for (const auto& [entry, d] : entries_)
    if (entry == fai) return d;
  return lattice_->bot();
}

void FAITheory::set(FAI fai, Degree degree) {
  require_fits(*this, fai.antecedent);
  require_fits(*this, fai.consequent);
  if (degree.index >= lattice_->size()) throw Error(ErrorKind::MalformedTable, "theory degree outside the lattice");
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == fai; });
  if (degree == lattice_->bot()) {
    if (it != entries_.end()) entries_.erase(it);
    return;
  }
  if (it != entries_.end())
    it->second = degree;
  else
    entries_.emplace_back(std::move(fai), degree);
}

Degree subsethood(const ResiduatedLattice& lattice, const LSet& a, const LSet& b) {
  require_same_attributes(a, b);
  Degree d = lattice.top();
  for (std::size_t y = 0; y < a.size(); ++y) d = lattice.meet(d, lattice.residuum(a[y], b[y]));
  return d;
}

Degree fai_degree(const ResiduatedLattice& lattice, const LSet& model, const FAI& fai) {
  return lattice.residuum(subsethood(lattice, fai.antecedent, model), subsethood(lattice, fai.consequent, model));
}

std::vector<LSet> enumerate_models(const FAITheory& theory, std::size_t cap) {
  const auto& L = *theory.lattice();
  std::vector<LSet> models;
  for (auto& m : all_lsets(L, theory.attributes().size(), cap)) {
    const bool ok = std::all_of(theory.entries().begin(), theory.entries().end(),
                                [&](const auto& e) { return L.leq(e.second, fai_degree(L, m, e.first)); });
    if (ok) models.push_back(std::move(m));
  }
  return models;
}

Degree entailment_degree(const ResiduatedLattice& lattice, const std::vector<LSet>& models, const FAI& fai) {
  Degree d = lattice.top();
  for (const auto& m : models) d = lattice.meet(d, fai_degree(lattice, m, fai));
  return d;
}

Degree entailment_degree(const FAITheory& theory, const FAI& fai, std::size_t cap) {
  require_fits(theory, fai.antecedent);
  require_fits(theory, fai.consequent);
  return entailment_degree(*theory.lattice(), enumerate_models(theory, cap), fai);
}

LRelation entailment_relation(const FAITheory& theory, std::size_t cap) {
  const auto lsets = all_lsets(*theory.lattice(), theory.attributes().size(), cap);
  return entailment_from_models(theory.lattice(), lsets, enumerate_models(theory, cap));
}

Signature fai_signature() { return Signature({{"zero", 0}, {"one", 0}, {"cup", 2}}); }

AlgebraPtr fai_base_algebra(const std::vector<std::string>& attributes, const LatticePtr& lattice, std::size_t cap) {
  const auto& L = *lattice;
  const auto lsets = all_lsets(L, attributes.size(), cap);
  const std::size_t n = lsets.size();
  std::vector<Operation> ops;
  ops.push_back(Operation{0, {static_cast<Element>(lset_index(L, empty_lset(L, attributes.size())))}});
  ops.push_back(Operation{0, {static_cast<Element>(lset_index(L, full_lset(L, attributes.size())))}});
  Operation cup{2, std::vector<Element>(table_size(n, 2, std::size_t{1} << 26))};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      cup.table[a * n + b] = static_cast<Element>(lset_index(L, lset_union(L, lsets[a], lsets[b])));
  ops.push_back(std::move(cup));
  LRelation order(lattice, n, L.top());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) order.set(a, b, subsethood(L, lsets[b], lsets[a]));
  return make_algebra(fai_signature(), n, std::move(ops), std::move(order), lset_names(L, attributes, lsets));
}

FAIQuotient build_quotient_algebra(const FAITheory& theory, std::size_t cap) {
  const auto& lattice = theory.lattice();
  const auto& L = *lattice;
  const std::size_t ny = theory.attributes().size();
  FAIQuotient out;
  out.lsets = all_lsets(L, ny, cap);
  const std::size_t n = out.lsets.size();
  const auto entail = entailment_from_models(lattice, out.lsets, enumerate_models(theory, cap));

  // The first L-set of a class in enumeration order is its least one.
  out.class_of.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    std::optional<Element> found;
    for (std::size_t c = 0; c < out.representatives.size() && !found; ++c) {
      const auto r = out.representatives[c];
      if (entail(a, r) == L.top() && entail(r, a) == L.top()) found = static_cast<Element>(c);
    }
    if (!found) {
      found = static_cast<Element>(out.representatives.size());
      out.representatives.push_back(a);
    }
    out.class_of[a] = *found;
  }

  const std::size_t m = out.representatives.size();
  std::vector<Operation> ops;
  ops.push_back(Operation{0, {out.class_of[lset_index(L, empty_lset(L, ny))]}});
  ops.push_back(Operation{0, {out.class_of[lset_index(L, full_lset(L, ny))]}});
  Operation cup{2, std::vector<Element>(m * m)};
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      const auto joined = lset_union(L, out.lsets[out.representatives[a]], out.lsets[out.representatives[b]]);
      cup.table[a * m + b] = out.class_of[lset_index(L, joined)];
    }
  ops.push_back(std::move(cup));
  LRelation order(lattice, m, L.top());
  std::vector<std::string> names;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) order.set(a, b, entail(out.representatives[a], out.representatives[b]));
    names.push_back("[" + render_lset(L, theory.attributes(), out.lsets[out.representatives[a]]) + "]");
  }
  out.algebra = make_algebra(fai_signature(), m, std::move(ops), std::move(order), std::move(names));
  return out;
}

RouteReport quotient_route_check(const FAITheory& theory, std::size_t cap) {
  RouteReport report;
  const auto base = fai_base_algebra(theory.attributes(), theory.lattice(), cap);
  const auto q = entailment_relation(theory, cap);
  report.preorder = is_compatible_preorder(q, base->ops(), base->order());
  if (!report.preorder) return report;
  const auto route = quotient(base, q);
  const auto direct = build_quotient_algebra(theory, cap);
  if (route.algebra->size() != direct.algebra->size()) return report;

  // Blocks and classes both come from the same L-sets, so the natural
  // candidate maps each block to the class of its representative.
  report.canonical = true;
  Homomorphism candidate{route.algebra, direct.algebra, std::vector<Element>(route.algebra->size())};
  for (std::size_t b = 0; b < route.algebra->size(); ++b) candidate.map[b] = direct.class_of[route.representatives[b]];
  if (is_injective(candidate) && check_embedding(candidate)) {
    report.isomorphic = true;
    report.isomorphism = std::move(candidate.map);
    return report;
  }
  report.isomorphism = find_isomorphism(*route.algebra, *direct.algebra);
  report.isomorphic = report.isomorphism.has_value();
  return report;
}

}  // namespace gradord
