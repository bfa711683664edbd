#include "gradord/ineq.hpp"

#include <algorithm>
#include <map>

namespace gradord {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap, const char* what) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && total > cap / base)
      throw Error(ErrorKind::EnumerationTooLarge, std::string(what) + " exceed cap " + std::to_string(cap));
    total *= base;
  }
  if (total > cap) throw Error(ErrorKind::EnumerationTooLarge, std::string(what) + " exceed cap " + std::to_string(cap));
  return total;
}

void require_member_types(std::span<const AlgebraPtr> members) {
  for (const auto& m : members) {
    if (!(m->signature() == members.front()->signature()))
      throw Error(ErrorKind::SignatureMismatch, "class members with different signatures");
    if (!same_lattice(m->lattice(), members.front()->lattice()))
      throw Error(ErrorKind::MixedLattice, "class members over different lattices");
  }
}

}  // namespace

Inequality parse_inequality(std::string_view text, const Signature& signature, const VariableSet& variables) {
  const auto split = text.find("<=");
  if (split == std::string_view::npos) throw Error(ErrorKind::SyntaxError, "expected 't <= t'' in '" + std::string(text) + "'");
  return Inequality{parse_term(text.substr(0, split), signature, variables),
                    parse_term(text.substr(split + 2), signature, variables)};
}

std::string render_inequality(const Inequality& ineq, const Signature& signature, const VariableSet& variables) {
  return render_term(ineq.lhs, signature, variables) + " <= " + render_term(ineq.rhs, signature, variables);
}

Theory::Theory(Signature signature, VariableSet variables, LatticePtr lattice)
    : signature_(std::move(signature)), variables_(std::move(variables)), lattice_(std::move(lattice)) {}

Degree Theory::degree(const Inequality& ineq) const {
  for (const auto& [entry, d] : entries_)
    if (entry == ineq) return d;
  return lattice_->bot();
}

void Theory::set(Inequality ineq, Degree degree) {
  if (degree.index >= lattice_->size()) throw Error(ErrorKind::MalformedTable, "theory degree outside the lattice");
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == ineq; });
  if (degree == lattice_->bot()) {
    if (it != entries_.end()) entries_.erase(it);
    return;
  }
  if (it != entries_.end())
    it->second = degree;
  else
    entries_.emplace_back(std::move(ineq), degree);
}

Degree degree_at_valuation(const FuzzyOrderedAlgebra& algebra, std::span<const Element> valuation,
                           const Inequality& ineq) {
  return algebra.order()(eval_term(algebra, valuation, ineq.lhs), eval_term(algebra, valuation, ineq.rhs));
}

AttainedDegree evaluate_in_algebra(const FuzzyOrderedAlgebra& algebra, const Inequality& ineq, std::size_t cap) {
  const auto& L = algebra.degrees();
  std::vector<bool> seen;
  collect_variables(ineq.lhs, seen);
  collect_variables(ineq.rhs, seen);
  std::vector<std::size_t> occurring;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) occurring.push_back(i);
  checked_power(algebra.size(), occurring.size(), cap, "valuations");

  std::vector<Element> valuation(seen.size(), 0);
  std::vector<Element> odometer(occurring.size(), 0);
  // First valuation reaching each degree, so the final infimum can be
  // reported with a witness whenever some valuation attains it.
  std::vector<std::optional<std::vector<Element>>> first(L.size());
  Degree acc = L.top();
  do {
    for (std::size_t i = 0; i < occurring.size(); ++i) valuation[occurring[i]] = odometer[i];
    const Degree d = degree_at_valuation(algebra, valuation, ineq);
    if (!first[d.index]) first[d.index] = valuation;
    acc = L.meet(acc, d);
    if (acc == L.bot() && first[acc.index]) break;
  } while (next_tuple(odometer, algebra.size()));

  AttainedDegree out{acc, std::nullopt, {}};
  if (first[acc.index]) out.valuation = *first[acc.index];
  return out;
}

Degree degree_in_algebra(const FuzzyOrderedAlgebra& algebra, const Inequality& ineq, std::size_t cap) {
  return evaluate_in_algebra(algebra, ineq, cap).degree;
}

AttainedDegree evaluate_in_class(std::span<const AlgebraPtr> members, const Inequality& ineq,
                                 const LatticePtr& lattice, std::size_t cap) {
  const auto& L = *lattice;
  AttainedDegree out{L.top(), std::nullopt, {}};
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (!same_lattice(members[k]->lattice(), lattice))
      throw Error(ErrorKind::MixedLattice, "class member over a different lattice");
    auto here = evaluate_in_algebra(*members[k], ineq, cap);
    const Degree lowered = L.meet(out.degree, here.degree);
    if (lowered != out.degree || (!out.member && lowered == here.degree)) {
      out.degree = lowered;
      if (lowered == here.degree && !here.valuation.empty()) {
        out.member = k;
        out.valuation = std::move(here.valuation);
      } else if (lowered == here.degree) {
        out.member = k;
        out.valuation.clear();
      } else {
        out.member.reset();
        out.valuation.clear();
      }
    }
  }
  return out;
}

Degree degree_in_class(std::span<const AlgebraPtr> members, const Inequality& ineq, const LatticePtr& lattice,
                       std::size_t cap) {
  return evaluate_in_class(members, ineq, lattice, cap).degree;
}

ModelCheck is_model(const FuzzyOrderedAlgebra& algebra, const Theory& theory, std::size_t cap) {
  if (!(algebra.signature() == theory.signature()))
    throw Error(ErrorKind::SignatureMismatch, "theory and algebra have different signatures");
  if (!same_lattice(algebra.lattice(), theory.lattice()))
    throw Error(ErrorKind::MixedLattice, "theory and algebra over different lattices");
  const auto& L = algebra.degrees();
  const auto& entries = theory.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto actual = evaluate_in_algebra(algebra, entries[i].first, cap);
    if (!L.leq(entries[i].second, actual.degree)) return ModelCheck{false, i, entries[i].second, std::move(actual)};
  }
  return ModelCheck{true, std::nullopt, L.bot(), {L.top(), std::nullopt, {}}};
}

std::vector<AlgebraPtr> mod_filter(const Theory& theory, std::span<const AlgebraPtr> candidates, std::size_t cap) {
  std::vector<AlgebraPtr> out;
  for (const auto& c : candidates)
    if (is_model(*c, theory, cap)) out.push_back(c);
  return out;
}

Element FreeAlgebra::element_of(const Term& term) const { return eval_term(*algebra, generators, term); }

Degree FreeAlgebra::theta(const Term& lhs, const Term& rhs) const {
  return algebra->order()(element_of(lhs), element_of(rhs));
}

FreeAlgebra free_algebra(std::span<const AlgebraPtr> members, const VariableSet& variables, std::size_t universe_cap,
                         std::size_t enumeration_cap) {
  if (members.empty()) throw Error(ErrorKind::InvalidStructure, "free algebra over an empty class");
  require_member_types(members);
  const auto& sig = members.front()->signature();
  const auto& lattice = members.front()->lattice();
  const auto& L = *lattice;
  if (variables.size() == 0 && !sig.has_constants())
    throw Error(ErrorKind::EmptyUngenerated, "no variables and no constants");

  FreeAlgebra out;
  out.members.assign(members.begin(), members.end());
  out.variables = variables;
  std::size_t coordinates = 0;
  for (std::size_t k = 0; k < members.size(); ++k) {
    coordinates += checked_power(members[k]->size(), variables.size(), enumeration_cap, "free algebra coordinates");
    if (coordinates > enumeration_cap)
      throw Error(ErrorKind::EnumerationTooLarge, "free algebra coordinates exceed cap " + std::to_string(enumeration_cap));
    std::vector<Element> v(variables.size(), 0);
    do {
      out.components.push_back(FreeComponent{k, v});
    } while (next_tuple(v, members[k]->size()));
  }
  const std::size_t width = out.components.size();

  std::map<std::vector<Element>, Element> index;
  auto intern = [&](std::vector<Element> tuple, const Term& witness) -> Element {
    auto [it, fresh] = index.emplace(tuple, static_cast<Element>(out.tuples.size()));
    if (fresh) {
      if (out.tuples.size() >= universe_cap)
        throw Error(ErrorKind::EnumerationTooLarge, "free algebra exceeds " + std::to_string(universe_cap) + " elements");
      out.tuples.push_back(std::move(tuple));
      out.representatives.push_back(witness);
    }
    return it->second;
  };

  for (std::size_t x = 0; x < variables.size(); ++x) {
    std::vector<Element> tuple(width);
    for (std::size_t c = 0; c < width; ++c) tuple[c] = out.components[c].valuation[x];
    out.generators.push_back(intern(std::move(tuple), Term::variable(x)));
  }
  std::vector<Element> scratch;
  auto apply_componentwise = [&](std::size_t k, std::span<const Element> args) {
    std::vector<Element> tuple(width);
    scratch.resize(args.size());
    for (std::size_t c = 0; c < width; ++c) {
      for (std::size_t i = 0; i < args.size(); ++i) scratch[i] = out.tuples[args[i]][c];
      tuple[c] = out.members[out.components[c].member]->apply(k, scratch);
    }
    return tuple;
  };
  for (std::size_t k = 0; k < sig.size(); ++k)
    if (sig[k].arity == 0) intern(apply_componentwise(k, {}), Term::apply(k, {}));

  // Semi-naive saturation: each round only applies operations to argument
  // tuples that involve an element discovered in the previous round.
  std::size_t processed = 0;
  while (processed < out.tuples.size()) {
    const std::size_t known = out.tuples.size();
    for (std::size_t k = 0; k < sig.size(); ++k) {
      const std::size_t arity = sig[k].arity;
      if (arity == 0) continue;
      std::vector<Element> args(arity, 0);
      do {
        if (*std::max_element(args.begin(), args.end()) < processed) continue;
        std::vector<Term> sub;
        sub.reserve(arity);
        auto tuple = apply_componentwise(k, args);
        if (index.count(tuple)) continue;
        for (Element a : args) sub.push_back(out.representatives[a]);
        intern(std::move(tuple), Term::apply(k, std::move(sub)));
      } while (next_tuple(args, known));
    }
    processed = known;
  }

  const std::size_t m = out.tuples.size();
  std::vector<Operation> ops;
  for (std::size_t k = 0; k < sig.size(); ++k) {
    const std::size_t arity = sig[k].arity;
    Operation op{arity, std::vector<Element>(table_size(m, arity, std::size_t{1} << 26))};
    std::vector<Element> args(arity, 0);
    std::size_t at = 0;
    do {
      op.table[at++] = index.at(apply_componentwise(k, args));
    } while (next_tuple(args, m));
    ops.push_back(std::move(op));
  }
  LRelation order(lattice, m, L.top());
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Degree d = L.top();
      for (std::size_t c = 0; c < width && d != L.bot(); ++c)
        d = L.meet(d, out.members[out.components[c].member]->order()(out.tuples[a][c], out.tuples[b][c]));
      order.set(a, b, d);
    }
  std::vector<std::string> names;
  for (const auto& t : out.representatives) names.push_back(render_term(t, sig, variables));
  out.algebra = make_algebra(sig, m, std::move(ops), std::move(order), std::move(names));
  return out;
}

FreeInclusion free_algebra_inclusion(const FreeAlgebra& free, std::size_t cap) {
  std::vector<AlgebraPtr> family;
  for (const auto& c : free.components) family.push_back(free.members[c.member]);
  auto product = direct_product(family, free.algebra->signature(), free.algebra->lattice(), cap);
  Homomorphism inclusion{free.algebra, product.algebra, std::vector<Element>(free.tuples.size())};
  for (std::size_t e = 0; e < free.tuples.size(); ++e) inclusion.map[e] = product.index_of(free.tuples[e]);
  return FreeInclusion{std::move(product), std::move(inclusion)};
}

Homomorphism sur_reflection(const FreeAlgebra& free, const AlgebraPtr& target, std::span<const Element> valuation) {
  std::optional<std::size_t> member;
  for (std::size_t k = 0; k < free.members.size() && !member; ++k)
    if (free.members[k] == target || *free.members[k] == *target) member = k;
  if (!member) throw Error(ErrorKind::TargetNotInClass, "target algebra is not a member of the class");
  if (valuation.size() != free.variables.size())
    throw Error(ErrorKind::MalformedTable, "valuation does not cover the variable set");
  for (Element e : valuation)
    if (e >= target->size()) throw Error(ErrorKind::MalformedTable, "valuation leaves the target universe");
  for (std::size_t c = 0; c < free.components.size(); ++c) {
    const auto& comp = free.components[c];
    if (comp.member != *member || !std::equal(comp.valuation.begin(), comp.valuation.end(), valuation.begin()))
      continue;
    Homomorphism h{free.algebra, target, std::vector<Element>(free.tuples.size())};
    for (std::size_t e = 0; e < free.tuples.size(); ++e) h.map[e] = free.tuples[e][c];
    return h;
  }
  throw Error(ErrorKind::TargetNotInClass, "valuation not found among the free algebra coordinates");
}

Check check_factorization(const FreeAlgebra& free, const Homomorphism& reflection, std::span<const Element> valuation,
                          std::size_t depth, std::size_t cap) {
  const auto terms = enumerate_terms(free.algebra->signature(), free.variables.size(), depth, cap);
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (eval_term(*reflection.target, valuation, terms[i]) != reflection(free.element_of(terms[i])))
      return Check::fail({i}, render_term(terms[i], free.algebra->signature(), free.variables));
  return Check::pass();
}

Theory theory_of_class(std::span<const AlgebraPtr> members, const VariableSet& variables, std::size_t depth,
                       std::size_t cap) {
  if (members.empty()) throw Error(ErrorKind::InvalidStructure, "theory of an empty class needs a signature");
  require_member_types(members);
  const auto& sig = members.front()->signature();
  const auto& lattice = members.front()->lattice();
  const auto terms = enumerate_terms(sig, variables.size(), depth, cap);
  checked_power(terms.size(), 2, cap, "inequalities");
  Theory theory(sig, variables, lattice);
  for (const auto& lhs : terms)
    for (const auto& rhs : terms) {
      Inequality ineq{lhs, rhs};
      const Degree d = degree_in_class(members, ineq, lattice, cap);
      theory.set(std::move(ineq), d);
    }
  return theory;
}

bool is_crisp(const Theory& theory) {
  const auto& L = *theory.lattice();
  return std::all_of(theory.entries().begin(), theory.entries().end(),
                     [&](const auto& e) { return e.second == L.bot() || e.second == L.top(); });
}

}  // namespace gradord
