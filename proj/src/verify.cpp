#include "gradord/verify.hpp"

#include <algorithm>

namespace gradord {

namespace {

constexpr std::size_t kMaxFindings = 5;

class Recorder {
 public:
  explicit Recorder(std::string suite) { report_.suite = std::move(suite); }

  void instance() { ++report_.instances; }
  void expect(bool ok, const std::string& what) {
    ++report_.checks;
    if (ok) return;
    ++report_.failures;
    if (report_.findings.size() < kMaxFindings) report_.findings.push_back(what);
  }
  // Passes when `algebra` validates; otherwise records the first violation.
  bool expect_valid(const FuzzyOrderedAlgebra& algebra, const std::string& context) {
    const auto v = validate_algebra(algebra);
    expect(v.ok(), context + ": " + (v.ok() ? "" : v.violations.front().axiom + " at " +
                                                        format_tuple(v.violations.front().witness)));
    return v.ok();
  }
  SuiteReport take() { return std::move(report_); }

 private:
  SuiteReport report_;
};

std::vector<LatticePtr> suite_lattices(std::size_t max_lattice) {
  std::vector<LatticePtr> out{make_chain(2, ChainKind::Godel)};
  for (std::size_t n = 3; n <= max_lattice; ++n) {
    out.push_back(make_chain(n, ChainKind::Godel));
    out.push_back(make_chain(n, ChainKind::Lukasiewicz));
  }
  return out;
}

std::string describe(const Check& c) { return c.detail + " at " + format_tuple(c.witness); }

const std::vector<Signature>& hsp_signatures() {
  static const std::vector<Signature> sigs{
      Signature::parse("f/1"), Signature::parse("f/2"), Signature::parse("f/1,c/0"), Signature::parse("f/2,c/0"),
      Signature::parse("f/1,g/1")};
  return sigs;
}

VariableSet variables_of(std::size_t count) {
  static const std::vector<std::string> names{"x", "y", "z"};
  return VariableSet(std::vector<std::string>(names.begin(), names.begin() + static_cast<long>(count)));
}

struct SampledModel {
  AlgebraPtr algebra;
  Theory theory;
};

SampledModel sample_model(const SuiteOptions& options, Rng& rng) {
  const auto lattices = suite_lattices(options.max_lattice);
  const auto& lattice = lattices[rng.below(lattices.size())];
  const auto& sig = hsp_signatures()[rng.below(hsp_signatures().size())];
  const std::size_t size = 1 + rng.below(options.max_size);
  auto algebra = random_algebra(sig, size, lattice, rng);
  const auto vars = variables_of(1 + rng.below(2));
  auto theory = random_theory_for(*algebra, vars, options.depth, 1 + rng.below(3), rng);
  return SampledModel{std::move(algebra), std::move(theory)};
}

}  // namespace

std::vector<Operation> random_operations(const Signature& signature, std::size_t size, Rng& rng) {
  std::vector<Operation> ops;
  for (const auto& s : signature.symbols()) {
    Operation op{s.arity, std::vector<Element>(table_size(size, s.arity, std::size_t{1} << 20))};
    for (auto& cell : op.table) cell = static_cast<Element>(rng.below(size));
    ops.push_back(std::move(op));
  }
  return ops;
}

AlgebraPtr random_algebra(const Signature& signature, std::size_t size, const LatticePtr& lattice, Rng& rng) {
  const auto& L = *lattice;
  auto ops = random_operations(signature, size, rng);
  std::vector<Degree> below_top;
  for (Degree d : L.elements())
    if (d != L.top()) below_top.push_back(d);
  LRelation seed(lattice, size, L.bot());
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b)
      if (a != b && rng.coin()) seed.set(a, b, below_top[rng.below(below_top.size())]);
  const auto identity = LRelation::identity(lattice, size);
  auto order = preorder_closure(ops, seed, identity);
  return make_algebra(signature, size, std::move(ops), std::move(order));
}

LRelation random_compatible_preorder(const FuzzyOrderedAlgebra& algebra, Rng& rng) {
  const auto& L = algebra.degrees();
  LRelation seed = algebra.order();
  const std::size_t n = algebra.size();
  const std::size_t raises = rng.below(n + 1);
  for (std::size_t i = 0; i < raises; ++i) {
    const std::size_t a = rng.below(n), b = rng.below(n);
    seed.set(a, b, L.join(seed(a, b), L.element(rng.below(L.size()))));
  }
  return preorder_closure(algebra.ops(), seed, algebra.order());
}

Theory random_theory_for(const FuzzyOrderedAlgebra& algebra, const VariableSet& variables, std::size_t depth,
                         std::size_t entries, Rng& rng) {
  const auto& L = algebra.degrees();
  Theory theory(algebra.signature(), variables, algebra.lattice());
  const auto terms = enumerate_terms(algebra.signature(), variables.size(), depth, 100'000);
  if (terms.empty()) return theory;
  for (std::size_t i = 0; i < entries; ++i) {
    Inequality ineq{terms[rng.below(terms.size())], terms[rng.below(terms.size())]};
    const Degree holds = degree_in_algebra(algebra, ineq);
    std::vector<Degree> allowed;
    for (Degree d : L.elements())
      if (L.leq(d, holds)) allowed.push_back(d);
    theory.set(std::move(ineq), allowed[rng.below(allowed.size())]);
  }
  return theory;
}

AlgebraPtr corrupt_algebra(const FuzzyOrderedAlgebra& algebra, Rng& rng) {
  LRelation order = algebra.order();
  const std::size_t a = rng.below(algebra.size());
  order.set(a, a, algebra.degrees().bot());
  return make_algebra(algebra.signature(), algebra.size(), algebra.ops(), std::move(order), algebra.names());
}

std::vector<Operation> all_operations(std::size_t size, std::size_t arity, std::size_t cap) {
  const std::size_t cells = table_size(size, arity, cap);
  std::vector<Element> table(cells, 0);
  std::vector<Operation> out;
  do {
    if (out.size() >= cap) throw Error(ErrorKind::EnumerationTooLarge, "too many operation tables");
    out.push_back(Operation{arity, table});
  } while (next_tuple(table, size));
  return out;
}

std::vector<LRelation> all_relations(const LatticePtr& lattice, std::size_t size, std::size_t cap) {
  std::vector<Element> cells(size * size, 0);
  std::vector<LRelation> out;
  do {
    if (out.size() >= cap) throw Error(ErrorKind::EnumerationTooLarge, "too many L-relations");
    std::vector<Degree> degrees;
    degrees.reserve(cells.size());
    for (Element c : cells) degrees.push_back(Degree{static_cast<std::uint16_t>(c)});
    out.emplace_back(lattice, size, std::move(degrees));
  } while (next_tuple(cells, lattice->size()));
  return out;
}

SuiteReport verify_thm2(const SuiteOptions& options) {
  Recorder rec("thm2");
  const auto sig = Signature::parse("f/2");
  for (const auto& lattice : suite_lattices(options.max_lattice)) {
    const auto relations = all_relations(lattice, 2, options.cap);
    // ≈ candidates do not depend on ≼, so filter them once per operation.
    for (const auto& op : all_operations(2, 2)) {
      const std::vector<Operation> ops{op};
      std::vector<const LRelation*> equalities, orders;
      for (const auto& r : relations) {
        if (is_separating_reflexive(r) && is_symmetric(r) && is_otimes_transitive(r) && is_compatible(r, ops))
          equalities.push_back(&r);
        if (is_reflexive(r) && is_otimes_transitive(r) && is_compatible(r, ops)) orders.push_back(&r);
      }
      for (const auto* ord : orders) {
        const FuzzyOrderedAlgebra algebra(sig, 2, ops, *ord);
        for (const auto* eq : equalities) {
          const auto r = check_order_equality_equivalence(algebra, *eq);
          if (!r.hypotheses_hold) continue;
          rec.instance();
          std::string pattern;
          for (bool c : r.conditions) pattern += c ? '1' : '0';
          rec.expect(r.agree(), lattice->builtin_name() + " conditions disagree: " + pattern);
        }
      }
    }
  }
  if (options.corrupt) {
    Rng rng(options.seed);
    const auto lattice = make_chain(2, ChainKind::Godel);
    const FuzzyOrderedAlgebra base(sig, 2, {all_operations(2, 2).front()}, LRelation::identity(lattice, 2));
    const auto bad = corrupt_algebra(base, rng);
    const auto r = check_order_equality_equivalence(*bad, LRelation::identity(lattice, 2));
    rec.instance();
    rec.expect(r.hypotheses_hold && r.agree(), "corrupted instance: " + r.hypothesis_failure);
  }
  return rec.take();
}

SuiteReport verify_thm3(const SuiteOptions& options) {
  Recorder rec("thm3");
  const auto sig = Signature::parse("f/2");
  auto check = [&](const FuzzyOrderedAlgebra& algebra, const std::string& label) {
    rec.instance();
    rec.expect_valid(algebra, label);
  };
  for (const auto& lattice : suite_lattices(options.max_lattice)) {
    const auto relations = all_relations(lattice, 2, options.cap);
    for (const auto& op : all_operations(2, 2)) {
      const std::vector<Operation> ops{op};
      for (const auto& r : relations) {
        if (!is_reflexive(r) || !is_otimes_transitive(r) || !is_compatible(r, ops)) continue;
        const auto top = lattice->top();
        if (r(0, 1) == top && r(1, 0) == top) continue;
        check(FuzzyOrderedAlgebra(sig, 2, ops, r), lattice->builtin_name());
      }
    }
  }
  if (options.corrupt) {
    Rng rng(options.seed);
    const auto lattice = make_chain(2, ChainKind::Godel);
    const auto good = random_algebra(sig, 2, lattice, rng);
    check(*corrupt_algebra(*good, rng), "corrupted instance");
  }
  return rec.take();
}

SuiteReport verify_hsp(const SuiteOptions& options) {
  Recorder rec("hsp");
  for (std::size_t i = 0; i < options.instances; ++i) {
    Rng rng = Rng::derive(options.seed, i);
    auto [algebra, theory] = sample_model(options, rng);
    if (options.corrupt && i == 0) algebra = corrupt_algebra(*algebra, rng);
    rec.instance();
    const std::string tag = "instance " + std::to_string(i);
    auto expect_model = [&](const AlgebraPtr& m, const std::string& what) {
      if (!rec.expect_valid(*m, tag + " " + what)) return;
      const auto c = is_model(*m, theory, options.cap);
      rec.expect(c.holds, tag + " " + what + ": entry " + std::to_string(c.entry.value_or(0)) + " drops to " +
                              m->degrees().label(c.actual.degree) + " at valuation " +
                              format_tuple(std::vector<std::size_t>(c.actual.valuation.begin(),
                                                                    c.actual.valuation.end())));
    };
    expect_model(algebra, "generator");

    // Every subset of the universe as a generating set.
    const std::size_t n = algebra->size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<Element> seed;
      for (std::size_t e = 0; e < n; ++e)
        if (mask >> e & 1U) seed.push_back(static_cast<Element>(e));
      if (seed.empty() && !algebra->signature().has_constants()) continue;
      expect_model(generated_subalgebra(algebra, seed).algebra, "subalgebra " + format_tuple({mask}));
    }
    if (!options.corrupt || i != 0) {
      for (int k = 0; k < 2; ++k)
        expect_model(quotient(algebra, random_compatible_preorder(*algebra, rng)).algebra, "quotient");
    }
    const std::vector<AlgebraPtr> pair{algebra, algebra};
    expect_model(direct_product(pair).algebra, "self-product");
  }
  return rec.take();
}

SuiteReport verify_eq41(const SuiteOptions& options) {
  Recorder rec("eq41");
  // Term counts grow quickly with binary symbols, so those cases use one
  // variable.
  struct Shape {
    const char* signature;
    std::size_t variables;
  };
  static const Shape shapes[] = {{"f/1", 2}, {"f/1,g/1", 2}, {"f/1,c/0", 2}, {"f/2", 1}, {"f/2,c/0", 1}};
  const std::size_t depth = std::max<std::size_t>(options.depth, 3);
  const std::size_t classes = std::max<std::size_t>(1, options.instances / 10);
  for (std::size_t i = 0; i < classes; ++i) {
    Rng rng = Rng::derive(options.seed, i);
    const auto lattices = suite_lattices(options.max_lattice);
    const auto& lattice = lattices[rng.below(lattices.size())];
    const auto& shape = shapes[rng.below(std::size(shapes))];
    const auto sig = Signature::parse(shape.signature);
    const auto vars = variables_of(shape.variables);
    std::vector<AlgebraPtr> members;
    const std::size_t count = 1 + rng.below(2);
    for (std::size_t k = 0; k < count; ++k) members.push_back(random_algebra(sig, 1 + rng.below(options.max_size), lattice, rng));
    if (options.corrupt && i == 0) members.front() = corrupt_algebra(*members.front(), rng);

    rec.instance();
    const std::string tag = "class " + std::to_string(i);
    bool valid = true;
    for (const auto& m : members) valid = rec.expect_valid(*m, tag + " member") && valid;
    if (!valid) continue;
    const auto free = free_algebra(members, vars, kDefaultUniverseCap, options.cap);
    rec.expect_valid(*free.algebra, tag + " free algebra");
    const auto terms = enumerate_terms(sig, vars.size(), depth, options.cap);
    for (const auto& lhs : terms)
      for (const auto& rhs : terms) {
        const Inequality ineq{lhs, rhs};
        const Degree theta = free.theta(lhs, rhs);
        const Degree direct = degree_in_class(members, ineq, lattice, options.cap);
        if (theta != direct)
          rec.expect(false, tag + " " + render_inequality(ineq, sig, vars) + ": theta " + lattice->label(theta) +
                                " vs class " + lattice->label(direct));
        else
          rec.expect(true, {});
      }

    for (const auto& target : members) {
      std::vector<Element> valuation(vars.size(), 0);
      do {
        const auto h = sur_reflection(free, target, valuation);
        const auto hom = check_homomorphism(h);
        rec.expect(hom.holds, tag + " sur-reflection not a homomorphism: " + describe(hom));
        const auto fac = check_factorization(free, h, valuation, depth, options.cap);
        rec.expect(fac.holds, tag + " factorization fails on " + fac.detail);
      } while (next_tuple(valuation, target->size()));
    }
  }
  return rec.take();
}

SuiteReport verify_fai(const SuiteOptions& options) {
  Recorder rec("fai");
  const std::vector<std::string> attributes{"p", "q"};
  std::vector<LatticePtr> lattices;
  for (const auto& l : suite_lattices(options.max_lattice))
    if (l->size() == std::min<std::size_t>(3, options.max_lattice)) lattices.push_back(l);
  for (const auto& lattice : lattices) {
    const auto& L = *lattice;
    const auto lsets = all_lsets(L, attributes.size(), options.cap);
    std::vector<FAI> fais;
    for (const auto& a : lsets)
      for (const auto& b : lsets) fais.push_back(FAI{a, b});
    std::vector<Degree> nonzero;
    for (Degree d : L.elements())
      if (d != L.bot()) nonzero.push_back(d);

    bool corrupt_pending = options.corrupt;
    auto run = [&](const FAITheory& theory, const std::string& tag) {
      rec.instance();
      const auto mt = build_quotient_algebra(theory);
      AlgebraPtr checked = mt.algebra;
      if (corrupt_pending) {
        Rng rng(options.seed);
        checked = corrupt_algebra(*checked, rng);
        corrupt_pending = false;
      }
      if (!rec.expect_valid(*checked, tag)) return;
      const auto models = enumerate_models(theory, options.cap);
      const auto eq = checked->equality();
      bool eq_ok = true;
      for (std::size_t a = 0; a < checked->size() && eq_ok; ++a)
        for (std::size_t b = 0; b < checked->size() && eq_ok; ++b) {
          const auto& A = lsets[mt.representatives[a]];
          const auto& B = lsets[mt.representatives[b]];
          const Degree expected =
              L.meet(entailment_degree(L, models, FAI{A, B}), entailment_degree(L, models, FAI{B, A}));
          eq_ok = eq(a, b) == expected;
        }
      rec.expect(eq_ok, tag + ": induced equality differs from mutual entailment");
      const auto route = quotient_route_check(theory);
      rec.expect(route.ok(), tag + ": factor-algebra route " +
                                 (route.preorder.holds ? std::string("not isomorphic") : describe(route.preorder)));
    };

    const std::string name = lattice->builtin_name();
    run(FAITheory(attributes, lattice), name + " empty theory");
    for (std::size_t i = 0; i < fais.size(); ++i)
      for (Degree di : nonzero) {
        FAITheory one(attributes, lattice);
        one.set(fais[i], di);
        run(one, name + " theory " + format_tuple({i}));
        for (std::size_t j = i + 1; j < fais.size(); ++j)
          for (Degree dj : nonzero) {
            FAITheory two = one;
            two.set(fais[j], dj);
            run(two, name + " theory " + format_tuple({i, j}));
          }
      }
  }
  return rec.take();
}

SuiteReport verify_skeleton_crisp(const SuiteOptions& options) {
  Recorder rec("skeleton-crisp");
  for (std::size_t i = 0; i < options.instances; ++i) {
    Rng rng = Rng::derive(options.seed, i);
    auto [algebra, theory] = sample_model(options, rng);
    if (options.corrupt && i == 0) algebra = corrupt_algebra(*algebra, rng);
    rec.instance();
    const std::string tag = "instance " + std::to_string(i);
    if (!rec.expect_valid(*algebra, tag)) continue;
    const auto skel = skeleton(*algebra);
    rec.expect_valid(*skel, tag + " skeleton");
    const auto& L = algebra->degrees();
    const auto& sig = algebra->signature();
    const auto& vars = theory.variables();
    const auto terms = enumerate_terms(sig, vars.size(), std::min<std::size_t>(options.depth, 2), options.cap);
    for (const auto& lhs : terms)
      for (const auto& rhs : terms) {
        const Inequality ineq{lhs, rhs};
        if (degree_in_algebra(*algebra, ineq, options.cap) == L.top()) continue;
        const Degree d = degree_in_algebra(*skel, ineq, options.cap);
        rec.expect(d == L.bot(), tag + " skeleton keeps " + L.label(d) + " for " + render_inequality(ineq, sig, vars));
      }
    const std::vector<AlgebraPtr> closed{algebra, skel};
    const auto t = theory_of_class(closed, vars, std::min<std::size_t>(options.depth, 1), options.cap);
    rec.expect(is_crisp(t), tag + " theory of a skeleton-closed class is not crisp");
  }
  return rec.take();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"thm2", "thm3", "hsp", "eq41", "fai", "skeleton-crisp"};
  return names;
}

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "thm2") return verify_thm2(options);
  if (name == "thm3") return verify_thm3(options);
  if (name == "hsp") return verify_hsp(options);
  if (name == "eq41") return verify_eq41(options);
  if (name == "fai") return verify_fai(options);
  if (name == "skeleton-crisp") return verify_skeleton_crisp(options);
  throw Error(ErrorKind::ParseError, "unknown suite '" + std::string(name) + "'");
}

}  // namespace gradord
