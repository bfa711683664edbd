#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gradord/textio.hpp"
#include "gradord/verify.hpp"

using namespace gradord;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kMalformed = 2, kTooLarge = 3 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EnumerationTooLarge:
      return kTooLarge;
    case ErrorKind::MalformedTable:
    case ErrorKind::ParseError:
    case ErrorKind::SyntaxError:
    case ErrorKind::UnknownSymbol:
    case ErrorKind::ArityError:
    case ErrorKind::Io:
      return kMalformed;
    default:
      return kInvalid;
  }
}

struct Globals {
  std::optional<std::size_t> depth;
  std::optional<std::size_t> cap;
  std::uint64_t seed = 1;
  bool porcelain = false;

  std::size_t enumeration_cap() const {
    if (cap) return *cap;
    if (const char* env = std::getenv("GRADORD_CAP")) {
      try {
        return static_cast<std::size_t>(std::stoull(env));
      } catch (const std::exception&) {
        throw Error(ErrorKind::ParseError, "GRADORD_CAP is not a number");
      }
    }
    return kDefaultEnumerationCap;
  }
};

// key=value lines under --porcelain, "key: value" otherwise.
class Out {
 public:
  explicit Out(bool porcelain) : porcelain_(porcelain) {}
  void kv(const std::string& key, const std::string& value) const {
    std::cout << key << (porcelain_ ? "=" : ": ") << value << '\n';
  }

 private:
  bool porcelain_;
};

std::string valuation_text(const FuzzyOrderedAlgebra& algebra, const VariableSet& vars,
                           const std::vector<Element>& valuation) {
  std::string out;
  for (std::size_t i = 0; i < vars.size() && i < valuation.size(); ++i) {
    if (!out.empty()) out += ',';
    out += vars[i] + "=" + algebra.name(valuation[i]);
  }
  return out.empty() ? "-" : out;
}

void report_violations(const Out& out, const ValidationReport& report) {
  out.kv("status", report.ok() ? "valid" : "invalid");
  for (const auto& v : report.violations)
    out.kv("violation", v.axiom + " " + format_tuple(v.witness) + (v.detail.empty() ? "" : " " + v.detail));
}

int cmd_validate(const Globals& g, const std::string& path, const std::string& algebra_path) {
  const Out out(g.porcelain);
  const auto text = read_file(path);
  const auto kind = document_kind(text);
  out.kv("kind", kind.empty() ? "unknown" : kind);
  if (kind == "lattice") {
    const auto report = validate_lattice(parse_lattice_tables(text));
    report_violations(out, report);
    return report.ok() ? kOk : kInvalid;
  }
  const auto doc = load_document(path);
  if (const auto* a = std::get_if<AlgebraPtr>(&doc)) {
    out.kv("elements", std::to_string((*a)->size()));
    const auto report = validate_algebra(**a);
    report_violations(out, report);
    return report.ok() ? kOk : kInvalid;
  }
  if (const auto* r = std::get_if<RelationDocument>(&doc)) {
    if (algebra_path.empty()) {
      const bool ok = is_reflexive(r->relation) && is_otimes_transitive(r->relation);
      out.kv("status", ok ? "valid" : "invalid");
      if (!ok) out.kv("violation", "not a reflexive ⊗-transitive L-relation");
      return ok ? kOk : kInvalid;
    }
    const auto algebra = load_algebra(algebra_path);
    const auto c = is_compatible_preorder(r->relation, algebra->ops(), algebra->order());
    out.kv("status", c ? "valid" : "invalid");
    if (!c) out.kv("violation", c.detail + " " + format_tuple(c.witness));
    return c ? kOk : kInvalid;
  }
  if (const auto* t = std::get_if<Theory>(&doc)) out.kv("entries", std::to_string(t->entries().size()));
  if (const auto* t = std::get_if<FAITheory>(&doc)) out.kv("entries", std::to_string(t->entries().size()));
  out.kv("status", "valid");
  return kOk;
}

int cmd_entail(const Globals& g, const std::vector<std::string>& files, const std::string& query) {
  const Out out(g.porcelain);
  const std::size_t cap = g.enumeration_cap();
  std::optional<Theory> theory;
  std::optional<FAITheory> fai_theory;
  std::vector<AlgebraPtr> algebras;
  std::vector<std::string> algebra_files;
  for (const auto& f : files) {
    auto doc = load_document(f);
    if (auto* a = std::get_if<AlgebraPtr>(&doc)) {
      if (auto report = validate_algebra(**a); !report.ok())
        throw Error(ErrorKind::InvalidStructure, f + ": " + report.describe());
      algebras.push_back(*a);
      algebra_files.push_back(f);
    } else if (auto* t = std::get_if<Theory>(&doc)) {
      if (theory) throw Error(ErrorKind::ParseError, "more than one theory file");
      theory = std::move(*t);
    } else if (auto* t = std::get_if<FAITheory>(&doc)) {
      if (fai_theory) throw Error(ErrorKind::ParseError, "more than one FAI theory file");
      fai_theory = std::move(*t);
    } else {
      throw Error(ErrorKind::ParseError, f + ": entail takes algebras, a theory or an FAI theory");
    }
  }

  if (fai_theory) {
    if (theory || !algebras.empty()) throw Error(ErrorKind::ParseError, "an FAI theory cannot be mixed with algebras");
    const auto& L = *fai_theory->lattice();
    const auto fai = parse_fai(query, fai_theory->attributes(), L);
    const auto models = enumerate_models(*fai_theory, cap);
    const Degree d = entailment_degree(L, models, fai);
    out.kv("degree", L.label(d));
    out.kv("models", std::to_string(models.size()));
    for (const auto& m : models)
      if (fai_degree(L, m, fai) == d) {
        out.kv("witness", render_lset(L, fai_theory->attributes(), m));
        break;
      }
    return kOk;
  }

  std::vector<AlgebraPtr> members = algebras;
  std::vector<std::string> member_files = algebra_files;
  if (theory) {
    members.clear();
    member_files.clear();
    for (std::size_t i = 0; i < algebras.size(); ++i)
      if (is_model(*algebras[i], *theory, cap)) {
        members.push_back(algebras[i]);
        member_files.push_back(algebra_files[i]);
      }
    out.kv("models", std::to_string(members.size()) + "/" + std::to_string(algebras.size()));
  }
  if (members.empty() && !theory) throw Error(ErrorKind::ParseError, "entail needs at least one algebra or theory");

  const Signature sig = theory ? theory->signature() : members.front()->signature();
  const LatticePtr lattice = theory ? theory->lattice() : members.front()->lattice();
  const VariableSet vars = infer_variables(query, sig);
  const auto ineq = parse_inequality(query, sig, vars);
  if (g.depth && std::max(ineq.lhs.depth(), ineq.rhs.depth()) > *g.depth)
    throw Error(ErrorKind::EnumerationTooLarge, "query deeper than --depth " + std::to_string(*g.depth));
  const auto result = evaluate_in_class(members, ineq, lattice, cap);
  out.kv("degree", lattice->label(result.degree));
  if (result.member) {
    out.kv("witness", member_files[*result.member]);
    out.kv("valuation", valuation_text(*members[*result.member], vars, result.valuation));
  } else if (members.empty()) {
    out.kv("witness", "empty class");
  }
  return kOk;
}

struct ConstructArgs {
  std::string kind;
  std::vector<std::string> inputs;
  std::string output;
  std::string preorder;
  bool all_top = false;
  std::string generators;
  std::string variables;
  std::string degree;
  std::string signature;
  std::string lattice = "godel:2";
};

int cmd_construct(const Globals& g, const ConstructArgs& args) {
  const Out out(g.porcelain);
  const std::size_t cap = g.enumeration_cap();
  auto one_input = [&]() -> const std::string& {
    if (args.inputs.size() != 1) throw Error(ErrorKind::ParseError, args.kind + " takes exactly one input file");
    return args.inputs.front();
  };
  auto valid_algebra = [](const std::string& path) {
    auto a = load_algebra(path);
    if (auto report = validate_algebra(*a); !report.ok())
      throw Error(ErrorKind::InvalidStructure, path + ": " + report.describe());
    return a;
  };

  AlgebraPtr result;
  if (args.kind == "product") {
    std::vector<AlgebraPtr> family;
    for (const auto& f : args.inputs) family.push_back(valid_algebra(f));
    if (family.empty())
      result = direct_product(family, Signature::parse(args.signature), resolve_lattice(args.lattice, "."), kDefaultUniverseCap).algebra;
    else
      result = direct_product(family).algebra;
  } else if (args.kind == "quotient") {
    const auto a = valid_algebra(one_input());
    LRelation q = LRelation::constant(a->lattice(), a->size(), a->degrees().top());
    if (!args.all_top) {
      if (args.preorder.empty()) throw Error(ErrorKind::ParseError, "quotient needs --preorder FILE or --all-top");
      q = load_relation(args.preorder).relation;
    }
    result = quotient(a, q).algebra;
  } else if (args.kind == "subalgebra") {
    const auto a = valid_algebra(one_input());
    std::vector<Element> seed;
    std::istringstream in(args.generators);
    for (std::string name; in >> name;) {
      auto e = a->find_element(name);
      if (!e) throw Error(ErrorKind::ParseError, "unknown element '" + name + "'");
      seed.push_back(*e);
    }
    result = generated_subalgebra(a, seed).algebra;
  } else if (args.kind == "free") {
    std::vector<AlgebraPtr> members;
    for (const auto& f : args.inputs) members.push_back(valid_algebra(f));
    std::string spaced = args.variables;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::vector<std::string> names;
    std::istringstream in(spaced);
    for (std::string v; in >> v;) names.push_back(v);
    result = free_algebra(members, VariableSet(names), kDefaultUniverseCap, cap).algebra;
  } else if (args.kind == "skeleton") {
    result = skeleton(*valid_algebra(one_input()));
  } else if (args.kind == "threshold") {
    const auto a = valid_algebra(one_input());
    if (args.degree.empty()) throw Error(ErrorKind::ParseError, "threshold needs --degree");
    result = threshold(*a, a->degrees().parse_label(args.degree));
  } else if (args.kind == "fai-quotient") {
    result = build_quotient_algebra(load_fai_theory(one_input()), kDefaultUniverseCap).algebra;
  } else {
    throw Error(ErrorKind::ParseError, "unknown construction '" + args.kind + "'");
  }

  const auto text = write_algebra(*result);
  if (args.output.empty() || args.output == "-") {
    std::cout << text;
    return kOk;
  }
  std::ofstream file(args.output, std::ios::binary);
  if (!file || !(file << text)) throw Error(ErrorKind::Io, "cannot write " + args.output);
  out.kv("wrote", args.output);
  out.kv("elements", std::to_string(result->size()));
  return kOk;
}

struct VerifyArgs {
  std::string suite;
  std::size_t instances = 200;
  std::size_t max_size = 3;
  std::size_t max_lattice = 3;
  bool corrupt = false;
};

int cmd_verify(const Globals& g, const VerifyArgs& args) {
  const Out out(g.porcelain);
  SuiteOptions options;
  options.seed = g.seed;
  options.instances = args.instances;
  options.max_size = args.max_size;
  options.max_lattice = args.max_lattice;
  if (g.depth) options.depth = *g.depth;
  options.corrupt = args.corrupt;
  options.cap = g.enumeration_cap();
  std::vector<std::string> suites;
  if (args.suite == "all")
    suites = suite_names();
  else
    suites.push_back(args.suite);
  bool passed = true;
  for (const auto& name : suites) {
    const auto r = run_suite(name, options);
    out.kv("suite", r.suite);
    out.kv("instances", std::to_string(r.instances));
    out.kv("checks", std::to_string(r.checks));
    out.kv("failures", std::to_string(r.failures));
    for (const auto& f : r.findings) out.kv("finding", f);
    out.kv("status", r.passed() ? "pass" : "fail");
    passed = passed && r.passed();
  }
  return passed ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradord: finite algebras with fuzzy order"};
  app.require_subcommand(1);
  Globals g;
  std::size_t cap_flag = 0, depth_flag = 0;
  auto* depth_opt = app.add_option("--depth", depth_flag, "Term depth bound");
  auto* cap_opt = app.add_option("--cap", cap_flag, "Enumeration cap (overrides GRADORD_CAP)");
  app.add_option("--seed", g.seed, "Seed for randomized suites")->capture_default_str();
  app.add_flag("--porcelain", g.porcelain, "key=value output");

  std::string validate_path, validate_algebra_path;
  auto* validate = app.add_subcommand("validate", "Check a lattice, algebra, relation or theory file");
  validate->add_option("file", validate_path)->required();
  validate->add_option("--algebra", validate_algebra_path, "Check a relation as a compatible preorder on this algebra");

  std::vector<std::string> entail_files;
  std::string query;
  auto* entail = app.add_subcommand("entail", "Degree of an inequality or FAI");
  entail->add_option("files", entail_files, "Algebras (a class), a theory with candidate algebras, or an FAI theory")
      ->required();
  entail->add_option("-q,--query", query, "'t <= t2' or '{p:1} => {q:1}'")->required();

  ConstructArgs cargs;
  auto* construct = app.add_subcommand("construct", "Build an algebra and write it in the text format");
  construct->add_option("kind", cargs.kind, "product|quotient|subalgebra|free|skeleton|threshold|fai-quotient")
      ->required();
  construct->add_option("inputs", cargs.inputs, "Input files");
  construct->add_option("-o,--output", cargs.output, "Output file (default stdout)");
  construct->add_option("--preorder", cargs.preorder, "Relation file for quotient");
  construct->add_flag("--all-top", cargs.all_top, "Quotient by the all-1 preorder");
  construct->add_option("--generators", cargs.generators, "Element names for subalgebra");
  construct->add_option("--variables", cargs.variables, "Variable names for free");
  construct->add_option("--degree", cargs.degree, "Threshold degree label");
  construct->add_option("--signature", cargs.signature, "Signature for an empty product");
  construct->add_option("--lattice", cargs.lattice, "Lattice for an empty product")->capture_default_str();

  VerifyArgs vargs;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", vargs.suite, "thm2|thm3|hsp|eq41|fai|skeleton-crisp|all")->required();
  verify->add_option("--instances", vargs.instances, "Seeded instances")->capture_default_str();
  verify->add_option("--max-size", vargs.max_size, "Largest generated universe")->capture_default_str();
  verify->add_option("--max-lattice", vargs.max_lattice, "Longest chain")->capture_default_str();
  verify->add_flag("--corrupt", vargs.corrupt, "Inject a corrupted algebra");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }
  if (*cap_opt) g.cap = cap_flag;
  if (*depth_opt) g.depth = depth_flag;

  try {
    if (*validate) return cmd_validate(g, validate_path, validate_algebra_path);
    if (*entail) return cmd_entail(g, entail_files, query);
    if (*construct) return cmd_construct(g, cargs);
    if (*verify) return cmd_verify(g, vargs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kOk;
}
