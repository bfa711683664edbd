#include "gradord/term.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace gradord {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig, const VariableSet& vars)
      : text_(text), sig_(sig), vars_(vars) {}

  Term parse_all() {
    Term t = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view identifier() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Term parse() {
    const std::size_t at = pos_;
    const auto name = identifier();
    if (peek('(')) {
      ++pos_;
      const auto symbol = sig_.find(name);
      if (!symbol) throw Error(ErrorKind::UnknownSymbol, "'" + std::string(name) + "' at position " + std::to_string(at));
      std::vector<Term> args;
      args.push_back(parse());
      while (peek(',')) {
        ++pos_;
        args.push_back(parse());
      }
      if (!peek(')')) fail("expected ')' or ','");
      ++pos_;
      if (args.size() != sig_[*symbol].arity)
        throw Error(ErrorKind::ArityError, "'" + std::string(name) + "' expects " +
                                               std::to_string(sig_[*symbol].arity) + " arguments, got " +
                                               std::to_string(args.size()));
      return Term::apply(*symbol, std::move(args));
    }
    if (auto v = vars_.find(name)) return Term::variable(*v);
    if (auto symbol = sig_.find(name)) {
      if (sig_[*symbol].arity != 0)
        throw Error(ErrorKind::ArityError, "'" + std::string(name) + "' expects " +
                                               std::to_string(sig_[*symbol].arity) + " arguments, got 0");
      return Term::apply(*symbol, {});
    }
    throw Error(ErrorKind::UnknownSymbol, "'" + std::string(name) + "' at position " + std::to_string(at));
  }

  std::string_view text_;
  const Signature& sig_;
  const VariableSet& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

VariableSet::VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty() || !ident_start(n[0]) || !std::all_of(n.begin(), n.end(), ident_char))
      throw Error(ErrorKind::ParseError, "bad variable name '" + n + "'");
    if (!seen.insert(n).second) throw Error(ErrorKind::ParseError, "duplicate variable '" + n + "'");
  }
}

std::optional<std::size_t> VariableSet::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const auto& a : args) d = std::max(d, a.depth() + 1);
  return d;
}

std::size_t Term::node_count() const {
  std::size_t c = 1;
  for (const auto& a : args) c += a.node_count();
  return c;
}

bool operator==(const Term& a, const Term& b) {
  return a.kind == b.kind && a.index == b.index && a.args == b.args;
}

bool operator<(const Term& a, const Term& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.index != b.index) return a.index < b.index;
  return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end());
}

Term parse_term(std::string_view text, const Signature& signature, const VariableSet& variables) {
  return TermParser(text, signature, variables).parse_all();
}

std::string render_term(const Term& term, const Signature& signature, const VariableSet& variables) {
  if (term.is_variable()) return variables[term.index];
  std::string out = signature[term.index].name;
  if (term.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < term.args.size(); ++i) {
    if (i) out += ", ";
    out += render_term(term.args[i], signature, variables);
  }
  return out + ')';
}

VariableSet infer_variables(std::string_view text, const Signature& signature) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < text.size();) {
    if (!ident_start(text[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && ident_char(text[i])) ++i;
    std::string name(text.substr(start, i - start));
    if (!signature.find(name) && std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
  }
  return VariableSet(std::move(names));
}

void collect_variables(const Term& term, std::vector<bool>& seen) {
  if (term.is_variable()) {
    if (seen.size() <= term.index) seen.resize(term.index + 1, false);
    seen[term.index] = true;
    return;
  }
  for (const auto& a : term.args) collect_variables(a, seen);
}

Element eval_term(const FuzzyOrderedAlgebra& algebra, std::span<const Element> valuation, const Term& term) {
  if (term.is_variable()) return valuation[term.index];
  Element args[8];
  std::vector<Element> heap;
  std::span<Element> buf;
  if (term.args.size() <= 8) {
    buf = std::span<Element>(args, term.args.size());
  } else {
    heap.resize(term.args.size());
    buf = heap;
  }
  for (std::size_t i = 0; i < term.args.size(); ++i) buf[i] = eval_term(algebra, valuation, term.args[i]);
  return algebra.apply(term.index, buf);
}

std::vector<Term> enumerate_terms(const Signature& signature, std::size_t variable_count, std::size_t depth,
                                  std::size_t cap) {
  std::vector<Term> terms;
  std::vector<std::size_t> depths;
  auto push = [&](Term t, std::size_t d) {
    if (terms.size() >= cap)
      throw Error(ErrorKind::EnumerationTooLarge, "more than " + std::to_string(cap) + " terms");
    terms.push_back(std::move(t));
    depths.push_back(d);
  };
  for (std::size_t v = 0; v < variable_count; ++v) push(Term::variable(v), 0);
  for (std::size_t k = 0; k < signature.size(); ++k)
    if (signature[k].arity == 0) push(Term::apply(k, {}), 0);

  for (std::size_t level = 1; level <= depth; ++level) {
    const std::size_t known = terms.size();
    if (known == 0) break;
    for (std::size_t k = 0; k < signature.size(); ++k) {
      const std::size_t arity = signature[k].arity;
      if (arity == 0) continue;
      std::vector<Element> pick(arity, 0);
      do {
        bool reaches_level = false;
        for (Element p : pick) reaches_level |= depths[p] + 1 == level;
        if (!reaches_level) continue;
        std::vector<Term> args;
        args.reserve(arity);
        for (Element p : pick) args.push_back(terms[p]);
        push(Term::apply(k, std::move(args)), level);
      } while (next_tuple(pick, known));
    }
  }
  return terms;
}

}  // namespace gradord
