#include "gradord/textio.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace gradord {

namespace {

struct Row {
  std::size_t line = 0;
  std::string text;
};

struct Section {
  std::string name;
  std::string arg;
  std::size_t line = 0;
  std::vector<std::pair<std::string, std::string>> keys;
  std::vector<Row> rows;

  const std::string* key(std::string_view k) const {
    for (const auto& [name, value] : keys)
      if (name == k) return &value;
    return nullptr;
  }
};

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

bool is_key_line(const std::string& line, std::string& key, std::string& value) {
  std::size_t i = 0;
  if (line.empty() || !(std::isalpha(static_cast<unsigned char>(line[0])) || line[0] == '_')) return false;
  while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_' || line[i] == '-')) ++i;
  std::size_t j = i;
  while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j]))) ++j;
  if (j >= line.size() || line[j] != '=') return false;
  key = line.substr(0, i);
  value = trim(std::string_view(line).substr(j + 1));
  return true;
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> sections;
  std::istringstream in{std::string(text)};
  std::size_t number = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(number, "unterminated section header");
      const auto inner = tokens(std::string_view(line).substr(1, line.size() - 2));
      if (inner.empty() || inner.size() > 2) parse_fail(number, "bad section header '" + line + "'");
      sections.push_back(Section{inner[0], inner.size() == 2 ? inner[1] : "", number, {}, {}});
      continue;
    }
    if (sections.empty()) parse_fail(number, "content before the first section");
    auto& s = sections.back();
    std::string key, value;
    if (s.rows.empty() && is_key_line(line, key, value)) {
      if (s.key(key)) parse_fail(number, "duplicate key '" + key + "'");
      s.keys.emplace_back(key, value);
    } else {
      s.rows.push_back(Row{number, line});
    }
  }
  return sections;
}

const Section* find_section(const std::vector<Section>& sections, std::string_view name, std::string_view arg = {}) {
  const Section* found = nullptr;
  for (const auto& s : sections)
    if (s.name == name && s.arg == arg) {
      if (found) parse_fail(s.line, "duplicate section [" + s.name + (arg.empty() ? "" : " " + s.arg) + "]");
      found = &s;
    }
  return found;
}

const std::string& require_key(const Section& s, std::string_view k) {
  if (const auto* v = s.key(k)) return *v;
  parse_fail(s.line, "[" + s.name + "] needs '" + std::string(k) + " = ...'");
}

std::size_t parse_count(const std::string& value, std::size_t line) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      value.size() > 9)
    parse_fail(line, "expected a count, got '" + value + "'");
  return static_cast<std::size_t>(std::stoul(value));
}

// `count` rows of `width` tokens each.
std::vector<std::vector<std::string>> table_rows(const Section& s, std::size_t count, std::size_t width) {
  const std::string where = "[" + s.name + (s.arg.empty() ? "" : " " + s.arg) + "]";
  if (!s.keys.empty()) parse_fail(s.line, where + " takes no keys");
  if (s.rows.size() != count)
    parse_fail(s.rows.empty() ? s.line : s.rows.back().line,
               where + " has " + std::to_string(s.rows.size()) + " rows, expected " + std::to_string(count));
  std::vector<std::vector<std::string>> out;
  for (const auto& r : s.rows) {
    auto t = tokens(r.text);
    if (t.size() != width)
      parse_fail(r.line, where + " row has " + std::to_string(t.size()) + " entries, expected " + std::to_string(width));
    out.push_back(std::move(t));
  }
  return out;
}

std::uint16_t label_index(const std::vector<std::string>& labels, const std::string& token, std::size_t line) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == token) return static_cast<std::uint16_t>(i);
  parse_fail(line, "unknown label '" + token + "'");
}

std::vector<std::string> name_list(const std::string& value) {
  std::string spaced = value;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  return tokens(spaced);
}

LatticeTables lattice_tables_from(const std::vector<Section>& sections, const Section& head) {
  if (const auto* kind = head.key("kind")) {
    const auto parsed = parse_chain_kind(*kind);
    if (!parsed) parse_fail(head.line, "unknown lattice kind '" + *kind + "'");
    const std::size_t n = head.key("size") ? parse_count(*head.key("size"), head.line) : 2;
    return make_chain(n, *parsed)->tables();
  }
  LatticeTables t;
  t.labels = tokens(require_key(head, "labels"));
  t.size = t.labels.size();
  if (t.size == 0) parse_fail(head.line, "a lattice needs at least one label");
  if (const auto* size = head.key("size"); size && parse_count(*size, head.line) != t.size)
    parse_fail(head.line, "size disagrees with the number of labels");
  t.bot = head.key("bot") ? label_index(t.labels, *head.key("bot"), head.line) : 0;
  t.top = head.key("top") ? label_index(t.labels, *head.key("top"), head.line)
                          : static_cast<std::uint16_t>(t.size - 1);
  const std::size_t n = t.size;

  const auto* leq = find_section(sections, "leq");
  if (!leq) parse_fail(head.line, "explicit lattice needs a [leq] table");
  t.leq.assign(n * n, false);
  auto rows = table_rows(*leq, n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& tok = rows[a][b];
      if (tok != "0" && tok != "1") parse_fail(leq->rows[a].line, "[leq] entries are 0 or 1");
      t.leq[a * n + b] = tok == "1";
    }
  auto read = [&](const char* name, std::vector<std::uint16_t>& out) {
    const auto* s = find_section(sections, name);
    if (!s) return false;
    out.assign(n * n, 0);
    const auto r = table_rows(*s, n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) out[a * n + b] = label_index(t.labels, r[a][b], s->rows[a].line);
    return true;
  };
  if (!read("otimes", t.otimes)) parse_fail(head.line, "explicit lattice needs an [otimes] table");
  const bool has_meet = read("meet", t.meet);
  const bool has_join = read("join", t.join);
  if (has_meet != has_join) parse_fail(head.line, "give both [meet] and [join] or neither");
  const bool has_residuum = read("residuum", t.residuum);
  derive_missing_tables(t, !has_meet, !has_residuum);
  return t;
}

LatticePtr lattice_for(const std::vector<Section>& sections, const Section& head,
                       const std::filesystem::path& base_dir) {
  const auto* spec = head.key("lattice");
  if (spec && *spec != "inline") return resolve_lattice(*spec, base_dir);
  const auto* inline_head = find_section(sections, "lattice");
  if (!inline_head) parse_fail(head.line, "no lattice given");
  return ResiduatedLattice::create(lattice_tables_from(sections, *inline_head));
}

std::vector<std::string> element_names(const Section& head) {
  if (const auto* e = head.key("elements")) {
    auto names = tokens(*e);
    if (names.empty()) parse_fail(head.line, "empty element list");
    return names;
  }
  if (const auto* size = head.key("size")) {
    const std::size_t n = parse_count(*size, head.line);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    return names;
  }
  parse_fail(head.line, "[" + head.name + "] needs 'elements = ...' or 'size = N'");
}

Element element_index(const std::vector<std::string>& names, const std::string& token, std::size_t line) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == token) return static_cast<Element>(i);
  parse_fail(line, "unknown element '" + token + "'");
}

LRelation relation_rows(const Section& s, const std::vector<Row>& rows_in, const LatticePtr& lattice, std::size_t n) {
  Section rows_only{s.name, s.arg, s.line, {}, rows_in};
  const auto rows = table_rows(rows_only, n, n);
  LRelation r(lattice, n, lattice->bot());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      try {
        r.set(a, b, lattice->parse_label(rows[a][b]));
      } catch (const Error&) {
        parse_fail(rows_in[a].line, "unknown degree '" + rows[a][b] + "'");
      }
    }
  return r;
}

Degree degree_token(const ResiduatedLattice& L, const std::string& token, std::size_t line) {
  try {
    return L.parse_label(token);
  } catch (const Error&) {
    parse_fail(line, "unknown degree '" + token + "'");
  }
}

AlgebraPtr algebra_from(const std::vector<Section>& sections, const Section& head,
                        const std::filesystem::path& base_dir) {
  auto lattice = lattice_for(sections, head, base_dir);
  const auto sig = head.key("signature") ? Signature::parse(*head.key("signature")) : Signature();
  auto names = element_names(head);
  if (std::set<std::string>(names.begin(), names.end()).size() != names.size())
    parse_fail(head.line, "duplicate element names");
  const std::size_t n = names.size();
  if (!head.rows.empty()) parse_fail(head.rows.front().line, "unexpected data in [algebra]");

  std::vector<Operation> ops;
  for (const auto& sym : sig.symbols()) {
    const auto* s = find_section(sections, "op", sym.name);
    if (!s) parse_fail(head.line, "missing table [op " + sym.name + "]");
    const std::size_t cells = table_size(n, sym.arity, std::size_t{1} << 24);
    const std::size_t width = sym.arity == 0 ? 1 : n;
    const auto rows = table_rows(*s, cells / width, width);
    Operation op{sym.arity, {}};
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& tok : rows[r]) op.table.push_back(element_index(names, tok, s->rows[r].line));
    ops.push_back(std::move(op));
  }
  for (const auto& s : sections)
    if (s.name == "op" && !sig.find(s.arg)) parse_fail(s.line, "table for unknown symbol '" + s.arg + "'");
  const auto* order = find_section(sections, "order");
  if (!order) parse_fail(head.line, "missing [order] table");
  if (!order->keys.empty()) parse_fail(order->line, "[order] takes no keys");
  auto rel = relation_rows(*order, order->rows, lattice, n);
  return make_algebra(sig, n, std::move(ops), std::move(rel), std::move(names));
}

std::pair<std::string, Degree> split_degree(const std::string& text, const ResiduatedLattice& L, std::size_t line) {
  const auto at = text.rfind('@');
  if (at == std::string::npos) return {text, L.top()};
  return {text.substr(0, at), degree_token(L, trim(std::string_view(text).substr(at + 1)), line)};
}

Theory theory_from(const std::vector<Section>& sections, const Section& head, const std::filesystem::path& base_dir) {
  auto lattice = lattice_for(sections, head, base_dir);
  const auto sig = head.key("signature") ? Signature::parse(*head.key("signature")) : Signature();
  VariableSet vars;
  if (const auto* v = head.key("variables")) {
    vars = VariableSet(name_list(*v));
  } else {
    std::string all;
    for (const auto& r : head.rows) all += split_degree(r.text, *lattice, r.line).first + "\n";
    vars = infer_variables(all, sig);
  }
  Theory theory(sig, vars, lattice);
  for (const auto& r : head.rows) {
    auto [body, d] = split_degree(r.text, *lattice, r.line);
    try {
      theory.set(parse_inequality(body, sig, vars), d);
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(r.line) + ": " + e.message());
    }
  }
  return theory;
}

FAITheory fai_from(const std::vector<Section>& sections, const Section& head, const std::filesystem::path& base_dir) {
  auto lattice = lattice_for(sections, head, base_dir);
  auto attributes = name_list(require_key(head, "attributes"));
  FAITheory theory(attributes, lattice);
  for (const auto& r : head.rows) {
    auto [body, d] = split_degree(r.text, *lattice, r.line);
    try {
      theory.set(parse_fai(body, attributes, *lattice), d);
    } catch (const Error& e) {
      throw Error(e.kind(), "line " + std::to_string(r.line) + ": " + e.message());
    }
  }
  return theory;
}

// Element tokens may not contain whitespace, '#' or brackets.
std::vector<std::string> writable_names(const std::vector<std::string>& names, const char* fallback) {
  std::vector<std::string> out;
  for (auto n : names) {
    std::erase_if(n, [](char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '#' || c == '[' || c == ']'; });
    out.push_back(std::move(n));
  }
  const bool usable = std::set<std::string>(out.begin(), out.end()).size() == out.size() &&
                      std::none_of(out.begin(), out.end(), [](const std::string& n) { return n.empty(); });
  if (usable) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fallback + std::to_string(i);
  return out;
}

void write_lattice_body(std::ostringstream& out, const ResiduatedLattice& L) {
  const auto& t = L.tables();
  if (!L.builtin_name().empty()) {
    const auto colon = L.builtin_name().find(':');
    out << "[lattice]\nkind = " << L.builtin_name().substr(0, colon) << "\nsize = " << t.size << "\n";
    return;
  }
  const std::size_t n = t.size;
  out << "[lattice]\nlabels =";
  for (const auto& l : t.labels) out << ' ' << l;
  out << "\nbot = " << t.labels[t.bot] << "\ntop = " << t.labels[t.top] << "\n\n[leq]\n";
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << (t.leq[a * n + b] ? 1 : 0);
    out << '\n';
  }
  auto table = [&](const char* name, const std::vector<std::uint16_t>& cells) {
    out << "\n[" << name << "]\n";
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) out << (b ? " " : "") << t.labels[cells[a * n + b]];
      out << '\n';
    }
  };
  table("meet", t.meet);
  table("join", t.join);
  table("otimes", t.otimes);
  table("residuum", t.residuum);
}

std::string lattice_key(const ResiduatedLattice& L) { return L.builtin_name().empty() ? "inline" : L.builtin_name(); }

void write_inline_lattice(std::ostringstream& out, const ResiduatedLattice& L) {
  if (!L.builtin_name().empty()) return;
  out << '\n';
  write_lattice_body(out, L);
}

void write_rows(std::ostringstream& out, const LRelation& r) {
  const auto& L = r.degrees();
  for (std::size_t a = 0; a < r.base_size(); ++a) {
    for (std::size_t b = 0; b < r.base_size(); ++b) out << (b ? " " : "") << L.label(r(a, b));
    out << '\n';
  }
}

}  // namespace

LatticeTables parse_lattice_tables(std::string_view text) {
  const auto sections = split_sections(text);
  const auto* head = find_section(sections, "lattice");
  if (!head) throw Error(ErrorKind::ParseError, "no [lattice] section");
  return lattice_tables_from(sections, *head);
}

LatticePtr resolve_lattice(std::string_view spec, const std::filesystem::path& base_dir) {
  const auto colon = spec.find(':');
  if (auto kind = parse_chain_kind(spec.substr(0, colon))) {
    std::size_t n = 2;
    if (colon != std::string_view::npos) n = parse_count(std::string(spec.substr(colon + 1)), 0);
    return make_chain(n, *kind);
  }
  return load_lattice(base_dir / std::filesystem::path(std::string(spec)));
}

std::string document_kind(std::string_view text) {
  const auto sections = split_sections(text);
  for (const char* kind : {"algebra", "theory", "fai", "relation", "lattice"})
    for (const auto& s : sections)
      if (s.name == kind) return kind;
  return sections.empty() ? "" : sections.front().name;
}

Document parse_document(std::string_view text, const std::filesystem::path& base_dir) {
  const auto sections = split_sections(text);
  if (sections.empty()) throw Error(ErrorKind::ParseError, "empty document");
  const auto kind = document_kind(text);
  const auto* head = find_section(sections, kind);
  if (kind == "algebra") return algebra_from(sections, *head, base_dir);
  if (kind == "theory") return theory_from(sections, *head, base_dir);
  if (kind == "fai") return fai_from(sections, *head, base_dir);
  if (kind == "relation") {
    auto lattice = lattice_for(sections, *head, base_dir);
    auto names = element_names(*head);
    auto rel = relation_rows(*head, head->rows, lattice, names.size());
    return RelationDocument{std::move(rel), std::move(names)};
  }
  if (kind == "lattice") return ResiduatedLattice::create(lattice_tables_from(sections, *head));
  throw Error(ErrorKind::ParseError, "unknown document kind [" + kind + "]");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Document load_document(const std::filesystem::path& path) {
  const auto text = read_file(path);
  try {
    return parse_document(text, path.parent_path());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

namespace {

template <class T>
T load_as(const std::filesystem::path& path, const char* kind) {
  auto doc = load_document(path);
  if (auto* v = std::get_if<T>(&doc)) return std::move(*v);
  throw Error(ErrorKind::ParseError, path.string() + ": expected a " + kind + " document");
}

}  // namespace

LatticePtr load_lattice(const std::filesystem::path& path) { return load_as<LatticePtr>(path, "lattice"); }
AlgebraPtr load_algebra(const std::filesystem::path& path) { return load_as<AlgebraPtr>(path, "algebra"); }
RelationDocument load_relation(const std::filesystem::path& path) {
  return load_as<RelationDocument>(path, "relation");
}
Theory load_theory(const std::filesystem::path& path) { return load_as<Theory>(path, "theory"); }
FAITheory load_fai_theory(const std::filesystem::path& path) { return load_as<FAITheory>(path, "fai"); }

std::string write_lattice(const ResiduatedLattice& lattice) {
  std::ostringstream out;
  write_lattice_body(out, lattice);
  return out.str();
}

std::string write_algebra(const FuzzyOrderedAlgebra& algebra) {
  std::ostringstream out;
  const auto names = writable_names(algebra.names(), "e");
  out << "[algebra]\nlattice = " << lattice_key(algebra.degrees()) << "\nsignature = " << algebra.signature().render()
      << "\nelements =";
  for (const auto& n : names) out << ' ' << n;
  out << '\n';
  const std::size_t n = algebra.size();
  for (std::size_t k = 0; k < algebra.ops().size(); ++k) {
    const auto& op = algebra.op(k);
    out << "\n[op " << algebra.signature()[k].name << "]\n";
    const std::size_t width = op.arity == 0 ? 1 : n;
    for (std::size_t i = 0; i < op.table.size(); ++i)
      out << names[op.table[i]] << ((i + 1) % width == 0 ? "\n" : " ");
  }
  out << "\n[order]\n";
  write_rows(out, algebra.order());
  write_inline_lattice(out, algebra.degrees());
  return out.str();
}

std::string write_relation(const LRelation& relation, const std::vector<std::string>& elements) {
  std::ostringstream out;
  out << "[relation]\nlattice = " << lattice_key(relation.degrees()) << "\nelements =";
  for (const auto& n : writable_names(elements, "e")) out << ' ' << n;
  out << '\n';
  write_rows(out, relation);
  write_inline_lattice(out, relation.degrees());
  return out.str();
}

std::string write_theory(const Theory& theory) {
  std::ostringstream out;
  const auto& L = *theory.lattice();
  out << "[theory]\nlattice = " << lattice_key(L) << "\nsignature = " << theory.signature().render()
      << "\nvariables =";
  for (const auto& v : theory.variables().names()) out << ' ' << v;
  out << '\n';
  for (const auto& [ineq, d] : theory.entries())
    out << render_inequality(ineq, theory.signature(), theory.variables()) << " @ " << L.label(d) << '\n';
  write_inline_lattice(out, L);
  return out.str();
}

std::string write_fai_theory(const FAITheory& theory) {
  std::ostringstream out;
  const auto& L = *theory.lattice();
  out << "[fai]\nlattice = " << lattice_key(L) << "\nattributes =";
  for (const auto& a : theory.attributes()) out << ' ' << a;
  out << '\n';
  for (const auto& [fai, d] : theory.entries())
    out << render_fai(fai, theory.attributes(), L) << " @ " << L.label(d) << '\n';
  write_inline_lattice(out, L);
  return out.str();
}

LSet parse_lset(std::string_view text, const std::vector<std::string>& attributes, const ResiduatedLattice& lattice) {
  const auto body = trim(text);
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw Error(ErrorKind::ParseError, "L-set must be written {attribute:degree, ...}, got '" + body + "'");
  LSet out = empty_lset(lattice, attributes.size());
  std::vector<bool> seen(attributes.size(), false);
  const auto inner = body.substr(1, body.size() - 2);
  if (trim(inner).empty()) return out;
  std::istringstream in(inner);
  for (std::string item; std::getline(in, item, ',');) {
    item = trim(item);
    if (item.empty()) throw Error(ErrorKind::ParseError, "empty entry in '" + body + "'");
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "expected attribute:degree, got '" + item + "'");
    const auto name = trim(std::string_view(item).substr(0, colon));
    const auto it = std::find(attributes.begin(), attributes.end(), name);
    if (it == attributes.end()) throw Error(ErrorKind::ParseError, "unknown attribute '" + name + "'");
    const auto y = static_cast<std::size_t>(it - attributes.begin());
    if (seen[y]) throw Error(ErrorKind::ParseError, "attribute '" + name + "' given twice");
    seen[y] = true;
    out.degrees[y] = lattice.parse_label(trim(std::string_view(item).substr(colon + 1)));
  }
  return out;
}

FAI parse_fai(std::string_view text, const std::vector<std::string>& attributes, const ResiduatedLattice& lattice) {
  const auto arrow = text.find("=>");
  if (arrow == std::string_view::npos) throw Error(ErrorKind::ParseError, "expected 'A => B'");
  return FAI{parse_lset(text.substr(0, arrow), attributes, lattice),
             parse_lset(text.substr(arrow + 2), attributes, lattice)};
}

std::string render_fai(const FAI& fai, const std::vector<std::string>& attributes, const ResiduatedLattice& lattice) {
  return render_lset(lattice, attributes, fai.antecedent) + " => " + render_lset(lattice, attributes, fai.consequent);
}

}  // namespace gradord
