#include "gradord/lattice.hpp"

#include <numeric>
#include <set>
#include <sstream>

namespace gradord {

namespace {

void require_shape(const LatticeTables& t) {
  const std::size_t n = t.size;
  if (n == 0) throw Error(ErrorKind::MalformedTable, "lattice carrier is empty");
  if (n > 0xFFFF) throw Error(ErrorKind::MalformedTable, "lattice carrier too large");
  const std::size_t cells = n * n;
  auto check_table = [&](const std::vector<std::uint16_t>& table, const char* name) {
    if (table.size() != cells)
      throw Error(ErrorKind::MalformedTable, std::string(name) + " table is not size x size");
    for (std::size_t i = 0; i < cells; ++i)
      if (table[i] >= n)
        throw Error(ErrorKind::MalformedTable, std::string(name) + " entry " + std::to_string(i) + " out of range");
  };
  if (t.leq.size() != cells) throw Error(ErrorKind::MalformedTable, "leq table is not size x size");
  check_table(t.meet, "meet");
  check_table(t.join, "join");
  check_table(t.otimes, "otimes");
  check_table(t.residuum, "residuum");
  if (t.bot >= n || t.top >= n) throw Error(ErrorKind::MalformedTable, "bot/top out of range");
  if (!t.labels.empty()) {
    if (t.labels.size() != n) throw Error(ErrorKind::MalformedTable, "label count differs from size");
    std::set<std::string> seen(t.labels.begin(), t.labels.end());
    if (seen.size() != n) throw Error(ErrorKind::MalformedTable, "duplicate lattice labels");
  }
}

std::string chain_label(std::size_t i, std::size_t n) {
  const std::size_t den = n - 1;
  if (i == 0) return "0";
  if (i == den) return "1";
  const std::size_t g = std::gcd(i, den);
  return std::to_string(i / g) + "/" + std::to_string(den / g);
}

}  // namespace

ValidationReport validate_lattice(const LatticeTables& t) {
  require_shape(t);
  const std::size_t n = t.size;
  auto idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
  auto leq = [&](std::size_t a, std::size_t b) { return static_cast<bool>(t.leq[idx(a, b)]); };
  auto otimes = [&](std::size_t a, std::size_t b) -> std::size_t { return t.otimes[idx(a, b)]; };

  ValidationReport report;
  auto first = [&report](const char* axiom, auto&& search) {
    std::vector<std::size_t> w;
    std::string detail;
    if (search(w, detail)) report.violations.push_back({axiom, std::move(w), std::move(detail)});
  };

  first("leq-reflexive", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      if (!leq(a, a)) return w = {a}, true;
    return false;
  });
  first("leq-antisymmetric", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (a != b && leq(a, b) && leq(b, a)) return w = {a, b}, true;
    return false;
  });
  first("leq-transitive", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (leq(a, b) && leq(b, c) && !leq(a, c)) return w = {a, b, c}, true;
    return false;
  });
  first("bot-least", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      if (!leq(t.bot, a)) return w = {a}, true;
    return false;
  });
  first("top-greatest", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      if (!leq(a, t.top)) return w = {a}, true;
    return false;
  });
  first("meet-glb", [&](auto& w, auto& detail) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t m = t.meet[idx(a, b)];
        if (!leq(m, a) || !leq(m, b)) return w = {a, b}, detail = "not a lower bound", true;
        for (std::size_t c = 0; c < n; ++c)
          if (leq(c, a) && leq(c, b) && !leq(c, m)) return w = {a, b, c}, detail = "not greatest", true;
      }
    return false;
  });
  first("join-lub", [&](auto& w, auto& detail) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::size_t j = t.join[idx(a, b)];
        if (!leq(a, j) || !leq(b, j)) return w = {a, b}, detail = "not an upper bound", true;
        for (std::size_t c = 0; c < n; ++c)
          if (leq(a, c) && leq(b, c) && !leq(j, c)) return w = {a, b, c}, detail = "not least", true;
      }
    return false;
  });
  first("otimes-commutative", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (otimes(a, b) != otimes(b, a)) return w = {a, b}, true;
    return false;
  });
  first("otimes-associative", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (otimes(otimes(a, b), c) != otimes(a, otimes(b, c))) return w = {a, b, c}, true;
    return false;
  });
  first("otimes-unit", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      if (otimes(a, t.top) != a || otimes(t.top, a) != a) return w = {a}, true;
    return false;
  });
  first("adjointness", [&](auto& w, auto&) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (leq(otimes(a, b), c) != leq(a, t.residuum[idx(b, c)])) return w = {a, b, c}, true;
    return false;
  });
  return report;
}

void derive_missing_tables(LatticeTables& t, bool derive_meet_join, bool derive_residuum) {
  const std::size_t n = t.size;
  if (t.leq.size() != n * n) throw Error(ErrorKind::MalformedTable, "leq table is not size x size");
  auto leq = [&](std::size_t a, std::size_t b) { return static_cast<bool>(t.leq[a * n + b]); };
  // Greatest element of {x : pred(x)} under leq, or `fallback` when none exists.
  auto greatest = [&](auto&& pred, std::size_t fallback) -> std::uint16_t {
    for (std::size_t x = 0; x < n; ++x) {
      if (!pred(x)) continue;
      bool above_all = true;
      for (std::size_t y = 0; y < n && above_all; ++y)
        if (pred(y) && !leq(y, x)) above_all = false;
      if (above_all) return static_cast<std::uint16_t>(x);
    }
    return static_cast<std::uint16_t>(fallback);
  };
  auto least = [&](auto&& pred, std::size_t fallback) -> std::uint16_t {
    for (std::size_t x = 0; x < n; ++x) {
      if (!pred(x)) continue;
      bool below_all = true;
      for (std::size_t y = 0; y < n && below_all; ++y)
        if (pred(y) && !leq(x, y)) below_all = false;
      if (below_all) return static_cast<std::uint16_t>(x);
    }
    return static_cast<std::uint16_t>(fallback);
  };
  if (derive_meet_join) {
    t.meet.assign(n * n, 0);
    t.join.assign(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        t.meet[a * n + b] = greatest([&](std::size_t x) { return leq(x, a) && leq(x, b); }, t.bot);
        t.join[a * n + b] = least([&](std::size_t x) { return leq(a, x) && leq(b, x); }, t.top);
      }
  }
  if (derive_residuum) {
    if (t.otimes.size() != n * n) throw Error(ErrorKind::MalformedTable, "otimes table is not size x size");
    t.residuum.assign(n * n, 0);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        t.residuum[b * n + c] = greatest(
            [&](std::size_t a) { return t.otimes[a * n + b] < n && leq(t.otimes[a * n + b], c); }, t.bot);
  }
}

std::shared_ptr<const ResiduatedLattice> ResiduatedLattice::create(LatticeTables tables) {
  if (tables.labels.empty())
    for (std::size_t i = 0; i < tables.size; ++i) tables.labels.push_back("d" + std::to_string(i));
  auto report = validate_lattice(tables);
  if (!report.ok()) throw Error(ErrorKind::InvalidStructure, "lattice: " + report.describe());
  return std::shared_ptr<const ResiduatedLattice>(new ResiduatedLattice(std::move(tables)));
}

Degree ResiduatedLattice::inf(std::span<const Degree> degrees) const {
  Degree acc = top();
  for (Degree d : degrees) acc = meet(acc, d);
  return acc;
}

Degree ResiduatedLattice::sup(std::span<const Degree> degrees) const {
  Degree acc = bot();
  for (Degree d : degrees) acc = join(acc, d);
  return acc;
}

Degree ResiduatedLattice::element(std::size_t index) const {
  if (index >= size()) throw Error(ErrorKind::MalformedTable, "degree index out of range");
  return Degree{static_cast<std::uint16_t>(index)};
}

std::vector<Degree> ResiduatedLattice::elements() const {
  std::vector<Degree> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(Degree{static_cast<std::uint16_t>(i)});
  return out;
}

bool ResiduatedLattice::is_chain() const {
  for (Degree a : elements())
    for (Degree b : elements())
      if (!leq(a, b) && !leq(b, a)) return false;
  return true;
}

std::optional<Degree> ResiduatedLattice::find_label(std::string_view label) const {
  for (std::size_t i = 0; i < size(); ++i)
    if (tables_.labels[i] == label) return Degree{static_cast<std::uint16_t>(i)};
  return std::nullopt;
}

namespace {

// "3/4", "0.75" and "1" as an exact fraction.
std::optional<std::pair<long long, long long>> parse_fraction(std::string_view text) {
  auto digits = [](std::string_view s, long long& out) {
    if (s.empty() || s.size() > 15) return false;
    out = 0;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
      out = out * 10 + (c - '0');
    }
    return true;
  };
  long long num = 0, den = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!digits(text.substr(0, slash), num) || !digits(text.substr(slash + 1), den) || den == 0) return std::nullopt;
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    long long frac = 0;
    const auto tail = text.substr(dot + 1);
    if (!digits(text.substr(0, dot), num) || !digits(tail, frac)) return std::nullopt;
    for (std::size_t i = 0; i < tail.size(); ++i) den *= 10;
    num = num * den + frac;
  } else if (!digits(text, num)) {
    return std::nullopt;
  }
  return std::pair{num, den};
}

}  // namespace

Degree ResiduatedLattice::parse_label(std::string_view label) const {
  if (auto d = find_label(label)) return *d;
  // Numeric spellings match numeric labels by value.
  if (auto want = parse_fraction(label)) {
    for (std::size_t i = 0; i < size(); ++i) {
      auto have = parse_fraction(tables_.labels[i]);
      if (have && have->first * want->second == want->first * have->second)
        return Degree{static_cast<std::uint16_t>(i)};
    }
  }
  throw Error(ErrorKind::ParseError, "unknown degree label '" + std::string(label) + "'");
}

bool operator==(const ResiduatedLattice& a, const ResiduatedLattice& b) {
  const auto& x = a.tables_;
  const auto& y = b.tables_;
  return x.size == y.size && x.leq == y.leq && x.meet == y.meet && x.join == y.join && x.otimes == y.otimes &&
         x.residuum == y.residuum && x.bot == y.bot && x.top == y.top && x.labels == y.labels;
}

std::string_view to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::Godel: return "godel";
    case ChainKind::Lukasiewicz: return "lukasiewicz";
    case ChainKind::Boolean: return "boolean";
  }
  return "?";
}

std::optional<ChainKind> parse_chain_kind(std::string_view name) {
  if (name == "godel") return ChainKind::Godel;
  if (name == "lukasiewicz") return ChainKind::Lukasiewicz;
  if (name == "boolean") return ChainKind::Boolean;
  return std::nullopt;
}

LatticePtr make_chain(std::size_t n, ChainKind kind) {
  if (n < 2) throw Error(ErrorKind::UnsupportedKind, "chains need at least two elements");
  if (kind == ChainKind::Boolean && n != 2)
    throw Error(ErrorKind::UnsupportedKind, "the Boolean chain has exactly two elements");
  if (n > 0xFFFF) throw Error(ErrorKind::UnsupportedKind, "chain too long");
  const std::size_t top = n - 1;
  LatticeTables t;
  t.size = n;
  t.bot = 0;
  t.top = static_cast<std::uint16_t>(top);
  t.leq.assign(n * n, false);
  t.meet.assign(n * n, 0);
  t.join.assign(n * n, 0);
  t.otimes.assign(n * n, 0);
  t.residuum.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    t.labels.push_back(chain_label(a, n));
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t i = a * n + b;
      t.leq[i] = a <= b;
      t.meet[i] = static_cast<std::uint16_t>(std::min(a, b));
      t.join[i] = static_cast<std::uint16_t>(std::max(a, b));
      if (kind == ChainKind::Lukasiewicz) {
        t.otimes[i] = static_cast<std::uint16_t>(a + b > top ? a + b - top : 0);
        t.residuum[i] = static_cast<std::uint16_t>(std::min(top, top - a + b));
      } else {
        // Gödel; on two elements this is the Boolean algebra.
        t.otimes[i] = static_cast<std::uint16_t>(std::min(a, b));
        t.residuum[i] = static_cast<std::uint16_t>(a <= b ? top : b);
      }
    }
  }
  auto lattice = ResiduatedLattice::create(std::move(t));
  auto named = std::shared_ptr<ResiduatedLattice>(new ResiduatedLattice(lattice->tables()));
  named->builtin_ = std::string(to_string(kind)) + ":" + std::to_string(n);
  return named;
}

Degree inf_set(const ResiduatedLattice& lattice, std::span<const Degree> degrees) { return lattice.inf(degrees); }
Degree sup_set(const ResiduatedLattice& lattice, std::span<const Degree> degrees) { return lattice.sup(degrees); }

bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace gradord
