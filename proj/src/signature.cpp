#include "gradord/signature.hpp"

#include <cctype>
#include <set>

#include "gradord/error.hpp"

namespace gradord {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::set<std::string> seen;
  for (const auto& s : symbols_)
    if (!seen.insert(s.name).second)
      throw Error(ErrorKind::SignatureMismatch, "duplicate function symbol '" + s.name + "'");
}

Signature Signature::parse(std::string_view text) {
  std::vector<Symbol> symbols;
  text = trim(text);
  while (!text.empty()) {
    const auto comma = text.find(',');
    const auto item = trim(text.substr(0, comma));
    const auto slash = item.find('/');
    if (slash == std::string_view::npos)
      throw Error(ErrorKind::ParseError, "signature item '" + std::string(item) + "' lacks '/arity'");
    const auto name = trim(item.substr(0, slash));
    const auto arity_text = trim(item.substr(slash + 1));
    if (!is_identifier(name)) throw Error(ErrorKind::ParseError, "bad symbol name '" + std::string(name) + "'");
    if (arity_text.empty()) throw Error(ErrorKind::ParseError, "missing arity for '" + std::string(name) + "'");
    std::size_t arity = 0;
    for (char c : arity_text) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorKind::ParseError, "bad arity for '" + std::string(name) + "'");
      arity = arity * 10 + static_cast<std::size_t>(c - '0');
    }
    symbols.push_back({std::string(name), arity});
    if (comma == std::string_view::npos) break;
    text = trim(text.substr(comma + 1));
  }
  return Signature(std::move(symbols));
}

std::string Signature::render() const {
  std::string out;
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out += ',';
    out += symbols_[i].name + "/" + std::to_string(symbols_[i].arity);
  }
  return out;
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

bool Signature::has_constants() const {
  for (const auto& s : symbols_)
    if (s.arity == 0) return true;
  return false;
}

std::size_t table_size(std::size_t universe, std::size_t arity, std::size_t cap) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) {
    if (universe != 0 && total > cap / universe)
      throw Error(ErrorKind::ProductTooLarge, "operation table exceeds cap " + std::to_string(cap));
    total *= universe;
  }
  if (total > cap) throw Error(ErrorKind::ProductTooLarge, "operation table exceeds cap " + std::to_string(cap));
  return total;
}

bool next_tuple(std::vector<Element>& tuple, std::size_t universe) {
  for (std::size_t i = tuple.size(); i-- > 0;) {
    if (tuple[i] + 1 < universe) {
      ++tuple[i];
      return true;
    }
    tuple[i] = 0;
  }
  return false;
}

}  // namespace gradord
