#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "gradord/algebra.hpp"
#include "gradord/fai.hpp"
#include "gradord/ineq.hpp"

namespace gradord {

// Sectioned plain text. A header section ([lattice], [algebra], [relation],
// [theory], [fai]) holds `key = value` lines, followed by data lines or by
// table sections ([leq], [op f], [order], ...). '#' starts a comment.
// Degrees and elements are written by label; tables are rows of
// whitespace-separated tokens.

/// Parses the tables of a [lattice] document without validating the
/// axioms, so that invalid lattices can still be diagnosed.
LatticeTables parse_lattice_tables(std::string_view text);
/// Resolves `lattice = ...` values: a builtin name like "lukasiewicz:3", or
/// a path (relative to `base_dir`) of a lattice document.
LatticePtr resolve_lattice(std::string_view spec, const std::filesystem::path& base_dir);

struct RelationDocument {
  LRelation relation;
  std::vector<std::string> elements;
};

using Document = std::variant<LatticePtr, AlgebraPtr, RelationDocument, Theory, FAITheory>;

/// Throws ParseError (including truncation), MalformedTable, Io, or
/// InvalidStructure when a referenced lattice fails its axioms.
Document parse_document(std::string_view text, const std::filesystem::path& base_dir = ".");
Document load_document(const std::filesystem::path& path);
/// Reads a document and requires a specific kind.
LatticePtr load_lattice(const std::filesystem::path& path);
AlgebraPtr load_algebra(const std::filesystem::path& path);
RelationDocument load_relation(const std::filesystem::path& path);
Theory load_theory(const std::filesystem::path& path);
FAITheory load_fai_theory(const std::filesystem::path& path);

/// First section name of a document, e.g. "lattice"; empty if none.
std::string document_kind(std::string_view text);
std::string read_file(const std::filesystem::path& path);

std::string write_lattice(const ResiduatedLattice& lattice);
/// Builtin lattices are written by name, others inline.
std::string write_algebra(const FuzzyOrderedAlgebra& algebra);
std::string write_relation(const LRelation& relation, const std::vector<std::string>& elements);
std::string write_theory(const Theory& theory);
std::string write_fai_theory(const FAITheory& theory);

/// "{p:1, q:0.5}" over the given attributes; omitted attributes are 0.
LSet parse_lset(std::string_view text, const std::vector<std::string>& attributes, const ResiduatedLattice& lattice);
/// "A => B".
FAI parse_fai(std::string_view text, const std::vector<std::string>& attributes, const ResiduatedLattice& lattice);
std::string render_fai(const FAI& fai, const std::vector<std::string>& attributes, const ResiduatedLattice& lattice);

}  // namespace gradord
