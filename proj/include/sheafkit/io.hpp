// JSON file formats.
//
//   sheafkit-complex/1  cells (id, dim, optional label), covers (lo, hi,
//                       sign) and an optional "infinity" id.
//   sheafkit-sheaf/1    "kind" (sheaf | cosheaf), "complex" (path relative
//                       to the file), "stalks" {id: dim}, "maps" with one
//                       entry per cover: lo, hi and row-major "entries".
//   sheafkit-map/1      "source", "target" (paths) and "assignment"
//                       {source id: target id}.
//   sheafkit-cplx/1     "kind", "complex", "lo", "terms" (inline objects in
//                       the sheaf format, or paths to sheaf files) and
//                       "differentials", each {"components": {id: matrix}}.
//
// Scalars are written as strings "p/q" (or residues mod p); readers accept
// strings and JSON integers. An optional "field" ("q" or "fp:<p>") records
// the field a file was written over. See README.md for the full grammar.

#ifndef SHEAFKIT_IO_HPP
#define SHEAFKIT_IO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sheafkit/cell_complex.hpp"
#include "sheafkit/field.hpp"
#include "sheafkit/sheaf.hpp"

namespace sheafkit {

/// "source: where: message", where `where` is "line L, column C" for syntax
/// errors or a field path such as "maps[2].entries[1]".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, const std::string& where, const std::string& message)
      : std::runtime_error(source + ": " + where + ": " + message), source_(source), where_(where) {}
  const std::string& source() const { return source_; }
  const std::string& where() const { return where_; }

 private:
  std::string source_;
  std::string where_;
};

std::string complex_to_text(const CellComplex& x);
CellComplex complex_from_text(std::string_view text, const std::string& source = "<string>");

/// `complex_ref` is stored verbatim as the "complex" field.
template <class S, Variance V>
std::string object_to_text(const Cellular<S, V>& f, const std::string& complex_ref);
/// Reads an object on `x`, ignoring the file's "complex" field.
template <class S, Variance V>
Cellular<S, V> object_from_text(std::string_view text, const ComplexPtr& x, const std::string& source = "<string>");

template <class S, Variance V>
std::string complex_object_to_text(const CellularComplex<S, V>& c, const std::string& complex_ref);

std::string map_to_text(const PosetMap& f, const std::string& source_ref, const std::string& target_ref);

/// Reads files, resolving references relative to the referring file and
/// loading each complex once, so objects read from files that name the same
/// complex share one ComplexPtr.
class Workspace {
 public:
  ComplexPtr complex(const std::filesystem::path& path);
  /// The "kind" of a sheaf or complex-of-sheaves file.
  Variance kind(const std::filesystem::path& path);
  /// The "format" field of any file.
  std::string format(const std::filesystem::path& path);
  /// The declared "field", if any.
  std::optional<FieldSpec> field(const std::filesystem::path& path);
  /// Path of the complex a sheaf, complex-of-sheaves or map file refers to
  /// ("complex", or "source" for maps).
  std::filesystem::path complex_path(const std::filesystem::path& path);

  template <class S, Variance V>
  Cellular<S, V> object(const std::filesystem::path& path);
  template <class S, Variance V>
  CellularComplex<S, V> object_complex(const std::filesystem::path& path);
  PosetMap map(const std::filesystem::path& path);

  /// Registers an in-memory complex under a path, as if it had been read.
  void add(const std::filesystem::path& path, ComplexPtr x);
  /// The path a loaded or registered complex came from.
  std::optional<std::filesystem::path> path_of(const ComplexPtr& x) const;

 private:
  std::map<std::string, ComplexPtr> complexes_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace sheafkit

#endif  // SHEAFKIT_IO_HPP
