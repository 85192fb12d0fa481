// Finite regular cell complexes as graded posets with signed incidence.
//
// A complex is stored as its one-point compactification X+ : an optional
// vertex `infinity` is adjoined and X = X+ \ {infinity}. Indices of the cells
// of X are 0 .. size()-1; infinity, when present, has index size(). Covers
// inside X come first, covers touching infinity after them, so every
// per-cover array over X is a prefix of the one over X+.

#ifndef SHEAFKIT_CELL_COMPLEX_HPP
#define SHEAFKIT_CELL_COMPLEX_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sheafkit/poset.hpp"

namespace sheafkit {

struct Cell {
  std::string id;
  int dim = 0;
  std::string label;
};

/// lo < hi is a cover with incidence number [lo : hi] = sign.
struct Incidence {
  std::size_t lo;
  std::size_t hi;
  int sign;
};

class UnknownCell : public std::out_of_range {
 public:
  explicit UnknownCell(const std::string& id) : std::out_of_range("unknown cell '" + id + "'") {}
};

struct Issue {
  std::string kind;
  std::vector<std::string> cells;
  std::string message;
};

struct Report {
  std::vector<Issue> issues;
  std::vector<std::string> notes;  // informational, never failures

  bool ok() const { return issues.empty(); }
  void add(std::string kind, std::vector<std::string> cells, std::string message) {
    issues.push_back({std::move(kind), std::move(cells), std::move(message)});
  }
  std::string to_string() const;
};

class CellComplex {
 public:
  CellComplex() : CellComplex(std::vector<Cell>{}, std::vector<Incidence>{}, std::nullopt) {}

  /// Indices in `covers` and `infinity` refer to `cells`. The input may
  /// violate the cell-complex axioms (see validate()); only references,
  /// duplicate ids and negative dimensions are rejected here.
  CellComplex(std::vector<Cell> cells, std::vector<Incidence> covers, std::optional<std::size_t> infinity);

  /// Same, with covers and infinity given by cell id.
  struct IdCover {
    std::string lo;
    std::string hi;
    int sign;
  };
  static CellComplex from_ids(std::vector<Cell> cells, const std::vector<IdCover>& covers,
                              const std::optional<std::string>& infinity = std::nullopt);

  /// Number of cells of X (infinity excluded).
  std::size_t size() const { return n_; }
  bool has_infinity() const { return cells_.size() > n_; }
  std::size_t infinity() const;

  const Cell& cell(std::size_t i) const { return cells_.at(i); }
  const std::string& id(std::size_t i) const { return cells_.at(i).id; }
  int dim(std::size_t i) const { return cells_.at(i).dim; }
  const std::vector<Cell>& cells_plus() const { return cells_; }

  std::optional<std::size_t> find(const std::string& id) const;
  std::size_t index(const std::string& id) const;

  /// Largest cell dimension in X (-1 when empty).
  int dimension() const;
  std::vector<std::size_t> cells_of_dim(int k) const;
  std::vector<std::size_t> f_vector() const;

  /// Covers inside X, i.e. the first num_covers() entries of incidences().
  std::size_t num_covers() const { return m_; }
  const Incidence& incidence(std::size_t c) const { return covers_.at(c); }
  const std::vector<Incidence>& incidences_plus() const { return covers_; }
  /// Sign of the cover lo < hi in X+, or 0 when lo < hi is not a cover.
  int sign(std::size_t lo, std::size_t hi) const;

  /// Face posets of X, X^op (same cover indices) and X+.
  const Poset& poset() const { return poset_; }
  const Poset& opposite() const { return opposite_; }
  const Poset& poset_plus() const { return poset_plus_; }
  bool acyclic() const { return acyclic_; }

  std::string describe(std::size_t i) const;

 private:
  std::vector<Cell> cells_;
  std::vector<Incidence> covers_;
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::map<std::string, std::size_t> by_id_;
  Poset poset_;
  Poset opposite_;
  Poset poset_plus_;
  bool acyclic_ = true;
};

using ComplexPtr = std::shared_ptr<const CellComplex>;

inline ComplexPtr share(CellComplex x) { return std::make_shared<const CellComplex>(std::move(x)); }

/// Checks every axiom: covers raise dimension by one, acyclicity, nonzero
/// unit signs, the two-cell diamond property and the sign condition on X+,
/// regular 1-cells (two vertex faces), no facet-free positive cells.
Report validate(const CellComplex& x);

/// {tau : tau <= sigma} and {tau : sigma <= tau} inside X.
std::vector<std::size_t> closure(const CellComplex& x, std::size_t sigma);
std::vector<std::size_t> open_star(const CellComplex& x, std::size_t sigma);

/// True iff infinity is not a face of sigma in X+.
bool has_compact_closure(const CellComplex& x, std::size_t sigma);

/// An order-preserving map between the cells of two complexes (infinity is
/// never part of the domain or codomain).
struct PosetMap {
  ComplexPtr source;
  ComplexPtr target;
  std::vector<std::size_t> assignment;

  std::size_t operator()(std::size_t x) const { return assignment.at(x); }
};

Report validate(const PosetMap& f);
bool is_surjective(const PosetMap& f);
PosetMap identity_map(const ComplexPtr& x);
PosetMap compose(const PosetMap& g, const PosetMap& f);
/// p : X -> point.
PosetMap to_point(const ComplexPtr& x);
/// i_sigma : point -> X.
PosetMap point_inclusion(const ComplexPtr& x, std::size_t sigma);

struct Subcomplex {
  ComplexPtr complex;
  PosetMap inclusion;
};

/// X' = cells with compact closure, with its inclusion j : X' -> X.
Subcomplex compact_subcomplex(const ComplexPtr& x);

/// Full subcomplex on the given cells (must be closed under faces in X+ for
/// the result to be a complex; the caller decides).
Subcomplex restrict_to(const ComplexPtr& x, const std::vector<std::size_t>& cells);

/// All faces of the given facets. Vertices are ordered as in `vertices`;
/// [tau \ v_i : tau] = (-1)^i. Cell ids join vertex names with ','.
CellComplex simplicial(const std::vector<std::string>& vertices, const std::vector<std::vector<std::string>>& facets);

/// Order complex of the face poset with s sending a chain to its top cell.
/// Chain ids join cell ids with '<'; a one-element chain keeps its id.
struct Subdivision {
  ComplexPtr complex;
  PosetMap map;
};
Subdivision barycentric_subdivision(const ComplexPtr& x);

/// Checks that s : X' -> X is order-preserving and surjective.
Report validate_subdivision(const PosetMap& s);

/// Purity in dimension n, every (n-1)-cell covered by exactly two n-cells,
/// and connected top-cell adjacency. A necessary-condition screen only.
Report manifold_check(const CellComplex& x, int n);

/// Opposite poset with dim = n - dim and [tau~ : sigma~] = [sigma : tau].
/// Cell i of the result is the dual of cell i of `x`; ids get a '~' suffix.
/// Throws std::invalid_argument if `x` is not compact or fails
/// manifold_check (unless `assume_manifold`).
CellComplex dual_structure(const CellComplex& x, int n, bool assume_manifold = false);

/// Product cell structure; cell (i, j) has index i * |Y| + j and id "a*b".
CellComplex product(const CellComplex& x, const CellComplex& y);

}  // namespace sheafkit

#endif  // SHEAFKIT_CELL_COMPLEX_HPP
