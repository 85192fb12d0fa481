// Functors from a finite poset to finite-dimensional vector spaces, their
// morphisms and complexes, and the constructions shared by sheaves and
// cosheaves: limits, colimits, Kan extensions, hom spaces, elementary
// objects, resolutions and decomposition.
//
// A sheaf on X is a diagram on the face poset X; a cosheaf is a diagram on
// X^op. Both store one matrix per cover of X, in the same cover order.

#ifndef SHEAFKIT_DIAGRAM_HPP
#define SHEAFKIT_DIAGRAM_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sheafkit/cell_complex.hpp"
#include "sheafkit/chain.hpp"
#include "sheafkit/matrix.hpp"
#include "sheafkit/poset.hpp"

namespace sheafkit {

using PosetPtr = std::shared_ptr<const Poset>;
using Namer = std::function<std::string(std::size_t)>;

template <class S>
struct Diagram {
  PosetPtr poset;
  std::vector<Index> dims;   // per element
  std::vector<Mat<S>> maps;  // per cover lo < hi, shape dims[hi] x dims[lo]

  std::size_t size() const { return dims.size(); }
  Index dim(std::size_t x) const { return dims[x]; }
  Index total_dim() const;
  /// Composite along a saturated chain from a to b (identity when a == b).
  Mat<S> between(std::size_t a, std::size_t b) const;
};

/// Natural transformation; component x has shape target.dim(x) x source.dim(x).
template <class S>
struct Morphism {
  std::vector<Mat<S>> at;
};

template <class S>
struct DiagramComplex {
  PosetPtr poset;
  int lo = 0;
  std::vector<Diagram<S>> terms;
  std::vector<Morphism<S>> diffs;  // diffs[k] : terms[k] -> terms[k+1]

  bool empty() const { return terms.empty(); }
  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  /// Term in degree n (a zero diagram outside the range).
  Diagram<S> term(int n) const;
  /// Differential from degree n to n + 1 (zero outside the range).
  Morphism<S> d(int n) const;
  /// The complex of stalks at x.
  ChainComplex<S> at(std::size_t x) const;
};

/// Degree-wise morphisms between two complexes on the same poset.
template <class S>
struct ComplexMorphism {
  std::map<int, Morphism<S>> f;
};

// ---------------------------------------------------------------------------
// Construction and checks

template <class S>
Diagram<S> zero_diagram(const PosetPtr& p);
template <class S>
Diagram<S> constant_diagram(const PosetPtr& p, Index d);
/// k^d on the elements of `members`, identity maps inside, zero elsewhere.
template <class S>
Diagram<S> indicator(const PosetPtr& p, const std::vector<bool>& members, Index d);
/// k^d at x only, every map zero.
template <class S>
Diagram<S> skyscraper(const PosetPtr& p, std::size_t x, Index d);

enum class Support { down, up };

/// (+)_x E_x^{m_x} where E_x is k on the down-set (resp. up-set) of x. The
/// summands at an element are ordered by increasing x.
template <class S>
Diagram<S> elementary_sum(const PosetPtr& p, Support kind, const std::vector<Index>& multiplicity);

/// Shapes of all maps, then functoriality: exhaustively over all pairs a < b,
/// or over codimension-two diamonds only.
template <class S>
Report check(const Diagram<S>& d, bool exhaustive, const Namer& name);

/// First cover on which the squares fail, if any (shape errors throw).
template <class S>
std::optional<std::size_t> morphism_violation(const Diagram<S>& src, const Diagram<S>& tgt, const Morphism<S>& m);

template <class S>
Morphism<S> identity_morphism(const Diagram<S>& d);
template <class S>
Morphism<S> zero_morphism(const Diagram<S>& src, const Diagram<S>& tgt);
template <class S>
Morphism<S> compose(const Morphism<S>& g, const Morphism<S>& f);
template <class S>
Morphism<S> add(const Morphism<S>& a, const Morphism<S>& b);

template <class S>
Diagram<S> direct_sum(const std::vector<Diagram<S>>& parts);

/// Same dimensions on the opposite poset, every map transposed.
template <class S>
Diagram<S> dual(const Diagram<S>& d, const PosetPtr& opposite);
template <class S>
Morphism<S> dual(const Morphism<S>& m);

template <class S>
struct KernelData {
  Diagram<S> object;
  Morphism<S> inclusion;
};
template <class S>
struct CokernelData {
  Diagram<S> object;
  Morphism<S> projection;
};
template <class S>
KernelData<S> kernel(const Diagram<S>& src, const Diagram<S>& tgt, const Morphism<S>& m);
template <class S>
CokernelData<S> cokernel(const Diagram<S>& src, const Diagram<S>& tgt, const Morphism<S>& m);

template <class S>
bool is_zero(const Diagram<S>& d) {
  return d.total_dim() == 0;
}

// ---------------------------------------------------------------------------
// Limits and colimits over subsets of the poset

/// Direct sum of per-element blocks for the elements of a subset.
struct Blocks {
  std::vector<std::size_t> members;
  std::vector<Index> offset;  // per element of the poset; -1 outside
  std::vector<Index> size;    // per element of the poset; 0 outside
  Index total = 0;

  bool contains(std::size_t x) const { return offset[x] >= 0; }
};

template <class S>
struct LimitData {
  Blocks blocks;
  Subspace<S> space;  // compatible families in (+)_{x in U} D(x)

  Index dim() const { return space.dim(); }
  /// D(x) x dim(): the x-component of each basis family.
  Mat<S> projection(std::size_t x) const;
};

template <class S>
struct ColimitData {
  Blocks blocks;
  Quotient<S> space;  // (+)_{x in U} D(x) modulo the cover relations

  Index dim() const { return space.dim(); }
  /// dim() x D(x).
  Mat<S> injection(std::size_t x) const;
};

/// Equalizer of the maps between elements of U (all of the poset when no
/// subset is given).
template <class S>
LimitData<S> limit(const Diagram<S>& d, const std::vector<bool>& members);
template <class S>
LimitData<S> limit(const Diagram<S>& d);
template <class S>
ColimitData<S> colimit(const Diagram<S>& d, const std::vector<bool>& members);
template <class S>
ColimitData<S> colimit(const Diagram<S>& d);

/// lim_U D -> lim_V E for V a subset of U, built from `alpha` (identity when
/// null) on the elements of V.
template <class S>
Mat<S> limit_map(const LimitData<S>& from, const LimitData<S>& to, const Morphism<S>* alpha = nullptr);
/// colim_U D -> colim_V E for U a subset of V.
template <class S>
Mat<S> colimit_map(const ColimitData<S>& from, const ColimitData<S>& to, const Morphism<S>* alpha = nullptr);

// ---------------------------------------------------------------------------
// Kan extensions along an order-preserving map f : P -> Q

/// (Ran_f D)(y) = lim_{f(x) >= y} D(x).
template <class S>
Diagram<S> right_kan(const Diagram<S>& d, const std::vector<std::size_t>& f, const PosetPtr& q);
/// (Lan_f D)(y) = colim_{f(x) <= y} D(x).
template <class S>
Diagram<S> left_kan(const Diagram<S>& d, const std::vector<std::size_t>& f, const PosetPtr& q);
/// (f^* G)(x) = G(f(x)).
template <class S>
Diagram<S> pullback(const Diagram<S>& g, const std::vector<std::size_t>& f, const PosetPtr& p);
/// Unit G -> Ran_f f^* G.
template <class S>
Morphism<S> right_kan_unit(const Diagram<S>& g, const std::vector<std::size_t>& f, const PosetPtr& p);

// ---------------------------------------------------------------------------
// Hom spaces

/// Natural transformations D|_U -> E|_U for a convex subset U, as a subspace
/// of (+)_{x in U} vec Hom(D(x), E(x)) (column-major vectorisation).
template <class S>
LimitData<S> hom_space(const Diagram<S>& d, const Diagram<S>& e, const std::vector<bool>& members);
template <class S>
LimitData<S> hom_space(const Diagram<S>& d, const Diagram<S>& e);
/// The morphism with coordinates given by column `k` of the hom basis.
template <class S>
Morphism<S> hom_basis_element(const LimitData<S>& h, const Diagram<S>& d, const Diagram<S>& e, Index k);
/// Diagram y |-> Hom(D|_{U_y}, E|_{U_y}) with U_y the up-set of y.
template <class S>
Diagram<S> internal_hom(const Diagram<S>& d, const Diagram<S>& e);

// ---------------------------------------------------------------------------
// Resolutions and decomposition

using Summands = std::vector<std::pair<std::size_t, Index>>;  // (element, multiplicity), multiplicity > 0

template <class S>
struct Resolution {
  DiagramComplex<S> complex;       // injective: degrees 0..L; projective: -L..0
  Morphism<S> augmentation;        // injective: D -> I^0; projective: P^0 -> D
  std::vector<Summands> summands;  // per term, from low to high degree
};

class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// D -> (+)_x [x]^{D(x)} (down-set summands), iterated on cokernels.
template <class S>
Resolution<S> injective_resolution(const Diagram<S>& d);
/// (+)_x {x}^{D(x)} -> D (up-set summands), iterated on kernels.
template <class S>
Resolution<S> projective_resolution(const Diagram<S>& d);

/// The first step of each resolution on its own.
template <class S>
Morphism<S> injective_hull_map(const Diagram<S>& d, Diagram<S>* hull, Summands* summands);
template <class S>
Morphism<S> projective_cover_map(const Diagram<S>& d, Diagram<S>* cover, Summands* summands);

struct Decomposition {
  Summands summands;
  std::optional<std::size_t> stuck;  // element where peeling failed
  bool ok() const { return !stuck; }
};

/// Peels off down-set summands from a maximal nonzero element downwards.
template <class S>
Decomposition decompose_injective(const Diagram<S>& d);
/// Same on the linear dual, giving up-set summands.
template <class S>
Decomposition decompose_projective(const Diagram<S>& d);

// ---------------------------------------------------------------------------
// Complexes of diagrams

template <class S>
struct DiagramDouble {
  PosetPtr poset;
  int p_lo = 0, p_hi = -1, q_lo = 0, q_hi = -1;
  std::map<std::pair<int, int>, Diagram<S>> entries;
  std::map<std::pair<int, int>, Morphism<S>> horizontal;  // (p, q) -> (p, q + 1)
  std::map<std::pair<int, int>, Morphism<S>> vertical;    // (p, q) -> (p + 1, q)
};

/// Totalisation with d = horizontal + (-1)^q vertical; summands of a total
/// term are ordered by increasing p.
template <class S>
DiagramComplex<S> total(const DiagramDouble<S>& dc);

/// The complex with a single term in degree n.
template <class S>
DiagramComplex<S> concentrated(const Diagram<S>& d, int n = 0);

template <class S>
std::optional<std::pair<int, std::size_t>> square_violation(const DiagramComplex<S>& c);

template <class S>
ChainMap<S> at(const DiagramComplex<S>& src, const DiagramComplex<S>& tgt, const ComplexMorphism<S>& f,
               std::size_t x);

/// Elements at which the stalk map is not a quasi-isomorphism.
template <class S>
std::vector<std::size_t> quasi_iso_failures(const DiagramComplex<S>& src, const DiagramComplex<S>& tgt,
                                            const ComplexMorphism<S>& f);

/// Elements where the stalk complex has homology.
template <class S>
std::map<std::size_t, GradedDims> stalk_homology(const DiagramComplex<S>& c);

/// Termwise exact equality (dimensions, internal maps and differentials).
template <class S>
bool same_complex(const DiagramComplex<S>& a, const DiagramComplex<S>& b);
template <class S>
bool same_diagram(const Diagram<S>& a, const Diagram<S>& b);

/// Termwise lim and colim with the induced differentials.
template <class S>
ChainComplex<S> limit_complex(const DiagramComplex<S>& c);
template <class S>
ChainComplex<S> colimit_complex(const DiagramComplex<S>& c);

}  // namespace sheafkit

#endif  // SHEAFKIT_DIAGRAM_HPP
