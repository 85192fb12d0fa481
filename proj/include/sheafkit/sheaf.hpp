// Cellular sheaves and cosheaves on a cell complex.
//
// A sheaf stores rho_{tau,sigma} : F(sigma) -> F(tau) on each cover
// sigma < tau of X, a cosheaf stores r_{sigma,tau} : F(tau) -> F(sigma). Both
// are Diagrams (on X and X^op) indexed by the covers of X in the same order.

#ifndef SHEAFKIT_SHEAF_HPP
#define SHEAFKIT_SHEAF_HPP

#include <string>
#include <vector>

#include "sheafkit/cell_complex.hpp"
#include "sheafkit/diagram.hpp"

namespace sheafkit {

enum class Variance { sheaf, cosheaf };

constexpr Variance flip(Variance v) { return v == Variance::sheaf ? Variance::cosheaf : Variance::sheaf; }
inline const char* to_string(Variance v) { return v == Variance::sheaf ? "sheaf" : "cosheaf"; }

/// The poset a V-object on `x` is a diagram over: X for sheaves, X^op for
/// cosheaves. Shares ownership of `x`.
template <Variance V>
PosetPtr poset_of(const ComplexPtr& x) {
  if constexpr (V == Variance::sheaf) {
    return PosetPtr(x, &x->poset());
  } else {
    return PosetPtr(x, &x->opposite());
  }
}

template <class S, Variance V>
struct Cellular {
  static constexpr Variance variance = V;

  ComplexPtr base;
  Diagram<S> data;

  Index dim(std::size_t cell) const { return data.dims.at(cell); }
  /// The stored map on cover c: rho (sheaf) or r (cosheaf).
  const Mat<S>& map(std::size_t c) const { return data.maps.at(c); }
};

template <class S>
using Sheaf = Cellular<S, Variance::sheaf>;
template <class S>
using Cosheaf = Cellular<S, Variance::cosheaf>;

template <class S, Variance V>
struct CellularComplex {
  static constexpr Variance variance = V;

  ComplexPtr base;
  DiagramComplex<S> data;
};

template <class S>
using SheafComplex = CellularComplex<S, Variance::sheaf>;
template <class S>
using CosheafComplex = CellularComplex<S, Variance::cosheaf>;

/// Wraps stalk dimensions and per-cover maps; throws ShapeError when a map
/// has the wrong shape or the counts do not match the complex.
template <class S, Variance V>
Cellular<S, V> make_object(const ComplexPtr& x, std::vector<Index> dims, std::vector<Mat<S>> maps);

template <class S, Variance V>
Cellular<S, V> zero_object(const ComplexPtr& x);
template <class S, Variance V>
Cellular<S, V> constant(const ComplexPtr& x, Index d);
template <class S, Variance V>
Cellular<S, V> skyscraper(const ComplexPtr& x, std::size_t sigma, Index d);

/// k^d on the closure of sigma: [sigma]^d (injective sheaf) or [sigma^]^d
/// (projective cosheaf).
template <class S, Variance V>
Cellular<S, V> on_closure(const ComplexPtr& x, std::size_t sigma, Index d);
/// k^d on the open star of sigma: {sigma}^d (projective sheaf) or
/// {sigma^}^d (injective cosheaf).
template <class S, Variance V>
Cellular<S, V> on_star(const ComplexPtr& x, std::size_t sigma, Index d);

template <class S>
Sheaf<S> elementary_injective(const ComplexPtr& x, std::size_t sigma, Index d) {
  return on_closure<S, Variance::sheaf>(x, sigma, d);
}
template <class S>
Sheaf<S> elementary_projective_sheaf(const ComplexPtr& x, std::size_t sigma, Index d) {
  return on_star<S, Variance::sheaf>(x, sigma, d);
}
template <class S>
Cosheaf<S> elementary_projective_cosheaf(const ComplexPtr& x, std::size_t sigma, Index d) {
  return on_closure<S, Variance::cosheaf>(x, sigma, d);
}
template <class S>
Cosheaf<S> elementary_injective_cosheaf(const ComplexPtr& x, std::size_t sigma, Index d) {
  return on_star<S, Variance::cosheaf>(x, sigma, d);
}

/// Shapes, then path independence (exhaustive, or diamonds only).
template <class S, Variance V>
Report validate(const Cellular<S, V>& f, bool exhaustive = true);

/// Same base, same variance, exact equality of the data.
template <class S, Variance V>
bool operator==(const Cellular<S, V>& a, const Cellular<S, V>& b);

template <class S, Variance V>
Cellular<S, V> direct_sum(const Cellular<S, V>& a, const Cellular<S, V>& b);

/// V -> V^*, maps transposed; a sheaf becomes a cosheaf and back.
template <class S, Variance V>
Cellular<S, flip(V)> linear_dual(const Cellular<S, V>& f);

/// Degree n of the result is the dual of degree -n, differentials transposed.
template <class S, Variance V>
CellularComplex<S, flip(V)> linear_dual(const CellularComplex<S, V>& c);

template <class S>
struct HomSpace {
  LimitData<S> data;
  std::vector<Morphism<S>> basis;

  Index dim() const { return data.dim(); }
};

template <class S, Variance V>
HomSpace<S> hom_space(const Cellular<S, V>& a, const Cellular<S, V>& b);

/// Value on sigma: Hom(F|_{U_sigma}, G|_{U_sigma}) over the open star.
template <class S>
Sheaf<S> sheaf_hom(const Sheaf<S>& f, const Sheaf<S>& g);

template <class S, Variance V>
struct ObjectResolution {
  CellularComplex<S, V> complex;
  Morphism<S> augmentation;
  std::vector<Summands> summands;
};

/// Iterated hulls by [sigma] (sheaves) or {sigma^} (cosheaves).
template <class S, Variance V>
ObjectResolution<S, V> injective_resolution(const Cellular<S, V>& f);
/// Iterated covers by {sigma} (sheaves) or [sigma^] (cosheaves).
template <class S, Variance V>
ObjectResolution<S, V> projective_resolution(const Cellular<S, V>& f);

enum class Kind { injective, projective };

/// Multiplicities of the elementary summands; `stuck` is set when the object
/// is not of the requested kind.
template <class S, Variance V>
Decomposition decompose(const Cellular<S, V>& f, Kind kind);

/// Labels a list of summands as "id^m, ...".
std::string describe(const CellComplex& x, const Summands& s);

template <class S, Variance V>
CellularComplex<S, V> concentrated(const Cellular<S, V>& f, int n = 0) {
  return {f.base, concentrated(f.data, n)};
}

/// Cell ids as a Namer for diagram reports.
inline Namer cell_namer(const ComplexPtr& x) {
  return [x](std::size_t i) { return x->id(i); };
}

}  // namespace sheafkit

#endif  // SHEAFKIT_SHEAF_HPP
