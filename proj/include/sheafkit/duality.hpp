// The equivalence between complexes of sheaves and complexes of cosheaves,
// Verdier duality, the dualizing complex and local homology.
//
// phat(F) has (+)_{sigma in X^i} [sigma^]^{F(sigma)} in degree i with
// differential blocks [sigma:gamma] rho_{gamma,sigma}; its value at sigma is
// the compactly supported cochain complex of F on the open star of sigma.
// p_inv(G) has (+)_{sigma in X^i} [sigma]^{G(sigma)} in degree -i with blocks
// [gamma:sigma] r_{gamma,sigma}. Complexes go through a double complex and
// total() (the object degree is p, the inner degree is q).

#ifndef SHEAFKIT_DUALITY_HPP
#define SHEAFKIT_DUALITY_HPP

#include "sheafkit/homology.hpp"
#include "sheafkit/sheaf.hpp"

namespace sheafkit {

template <class S>
CosheafComplex<S> phat(const Sheaf<S>& f);
template <class S>
CosheafComplex<S> phat(const SheafComplex<S>& c);
/// phat(alpha) : phat(F) -> phat(G), degree by degree.
template <class S>
ComplexMorphism<S> phat(const Sheaf<S>& f, const Sheaf<S>& g, const Morphism<S>& alpha);

template <class S>
SheafComplex<S> p_inv(const Cosheaf<S>& g);
template <class S>
SheafComplex<S> p_inv(const CosheafComplex<S>& c);

/// The degree -i term has one [gamma] per i-cell; maps [gamma:tau].
template <class S>
SheafComplex<S> dualizing_complex(const ComplexPtr& x);

/// (+)_{tau in X^i} [tau]^{F(tau)^*} in degree -i with blocks [gamma:tau] rho^T.
template <class S>
SheafComplex<S> verdier_dual(const Sheaf<S>& f);
/// linear_dual(phat(C)).
template <class S>
SheafComplex<S> verdier_dual(const SheafComplex<S>& c);

template <class S>
struct RoundTrip {
  SheafComplex<S> target;  // p_inv(phat(F)), or D(D(F))
  ComplexMorphism<S> unit;  // from F in degree 0
  Report report;
};

/// Unit F -> p_inv(phat(F)): on the summand [gamma]^{F(gamma)} of degree 0
/// it is (-1)^{p(p+1)/2} rho_{gamma,tau} at tau, p = dim gamma. The report
/// lists every cell where the stalk map fails to be a quasi-isomorphism.
template <class S>
RoundTrip<S> roundtrip(const Sheaf<S>& f);
template <class S>
Report roundtrip_check(const Sheaf<S>& f) {
  return roundtrip(f).report;
}

/// Same unit into D(D(F)), whose degree-0 summands come in the opposite
/// order of cell dimension.
template <class S>
RoundTrip<S> double_dual(const Sheaf<S>& f);

/// phat(F) evaluated at sigma.
template <class S>
ChainComplex<S> local_complex(const Sheaf<S>& f, std::size_t sigma);
template <class S>
GradedDims local_homology(const Sheaf<S>& f, std::size_t sigma) {
  return homology(local_complex(f, sigma));
}

/// Termwise colimit of phat(F); its H^i is H^i_c(X;F).
template <class S>
TheoryResult<S> compact_cohomology_via_phat(const Sheaf<S>& f);

/// The same diagram read as a cosheaf on dual_structure(X, n).
template <class S>
Cosheaf<S> sheaf_to_dual_cosheaf(const Sheaf<S>& f, int n, bool assume_manifold = false);

/// H^i(X;F) against H_{n-i}(X;F) computed twice: derived sheaf homology of
/// F, and cellular homology of the same data as a cosheaf on the dual cells.
template <class S>
Report poincare_check(const Sheaf<S>& f, int n, bool assume_manifold = false);

}  // namespace sheafkit

#endif  // SHEAFKIT_DUALITY_HPP
