// Cellular (co)homology of sheaves and cosheaves: the cochain formulas
// (compactly supported, ordinary, Borel-Moore, ordinary cosheaf homology) and
// the four derived theories built from resolutions.
//
// Every complex is graded cohomologically. Homological theories place the
// i-cells in degree -i and report H_i = H^{-i} via to_homological().

#ifndef SHEAFKIT_HOMOLOGY_HPP
#define SHEAFKIT_HOMOLOGY_HPP

#include <string>

#include "sheafkit/functors.hpp"
#include "sheafkit/sheaf.hpp"

namespace sheafkit {

enum class Theory {
  sheaf_cohomology,
  compact_sheaf_cohomology,
  cosheaf_homology,
  bm_cosheaf_homology,
  sheaf_homology,
  cosheaf_cohomology,
};

const char* to_string(Theory t);
bool is_homological(Theory t);

template <class S>
struct TheoryResult {
  Theory theory;
  GradedDims dims;          // H^n, or H_i for homological theories
  ChainComplex<S> complex;  // cohomologically graded
};

/// C^n_c = (+)_{sigma in X^n} F(sigma), d = sum [sigma:tau] rho_{tau,sigma}.
template <class S>
ChainComplex<S> compact_cochain_complex(const Sheaf<S>& f);
/// C^BM_i = (+)_{sigma in X^i} F(sigma) in degree -i, d = sum [sigma:tau] r_{sigma,tau}.
template <class S>
ChainComplex<S> bm_chain_complex(const Cosheaf<S>& f);

template <class S>
TheoryResult<S> compact_cohomology(const Sheaf<S>& f);
/// Compactly supported cohomology of the restriction to the compact subcomplex.
template <class S>
TheoryResult<S> ordinary_cohomology(const Sheaf<S>& f);
template <class S>
TheoryResult<S> bm_homology(const Cosheaf<S>& f);
template <class S>
TheoryResult<S> cosheaf_homology(const Cosheaf<S>& f);

/// H^i(p_* I) for an injective resolution I of F.
template <class S>
TheoryResult<S> derived_sheaf_cohomology(const Sheaf<S>& f);
/// H_i(p_dagger P) for a projective resolution P of F.
template <class S>
TheoryResult<S> derived_sheaf_homology(const Sheaf<S>& f);
/// H_i(p_* P) for a projective resolution of a cosheaf.
template <class S>
TheoryResult<S> derived_cosheaf_homology(const Cosheaf<S>& f);
/// H^i(p_dagger I) for an injective resolution of a cosheaf.
template <class S>
TheoryResult<S> derived_cosheaf_cohomology(const Cosheaf<S>& f);

/// Dispatch on the theory tag; throws std::invalid_argument when the tag
/// belongs to the other variance.
template <class S>
TheoryResult<S> derived_theory(const Sheaf<S>& f, Theory t);
template <class S>
TheoryResult<S> derived_theory(const Cosheaf<S>& f, Theory t);

/// Colimit over X+ with the value at infinity set to zero.
template <class S>
Index bm_sections(const Cosheaf<S>& f);

/// sum_sigma (-1)^{dim sigma} dim F(sigma).
template <class S, Variance V>
long long cellular_euler(const Cellular<S, V>& f) {
  long long chi = 0;
  for (std::size_t i = 0; i < f.base->size(); ++i) chi += (f.base->dim(i) % 2 == 0 ? 1 : -1) * f.dim(i);
  return chi;
}

/// Compares every theory of F and of its linear dual on X with the same
/// theory after pulling back along the subdivision map s : X' -> X.
template <class S>
Report subdivision_invariance_check(const Sheaf<S>& f, const PosetMap& s);

}  // namespace sheafkit

#endif  // SHEAFKIT_HOMOLOGY_HPP
