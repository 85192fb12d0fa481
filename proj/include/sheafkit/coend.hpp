// The tensor product (coend) of a cosheaf with a sheaf over the face poset,
// and compactly supported cohomology as phat(k_X) tensored with F.
//
// G (x)_X F = (+)_sigma G(sigma) (x) F(sigma) modulo r(g) (x) f - g (x) rho(f)
// for every cover sigma < tau, g in G(tau), f in F(sigma). The coordinate of
// a (x) b at sigma is a * dim F(sigma) + b.

#ifndef SHEAFKIT_COEND_HPP
#define SHEAFKIT_COEND_HPP

#include <vector>

#include "sheafkit/sheaf.hpp"

namespace sheafkit {

template <class S>
struct Tensor {
  std::vector<Index> offset;  // per cell, into the ambient sum
  Quotient<S> space;

  Index dim() const { return space.dim(); }
};

/// Relations over covers only. Throws std::invalid_argument unless both
/// objects live on the same complex object.
template <class S>
Tensor<S> tensor(const Cosheaf<S>& g, const Sheaf<S>& f);

/// Relations over every pair sigma <= tau, through composite maps.
template <class S>
Tensor<S> tensor_all_pairs(const Cosheaf<S>& g, const Sheaf<S>& f);

/// Termwise tensor; the differential alpha induces alpha (x) 1 on each term.
template <class S>
ChainComplex<S> tensor_complex(const CosheafComplex<S>& g, const Sheaf<S>& f);

/// H^*(phat(k_X) (x)_X F).
template <class S>
GradedDims cc_via_coend(const Sheaf<S>& f);

}  // namespace sheafkit

#endif  // SHEAFKIT_COEND_HPP
