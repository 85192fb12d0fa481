#include "sheafkit/coend.hpp"

#include <stdexcept>

#include "sheafkit/duality.hpp"

namespace sheafkit {

namespace {

template <class S>
void require_same_base(const Cosheaf<S>& g, const Sheaf<S>& f) {
  if (g.base != f.base) throw std::invalid_argument("tensor: the cosheaf and the sheaf live on different complexes");
}

template <class S>
std::vector<Index> offsets(const Diagram<S>& g, const Diagram<S>& f, Index* total) {
  std::vector<Index> off(g.size());
  Index run = 0;
  for (std::size_t s = 0; s < g.size(); ++s) {
    off[s] = run;
    run += g.dims[s] * f.dims[s];
  }
  *total = run;
  return off;
}

// Relations g (x) f for g in G(tau), f in F(sigma): r(g) (x) f at sigma minus
// g (x) rho(f) at tau.
template <class S>
void add_relation(std::vector<Triplet<S>>& t, Index& col, const std::vector<Index>& off, std::size_t sigma,
                  std::size_t tau, const Mat<S>& r, const Mat<S>& rho) {
  const Index g_tau = r.cols(), f_sigma = rho.cols();
  add_block(t, off[sigma], col, kron(r, identity<S>(f_sigma)));
  add_block(t, off[tau], col, kron(identity<S>(g_tau), rho), S(-1));
  col += g_tau * f_sigma;
}

template <class S>
Tensor<S> quotient(std::vector<Index> off, Index ambient, Index cols, const std::vector<Triplet<S>>& t) {
  return {std::move(off), cokernel(from_triplets<S>(ambient, cols, t))};
}

}  // namespace

template <class S>
Tensor<S> tensor(const Cosheaf<S>& g, const Sheaf<S>& f) {
  require_same_base(g, f);
  const CellComplex& x = *f.base;
  Index ambient = 0, col = 0;
  std::vector<Index> off = offsets(g.data, f.data, &ambient);
  std::vector<Triplet<S>> t;
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& in = x.incidence(c);
    add_relation(t, col, off, in.lo, in.hi, g.map(c), f.map(c));
  }
  return quotient(std::move(off), ambient, col, t);
}

template <class S>
Tensor<S> tensor_all_pairs(const Cosheaf<S>& g, const Sheaf<S>& f) {
  require_same_base(g, f);
  const CellComplex& x = *f.base;
  Index ambient = 0, col = 0;
  std::vector<Index> off = offsets(g.data, f.data, &ambient);
  std::vector<Triplet<S>> t;
  for (std::size_t sigma = 0; sigma < x.size(); ++sigma)
    for (std::size_t tau = 0; tau < x.size(); ++tau)
      if (x.poset().less(sigma, tau))
        add_relation(t, col, off, sigma, tau, g.data.between(tau, sigma), f.data.between(sigma, tau));
  return quotient(std::move(off), ambient, col, t);
}

template <class S>
ChainComplex<S> tensor_complex(const CosheafComplex<S>& g, const Sheaf<S>& f) {
  if (g.base != f.base) throw std::invalid_argument("tensor: the cosheaf and the sheaf live on different complexes");
  if (g.data.empty()) return {};
  std::vector<Tensor<S>> terms;
  std::vector<Index> dims;
  for (int n = g.data.lo; n <= g.data.hi(); ++n) {
    terms.push_back(tensor(Cosheaf<S>{g.base, g.data.term(n)}, f));
    dims.push_back(terms.back().dim());
  }
  std::vector<SpMat<S>> diffs;
  for (std::size_t k = 0; k + 1 < terms.size(); ++k) {
    const Morphism<S> alpha = g.data.d(g.data.lo + static_cast<int>(k));
    const Tensor<S>& a = terms[k];
    const Tensor<S>& b = terms[k + 1];
    std::vector<Triplet<S>> t;
    for (std::size_t s = 0; s < f.base->size(); ++s)
      add_block(t, b.offset[s], a.offset[s], kron(alpha.at[s], identity<S>(f.dim(s))));
    SpMat<S> m = from_triplets<S>(b.space.ambient, a.space.ambient, t);
    diffs.push_back(multiply(multiply(b.space.projection, m), a.space.section));
  }
  return ChainComplex<S>(g.data.lo, std::move(dims), std::move(diffs));
}

template <class S>
GradedDims cc_via_coend(const Sheaf<S>& f) {
  return homology(tensor_complex(phat(constant<S, Variance::sheaf>(f.base, 1)), f));
}

#define SHEAFKIT_INSTANTIATE_COEND(S)                                            \
  template Tensor<S> tensor(const Cosheaf<S>&, const Sheaf<S>&);                 \
  template Tensor<S> tensor_all_pairs(const Cosheaf<S>&, const Sheaf<S>&);       \
  template ChainComplex<S> tensor_complex(const CosheafComplex<S>&, const Sheaf<S>&); \
  template GradedDims cc_via_coend(const Sheaf<S>&);

SHEAFKIT_INSTANTIATE_COEND(Rational)
SHEAFKIT_INSTANTIATE_COEND(ModP)

}  // namespace sheafkit
