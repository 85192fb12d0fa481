#include "sheafkit/duality.hpp"

namespace sheafkit {

namespace {

template <class S>
struct Block {
  std::size_t to;
  std::size_t from;
  Mat<S> m;
};

// offsets[t][x]: position of the summand indexed by x in the stalk at t of
// elementary_sum(p, kind, mult), or -1.
std::vector<std::vector<Index>> stalk_offsets(const Poset& p, Support kind, const std::vector<Index>& mult) {
  const std::size_t n = p.size();
  std::vector<std::vector<Index>> off(n, std::vector<Index>(n, -1));
  for (std::size_t t = 0; t < n; ++t) {
    Index run = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (mult[x] == 0) continue;
      if (kind == Support::down ? !p.leq(t, x) : !p.leq(x, t)) continue;
      off[t][x] = run;
      run += mult[x];
    }
  }
  return off;
}

// A morphism between elementary sums assembled from blocks x -> y, kept at
// every element where both summands are present.
template <class S>
Morphism<S> elementary_morphism(const Diagram<S>& src, const Diagram<S>& tgt, Support kind,
                                const std::vector<Index>& src_mult, const std::vector<Index>& tgt_mult,
                                const std::vector<Block<S>>& blocks) {
  const Poset& p = *src.poset;
  auto a = stalk_offsets(p, kind, src_mult);
  auto b = stalk_offsets(p, kind, tgt_mult);
  Morphism<S> out;
  for (std::size_t t = 0; t < p.size(); ++t) {
    Mat<S> m = zeros<S>(tgt.dims[t], src.dims[t]);
    for (const auto& blk : blocks) {
      Index col = a[t][blk.from], row = b[t][blk.to];
      if (col >= 0 && row >= 0) m.block(row, col, blk.m.rows(), blk.m.cols()) += blk.m;
    }
    out.at.push_back(std::move(m));
  }
  return out;
}

template <class S>
DiagramComplex<S> elementary_complex(const PosetPtr& p, Support kind, int lo,
                                     const std::vector<std::vector<Index>>& mult,
                                     const std::vector<std::vector<Block<S>>>& blocks) {
  DiagramComplex<S> out;
  out.poset = p;
  out.lo = lo;
  for (const auto& m : mult) out.terms.push_back(elementary_sum<S>(p, kind, m));
  for (std::size_t k = 0; k + 1 < mult.size(); ++k)
    out.diffs.push_back(elementary_morphism(out.terms[k], out.terms[k + 1], kind, mult[k], mult[k + 1], blocks[k]));
  return out;
}

// Stalk dimensions of cells of dimension `i`, zero elsewhere.
template <class S, Variance V>
std::vector<Index> cells_of(const Cellular<S, V>& f, int i) {
  std::vector<Index> m(f.base->size(), 0);
  for (std::size_t s = 0; s < m.size(); ++s)
    if (f.base->dim(s) == i) m[s] = f.dim(s);
  return m;
}

Index get(const GradedDims& d, int n) {
  auto it = d.find(n);
  return it == d.end() ? 0 : it->second;
}

template <class S>
ComplexMorphism<S> p_inv_morphism(const Cosheaf<S>& g, const Cosheaf<S>& h, const Morphism<S>& beta,
                                  const SheafComplex<S>& pg, const SheafComplex<S>& ph) {
  const int top = g.base->dimension();
  ComplexMorphism<S> out;
  for (int i = 0; i <= top; ++i) {
    std::vector<Block<S>> blocks;
    for (std::size_t s = 0; s < g.base->size(); ++s)
      if (g.base->dim(s) == i) blocks.push_back({s, s, beta.at[s]});
    out.f[-i] = elementary_morphism(pg.data.term(-i), ph.data.term(-i), Support::down, cells_of(g, i), cells_of(h, i),
                                    blocks);
  }
  return out;
}

// Unit F -> target in degree 0, where the degree-0 term is
// (+)_p (+)_{gamma in X^p} [gamma]^{F(gamma)} with p ascending or descending.
template <class S>
ComplexMorphism<S> unit_into(const Sheaf<S>& f, const SheafComplex<S>& target, bool descending) {
  const CellComplex& x = *f.base;
  const int top = x.dimension();
  Diagram<S> t0 = target.data.term(0);
  Morphism<S> eta;
  for (std::size_t tau = 0; tau < x.size(); ++tau) {
    std::vector<Mat<S>> parts;
    Index rows = 0;
    for (int k = 0; k <= top; ++k) {
      int p = descending ? top - k : k;
      S sign = (p * (p + 1) / 2) % 2 == 0 ? S(1) : S(-1);
      for (std::size_t gamma = 0; gamma < x.size(); ++gamma) {
        if (x.dim(gamma) != p || !x.poset().leq(tau, gamma) || f.dim(gamma) == 0) continue;
        parts.push_back(sign * f.data.between(tau, gamma));
        rows += f.dim(gamma);
      }
    }
    if (rows != t0.dims[tau]) throw std::logic_error("unit: degree-0 term has an unexpected shape");
    Mat<S> m = zeros<S>(rows, f.dim(tau));
    Index r = 0;
    for (const auto& part : parts) {
      m.block(r, 0, part.rows(), part.cols()) = part;
      r += part.rows();
    }
    eta.at.push_back(std::move(m));
  }
  ComplexMorphism<S> out;
  out.f[0] = std::move(eta);
  return out;
}

template <class S>
Report quasi_iso_report(const Sheaf<S>& f, const SheafComplex<S>& target, const ComplexMorphism<S>& unit) {
  Report r;
  DiagramComplex<S> src = concentrated(f.data, 0);
  for (std::size_t x = 0; x < f.base->size(); ++x) {
    ChainMap<S> m = at(src, target.data, unit, x);
    if (auto bad = m.square_violation()) {
      r.add("chain-map", {f.base->id(x)}, "unit is not a chain map in degree " + std::to_string(*bad));
    } else if (!is_quasi_iso(m)) {
      r.add("quasi-iso", {f.base->id(x)}, "stalk map is not a quasi-isomorphism");
    }
  }
  return r;
}

}  // namespace

template <class S>
CosheafComplex<S> phat(const Sheaf<S>& f) {
  const CellComplex& x = *f.base;
  const int top = x.dimension();
  CosheafComplex<S> out{f.base, {}};
  out.data.poset = poset_of<Variance::cosheaf>(f.base);
  if (top < 0) return out;
  std::vector<std::vector<Index>> mult;
  std::vector<std::vector<Block<S>>> blocks(static_cast<std::size_t>(top));
  for (int i = 0; i <= top; ++i) mult.push_back(cells_of(f, i));
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& in = x.incidence(c);
    blocks[static_cast<std::size_t>(x.dim(in.lo))].push_back({in.hi, in.lo, S(in.sign) * f.map(c)});
  }
  out.data = elementary_complex(out.data.poset, Support::up, 0, mult, blocks);
  return out;
}

template <class S>
ComplexMorphism<S> phat(const Sheaf<S>& f, const Sheaf<S>& g, const Morphism<S>& alpha) {
  CosheafComplex<S> pf = phat(f), pg = phat(g);
  const int top = f.base->dimension();
  ComplexMorphism<S> out;
  for (int i = 0; i <= top; ++i) {
    std::vector<Block<S>> blocks;
    for (std::size_t s = 0; s < f.base->size(); ++s)
      if (f.base->dim(s) == i) blocks.push_back({s, s, alpha.at[s]});
    out.f[i] = elementary_morphism(pf.data.term(i), pg.data.term(i), Support::up, cells_of(f, i), cells_of(g, i), blocks);
  }
  return out;
}

template <class S>
CosheafComplex<S> phat(const SheafComplex<S>& c) {
  CosheafComplex<S> out{c.base, {}};
  out.data.poset = poset_of<Variance::cosheaf>(c.base);
  const int top = c.base->dimension();
  if (c.data.empty() || top < 0) return out;
  DiagramDouble<S> dd;
  dd.poset = out.data.poset;
  dd.p_lo = c.data.lo;
  dd.p_hi = c.data.hi();
  dd.q_lo = 0;
  dd.q_hi = top;
  for (int p = dd.p_lo; p <= dd.p_hi; ++p) {
    Sheaf<S> fp{c.base, c.data.term(p)};
    CosheafComplex<S> row = phat(fp);
    for (int q = 0; q <= top; ++q) {
      dd.entries[{p, q}] = row.data.term(q);
      if (q < top) dd.horizontal[{p, q}] = row.data.d(q);
    }
    if (p < dd.p_hi) {
      Sheaf<S> next{c.base, c.data.term(p + 1)};
      ComplexMorphism<S> v = phat(fp, next, c.data.d(p));
      for (int q = 0; q <= top; ++q) dd.vertical[{p, q}] = v.f[q];
    }
  }
  out.data = total(dd);
  return out;
}

template <class S>
SheafComplex<S> p_inv(const Cosheaf<S>& g) {
  const CellComplex& x = *g.base;
  const int top = x.dimension();
  SheafComplex<S> out{g.base, {}};
  out.data.poset = poset_of<Variance::sheaf>(g.base);
  if (top < 0) return out;
  // term k sits in degree k - top and holds the (top - k)-cells.
  std::vector<std::vector<Index>> mult;
  std::vector<std::vector<Block<S>>> blocks(static_cast<std::size_t>(top));
  for (int k = 0; k <= top; ++k) mult.push_back(cells_of(g, top - k));
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& in = x.incidence(c);
    blocks[static_cast<std::size_t>(top - x.dim(in.hi))].push_back({in.lo, in.hi, S(in.sign) * g.map(c)});
  }
  out.data = elementary_complex(out.data.poset, Support::down, -top, mult, blocks);
  return out;
}

template <class S>
SheafComplex<S> p_inv(const CosheafComplex<S>& c) {
  SheafComplex<S> out{c.base, {}};
  out.data.poset = poset_of<Variance::sheaf>(c.base);
  const int top = c.base->dimension();
  if (c.data.empty() || top < 0) return out;
  DiagramDouble<S> dd;
  dd.poset = out.data.poset;
  dd.p_lo = c.data.lo;
  dd.p_hi = c.data.hi();
  dd.q_lo = -top;
  dd.q_hi = 0;
  for (int p = dd.p_lo; p <= dd.p_hi; ++p) {
    Cosheaf<S> gp{c.base, c.data.term(p)};
    SheafComplex<S> row = p_inv(gp);
    for (int q = -top; q <= 0; ++q) {
      dd.entries[{p, q}] = row.data.term(q);
      if (q < 0) dd.horizontal[{p, q}] = row.data.d(q);
    }
    if (p < dd.p_hi) {
      Cosheaf<S> next{c.base, c.data.term(p + 1)};
      ComplexMorphism<S> v = p_inv_morphism(gp, next, c.data.d(p), row, p_inv(next));
      for (int q = -top; q <= 0; ++q) dd.vertical[{p, q}] = v.f[q];
    }
  }
  out.data = total(dd);
  return out;
}

template <class S>
SheafComplex<S> dualizing_complex(const ComplexPtr& x) {
  const int top = x->dimension();
  SheafComplex<S> out{x, {}};
  out.data.poset = poset_of<Variance::sheaf>(x);
  if (top < 0) return out;
  std::vector<std::vector<Index>> mult;
  std::vector<std::vector<Block<S>>> blocks(static_cast<std::size_t>(top));
  for (int k = 0; k <= top; ++k) {
    std::vector<Index> m(x->size(), 0);
    for (std::size_t s = 0; s < x->size(); ++s) m[s] = x->dim(s) == top - k ? 1 : 0;
    mult.push_back(std::move(m));
  }
  for (std::size_t c = 0; c < x->num_covers(); ++c) {
    const Incidence& in = x->incidence(c);
    Mat<S> one = zeros<S>(1, 1);
    one(0, 0) = S(in.sign);
    blocks[static_cast<std::size_t>(top - x->dim(in.hi))].push_back({in.lo, in.hi, one});
  }
  out.data = elementary_complex(out.data.poset, Support::down, -top, mult, blocks);
  return out;
}

template <class S>
SheafComplex<S> verdier_dual(const Sheaf<S>& f) {
  const CellComplex& x = *f.base;
  const int top = x.dimension();
  SheafComplex<S> out{f.base, {}};
  out.data.poset = poset_of<Variance::sheaf>(f.base);
  if (top < 0) return out;
  std::vector<std::vector<Index>> mult;
  std::vector<std::vector<Block<S>>> blocks(static_cast<std::size_t>(top));
  for (int k = 0; k <= top; ++k) mult.push_back(cells_of(f, top - k));
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& in = x.incidence(c);
    blocks[static_cast<std::size_t>(top - x.dim(in.hi))].push_back(
        {in.lo, in.hi, Mat<S>(S(in.sign) * f.map(c).transpose())});
  }
  out.data = elementary_complex(out.data.poset, Support::down, -top, mult, blocks);
  return out;
}

template <class S>
SheafComplex<S> verdier_dual(const SheafComplex<S>& c) {
  return linear_dual(phat(c));
}

template <class S>
RoundTrip<S> roundtrip(const Sheaf<S>& f) {
  RoundTrip<S> rt;
  rt.target = p_inv(phat(f));
  rt.unit = unit_into(f, rt.target, false);
  rt.report = quasi_iso_report(f, rt.target, rt.unit);
  return rt;
}

template <class S>
RoundTrip<S> double_dual(const Sheaf<S>& f) {
  RoundTrip<S> rt;
  rt.target = verdier_dual(verdier_dual(f));
  rt.unit = unit_into(f, rt.target, true);
  rt.report = quasi_iso_report(f, rt.target, rt.unit);
  return rt;
}

template <class S>
ChainComplex<S> local_complex(const Sheaf<S>& f, std::size_t sigma) {
  if (sigma >= f.base->size()) throw std::out_of_range("cell index out of range");
  return phat(f).data.at(sigma);
}

template <class S>
TheoryResult<S> compact_cohomology_via_phat(const Sheaf<S>& f) {
  ChainComplex<S> c = colimit_complex(phat(f).data);
  GradedDims h = homology(c);
  return {Theory::compact_sheaf_cohomology, std::move(h), std::move(c)};
}

template <class S>
Cosheaf<S> sheaf_to_dual_cosheaf(const Sheaf<S>& f, int n, bool assume_manifold) {
  ComplexPtr dual = share(dual_structure(*f.base, n, assume_manifold));
  return make_object<S, Variance::cosheaf>(dual, f.data.dims, f.data.maps);
}

template <class S>
Report poincare_check(const Sheaf<S>& f, int n, bool assume_manifold) {
  Report r;
  if (f.base->has_infinity()) r.add("compactness", {}, "the complex is not compact");
  if (assume_manifold) {
    r.notes.push_back("manifold hypothesis assumed by the caller");
  } else {
    Report m = manifold_check(*f.base, n);
    for (auto& issue : m.issues) r.issues.push_back(std::move(issue));
  }
  if (!r.ok()) return r;
  GradedDims coh = ordinary_cohomology(f).dims;
  GradedDims hom = derived_sheaf_homology(f).dims;
  GradedDims dual = cosheaf_homology(sheaf_to_dual_cosheaf(f, n, true)).dims;
  for (int i = 0; i <= n; ++i) {
    std::string line = "H^" + std::to_string(i) + " = " + std::to_string(get(coh, i)) + ", H_" +
                       std::to_string(n - i) + " = " + std::to_string(get(hom, n - i));
    if (get(coh, i) != get(hom, n - i)) {
      r.add("poincare", {}, line);
    } else {
      r.notes.push_back(line);
    }
    if (get(coh, i) != get(dual, n - i)) {
      r.add("dual-cells", {}, "H^" + std::to_string(i) + " = " + std::to_string(get(coh, i)) + ", but H_" +
                                  std::to_string(n - i) + " of the cosheaf on the dual cells is " +
                                  std::to_string(get(dual, n - i)));
    }
  }
  return r;
}

#define SHEAFKIT_INSTANTIATE_DUALITY(S)                                                          \
  template CosheafComplex<S> phat(const Sheaf<S>&);                                             \
  template CosheafComplex<S> phat(const SheafComplex<S>&);                                      \
  template ComplexMorphism<S> phat(const Sheaf<S>&, const Sheaf<S>&, const Morphism<S>&);       \
  template SheafComplex<S> p_inv(const Cosheaf<S>&);                                            \
  template SheafComplex<S> p_inv(const CosheafComplex<S>&);                                     \
  template SheafComplex<S> dualizing_complex<S>(const ComplexPtr&);                             \
  template SheafComplex<S> verdier_dual(const Sheaf<S>&);                                       \
  template SheafComplex<S> verdier_dual(const SheafComplex<S>&);                                \
  template RoundTrip<S> roundtrip(const Sheaf<S>&);                                             \
  template RoundTrip<S> double_dual(const Sheaf<S>&);                                           \
  template ChainComplex<S> local_complex(const Sheaf<S>&, std::size_t);                         \
  template TheoryResult<S> compact_cohomology_via_phat(const Sheaf<S>&);                        \
  template Cosheaf<S> sheaf_to_dual_cosheaf(const Sheaf<S>&, int, bool);                        \
  template Report poincare_check(const Sheaf<S>&, int, bool);

SHEAFKIT_INSTANTIATE_DUALITY(Rational)
SHEAFKIT_INSTANTIATE_DUALITY(ModP)

}  // namespace sheafkit
