#include "sheafkit/sheaf.hpp"

namespace sheafkit {

template <class S, Variance V>
Cellular<S, V> make_object(const ComplexPtr& x, std::vector<Index> dims, std::vector<Mat<S>> maps) {
  if (dims.size() != x->size()) {
    throw ShapeError("expected " + std::to_string(x->size()) + " stalk dimensions, got " + std::to_string(dims.size()));
  }
  if (maps.size() != x->num_covers()) {
    throw ShapeError("expected " + std::to_string(x->num_covers()) + " maps, got " + std::to_string(maps.size()));
  }
  for (std::size_t c = 0; c < maps.size(); ++c) {
    const Incidence& in = x->incidence(c);
    Index rows = V == Variance::sheaf ? dims[in.hi] : dims[in.lo];
    Index cols = V == Variance::sheaf ? dims[in.lo] : dims[in.hi];
    if (maps[c].rows() != rows || maps[c].cols() != cols) {
      throw ShapeError("map on " + x->id(in.lo) + " < " + x->id(in.hi) + " is " + std::to_string(maps[c].rows()) +
                       "x" + std::to_string(maps[c].cols()) + ", expected " + std::to_string(rows) + "x" +
                       std::to_string(cols));
    }
  }
  return {x, {poset_of<V>(x), std::move(dims), std::move(maps)}};
}

template <class S, Variance V>
Cellular<S, V> zero_object(const ComplexPtr& x) {
  return {x, zero_diagram<S>(poset_of<V>(x))};
}

template <class S, Variance V>
Cellular<S, V> constant(const ComplexPtr& x, Index d) {
  return {x, constant_diagram<S>(poset_of<V>(x), d)};
}

template <class S, Variance V>
Cellular<S, V> skyscraper(const ComplexPtr& x, std::size_t sigma, Index d) {
  if (sigma >= x->size()) throw std::out_of_range("cell index out of range");
  return {x, skyscraper<S>(poset_of<V>(x), sigma, d)};
}

template <class S, Variance V>
Cellular<S, V> on_closure(const ComplexPtr& x, std::size_t sigma, Index d) {
  if (sigma >= x->size()) throw std::out_of_range("cell index out of range");
  std::vector<bool> mask(x->size(), false);
  for (std::size_t t : closure(*x, sigma)) mask[t] = true;
  return {x, indicator<S>(poset_of<V>(x), mask, d)};
}

template <class S, Variance V>
Cellular<S, V> on_star(const ComplexPtr& x, std::size_t sigma, Index d) {
  if (sigma >= x->size()) throw std::out_of_range("cell index out of range");
  std::vector<bool> mask(x->size(), false);
  for (std::size_t t : open_star(*x, sigma)) mask[t] = true;
  return {x, indicator<S>(poset_of<V>(x), mask, d)};
}

template <class S, Variance V>
Report validate(const Cellular<S, V>& f, bool exhaustive) {
  if (!f.base->acyclic()) {
    Report r;
    r.add("base", {}, "the base complex has a cyclic face relation");
    return r;
  }
  return check(f.data, exhaustive, cell_namer(f.base));
}

template <class S, Variance V>
bool operator==(const Cellular<S, V>& a, const Cellular<S, V>& b) {
  return a.base == b.base && same_diagram(a.data, b.data);
}

template <class S, Variance V>
Cellular<S, V> direct_sum(const Cellular<S, V>& a, const Cellular<S, V>& b) {
  return {a.base, direct_sum(std::vector<Diagram<S>>{a.data, b.data})};
}

template <class S, Variance V>
Cellular<S, flip(V)> linear_dual(const Cellular<S, V>& f) {
  return {f.base, dual(f.data, poset_of<flip(V)>(f.base))};
}

template <class S, Variance V>
CellularComplex<S, flip(V)> linear_dual(const CellularComplex<S, V>& c) {
  CellularComplex<S, flip(V)> out;
  out.base = c.base;
  out.data.poset = poset_of<flip(V)>(c.base);
  if (c.data.empty()) return out;
  out.data.lo = -c.data.hi();
  for (int n = c.data.hi(); n >= c.data.lo; --n) out.data.terms.push_back(dual(c.data.term(n), out.data.poset));
  // new degree m = -n maps to -n + 1 = -(n - 1): transpose of d(n - 1).
  for (int n = c.data.hi(); n > c.data.lo; --n) out.data.diffs.push_back(dual(c.data.d(n - 1)));
  return out;
}

template <class S, Variance V>
HomSpace<S> hom_space(const Cellular<S, V>& a, const Cellular<S, V>& b) {
  HomSpace<S> h{hom_space(a.data, b.data), {}};
  for (Index k = 0; k < h.dim(); ++k) h.basis.push_back(hom_basis_element(h.data, a.data, b.data, k));
  return h;
}

template <class S>
Sheaf<S> sheaf_hom(const Sheaf<S>& f, const Sheaf<S>& g) {
  return {f.base, internal_hom(f.data, g.data)};
}

template <class S, Variance V>
ObjectResolution<S, V> injective_resolution(const Cellular<S, V>& f) {
  Resolution<S> r = injective_resolution(f.data);
  return {{f.base, std::move(r.complex)}, std::move(r.augmentation), std::move(r.summands)};
}

template <class S, Variance V>
ObjectResolution<S, V> projective_resolution(const Cellular<S, V>& f) {
  Resolution<S> r = projective_resolution(f.data);
  return {{f.base, std::move(r.complex)}, std::move(r.augmentation), std::move(r.summands)};
}

template <class S, Variance V>
Decomposition decompose(const Cellular<S, V>& f, Kind kind) {
  return kind == Kind::injective ? decompose_injective(f.data) : decompose_projective(f.data);
}

std::string describe(const CellComplex& x, const Summands& s) {
  if (s.empty()) return "0";
  std::string out;
  for (const auto& [cell, m] : s) {
    if (!out.empty()) out += ", ";
    out += x.id(cell);
    if (m != 1) out += "^" + std::to_string(m);
  }
  return out;
}

#define SHEAFKIT_INSTANTIATE_OBJECT(S, V)                                                                       \
  template Cellular<S, V> make_object<S, V>(const ComplexPtr&, std::vector<Index>, std::vector<Mat<S>>);       \
  template Cellular<S, V> zero_object<S, V>(const ComplexPtr&);                                                \
  template Cellular<S, V> constant<S, V>(const ComplexPtr&, Index);                                            \
  template Cellular<S, V> skyscraper<S, V>(const ComplexPtr&, std::size_t, Index);                             \
  template Cellular<S, V> on_closure<S, V>(const ComplexPtr&, std::size_t, Index);                             \
  template Cellular<S, V> on_star<S, V>(const ComplexPtr&, std::size_t, Index);                                \
  template Report validate(const Cellular<S, V>&, bool);                                                        \
  template bool operator==(const Cellular<S, V>&, const Cellular<S, V>&);                                       \
  template Cellular<S, V> direct_sum(const Cellular<S, V>&, const Cellular<S, V>&);                            \
  template Cellular<S, flip(V)> linear_dual(const Cellular<S, V>&);                                            \
  template CellularComplex<S, flip(V)> linear_dual(const CellularComplex<S, V>&);                              \
  template HomSpace<S> hom_space(const Cellular<S, V>&, const Cellular<S, V>&);                                \
  template ObjectResolution<S, V> injective_resolution(const Cellular<S, V>&);                                 \
  template ObjectResolution<S, V> projective_resolution(const Cellular<S, V>&);                                \
  template Decomposition decompose(const Cellular<S, V>&, Kind);

SHEAFKIT_INSTANTIATE_OBJECT(Rational, Variance::sheaf)
SHEAFKIT_INSTANTIATE_OBJECT(Rational, Variance::cosheaf)
SHEAFKIT_INSTANTIATE_OBJECT(ModP, Variance::sheaf)
SHEAFKIT_INSTANTIATE_OBJECT(ModP, Variance::cosheaf)

template Sheaf<Rational> sheaf_hom(const Sheaf<Rational>&, const Sheaf<Rational>&);
template Sheaf<ModP> sheaf_hom(const Sheaf<ModP>&, const Sheaf<ModP>&);

}  // namespace sheafkit
