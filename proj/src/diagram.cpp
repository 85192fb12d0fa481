#include "sheafkit/diagram.hpp"

#include <algorithm>

namespace sheafkit {

namespace {

template <class S>
bool equal(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

std::vector<bool> all_of(std::size_t n) { return std::vector<bool>(n, true); }

Blocks make_blocks(const std::vector<bool>& members, const std::function<Index(std::size_t)>& size) {
  Blocks b;
  b.offset.assign(members.size(), -1);
  b.size.assign(members.size(), 0);
  for (std::size_t x = 0; x < members.size(); ++x) {
    if (!members[x]) continue;
    b.members.push_back(x);
    b.offset[x] = b.total;
    b.size[x] = size(x);
    b.total += b.size[x];
  }
  return b;
}

bool is_convex(const Poset& p, const std::vector<bool>& members) {
  for (std::size_t m = 0; m < p.size(); ++m) {
    if (members[m]) continue;
    bool below = false, above = false;
    for (std::size_t a = 0; a < p.size() && !(below && above); ++a) {
      if (!members[a]) continue;
      below = below || p.less(a, m);
      above = above || p.less(m, a);
    }
    if (below && above) return false;
  }
  return true;
}

// Relations lo < hi inside U with the composite map between them.
template <class S>
std::vector<std::tuple<std::size_t, std::size_t, Mat<S>>> relations(const Diagram<S>& d,
                                                                    const std::vector<bool>& members) {
  std::vector<std::tuple<std::size_t, std::size_t, Mat<S>>> out;
  const Poset& p = *d.poset;
  if (is_convex(p, members)) {
    for (std::size_t c = 0; c < p.covers().size(); ++c) {
      const Cover& cv = p.cover(c);
      if (members[cv.lo] && members[cv.hi]) out.emplace_back(cv.lo, cv.hi, d.maps[c]);
    }
  } else {
    for (const Cover& cv : p.induced_covers(members)) out.emplace_back(cv.lo, cv.hi, d.between(cv.lo, cv.hi));
  }
  return out;
}

template <class S>
Mat<S> to_dense(const SpMat<S>& m) {
  return dense(m);
}

}  // namespace

template <class S>
Index Diagram<S>::total_dim() const {
  Index t = 0;
  for (Index d : dims) t += d;
  return t;
}

template <class S>
Mat<S> Diagram<S>::between(std::size_t a, std::size_t b) const {
  Mat<S> m = identity<S>(dims[a]);
  for (std::size_t c : poset->chain(a, b)) m = multiply(maps[c], m);
  return m;
}

template <class S>
Diagram<S> DiagramComplex<S>::term(int n) const {
  if (n >= lo && n <= hi()) return terms[static_cast<std::size_t>(n - lo)];
  return zero_diagram<S>(poset);
}

template <class S>
Morphism<S> DiagramComplex<S>::d(int n) const {
  if (n >= lo && n < hi()) return diffs[static_cast<std::size_t>(n - lo)];
  return zero_morphism(term(n), term(n + 1));
}

template <class S>
ChainComplex<S> DiagramComplex<S>::at(std::size_t x) const {
  if (terms.empty()) return {};
  std::vector<Index> dims;
  std::vector<SpMat<S>> ds;
  for (const auto& t : terms) dims.push_back(t.dim(x));
  for (const auto& m : diffs) ds.push_back(sparse(m.at[x]));
  return ChainComplex<S>(lo, std::move(dims), std::move(ds));
}

template <class S>
Diagram<S> zero_diagram(const PosetPtr& p) {
  return indicator<S>(p, std::vector<bool>(p->size(), false), 0);
}

template <class S>
Diagram<S> constant_diagram(const PosetPtr& p, Index d) {
  return indicator<S>(p, all_of(p->size()), d);
}

template <class S>
Diagram<S> indicator(const PosetPtr& p, const std::vector<bool>& members, Index d) {
  Diagram<S> out{p, {}, {}};
  for (std::size_t x = 0; x < p->size(); ++x) out.dims.push_back(members[x] ? d : 0);
  for (const Cover& c : p->covers()) {
    if (members[c.lo] && members[c.hi]) {
      out.maps.push_back(identity<S>(d));
    } else {
      out.maps.push_back(zeros<S>(out.dims[c.hi], out.dims[c.lo]));
    }
  }
  return out;
}

template <class S>
Diagram<S> skyscraper(const PosetPtr& p, std::size_t x, Index d) {
  Diagram<S> out{p, std::vector<Index>(p->size(), 0), {}};
  out.dims.at(x) = d;
  for (const Cover& c : p->covers()) out.maps.push_back(zeros<S>(out.dims[c.hi], out.dims[c.lo]));
  return out;
}

template <class S>
Diagram<S> elementary_sum(const PosetPtr& p, Support kind, const std::vector<Index>& multiplicity) {
  const std::size_t n = p->size();
  // offsets[t][x]: position of summand x inside the stalk at t, or -1.
  std::vector<std::vector<Index>> offsets(n, std::vector<Index>(n, -1));
  Diagram<S> out{p, std::vector<Index>(n, 0), {}};
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t x = 0; x < n; ++x) {
      if (multiplicity[x] == 0) continue;
      bool in = kind == Support::down ? p->leq(t, x) : p->leq(x, t);
      if (!in) continue;
      offsets[t][x] = out.dims[t];
      out.dims[t] += multiplicity[x];
    }
  }
  for (const Cover& c : p->covers()) {
    Mat<S> m = zeros<S>(out.dims[c.hi], out.dims[c.lo]);
    for (std::size_t x = 0; x < n; ++x) {
      Index a = offsets[c.lo][x], b = offsets[c.hi][x];
      if (a < 0 || b < 0) continue;
      for (Index k = 0; k < multiplicity[x]; ++k) m(b + k, a + k) = S(1);
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

template <class S>
Report check(const Diagram<S>& d, bool exhaustive, const Namer& name) {
  Report r;
  const Poset& p = *d.poset;
  if (d.dims.size() != p.size()) {
    r.add("shape", {}, "expected " + std::to_string(p.size()) + " stalks, got " + std::to_string(d.dims.size()));
    return r;
  }
  if (d.maps.size() != p.covers().size()) {
    r.add("shape", {}, "expected " + std::to_string(p.covers().size()) + " maps, got " + std::to_string(d.maps.size()));
    return r;
  }
  for (std::size_t c = 0; c < p.covers().size(); ++c) {
    const Cover& cv = p.cover(c);
    if (d.maps[c].rows() != d.dims[cv.hi] || d.maps[c].cols() != d.dims[cv.lo]) {
      r.add("shape", {name(cv.lo), name(cv.hi)},
            "map is " + std::to_string(d.maps[c].rows()) + "x" + std::to_string(d.maps[c].cols()) + ", expected " +
                std::to_string(d.dims[cv.hi]) + "x" + std::to_string(d.dims[cv.lo]));
    }
  }
  if (!r.ok()) return r;
  if (!exhaustive) {
    r.notes.push_back("functoriality checked on codimension-two diamonds only");
    for (std::size_t tau = 0; tau < p.size(); ++tau) {
      std::map<std::size_t, Mat<S>> first;
      std::set<std::size_t> reported;
      for (std::size_t c1 : p.down_covers(tau)) {
        std::size_t lambda = p.cover(c1).lo;
        for (std::size_t c2 : p.down_covers(lambda)) {
          std::size_t gamma = p.cover(c2).lo;
          Mat<S> m = multiply(d.maps[c1], d.maps[c2]);
          auto it = first.find(gamma);
          if (it == first.end()) {
            first.emplace(gamma, std::move(m));
          } else if (!equal(it->second, m) && reported.insert(gamma).second) {
            r.add("functoriality", {name(gamma), name(tau)}, "composites around a diamond disagree");
          }
        }
      }
    }
    return r;
  }
  for (std::size_t a = 0; a < p.size(); ++a) {
    std::vector<std::optional<Mat<S>>> comp(p.size());
    comp[a] = identity<S>(d.dims[a]);
    for (std::size_t b : p.linear_extension()) {
      if (!p.less(a, b)) continue;
      for (std::size_t c : p.down_covers(b)) {
        std::size_t lo = p.cover(c).lo;
        if (!p.leq(a, lo)) continue;
        Mat<S> m = multiply(d.maps[c], *comp[lo]);
        if (!comp[b]) {
          comp[b] = std::move(m);
        } else if (!equal(*comp[b], m)) {
          r.add("functoriality", {name(a), name(b)}, "composites along two chains disagree");
          break;
        }
      }
    }
  }
  return r;
}

template <class S>
std::optional<std::size_t> morphism_violation(const Diagram<S>& src, const Diagram<S>& tgt, const Morphism<S>& m) {
  const Poset& p = *src.poset;
  if (m.at.size() != p.size()) throw ShapeError("morphism has the wrong number of components");
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (m.at[x].rows() != tgt.dim(x) || m.at[x].cols() != src.dim(x)) {
      throw ShapeError("morphism component " + std::to_string(x) + " has the wrong shape");
    }
  }
  for (std::size_t c = 0; c < p.covers().size(); ++c) {
    const Cover& cv = p.cover(c);
    if (!equal(multiply(tgt.maps[c], m.at[cv.lo]), multiply(m.at[cv.hi], src.maps[c]))) return c;
  }
  return std::nullopt;
}

template <class S>
Morphism<S> identity_morphism(const Diagram<S>& d) {
  Morphism<S> m;
  for (Index k : d.dims) m.at.push_back(identity<S>(k));
  return m;
}

template <class S>
Morphism<S> zero_morphism(const Diagram<S>& src, const Diagram<S>& tgt) {
  Morphism<S> m;
  for (std::size_t x = 0; x < src.size(); ++x) m.at.push_back(zeros<S>(tgt.dim(x), src.dim(x)));
  return m;
}

template <class S>
Morphism<S> compose(const Morphism<S>& g, const Morphism<S>& f) {
  Morphism<S> m;
  for (std::size_t x = 0; x < f.at.size(); ++x) m.at.push_back(multiply(g.at[x], f.at[x]));
  return m;
}

template <class S>
Morphism<S> add(const Morphism<S>& a, const Morphism<S>& b) {
  Morphism<S> m;
  for (std::size_t x = 0; x < a.at.size(); ++x) m.at.push_back(a.at[x] + b.at[x]);
  return m;
}

template <class S>
Diagram<S> direct_sum(const std::vector<Diagram<S>>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct sum of no diagrams needs a poset");
  const PosetPtr& p = parts.front().poset;
  Diagram<S> out{p, std::vector<Index>(p->size(), 0), {}};
  for (const auto& d : parts)
    for (std::size_t x = 0; x < p->size(); ++x) out.dims[x] += d.dims[x];
  for (std::size_t c = 0; c < p->covers().size(); ++c) {
    const Cover& cv = p->cover(c);
    Mat<S> m = zeros<S>(out.dims[cv.hi], out.dims[cv.lo]);
    Index r = 0, k = 0;
    for (const auto& d : parts) {
      m.block(r, k, d.dims[cv.hi], d.dims[cv.lo]) = d.maps[c];
      r += d.dims[cv.hi];
      k += d.dims[cv.lo];
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

template <class S>
Diagram<S> dual(const Diagram<S>& d, const PosetPtr& opposite) {
  Diagram<S> out{opposite, d.dims, {}};
  for (const auto& m : d.maps) out.maps.push_back(m.transpose());
  return out;
}

template <class S>
Morphism<S> dual(const Morphism<S>& m) {
  Morphism<S> out;
  for (const auto& a : m.at) out.at.push_back(a.transpose());
  return out;
}

template <class S>
KernelData<S> kernel(const Diagram<S>& src, const Diagram<S>& tgt, const Morphism<S>& m) {
  (void)tgt;
  const Poset& p = *src.poset;
  std::vector<Subspace<S>> ks;
  KernelData<S> out{{src.poset, {}, {}}, {}};
  for (std::size_t x = 0; x < p.size(); ++x) {
    ks.push_back(kernel(sparse(m.at[x])));
    out.object.dims.push_back(ks.back().dim());
    out.inclusion.at.push_back(dense(ks.back().basis));
  }
  for (std::size_t c = 0; c < p.covers().size(); ++c) {
    const Cover& cv = p.cover(c);
    SpMat<S> image = multiply(sparse(src.maps[c]), ks[cv.lo].basis);
    out.object.maps.push_back(dense(ks[cv.hi].coordinates(image)));
  }
  return out;
}

template <class S>
CokernelData<S> cokernel(const Diagram<S>& src, const Diagram<S>& tgt, const Morphism<S>& m) {
  (void)src;
  const Poset& p = *tgt.poset;
  std::vector<Quotient<S>> qs;
  CokernelData<S> out{{tgt.poset, {}, {}}, {}};
  for (std::size_t x = 0; x < p.size(); ++x) {
    qs.push_back(cokernel(sparse(m.at[x])));
    out.object.dims.push_back(qs.back().dim());
    out.projection.at.push_back(dense(qs.back().projection));
  }
  for (std::size_t c = 0; c < p.covers().size(); ++c) {
    const Cover& cv = p.cover(c);
    SpMat<S> mm = multiply(qs[cv.hi].projection, multiply(sparse(tgt.maps[c]), qs[cv.lo].section));
    out.object.maps.push_back(dense(mm));
  }
  return out;
}

template <class S>
Mat<S> LimitData<S>::projection(std::size_t x) const {
  if (!blocks.contains(x)) return zeros<S>(0, dim());
  return dense(row_block(space.basis, blocks.offset[x], blocks.size[x]));
}

template <class S>
Mat<S> ColimitData<S>::injection(std::size_t x) const {
  if (!blocks.contains(x)) return zeros<S>(dim(), 0);
  return dense(col_block(space.projection, blocks.offset[x], blocks.size[x]));
}

template <class S>
LimitData<S> limit(const Diagram<S>& d, const std::vector<bool>& members) {
  LimitData<S> out;
  out.blocks = make_blocks(members, [&](std::size_t x) { return d.dims[x]; });
  const Blocks& b = out.blocks;
  std::vector<Triplet<S>> t;
  Index row = 0;
  for (const auto& [lo, hi, m] : relations(d, members)) {
    add_block(t, row, b.offset[lo], m);
    for (Index k = 0; k < b.size[hi]; ++k) t.emplace_back(row + k, b.offset[hi] + k, S(-1));
    row += b.size[hi];
  }
  out.space = kernel(from_triplets<S>(row, b.total, t));
  return out;
}

template <class S>
LimitData<S> limit(const Diagram<S>& d) {
  return limit(d, all_of(d.size()));
}

template <class S>
ColimitData<S> colimit(const Diagram<S>& d, const std::vector<bool>& members) {
  ColimitData<S> out;
  out.blocks = make_blocks(members, [&](std::size_t x) { return d.dims[x]; });
  const Blocks& b = out.blocks;
  std::vector<Triplet<S>> t;
  Index col = 0;
  for (const auto& [lo, hi, m] : relations(d, members)) {
    add_block(t, b.offset[hi], col, m);
    for (Index k = 0; k < b.size[lo]; ++k) t.emplace_back(b.offset[lo] + k, col + k, S(-1));
    col += b.size[lo];
  }
  out.space = cokernel(from_triplets<S>(b.total, col, t));
  return out;
}

template <class S>
ColimitData<S> colimit(const Diagram<S>& d) {
  return colimit(d, all_of(d.size()));
}

template <class S>
Mat<S> limit_map(const LimitData<S>& from, const LimitData<S>& to, const Morphism<S>* alpha) {
  std::vector<Triplet<S>> t;
  for (std::size_t x : to.blocks.members) {
    if (!from.blocks.contains(x)) throw std::invalid_argument("limit_map: target index set is not a subset");
    if (alpha) {
      add_block(t, to.blocks.offset[x], from.blocks.offset[x], alpha->at[x]);
    } else {
      for (Index k = 0; k < to.blocks.size[x]; ++k) t.emplace_back(to.blocks.offset[x] + k, from.blocks.offset[x] + k, S(1));
    }
  }
  SpMat<S> sel = from_triplets<S>(to.blocks.total, from.blocks.total, t);
  return dense(to.space.coordinates(multiply(sel, from.space.basis)));
}

template <class S>
Mat<S> colimit_map(const ColimitData<S>& from, const ColimitData<S>& to, const Morphism<S>* alpha) {
  std::vector<Triplet<S>> t;
  for (std::size_t x : from.blocks.members) {
    if (!to.blocks.contains(x)) throw std::invalid_argument("colimit_map: source index set is not a subset");
    if (alpha) {
      add_block(t, to.blocks.offset[x], from.blocks.offset[x], alpha->at[x]);
    } else {
      for (Index k = 0; k < from.blocks.size[x]; ++k) t.emplace_back(to.blocks.offset[x] + k, from.blocks.offset[x] + k, S(1));
    }
  }
  SpMat<S> emb = from_triplets<S>(to.blocks.total, from.blocks.total, t);
  return dense(multiply(to.space.projection, multiply(emb, from.space.section)));
}

template <class S>
Diagram<S> right_kan(const Diagram<S>& d, const std::vector<std::size_t>& f, const PosetPtr& q) {
  std::vector<LimitData<S>> lims;
  Diagram<S> out{q, {}, {}};
  for (std::size_t y = 0; y < q->size(); ++y) {
    std::vector<bool> mask(d.size());
    for (std::size_t x = 0; x < d.size(); ++x) mask[x] = q->leq(y, f[x]);
    lims.push_back(limit(d, mask));
    out.dims.push_back(lims.back().dim());
  }
  for (const Cover& c : q->covers()) out.maps.push_back(limit_map(lims[c.lo], lims[c.hi]));
  return out;
}

template <class S>
Diagram<S> left_kan(const Diagram<S>& d, const std::vector<std::size_t>& f, const PosetPtr& q) {
  std::vector<ColimitData<S>> cols;
  Diagram<S> out{q, {}, {}};
  for (std::size_t y = 0; y < q->size(); ++y) {
    std::vector<bool> mask(d.size());
    for (std::size_t x = 0; x < d.size(); ++x) mask[x] = q->leq(f[x], y);
    cols.push_back(colimit(d, mask));
    out.dims.push_back(cols.back().dim());
  }
  for (const Cover& c : q->covers()) out.maps.push_back(colimit_map(cols[c.lo], cols[c.hi]));
  return out;
}

template <class S>
Diagram<S> pullback(const Diagram<S>& g, const std::vector<std::size_t>& f, const PosetPtr& p) {
  Diagram<S> out{p, {}, {}};
  for (std::size_t x = 0; x < p->size(); ++x) out.dims.push_back(g.dim(f[x]));
  for (const Cover& c : p->covers()) out.maps.push_back(g.between(f[c.lo], f[c.hi]));
  return out;
}

template <class S>
Morphism<S> right_kan_unit(const Diagram<S>& g, const std::vector<std::size_t>& f, const PosetPtr& p) {
  Diagram<S> h = pullback(g, f, p);
  const Poset& q = *g.poset;
  Morphism<S> out;
  for (std::size_t y = 0; y < q.size(); ++y) {
    std::vector<bool> mask(h.size());
    for (std::size_t x = 0; x < h.size(); ++x) mask[x] = q.leq(y, f[x]);
    LimitData<S> lim = limit(h, mask);
    std::vector<Triplet<S>> t;
    for (std::size_t x : lim.blocks.members) add_block(t, lim.blocks.offset[x], 0, g.between(y, f[x]));
    SpMat<S> family = from_triplets<S>(lim.blocks.total, g.dim(y), t);
    out.at.push_back(dense(lim.space.coordinates(family)));
  }
  return out;
}

template <class S>
LimitData<S> hom_space(const Diagram<S>& d, const Diagram<S>& e, const std::vector<bool>& members) {
  const Poset& p = *d.poset;
  if (!is_convex(p, members)) throw std::invalid_argument("hom_space needs a convex subset");
  LimitData<S> out;
  out.blocks = make_blocks(members, [&](std::size_t x) { return d.dims[x] * e.dims[x]; });
  const Blocks& b = out.blocks;
  std::vector<Triplet<S>> t;
  Index row = 0;
  for (std::size_t c = 0; c < p.covers().size(); ++c) {
    const Cover& cv = p.cover(c);
    if (!members[cv.lo] || !members[cv.hi]) continue;
    const Mat<S>& ec = e.maps[c];  // e_hi x e_lo
    const Mat<S>& dc = d.maps[c];  // d_hi x d_lo
    Index e_lo = e.dims[cv.lo], e_hi = e.dims[cv.hi], d_lo = d.dims[cv.lo];
    // (I_{d_lo} (x) E(c)) vec alpha_lo
    for (Index j = 0; j < d_lo; ++j)
      for (Index i = 0; i < e_hi; ++i)
        for (Index k = 0; k < e_lo; ++k)
          if (!is_zero(ec(i, k))) t.emplace_back(row + j * e_hi + i, b.offset[cv.lo] + j * e_lo + k, ec(i, k));
    // -(D(c)^T (x) I_{e_hi}) vec alpha_hi
    for (Index j = 0; j < d_lo; ++j)
      for (Index k = 0; k < dc.rows(); ++k)
        if (!is_zero(dc(k, j)))
          for (Index i = 0; i < e_hi; ++i) t.emplace_back(row + j * e_hi + i, b.offset[cv.hi] + k * e_hi + i, -dc(k, j));
    row += e_hi * d_lo;
  }
  out.space = kernel(from_triplets<S>(row, b.total, t));
  return out;
}

template <class S>
LimitData<S> hom_space(const Diagram<S>& d, const Diagram<S>& e) {
  return hom_space(d, e, all_of(d.size()));
}

template <class S>
Morphism<S> hom_basis_element(const LimitData<S>& h, const Diagram<S>& d, const Diagram<S>& e, Index k) {
  Mat<S> v = dense(col_block(h.space.basis, k, 1));
  Morphism<S> out;
  for (std::size_t x = 0; x < d.size(); ++x) {
    Mat<S> a = zeros<S>(e.dims[x], d.dims[x]);
    if (h.blocks.contains(x)) {
      Index off = h.blocks.offset[x];
      for (Index j = 0; j < d.dims[x]; ++j)
        for (Index i = 0; i < e.dims[x]; ++i) a(i, j) = v(off + j * e.dims[x] + i, 0);
    }
    out.at.push_back(std::move(a));
  }
  return out;
}

template <class S>
Diagram<S> internal_hom(const Diagram<S>& d, const Diagram<S>& e) {
  const Poset& p = *d.poset;
  std::vector<LimitData<S>> homs;
  Diagram<S> out{d.poset, {}, {}};
  for (std::size_t y = 0; y < p.size(); ++y) {
    std::vector<bool> mask(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) mask[x] = p.leq(y, x);
    homs.push_back(hom_space(d, e, mask));
    out.dims.push_back(homs.back().dim());
  }
  for (const Cover& c : p.covers()) out.maps.push_back(limit_map(homs[c.lo], homs[c.hi]));
  return out;
}

template <class S>
Morphism<S> injective_hull_map(const Diagram<S>& d, Diagram<S>* hull, Summands* summands) {
  const Poset& p = *d.poset;
  *hull = elementary_sum<S>(d.poset, Support::down, d.dims);
  summands->clear();
  for (std::size_t x = 0; x < p.size(); ++x)
    if (d.dims[x] > 0) summands->emplace_back(x, d.dims[x]);
  Morphism<S> eta;
  for (std::size_t t = 0; t < p.size(); ++t) {
    Mat<S> m = zeros<S>(hull->dims[t], d.dims[t]);
    Index row = 0;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (d.dims[x] == 0 || !p.leq(t, x)) continue;
      m.block(row, 0, d.dims[x], d.dims[t]) = d.between(t, x);
      row += d.dims[x];
    }
    eta.at.push_back(std::move(m));
  }
  return eta;
}

template <class S>
Morphism<S> projective_cover_map(const Diagram<S>& d, Diagram<S>* cover, Summands* summands) {
  const Poset& p = *d.poset;
  *cover = elementary_sum<S>(d.poset, Support::up, d.dims);
  summands->clear();
  for (std::size_t x = 0; x < p.size(); ++x)
    if (d.dims[x] > 0) summands->emplace_back(x, d.dims[x]);
  Morphism<S> eps;
  for (std::size_t t = 0; t < p.size(); ++t) {
    Mat<S> m = zeros<S>(d.dims[t], cover->dims[t]);
    Index col = 0;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (d.dims[x] == 0 || !p.leq(x, t)) continue;
      m.block(0, col, d.dims[t], d.dims[x]) = d.between(x, t);
      col += d.dims[x];
    }
    eps.at.push_back(std::move(m));
  }
  return eps;
}

template <class S>
Resolution<S> injective_resolution(const Diagram<S>& d) {
  Resolution<S> res;
  res.complex.poset = d.poset;
  res.complex.lo = 0;
  Diagram<S> cur = d;
  Morphism<S> to_cur;  // I^{k-1} -> cur
  for (std::size_t iter = 0;; ++iter) {
    if (iter > d.size() + 1) throw ResolutionError("injective resolution did not terminate");
    Diagram<S> hull;
    Summands sm;
    Morphism<S> eta = injective_hull_map(cur, &hull, &sm);
    if (iter == 0) {
      res.augmentation = eta;
    } else {
      res.complex.diffs.push_back(compose(eta, to_cur));
    }
    res.complex.terms.push_back(hull);
    res.summands.push_back(sm);
    CokernelData<S> cok = cokernel(cur, hull, eta);
    if (is_zero(cok.object)) break;
    cur = std::move(cok.object);
    to_cur = std::move(cok.projection);
  }
  return res;
}

template <class S>
Resolution<S> projective_resolution(const Diagram<S>& d) {
  std::vector<Diagram<S>> terms;
  std::vector<Summands> sums;
  std::vector<Morphism<S>> down;  // down[k] : P^{-(k+1)} -> P^{-k}
  Resolution<S> res;
  Diagram<S> cur = d;
  Morphism<S> from_cur;  // cur -> P^{-(k-1)}
  for (std::size_t iter = 0;; ++iter) {
    if (iter > d.size() + 1) throw ResolutionError("projective resolution did not terminate");
    Diagram<S> cover;
    Summands sm;
    Morphism<S> eps = projective_cover_map(cur, &cover, &sm);
    if (iter == 0) {
      res.augmentation = eps;
    } else {
      down.push_back(compose(from_cur, eps));
    }
    terms.push_back(cover);
    sums.push_back(sm);
    KernelData<S> ker = kernel(cover, cur, eps);
    if (is_zero(ker.object)) break;
    cur = std::move(ker.object);
    from_cur = std::move(ker.inclusion);
  }
  const std::size_t len = terms.size();
  res.complex.poset = d.poset;
  res.complex.lo = -static_cast<int>(len - 1);
  for (std::size_t j = 0; j < len; ++j) {
    res.complex.terms.push_back(terms[len - 1 - j]);
    res.summands.push_back(sums[len - 1 - j]);
  }
  for (std::size_t j = 0; j + 1 < len; ++j) res.complex.diffs.push_back(down[len - 2 - j]);
  return res;
}

template <class S>
Decomposition decompose_injective(const Diagram<S>& d) {
  const Poset& p = *d.poset;
  Decomposition out;
  Diagram<S> cur = d;
  while (!is_zero(cur)) {
    std::size_t sigma = 0;
    for (auto it = p.linear_extension().rbegin(); it != p.linear_extension().rend(); ++it) {
      if (cur.dims[*it] > 0) {
        sigma = *it;
        break;
      }
    }
    const Index m = cur.dims[sigma];
    std::vector<bool> down(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) down[x] = p.leq(x, sigma);
    Blocks b = make_blocks(down, [&](std::size_t x) { return cur.dims[x]; });
    // Families v on the closure with I(c) v_lo = v_hi inside, I(c) v_lo = 0
    // leaving it, and v_sigma prescribed.
    std::vector<Triplet<S>> a, rhs;
    Index row = 0;
    for (std::size_t c = 0; c < p.covers().size(); ++c) {
      const Cover& cv = p.cover(c);
      if (!down[cv.lo]) continue;
      add_block(a, row, b.offset[cv.lo], cur.maps[c]);
      if (down[cv.hi])
        for (Index k = 0; k < b.size[cv.hi]; ++k) a.emplace_back(row + k, b.offset[cv.hi] + k, S(-1));
      row += cur.dims[cv.hi];
    }
    for (Index k = 0; k < m; ++k) {
      a.emplace_back(row + k, b.offset[sigma] + k, S(1));
      rhs.emplace_back(row + k, k, S(1));
    }
    row += m;
    auto sol = solve(from_triplets<S>(row, b.total, a), from_triplets<S>(row, m, rhs));
    if (!sol) {
      out.stuck = sigma;
      return out;
    }
    Morphism<S> eta;
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (down[x]) {
        eta.at.push_back(dense(row_block(*sol, b.offset[x], b.size[x])));
      } else {
        eta.at.push_back(zeros<S>(cur.dims[x], 0));
      }
    }
    Diagram<S> elem = indicator<S>(cur.poset, down, m);
    out.summands.emplace_back(sigma, m);
    cur = cokernel(elem, cur, eta).object;
  }
  std::sort(out.summands.begin(), out.summands.end());
  return out;
}

template <class S>
Decomposition decompose_projective(const Diagram<S>& d) {
  auto op = std::make_shared<const Poset>(d.poset->opposite());
  return decompose_injective(dual(d, op));
}

template <class S>
DiagramComplex<S> total(const DiagramDouble<S>& dc) {
  DiagramComplex<S> out;
  out.poset = dc.poset;
  if (dc.p_hi < dc.p_lo || dc.q_hi < dc.q_lo) return out;
  const std::size_t n = dc.poset->size();
  auto entry = [&](int p, int q) {
    auto it = dc.entries.find({p, q});
    return it == dc.entries.end() ? zero_diagram<S>(dc.poset) : it->second;
  };
  const int lo = dc.p_lo + dc.q_lo, hi = dc.p_hi + dc.q_hi;
  out.lo = lo;
  for (int k = lo; k <= hi; ++k) {
    std::vector<Diagram<S>> parts;
    for (int p = dc.p_lo; p <= dc.p_hi; ++p)
      if (k - p >= dc.q_lo && k - p <= dc.q_hi) parts.push_back(entry(p, k - p));
    out.terms.push_back(direct_sum(parts));
  }
  out.diffs.resize(static_cast<std::size_t>(hi - lo));
  for (std::size_t x = 0; x < n; ++x) {
    DoubleComplex<S> stalk;
    stalk.p_lo = dc.p_lo;
    stalk.p_hi = dc.p_hi;
    stalk.q_lo = dc.q_lo;
    stalk.q_hi = dc.q_hi;
    for (const auto& [pq, d] : dc.entries) stalk.dims[pq] = d.dim(x);
    for (const auto& [pq, m] : dc.horizontal) stalk.horizontal[pq] = sparse(m.at[x]);
    for (const auto& [pq, m] : dc.vertical) stalk.vertical[pq] = sparse(m.at[x]);
    ChainComplex<S> t;
    try {
      t = total_complex(stalk);
    } catch (const ChainError& e) {
      throw ChainError(std::string(e.what()) + " at element " + std::to_string(x), e.degree());
    }
    for (int k = lo; k < hi; ++k) out.diffs[static_cast<std::size_t>(k - lo)].at.push_back(dense(t.d(k)));
  }
  return out;
}

template <class S>
DiagramComplex<S> concentrated(const Diagram<S>& d, int n) {
  DiagramComplex<S> out;
  out.poset = d.poset;
  out.lo = n;
  out.terms.push_back(d);
  return out;
}

template <class S>
std::optional<std::pair<int, std::size_t>> square_violation(const DiagramComplex<S>& c) {
  for (std::size_t x = 0; x < (c.poset ? c.poset->size() : 0); ++x) {
    if (auto bad = c.at(x).square_violation()) return std::make_pair(*bad, x);
  }
  return std::nullopt;
}

template <class S>
ChainMap<S> at(const DiagramComplex<S>& src, const DiagramComplex<S>& tgt, const ComplexMorphism<S>& f,
               std::size_t x) {
  std::map<int, SpMat<S>> comps;
  for (const auto& [n, m] : f.f) comps[n] = sparse(m.at[x]);
  return ChainMap<S>(src.at(x), tgt.at(x), std::move(comps));
}

template <class S>
std::vector<std::size_t> quasi_iso_failures(const DiagramComplex<S>& src, const DiagramComplex<S>& tgt,
                                            const ComplexMorphism<S>& f) {
  std::vector<std::size_t> bad;
  for (std::size_t x = 0; x < src.poset->size(); ++x)
    if (!is_quasi_iso(at(src, tgt, f, x))) bad.push_back(x);
  return bad;
}

template <class S>
std::map<std::size_t, GradedDims> stalk_homology(const DiagramComplex<S>& c) {
  std::map<std::size_t, GradedDims> out;
  for (std::size_t x = 0; x < c.poset->size(); ++x) {
    GradedDims h = homology(c.at(x));
    if (!h.empty()) out[x] = std::move(h);
  }
  return out;
}

template <class S>
bool same_diagram(const Diagram<S>& a, const Diagram<S>& b) {
  if (a.dims != b.dims || a.maps.size() != b.maps.size()) return false;
  for (std::size_t c = 0; c < a.maps.size(); ++c)
    if (!equal(a.maps[c], b.maps[c])) return false;
  return true;
}

template <class S>
bool same_complex(const DiagramComplex<S>& a, const DiagramComplex<S>& b) {
  int lo = std::min(a.empty() ? 0 : a.lo, b.empty() ? 0 : b.lo);
  int hi = std::max(a.empty() ? 0 : a.hi(), b.empty() ? 0 : b.hi());
  for (int n = lo; n <= hi; ++n) {
    if (!same_diagram(a.term(n), b.term(n))) return false;
    Morphism<S> da = a.d(n), db = b.d(n);
    for (std::size_t x = 0; x < da.at.size(); ++x)
      if (!equal(da.at[x], db.at[x])) return false;
  }
  return true;
}

template <class S>
ChainComplex<S> limit_complex(const DiagramComplex<S>& c) {
  if (c.empty()) return {};
  std::vector<LimitData<S>> lims;
  std::vector<Index> dims;
  std::vector<SpMat<S>> ds;
  for (const auto& t : c.terms) {
    lims.push_back(limit(t));
    dims.push_back(lims.back().dim());
  }
  for (std::size_t k = 0; k < c.diffs.size(); ++k) ds.push_back(sparse(limit_map(lims[k], lims[k + 1], &c.diffs[k])));
  return ChainComplex<S>(c.lo, std::move(dims), std::move(ds));
}

template <class S>
ChainComplex<S> colimit_complex(const DiagramComplex<S>& c) {
  if (c.empty()) return {};
  std::vector<ColimitData<S>> cols;
  std::vector<Index> dims;
  std::vector<SpMat<S>> ds;
  for (const auto& t : c.terms) {
    cols.push_back(colimit(t));
    dims.push_back(cols.back().dim());
  }
  for (std::size_t k = 0; k < c.diffs.size(); ++k)
    ds.push_back(sparse(colimit_map(cols[k], cols[k + 1], &c.diffs[k])));
  return ChainComplex<S>(c.lo, std::move(dims), std::move(ds));
}

#define SHEAFKIT_INSTANTIATE_DIAGRAM(S)                                                                          \
  template struct Diagram<S>;                                                                                    \
  template struct DiagramComplex<S>;                                                                             \
  template struct LimitData<S>;                                                                                  \
  template struct ColimitData<S>;                                                                                \
  template Diagram<S> zero_diagram<S>(const PosetPtr&);                                                          \
  template Diagram<S> constant_diagram<S>(const PosetPtr&, Index);                                               \
  template Diagram<S> indicator<S>(const PosetPtr&, const std::vector<bool>&, Index);                            \
  template Diagram<S> skyscraper<S>(const PosetPtr&, std::size_t, Index);                                        \
  template Diagram<S> elementary_sum<S>(const PosetPtr&, Support, const std::vector<Index>&);                    \
  template Report check(const Diagram<S>&, bool, const Namer&);                                                  \
  template std::optional<std::size_t> morphism_violation(const Diagram<S>&, const Diagram<S>&,                   \
                                                         const Morphism<S>&);                                    \
  template Morphism<S> identity_morphism(const Diagram<S>&);                                                     \
  template Morphism<S> zero_morphism(const Diagram<S>&, const Diagram<S>&);                                      \
  template Morphism<S> compose(const Morphism<S>&, const Morphism<S>&);                                          \
  template Morphism<S> add(const Morphism<S>&, const Morphism<S>&);                                              \
  template Diagram<S> direct_sum(const std::vector<Diagram<S>>&);                                                \
  template Diagram<S> dual(const Diagram<S>&, const PosetPtr&);                                                  \
  template Morphism<S> dual(const Morphism<S>&);                                                                 \
  template KernelData<S> kernel(const Diagram<S>&, const Diagram<S>&, const Morphism<S>&);                       \
  template CokernelData<S> cokernel(const Diagram<S>&, const Diagram<S>&, const Morphism<S>&);                   \
  template LimitData<S> limit(const Diagram<S>&, const std::vector<bool>&);                                      \
  template LimitData<S> limit(const Diagram<S>&);                                                                \
  template ColimitData<S> colimit(const Diagram<S>&, const std::vector<bool>&);                                  \
  template ColimitData<S> colimit(const Diagram<S>&);                                                            \
  template Mat<S> limit_map(const LimitData<S>&, const LimitData<S>&, const Morphism<S>*);                       \
  template Mat<S> colimit_map(const ColimitData<S>&, const ColimitData<S>&, const Morphism<S>*);                 \
  template Diagram<S> right_kan(const Diagram<S>&, const std::vector<std::size_t>&, const PosetPtr&);            \
  template Diagram<S> left_kan(const Diagram<S>&, const std::vector<std::size_t>&, const PosetPtr&);             \
  template Diagram<S> pullback(const Diagram<S>&, const std::vector<std::size_t>&, const PosetPtr&);             \
  template Morphism<S> right_kan_unit(const Diagram<S>&, const std::vector<std::size_t>&, const PosetPtr&);      \
  template LimitData<S> hom_space(const Diagram<S>&, const Diagram<S>&, const std::vector<bool>&);               \
  template LimitData<S> hom_space(const Diagram<S>&, const Diagram<S>&);                                         \
  template Morphism<S> hom_basis_element(const LimitData<S>&, const Diagram<S>&, const Diagram<S>&, Index);      \
  template Diagram<S> internal_hom(const Diagram<S>&, const Diagram<S>&);                                        \
  template Morphism<S> injective_hull_map(const Diagram<S>&, Diagram<S>*, Summands*);                            \
  template Morphism<S> projective_cover_map(const Diagram<S>&, Diagram<S>*, Summands*);                          \
  template Resolution<S> injective_resolution(const Diagram<S>&);                                                \
  template Resolution<S> projective_resolution(const Diagram<S>&);                                               \
  template Decomposition decompose_injective(const Diagram<S>&);                                                 \
  template Decomposition decompose_projective(const Diagram<S>&);                                                \
  template DiagramComplex<S> total(const DiagramDouble<S>&);                                                     \
  template DiagramComplex<S> concentrated(const Diagram<S>&, int);                                               \
  template std::optional<std::pair<int, std::size_t>> square_violation(const DiagramComplex<S>&);                \
  template ChainMap<S> at(const DiagramComplex<S>&, const DiagramComplex<S>&, const ComplexMorphism<S>&,         \
                          std::size_t);                                                                          \
  template std::vector<std::size_t> quasi_iso_failures(const DiagramComplex<S>&, const DiagramComplex<S>&,       \
                                                       const ComplexMorphism<S>&);                               \
  template std::map<std::size_t, GradedDims> stalk_homology(const DiagramComplex<S>&);                           \
  template bool same_complex(const DiagramComplex<S>&, const DiagramComplex<S>&);                                \
  template bool same_diagram(const Diagram<S>&, const Diagram<S>&);                                              \
  template ChainComplex<S> limit_complex(const DiagramComplex<S>&);                                              \
  template ChainComplex<S> colimit_complex(const DiagramComplex<S>&);

SHEAFKIT_INSTANTIATE_DIAGRAM(Rational)
SHEAFKIT_INSTANTIATE_DIAGRAM(ModP)

}  // namespace sheafkit
