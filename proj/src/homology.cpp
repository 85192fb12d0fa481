#include "sheafkit/homology.hpp"

namespace sheafkit {

namespace {

// Offsets of each cell's stalk inside the block of its dimension.
struct Layout {
  std::vector<Index> offset;
  std::map<int, Index> total;
};

template <class S, Variance V>
Layout layout(const Cellular<S, V>& f) {
  Layout l;
  l.offset.resize(f.base->size());
  for (std::size_t i = 0; i < f.base->size(); ++i) {
    Index& t = l.total[f.base->dim(i)];
    l.offset[i] = t;
    t += f.dim(i);
  }
  return l;
}

template <class S>
TheoryResult<S> result(Theory t, ChainComplex<S> c) {
  GradedDims h = homology(c);
  return {t, is_homological(t) ? to_homological(h) : h, std::move(c)};
}

}  // namespace

const char* to_string(Theory t) {
  switch (t) {
    case Theory::sheaf_cohomology: return "sheaf-cohomology";
    case Theory::compact_sheaf_cohomology: return "compact-sheaf-cohomology";
    case Theory::cosheaf_homology: return "cosheaf-homology";
    case Theory::bm_cosheaf_homology: return "BM-cosheaf-homology";
    case Theory::sheaf_homology: return "sheaf-homology";
    case Theory::cosheaf_cohomology: return "cosheaf-cohomology";
  }
  return "?";
}

bool is_homological(Theory t) {
  return t == Theory::cosheaf_homology || t == Theory::bm_cosheaf_homology || t == Theory::sheaf_homology;
}

template <class S>
ChainComplex<S> compact_cochain_complex(const Sheaf<S>& f) {
  const CellComplex& x = *f.base;
  const int top = x.dimension();
  if (top < 0) return {};
  Layout l = layout(f);
  std::vector<std::vector<Triplet<S>>> t(static_cast<std::size_t>(top));
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& in = x.incidence(c);
    add_block(t[static_cast<std::size_t>(x.dim(in.lo))], l.offset[in.hi], l.offset[in.lo], f.map(c), S(in.sign));
  }
  std::vector<Index> dims;
  std::vector<SpMat<S>> diffs;
  for (int n = 0; n <= top; ++n) dims.push_back(l.total[n]);
  for (int n = 0; n < top; ++n) diffs.push_back(from_triplets<S>(l.total[n + 1], l.total[n], t[static_cast<std::size_t>(n)]));
  return ChainComplex<S>(0, std::move(dims), std::move(diffs));
}

template <class S>
ChainComplex<S> bm_chain_complex(const Cosheaf<S>& f) {
  const CellComplex& x = *f.base;
  const int top = x.dimension();
  if (top < 0) return {};
  Layout l = layout(f);
  // t[k] holds the differential from degree -(top - k) to -(top - k) + 1.
  std::vector<std::vector<Triplet<S>>> t(static_cast<std::size_t>(top));
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& in = x.incidence(c);
    add_block(t[static_cast<std::size_t>(top - x.dim(in.hi))], l.offset[in.lo], l.offset[in.hi], f.map(c), S(in.sign));
  }
  std::vector<Index> dims;
  std::vector<SpMat<S>> diffs;
  for (int i = top; i >= 0; --i) dims.push_back(l.total[i]);
  for (int i = top; i > 0; --i)
    diffs.push_back(from_triplets<S>(l.total[i - 1], l.total[i], t[static_cast<std::size_t>(top - i)]));
  return ChainComplex<S>(-top, std::move(dims), std::move(diffs));
}

template <class S>
TheoryResult<S> compact_cohomology(const Sheaf<S>& f) {
  return result(Theory::compact_sheaf_cohomology, compact_cochain_complex(f));
}

template <class S>
TheoryResult<S> ordinary_cohomology(const Sheaf<S>& f) {
  Subcomplex sub = compact_subcomplex(f.base);
  return result(Theory::sheaf_cohomology, compact_cochain_complex(pullback(sub.inclusion, f)));
}

template <class S>
TheoryResult<S> bm_homology(const Cosheaf<S>& f) {
  return result(Theory::bm_cosheaf_homology, bm_chain_complex(f));
}

template <class S>
TheoryResult<S> cosheaf_homology(const Cosheaf<S>& f) {
  Subcomplex sub = compact_subcomplex(f.base);
  return result(Theory::cosheaf_homology, bm_chain_complex(pullback(sub.inclusion, f)));
}

template <class S>
TheoryResult<S> derived_sheaf_cohomology(const Sheaf<S>& f) {
  return result(Theory::sheaf_cohomology, limit_complex(injective_resolution(f.data).complex));
}

template <class S>
TheoryResult<S> derived_sheaf_homology(const Sheaf<S>& f) {
  return result(Theory::sheaf_homology, colimit_complex(projective_resolution(f.data).complex));
}

template <class S>
TheoryResult<S> derived_cosheaf_homology(const Cosheaf<S>& f) {
  return result(Theory::cosheaf_homology, colimit_complex(projective_resolution(f.data).complex));
}

template <class S>
TheoryResult<S> derived_cosheaf_cohomology(const Cosheaf<S>& f) {
  return result(Theory::cosheaf_cohomology, limit_complex(injective_resolution(f.data).complex));
}

template <class S>
TheoryResult<S> derived_theory(const Sheaf<S>& f, Theory t) {
  switch (t) {
    case Theory::sheaf_cohomology: return derived_sheaf_cohomology(f);
    case Theory::sheaf_homology: return derived_sheaf_homology(f);
    default: throw std::invalid_argument(std::string("no derived ") + to_string(t) + " for a sheaf");
  }
}

template <class S>
TheoryResult<S> derived_theory(const Cosheaf<S>& f, Theory t) {
  switch (t) {
    case Theory::cosheaf_homology: return derived_cosheaf_homology(f);
    case Theory::cosheaf_cohomology: return derived_cosheaf_cohomology(f);
    default: throw std::invalid_argument(std::string("no derived ") + to_string(t) + " for a cosheaf");
  }
}

template <class S>
Index bm_sections(const Cosheaf<S>& f) {
  const CellComplex& x = *f.base;
  if (!x.has_infinity()) return colimit(f.data).dim();
  auto op = std::make_shared<const Poset>(x.poset_plus().opposite());
  Diagram<S> d{op, f.data.dims, f.data.maps};
  d.dims.push_back(0);
  for (std::size_t c = x.num_covers(); c < x.incidences_plus().size(); ++c) {
    const Incidence& in = x.incidences_plus()[c];
    d.maps.push_back(zeros<S>(d.dims[in.lo], d.dims[in.hi]));
  }
  return colimit(d).dim();
}

template <class S>
Report subdivision_invariance_check(const Sheaf<S>& f, const PosetMap& s) {
  Report r = validate_subdivision(s);
  if (!r.ok()) return r;
  Sheaf<S> g = pullback(s, f);
  Cosheaf<S> fd = linear_dual(f), gd = linear_dual(g);
  auto compare = [&](const TheoryResult<S>& a, const TheoryResult<S>& b, const std::string& how) {
    std::string line = std::string(to_string(a.theory)) + " (" + how + "): " + format_dims(a.dims) + " vs " +
                       format_dims(b.dims);
    if (a.dims != b.dims) {
      r.add("subdivision", {}, line);
    } else {
      r.notes.push_back(line);
    }
  };
  compare(compact_cohomology(f), compact_cohomology(g), "cochains");
  compare(ordinary_cohomology(f), ordinary_cohomology(g), "cochains");
  compare(derived_sheaf_cohomology(f), derived_sheaf_cohomology(g), "derived");
  compare(derived_sheaf_homology(f), derived_sheaf_homology(g), "derived");
  compare(bm_homology(fd), bm_homology(gd), "chains");
  compare(cosheaf_homology(fd), cosheaf_homology(gd), "chains");
  compare(derived_cosheaf_homology(fd), derived_cosheaf_homology(gd), "derived");
  compare(derived_cosheaf_cohomology(fd), derived_cosheaf_cohomology(gd), "derived");
  return r;
}

#define SHEAFKIT_INSTANTIATE_HOMOLOGY(S)                                          \
  template ChainComplex<S> compact_cochain_complex(const Sheaf<S>&);              \
  template ChainComplex<S> bm_chain_complex(const Cosheaf<S>&);                   \
  template TheoryResult<S> compact_cohomology(const Sheaf<S>&);                   \
  template TheoryResult<S> ordinary_cohomology(const Sheaf<S>&);                  \
  template TheoryResult<S> bm_homology(const Cosheaf<S>&);                        \
  template TheoryResult<S> cosheaf_homology(const Cosheaf<S>&);                   \
  template TheoryResult<S> derived_sheaf_cohomology(const Sheaf<S>&);             \
  template TheoryResult<S> derived_sheaf_homology(const Sheaf<S>&);               \
  template TheoryResult<S> derived_cosheaf_homology(const Cosheaf<S>&);           \
  template TheoryResult<S> derived_cosheaf_cohomology(const Cosheaf<S>&);         \
  template TheoryResult<S> derived_theory(const Sheaf<S>&, Theory);               \
  template TheoryResult<S> derived_theory(const Cosheaf<S>&, Theory);             \
  template Index bm_sections(const Cosheaf<S>&);                                  \
  template Report subdivision_invariance_check(const Sheaf<S>&, const PosetMap&);

SHEAFKIT_INSTANTIATE_HOMOLOGY(Rational)
SHEAFKIT_INSTANTIATE_HOMOLOGY(ModP)

}  // namespace sheafkit
