#include <catch_amalgamated.hpp>

#include "sheafkit/functors.hpp"
#include "support.hpp"

using namespace sheafkit;
using namespace sheafkit::testing;

namespace {

// Stacks the row blocks of a linear system with `cols` unknowns.
template <class S>
Mat<S> stack(const std::vector<Mat<S>>& rows, Index cols) {
  Index n = 0;
  for (const auto& r : rows) n += r.rows();
  Mat<S> m = zeros<S>(n, cols);
  Index at = 0;
  for (const auto& r : rows) {
    m.block(at, 0, r.rows(), cols) = r;
    at += r.rows();
  }
  return m;
}

// Compatible families of a sheaf over a convex set of cells: one equation
// rho s_lo = s_hi per cover inside the set.
template <class S>
Index limit_oracle(const Sheaf<S>& f, const std::vector<bool>& in) {
  const CellComplex& x = *f.base;
  std::vector<Index> off(x.size(), 0);
  Index total = 0;
  for (std::size_t s = 0; s < x.size(); ++s)
    if (in[s]) {
      off[s] = total;
      total += f.dim(s);
    }
  std::vector<Mat<S>> rows;
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& e = x.incidence(c);
    if (!in[e.lo] || !in[e.hi]) continue;
    Mat<S> r = zeros<S>(f.dim(e.hi), total);
    r.block(0, off[e.lo], f.dim(e.hi), f.dim(e.lo)) = f.map(c);
    r.block(0, off[e.hi], f.dim(e.hi), f.dim(e.hi)) -= identity<S>(f.dim(e.hi));
    rows.push_back(r);
  }
  return total - dense_rank(stack(rows, total));
}

// Direct sum over the set modulo x ~ rho(x) for covers inside the set.
template <class S>
Index colimit_oracle(const Sheaf<S>& f, const std::vector<bool>& in) {
  const CellComplex& x = *f.base;
  std::vector<Index> off(x.size(), 0);
  Index total = 0;
  for (std::size_t s = 0; s < x.size(); ++s)
    if (in[s]) {
      off[s] = total;
      total += f.dim(s);
    }
  std::vector<Mat<S>> cols;
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& e = x.incidence(c);
    if (!in[e.lo] || !in[e.hi]) continue;
    Mat<S> r = zeros<S>(total, f.dim(e.lo));
    r.block(off[e.lo], 0, f.dim(e.lo), f.dim(e.lo)) = identity<S>(f.dim(e.lo));
    r.block(off[e.hi], 0, f.dim(e.hi), f.dim(e.lo)) -= f.map(c);
    cols.push_back(r.transpose());
  }
  return total - dense_rank(stack(cols, total));
}

}  // namespace

TEMPLATE_TEST_CASE("pushforward stalks are limits over preimages", "[functors]", Rational, ModP) {
  ModP::Scope scope(3);
  Rng rng(5);
  for (const ComplexPtr& y : small_complexes())
    for (int k = 0; k < 3; ++k) {
      PosetMap f = random_map(y, rng);
      const CellComplex& src = *f.source;
      const CellComplex& tgt = *f.target;
      Sheaf<TestType> a = random_sheaf<TestType>(f.source, rng, 2);
      Sheaf<TestType> push = pushforward(f, a);
      Sheaf<TestType> dag = dagger_pushforward(f, a);
      CHECK(validate(push).ok());
      CHECK(validate(dag).ok());
      for (std::size_t t = 0; t < tgt.size(); ++t) {
        std::vector<bool> up(src.size()), down(src.size());
        for (std::size_t s = 0; s < src.size(); ++s) {
          up[s] = tgt.poset().leq(t, f(s));
          down[s] = tgt.poset().leq(f(s), t);
        }
        CHECK(push.dim(t) == limit_oracle(a, up));
        CHECK(dag.dim(t) == colimit_oracle(a, down));
      }
    }
}

TEST_CASE("pullback composes stalks and maps", "[functors]") {
  Rng rng(9);
  ComplexPtr y = named("sphere");
  Subdivision sd = barycentric_subdivision(y);
  Sheaf<Rational> g = random_sheaf<Rational>(y, rng);
  Sheaf<Rational> p = pullback(sd.map, g);
  CHECK(validate(p).ok());
  const CellComplex& x = *sd.complex;
  for (std::size_t s = 0; s < x.size(); ++s) CHECK(p.dim(s) == g.dim(sd.map(s)));
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& e = x.incidence(c);
    CHECK(p.map(c) == g.data.between(sd.map(e.lo), sd.map(e.hi)));
  }
}

TEST_CASE("global sections through the point", "[functors]") {
  Rng rng(12);
  for (const ComplexPtr& x : small_complexes()) {
    Sheaf<Rational> f = random_sheaf<Rational>(x, rng);
    std::vector<bool> all(x->size(), true);
    CHECK(pushforward(to_point(x), f).dim(0) == limit_oracle(f, all));
    CHECK(global_sections(f).dim() == limit_oracle(f, all));
    CHECK(dagger_pushforward(to_point(x), f).dim(0) == colimit_oracle(f, all));
  }
}

TEMPLATE_TEST_CASE("adjunctions hold on random triples", "[functors]", Rational, ModP) {
  ModP::Scope scope(2);
  Rng rng(77);
  auto ys = small_complexes();
  for (int trial = 0; trial < 25; ++trial) {
    const ComplexPtr& y = ys[static_cast<std::size_t>(trial) % ys.size()];
    PosetMap f = random_map(y, rng);
    Sheaf<TestType> a = random_sheaf<TestType>(f.source, rng, 2);
    Sheaf<TestType> b = random_sheaf<TestType>(f.target, rng, 2);
    AdjunctionReport r = check_adjunction(f, a, b);
    INFO(r.to_string());
    CHECK(r.ok());
    AdjunctionReport c = check_adjunction(f, linear_dual(a), linear_dual(b));
    INFO(c.to_string());
    CHECK(c.ok());
  }
}

TEST_CASE("pushforward along a composite", "[functors]") {
  Rng rng(4);
  ComplexPtr y = named("circle");
  Subdivision sd = barycentric_subdivision(y);
  Sheaf<Rational> a = random_sheaf<Rational>(sd.complex, rng);
  PosetMap g = compose(to_point(y), sd.map);
  CHECK(pushforward(g, a).dim(0) == pushforward(to_point(y), pushforward(sd.map, a)).dim(0));
}

TEST_CASE("the unit is a morphism", "[functors]") {
  Rng rng(6);
  ComplexPtr y = named("triangle");
  PosetMap s = barycentric_subdivision(y).map;
  Sheaf<Rational> g = random_sheaf<Rational>(y, rng);
  Sheaf<Rational> round = pushforward(s, pullback(s, g));
  Morphism<Rational> u = pushforward_unit(s, g);
  CHECK_FALSE(morphism_violation(g.data, round.data, u));
  // Along a subdivision the unit is an isomorphism.
  for (std::size_t t = 0; t < y->size(); ++t) CHECK(rank(u.at[t]) == g.dim(t));
}
