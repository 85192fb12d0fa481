#include <catch_amalgamated.hpp>

#include "sheafkit/homology.hpp"
#include "support.hpp"

using namespace sheafkit;
using namespace sheafkit::testing;

namespace {

// Compactly supported cohomology straight from the incidence data: the
// coboundary C^k -> C^{k+1} has block [s:t] rho_{t,s}, ranks by elimination.
template <class S>
GradedDims compact_oracle(const Sheaf<S>& f) {
  const CellComplex& x = *f.base;
  int top = x.dimension();
  std::vector<Index> off(x.size()), total(static_cast<std::size_t>(top + 1), 0);
  for (std::size_t s = 0; s < x.size(); ++s) {
    auto k = static_cast<std::size_t>(x.dim(s));
    off[s] = total[k];
    total[k] += f.dim(s);
  }
  std::vector<Index> rk(static_cast<std::size_t>(top + 2), 0);
  for (int k = 0; k < top; ++k) {
    Mat<S> d = zeros<S>(total[k + 1], total[k]);
    for (std::size_t c = 0; c < x.num_covers(); ++c) {
      const Incidence& e = x.incidence(c);
      if (x.dim(e.lo) != k) continue;
      d.block(off[e.hi], off[e.lo], f.dim(e.hi), f.dim(e.lo)) += S(e.sign) * f.map(c);
    }
    rk[k + 1] = dense_rank(d);
  }
  GradedDims out;
  for (int k = 0; k <= top; ++k) {
    Index h = total[k] - rk[k + 1] - rk[k];
    if (h) out[k] = h;
  }
  return out;
}

template <class S>
GradedDims constant_cohomology(const std::string& name) {
  return ordinary_cohomology(constant<S, Variance::sheaf>(named(name), 1)).dims;
}

}  // namespace

TEST_CASE("cohomology of constant sheaves over the rationals", "[homology]") {
  CHECK(constant_cohomology<Rational>("point") == GradedDims{{0, 1}});
  CHECK(constant_cohomology<Rational>("interval") == GradedDims{{0, 1}});
  CHECK(constant_cohomology<Rational>("circle") == GradedDims{{0, 1}, {1, 1}});
  CHECK(constant_cohomology<Rational>("sphere") == GradedDims{{0, 1}, {2, 1}});
  CHECK(constant_cohomology<Rational>("torus") == GradedDims{{0, 1}, {1, 2}, {2, 1}});
  CHECK(constant_cohomology<Rational>("projective-plane") == GradedDims{{0, 1}});
  CHECK(constant_cohomology<Rational>("wedge-of-circles") == GradedDims{{0, 1}, {1, 2}});
  CHECK(constant_cohomology<Rational>("theta-graph") == GradedDims{{0, 1}, {1, 2}});
}

TEST_CASE("the projective plane over two elements", "[homology]") {
  ModP::Scope scope(2);
  CHECK(constant_cohomology<ModP>("projective-plane") == GradedDims{{0, 1}, {1, 1}, {2, 1}});
}

TEST_CASE("compact support on non-compact intervals", "[homology]") {
  auto half = constant<Rational, Variance::sheaf>(named("half-open-interval"), 1);
  auto open = constant<Rational, Variance::sheaf>(named("open-interval"), 1);
  CHECK(compact_cohomology(half).dims.empty());
  CHECK(compact_cohomology(open).dims == GradedDims{{1, 1}});
  CHECK(ordinary_cohomology(half).dims == GradedDims{{0, 1}});
  CHECK(ordinary_cohomology(open).dims == GradedDims{{0, 1}});
}

TEST_CASE("a twisted circle depends on the field", "[homology]") {
  ComplexPtr x = named("circle");
  auto twist = [&]<class S>() {
    Sheaf<S> f = constant<S, Variance::sheaf>(x, 1);
    f.data.maps[0](0, 0) = S(-1);
    return ordinary_cohomology(f).dims;
  };
  CHECK(twist.operator()<Rational>().empty());
  ModP::Scope scope(2);
  CHECK(twist.operator()<ModP>() == GradedDims{{0, 1}, {1, 1}});
}

TEMPLATE_TEST_CASE("cellular formulas match the oracle", "[homology]", Rational, ModP) {
  ModP::Scope scope(3);
  Rng rng(101);
  for (const ComplexPtr& x : small_complexes())
    for (int k = 0; k < 3; ++k) {
      Sheaf<TestType> f = random_sheaf<TestType>(x, rng);
      auto cc = compact_cohomology(f);
      CHECK_FALSE(cc.complex.square_violation());
      CHECK(cc.dims == compact_oracle(f));
      // Euler characteristic of the cochains.
      long long chi = 0;
      for (auto [n, d] : cc.dims) chi += (n % 2 == 0 ? 1 : -1) * d;
      CHECK(chi == cellular_euler(f));
      // Borel-Moore chains of the dual are the transposed cochains.
      CHECK(bm_homology(linear_dual(f)).dims == cc.dims);
    }
}

TEMPLATE_TEST_CASE("derived theories agree with cellular formulas", "[homology]", Rational, ModP) {
  ModP::Scope scope(2);
  Rng rng(202);
  for (const ComplexPtr& x : small_complexes())
    for (int k = 0; k < 2; ++k) {
      Sheaf<TestType> f = random_sheaf<TestType>(x, rng);
      INFO(x->describe(0));
      CHECK(derived_sheaf_cohomology(f).dims == ordinary_cohomology(f).dims);
      Cosheaf<TestType> g = random_cosheaf<TestType>(x, rng);
      CHECK(derived_cosheaf_homology(g).dims == cosheaf_homology(g).dims);
    }
}

TEST_CASE("homology of constant objects is homology of the space", "[homology]") {
  for (const std::string name : {"circle", "sphere", "torus", "theta-graph"}) {
    INFO(name);
    ComplexPtr x = named(name);
    auto k = constant<Rational, Variance::sheaf>(x, 1);
    auto kc = constant<Rational, Variance::cosheaf>(x, 1);
    GradedDims betti = ordinary_cohomology(k).dims;
    CHECK(derived_sheaf_homology(k).dims == betti);
    CHECK(cosheaf_homology(kc).dims == betti);
    CHECK(derived_cosheaf_cohomology(kc).dims == betti);
  }
}

TEST_CASE("theory dispatch rejects the wrong variance", "[homology]") {
  auto k = constant<Rational, Variance::sheaf>(named("interval"), 1);
  CHECK_THROWS_AS(derived_theory(k, Theory::cosheaf_homology), std::invalid_argument);
  CHECK(derived_theory(k, Theory::sheaf_cohomology).dims == GradedDims{{0, 1}});
  CHECK(is_homological(Theory::bm_cosheaf_homology));
  CHECK_FALSE(is_homological(Theory::compact_sheaf_cohomology));
}

TEST_CASE("subdivision leaves every theory unchanged", "[homology]") {
  Rng rng(303);
  for (const std::string name : {"interval", "circle", "triangle", "sphere"}) {
    INFO(name);
    ComplexPtr x = named(name);
    Sheaf<Rational> f = random_sheaf<Rational>(x, rng);
    Report r = subdivision_invariance_check(f, barycentric_subdivision(x).map);
    INFO(r.to_string());
    CHECK(r.ok());
  }
}
