#include <catch_amalgamated.hpp>

#include "sheafkit/coend.hpp"
#include "sheafkit/duality.hpp"
#include "support.hpp"

using namespace sheafkit;
using namespace sheafkit::testing;

TEST_CASE("dualizing complex is p_inv of the constant cosheaf", "[duality]") {
  for (const ComplexPtr& x : small_complexes()) {
    INFO(x->describe(0));
    auto w = dualizing_complex<Rational>(x);
    CHECK(same_complex(w.data, p_inv(constant<Rational, Variance::cosheaf>(x, 1)).data));
    CHECK_FALSE(square_violation(w.data));
  }
}

TEMPLATE_TEST_CASE("Verdier dual agrees with its two descriptions", "[duality]", Rational, ModP) {
  ModP::Scope scope(3);
  Rng rng(61);
  for (const ComplexPtr& x : small_complexes()) {
    Sheaf<TestType> f = random_sheaf<TestType>(x, rng);
    auto d = verdier_dual(f);
    CHECK_FALSE(square_violation(d.data));
    CHECK(same_complex(d.data, p_inv(linear_dual(f)).data));
    CHECK(same_complex(d.data, linear_dual(phat(f)).data));
    CHECK(same_complex(d.data, verdier_dual(concentrated(f)).data));
  }
}

TEMPLATE_TEST_CASE("round trips are quasi-isomorphisms", "[duality]", Rational, ModP) {
  ModP::Scope scope(2);
  Rng rng(62);
  for (const ComplexPtr& x : small_complexes())
    for (int k = 0; k < 2; ++k) {
      Sheaf<TestType> f = random_sheaf<TestType>(x, rng);
      Report a = roundtrip_check(f);
      INFO(a.to_string());
      CHECK(a.ok());
      Report b = double_dual(f).report;
      INFO(b.to_string());
      CHECK(b.ok());
    }
}

TEST_CASE("phat has the documented terms", "[duality]") {
  Rng rng(63);
  ComplexPtr x = named("square");
  Sheaf<Rational> f = random_sheaf<Rational>(x, rng);
  auto c = phat(f);
  CHECK_FALSE(square_violation(c.data));
  for (int i = 0; i <= 2; ++i) {
    Summands expect;
    for (std::size_t s : x->cells_of_dim(i))
      if (f.dim(s)) expect.push_back({s, f.dim(s)});
    Decomposition d = decompose(Cosheaf<Rational>{x, c.data.term(i)}, Kind::projective);
    REQUIRE(d.ok());
    std::sort(d.summands.begin(), d.summands.end());
    std::sort(expect.begin(), expect.end());
    CHECK(d.summands == expect);
  }
}

TEST_CASE("phat of a morphism is a chain map", "[duality]") {
  Rng rng(64);
  ComplexPtr x = named("circle");
  Sheaf<Rational> f = random_sheaf<Rational>(x, rng), g = random_sheaf<Rational>(x, rng);
  HomSpace<Rational> h = hom_space(f, g);
  auto pf = phat(f), pg = phat(g);
  for (const auto& alpha : h.basis) {
    ComplexMorphism<Rational> m = phat(f, g, alpha);
    for (std::size_t s = 0; s < x->size(); ++s) CHECK_FALSE(at(pf.data, pg.data, m, s).square_violation());
  }
  ComplexMorphism<Rational> id = phat(f, f, identity_morphism(f.data));
  CHECK(quasi_iso_failures(pf.data, pf.data, id).empty());
}

TEST_CASE("local homology of constant sheaves", "[duality]") {
  auto local = [](const std::string& name, const std::string& cell) {
    ComplexPtr x = named(name);
    return local_homology(constant<Rational, Variance::sheaf>(x, 1), x->index(cell));
  };
  CHECK(local("circle", "v0") == GradedDims{{1, 1}});
  CHECK(local("circle", "e0") == GradedDims{{1, 1}});
  CHECK(local("sphere", "0") == GradedDims{{2, 1}});
  CHECK(local("sphere", "0,1") == GradedDims{{2, 1}});
  CHECK(local("sphere", "0,1,2") == GradedDims{{2, 1}});
  CHECK(local("interval", "x").empty());
  CHECK(local("theta-graph", "p") == GradedDims{{1, 2}});
  CHECK(local("wedge-of-circles", "w") == GradedDims{{1, 3}});
  CHECK(local("wedge-of-circles", "u") == GradedDims{{1, 1}});
}

TEMPLATE_TEST_CASE("compact cohomology three ways", "[duality]", Rational, ModP) {
  ModP::Scope scope(5);
  Rng rng(65);
  for (const ComplexPtr& x : valid_complexes()) {
    Sheaf<TestType> f = random_sheaf<TestType>(x, rng, 2);
    GradedDims cc = compact_cohomology(f).dims;
    CHECK(compact_cohomology_via_phat(f).dims == cc);
    CHECK(cc_via_coend(f) == cc);
  }
}

TEST_CASE("Poincare duality on closed surfaces and the circle", "[duality]") {
  Rng rng(66);
  for (const auto& [name, n] : std::vector<std::pair<std::string, int>>{{"circle", 1}, {"sphere", 2}, {"torus", 2}}) {
    INFO(name);
    ComplexPtr x = named(name);
    for (int k = 0; k < 3; ++k) {
      Report r = poincare_check(random_sheaf<Rational>(x, rng), n);
      INFO(r.to_string());
      CHECK(r.ok());
    }
  }
}

TEST_CASE("Poincare duality on the projective plane needs characteristic two", "[duality]") {
  ComplexPtr x = named("projective-plane");
  {
    ModP::Scope scope(2);
    CHECK(poincare_check(constant<ModP, Variance::sheaf>(x, 1), 2).ok());
  }
  Report q = poincare_check(constant<Rational, Variance::sheaf>(x, 1), 2);
  REQUIRE_FALSE(q.ok());
  CHECK(q.issues[0].kind == "poincare");
}

TEST_CASE("Poincare check refuses non-compact or singular spaces", "[duality]") {
  CHECK_FALSE(poincare_check(constant<Rational, Variance::sheaf>(named("open-interval"), 1), 1).ok());
  CHECK_FALSE(poincare_check(constant<Rational, Variance::sheaf>(named("wedge-of-circles"), 1), 1).ok());
}

TEST_CASE("the dual cosheaf lives on the dual cells", "[duality]") {
  ComplexPtr x = named("sphere");
  Cosheaf<Rational> g = sheaf_to_dual_cosheaf(constant<Rational, Variance::sheaf>(x, 1), 2);
  CHECK(g.base->f_vector() == std::vector<std::size_t>{4, 6, 4});
  CHECK(validate(g).ok());
  CHECK(cosheaf_homology(g).dims == GradedDims{{0, 1}, {2, 1}});
}
