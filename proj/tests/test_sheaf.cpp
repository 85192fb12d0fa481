#include <catch_amalgamated.hpp>

#include "sheafkit/functors.hpp"
#include "sheafkit/sheaf.hpp"
#include "support.hpp"

using namespace sheafkit;
using namespace sheafkit::testing;

namespace {

// dim Hom(F, G) from the linear system rho^G phi_lo = phi_hi rho^F, one
// equation block per cover, solved by dense elimination.
template <class S, Variance V>
Index hom_oracle(const Cellular<S, V>& f, const Cellular<S, V>& g) {
  const CellComplex& x = *f.base;
  std::vector<Index> off;
  Index unknowns = 0;
  for (std::size_t s = 0; s < x.size(); ++s) {
    off.push_back(unknowns);
    unknowns += f.dim(s) * g.dim(s);
  }
  std::vector<Mat<S>> rows;
  Index total_rows = 0;
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& in = x.incidence(c);
    // The map goes from `from` to `to` in both objects.
    std::size_t from = V == Variance::sheaf ? in.lo : in.hi;
    std::size_t to = V == Variance::sheaf ? in.hi : in.lo;
    Mat<S> block = zeros<S>(g.dim(to) * f.dim(from), unknowns);
    // vec(A X) = (I (x) A) vec(X) and vec(X B) = (B^T (x) I) vec(X), column-major.
    block.block(0, off[from], block.rows(), f.dim(from) * g.dim(from)) +=
        kron(identity<S>(f.dim(from)), g.map(c));
    block.block(0, off[to], block.rows(), f.dim(to) * g.dim(to)) -=
        kron(Mat<S>(f.map(c).transpose()), identity<S>(g.dim(to)));
    rows.push_back(block);
    total_rows += block.rows();
  }
  Mat<S> sys = zeros<S>(total_rows, unknowns);
  Index r = 0;
  for (const auto& b : rows) {
    sys.block(r, 0, b.rows(), unknowns) = b;
    r += b.rows();
  }
  return unknowns - dense_rank(sys);
}

}  // namespace

TEST_CASE("object construction checks shapes", "[sheaf]") {
  ComplexPtr x = named("interval");
  std::vector<Mat<Rational>> maps{zeros<Rational>(1, 1), zeros<Rational>(1, 2)};
  CHECK_THROWS_AS((make_object<Rational, Variance::sheaf>(x, {1, 1, 1}, maps)), ShapeError);
  CHECK_THROWS_AS((make_object<Rational, Variance::sheaf>(x, {1, 1}, {})), ShapeError);
  CHECK_NOTHROW((make_object<Rational, Variance::sheaf>(x, {1, 2, 1}, maps)));
}

TEMPLATE_TEST_CASE("random sheaves are functorial", "[sheaf]", Rational, ModP) {
  ModP::Scope scope(3);
  Rng rng(17);
  for (const ComplexPtr& x : small_complexes())
    for (int k = 0; k < 3; ++k) {
      Sheaf<TestType> f = random_sheaf<TestType>(x, rng);
      CHECK(validate(f).ok());
      CHECK(validate(f, false).ok());
      CHECK(validate(linear_dual(f)).ok());
      CHECK(linear_dual(linear_dual(f)) == f);
    }
}

TEST_CASE("non-commuting data is reported", "[sheaf]") {
  ComplexPtr x = named("square");
  Sheaf<Rational> f = constant<Rational, Variance::sheaf>(x, 1);
  f.data.maps[0](0, 0) = 2;
  Report r = validate(f);
  REQUIRE_FALSE(r.ok());
  CHECK(r.issues[0].kind == "functoriality");
  CHECK_FALSE(validate(f, false).ok());
}

TEMPLATE_TEST_CASE("hom spaces match the linear-system oracle", "[sheaf]", Rational, ModP) {
  ModP::Scope scope(5);
  Rng rng(23);
  for (const ComplexPtr& x : small_complexes()) {
    Sheaf<TestType> f = random_sheaf<TestType>(x, rng, 2), g = random_sheaf<TestType>(x, rng, 2);
    CHECK(hom_space(f, g).dim() == hom_oracle(f, g));
    Cosheaf<TestType> a = random_cosheaf<TestType>(x, rng, 2), b = random_cosheaf<TestType>(x, rng, 2);
    CHECK(hom_space(a, b).dim() == hom_oracle(a, b));
  }
}

TEST_CASE("hom basis elements are morphisms", "[sheaf]") {
  Rng rng(2);
  ComplexPtr x = named("circle");
  Sheaf<Rational> f = random_sheaf<Rational>(x, rng), g = random_sheaf<Rational>(x, rng);
  HomSpace<Rational> h = hom_space(f, g);
  for (const auto& m : h.basis) CHECK_FALSE(morphism_violation(f.data, g.data, m));
}

TEST_CASE("elementary objects represent stalks", "[sheaf]") {
  Rng rng(31);
  for (const ComplexPtr& x : small_complexes()) {
    Sheaf<Rational> f = random_sheaf<Rational>(x, rng);
    Cosheaf<Rational> g = random_cosheaf<Rational>(x, rng);
    for (std::size_t s = 0; s < x->size(); ++s) {
      // Hom({s}, F) = F(s), Hom(F, [s]) = F(s)^*, and the cosheaf mirror.
      CHECK(hom_space(elementary_projective_sheaf<Rational>(x, s, 1), f).dim() == f.dim(s));
      CHECK(hom_space(f, elementary_injective<Rational>(x, s, 1)).dim() == f.dim(s));
      CHECK(hom_space(elementary_projective_cosheaf<Rational>(x, s, 1), g).dim() == g.dim(s));
      CHECK(hom_space(g, elementary_injective_cosheaf<Rational>(x, s, 1)).dim() == g.dim(s));
    }
  }
}

TEST_CASE("elementary objects have the right support", "[sheaf]") {
  ComplexPtr x = named("sphere");
  std::size_t e = x->cells_of_dim(1).front();
  Sheaf<Rational> closed = elementary_injective<Rational>(x, e, 2);
  Sheaf<Rational> star = elementary_projective_sheaf<Rational>(x, e, 2);
  for (std::size_t s = 0; s < x->size(); ++s) {
    CHECK(closed.dim(s) == (x->poset().leq(s, e) ? 2 : 0));
    CHECK(star.dim(s) == (x->poset().leq(e, s) ? 2 : 0));
  }
  CHECK(validate(closed).ok());
  CHECK(validate(star).ok());
  CHECK(validate(skyscraper<Rational, Variance::sheaf>(x, e, 1)).ok());
  CHECK(decompose(closed, Kind::injective).summands == Summands{{e, 2}});
  CHECK(decompose(star, Kind::projective).summands == Summands{{e, 2}});
}

TEMPLATE_TEST_CASE("resolutions are resolutions by the right objects", "[sheaf]", Rational, ModP) {
  ModP::Scope scope(2);
  Rng rng(41);
  for (const ComplexPtr& x : small_complexes()) {
    Sheaf<TestType> f = random_sheaf<TestType>(x, rng);
    auto inj = injective_resolution(f);
    auto proj = projective_resolution(f);
    CHECK_FALSE(square_violation(inj.complex.data));
    CHECK_FALSE(square_violation(proj.complex.data));
    for (int n = inj.complex.data.lo; n <= inj.complex.data.hi(); ++n)
      CHECK(decompose(Sheaf<TestType>{x, inj.complex.data.term(n)}, Kind::injective).ok());
    for (int n = proj.complex.data.lo; n <= proj.complex.data.hi(); ++n)
      CHECK(decompose(Sheaf<TestType>{x, proj.complex.data.term(n)}, Kind::projective).ok());
    auto single = concentrated(f.data, 0);
    CHECK(quasi_iso_failures(single, inj.complex.data, {{{0, inj.augmentation}}}).empty());
    CHECK(quasi_iso_failures(proj.complex.data, single, {{{0, proj.augmentation}}}).empty());

    Cosheaf<TestType> g = linear_dual(f);
    auto ginj = injective_resolution(g);
    for (int n = ginj.complex.data.lo; n <= ginj.complex.data.hi(); ++n)
      CHECK(decompose(Cosheaf<TestType>{x, ginj.complex.data.term(n)}, Kind::injective).ok());
    CHECK(quasi_iso_failures(concentrated(g.data, 0), ginj.complex.data, {{{0, ginj.augmentation}}}).empty());
  }
}

TEST_CASE("the constant sheaf on a circle is neither injective nor projective", "[sheaf]") {
  ComplexPtr x = named("circle");
  Sheaf<Rational> k = constant<Rational, Variance::sheaf>(x, 1);
  CHECK_FALSE(decompose(k, Kind::injective).ok());
  CHECK_FALSE(decompose(k, Kind::projective).ok());
  // On a closed cell it is the elementary injective.
  ComplexPtr i = named("interval");
  CHECK(decompose(constant<Rational, Variance::sheaf>(i, 1), Kind::injective).summands ==
        Summands{{i->index("a"), 1}});
}

TEST_CASE("direct sums and sheaf hom", "[sheaf]") {
  Rng rng(8);
  ComplexPtr x = named("triangle");
  Sheaf<Rational> f = random_sheaf<Rational>(x, rng), g = random_sheaf<Rational>(x, rng);
  Sheaf<Rational> fg = direct_sum(f, g);
  CHECK(validate(fg).ok());
  for (std::size_t s = 0; s < x->size(); ++s) CHECK(fg.dim(s) == f.dim(s) + g.dim(s));
  Sheaf<Rational> h = sheaf_hom(f, g);
  CHECK(validate(h).ok());
  // The open star of a top cell is the cell itself.
  std::size_t top = x->cells_of_dim(2).front();
  CHECK(h.dim(top) == f.dim(top) * g.dim(top));
  // Global sections of Hom(F, G) are Hom(F, G).
  CHECK(global_sections(h).dim() == hom_space(f, g).dim());
}
