#include <catch_amalgamated.hpp>

#include "sheafkit/chain.hpp"
#include "sheafkit/field.hpp"
#include "sheafkit/matrix.hpp"
#include "support.hpp"

using namespace sheafkit;
using namespace sheafkit::testing;

TEMPLATE_TEST_CASE("rank agrees with dense elimination", "[linalg]", Rational, ModP) {
  ModP::Scope scope(7);
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Index r = std::uniform_int_distribution<int>(0, 6)(rng), c = std::uniform_int_distribution<int>(0, 6)(rng);
    // Low-rank products make rank deficiency common.
    Index k = std::uniform_int_distribution<int>(0, 3)(rng);
    Mat<TestType> m = random_matrix<TestType>(rng, r, k) * random_matrix<TestType>(rng, k, c);
    if (trial % 3 == 0) m = random_matrix<TestType>(rng, r, c);
    CHECK(rank(m) == dense_rank(m));
  }
}

TEMPLATE_TEST_CASE("kernel, cokernel and image", "[linalg]", Rational, ModP) {
  ModP::Scope scope(5);
  Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Index r = std::uniform_int_distribution<int>(1, 5)(rng), c = std::uniform_int_distribution<int>(1, 5)(rng);
    Mat<TestType> m = random_matrix<TestType>(rng, r, 2) * random_matrix<TestType>(rng, 2, c);
    SpMat<TestType> s = sparse(m);
    Index rk = dense_rank(m);

    Subspace<TestType> ker = kernel(s);
    CHECK(ker.dim() == c - rk);
    CHECK(is_zero(multiply(s, ker.basis)));
    CHECK(dense_rank(dense(ker.basis)) == ker.dim());

    Quotient<TestType> q = cokernel(s);
    CHECK(q.dim() == r - rk);
    CHECK(is_zero(multiply(q.projection, s)));
    CHECK(is_zero(SpMat<TestType>(multiply(q.projection, q.section) - sparse_identity<TestType>(q.dim()))));

    Subspace<TestType> im = image(s);
    CHECK(im.dim() == rk);
    CHECK(im.contains(s));
  }
}

TEST_CASE("solve finds a solution or reports none", "[linalg]") {
  Mat<Rational> a(2, 2);
  a << 1, 2, 2, 4;
  Mat<Rational> b(2, 1);
  b << 3, 6;
  auto x = solve(a, b);
  REQUIRE(x);
  CHECK(a * *x == b);
  b << 3, 7;
  CHECK_FALSE(solve(a, b));
}

TEST_CASE("kron is the tensor product of maps", "[linalg]") {
  Rng rng(5);
  auto a = random_matrix<Rational>(rng, 2, 3), b = random_matrix<Rational>(rng, 3, 2);
  auto c = random_matrix<Rational>(rng, 3, 2), d = random_matrix<Rational>(rng, 2, 2);
  CHECK(kron(a, b) * kron(c, d) == kron(Mat<Rational>(a * c), Mat<Rational>(b * d)));
  CHECK(kron(a, b).rows() == 6);
  CHECK(kron(a, b).cols() == 6);
}

TEST_CASE("rational scalars parse and print exactly", "[field]") {
  CHECK(parse_scalar<Rational>("3/6") == Rational(1, 2));
  CHECK(parse_scalar<Rational>("-4") == Rational(-4));
  CHECK(to_string(Rational(-2, 4)) == "-1/2");
  CHECK_THROWS_AS(parse_scalar<Rational>("1/0"), std::exception);
  CHECK_THROWS_AS(parse_scalar<Rational>("x"), std::invalid_argument);
}

TEST_CASE("prime field arithmetic", "[field]") {
  ModP::Scope scope(5);
  CHECK(parse_scalar<ModP>("1/2") == ModP(3));
  CHECK(ModP(3) * ModP(2) == ModP(1));
  CHECK(ModP(2).inverse() == ModP(3));
  CHECK(ModP(-1) == ModP(4));
  CHECK_THROWS(parse_scalar<ModP>("1/10"));
  CHECK_THROWS_AS(ModP(0).inverse(), std::domain_error);
  ModP a(2);
  {
    ModP::Scope inner(7);
    ModP b(2);
    CHECK_THROWS_AS(a + b, FieldMismatch);
  }
  CHECK_THROWS_AS(ModP::Scope(6), std::invalid_argument);
}

TEST_CASE("field descriptors", "[field]") {
  CHECK(FieldSpec::parse("q") == FieldSpec::rational());
  CHECK(FieldSpec::parse("fp:2").modulus == 2);
  CHECK(FieldSpec::parse("fp:2").to_string() == "fp:2");
  CHECK(FieldSpec::parse("fp").modulus == 46337);
  CHECK_THROWS_AS(FieldSpec::parse("fp:x"), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::parse("reals"), std::invalid_argument);
  int seen = with_field(FieldSpec::prime(3), []<class S>() { return static_cast<int>(current_field<S>().modulus); });
  CHECK(seen == 3);
}

TEST_CASE("rank of the same matrix depends on the field", "[field]") {
  // [[1, 1], [1, -1]] has determinant -2.
  Mat<Rational> q(2, 2);
  q << 1, 1, 1, -1;
  CHECK(rank(q) == 2);
  ModP::Scope scope(2);
  Mat<ModP> p(2, 2);
  p << ModP(1), ModP(1), ModP(1), ModP(-1);
  CHECK(rank(p) == 1);
}

TEST_CASE("chain complexes", "[chain]") {
  // Cellular chains of an interval x --a-- y, cohomologically graded.
  Mat<Rational> d0(1, 2);
  d0 << -1, 1;
  ChainComplex<Rational> c(0, {2, 1}, {sparse(d0)});
  CHECK(homology(c) == GradedDims{{0, 1}});
  CHECK(c.euler_characteristic() == 1);
  CHECK_FALSE(c.square_violation());
  CHECK(is_quasi_iso(identity_map(c)));
  CHECK_THROWS_AS(ChainComplex<Rational>(0, {2, 2}, {sparse(d0)}), ShapeError);

  // A map to the zero complex is a quasi-isomorphism iff the source is acyclic.
  ChainComplex<Rational> zero(0, {0, 0}, {SpMat<Rational>(0, 0)});
  ChainMap<Rational> to_zero(c, zero, {{0, SpMat<Rational>(0, 2)}, {1, SpMat<Rational>(0, 1)}});
  CHECK_FALSE(is_quasi_iso(to_zero));
  CHECK(to_homological({{-1, 2}, {0, 1}}) == GradedDims{{1, 2}, {0, 1}});
}

TEST_CASE("total complex of a double complex squares to zero", "[chain]") {
  // The tensor square of the interval cochain complex.
  Mat<Rational> d(1, 2);
  d << -1, 1;
  DoubleComplex<Rational> dc;
  dc.p_lo = dc.q_lo = 0;
  dc.p_hi = dc.q_hi = 1;
  Index dim[2] = {2, 1};
  for (int p = 0; p <= 1; ++p)
    for (int q = 0; q <= 1; ++q) {
      dc.dims[{p, q}] = dim[p] * dim[q];
      if (q == 0) dc.horizontal[{p, q}] = sparse(kron(identity<Rational>(dim[p]), d));
      if (p == 0) dc.vertical[{p, q}] = sparse(kron(d, identity<Rational>(dim[q])));
    }
  ChainComplex<Rational> t = total_complex(dc);
  CHECK_FALSE(t.square_violation());
  CHECK(homology(t) == GradedDims{{0, 1}});
}
