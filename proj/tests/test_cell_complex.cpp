#include <catch_amalgamated.hpp>

#include <set>

#include "sheafkit/cell_complex.hpp"
#include "sheafkit/corpus.hpp"
#include "support.hpp"

using namespace sheafkit;
using namespace sheafkit::testing;

namespace {

// Cells of X+ strictly between a and b.
std::size_t between_count(const CellComplex& x, std::size_t a, std::size_t b) {
  const Poset& p = x.poset_plus();
  std::size_t n = 0;
  for (std::size_t c = 0; c < p.size(); ++c)
    if (p.less(a, c) && p.less(c, b)) ++n;
  return n;
}

int dim_plus(const CellComplex& x, std::size_t i) { return x.cell(i).dim; }

}  // namespace

TEST_CASE("corpus entries validate as declared", "[complex]") {
  for (const auto& e : corpus::entries()) {
    INFO(e.name);
    CellComplex x = e.make();
    Report r = validate(x);
    CHECK(r.ok() == e.valid);
    if (e.manifold_dim >= 0) CHECK(manifold_check(x, e.manifold_dim).ok());
  }
}

TEST_CASE("sign condition and diamonds on every valid corpus complex", "[complex]") {
  for (const ComplexPtr& x : valid_complexes()) {
    INFO(x->describe(0));
    const Poset& p = x->poset_plus();
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) {
        if (dim_plus(*x, b) - dim_plus(*x, a) != 2 || !p.less(a, b)) continue;
        CHECK(between_count(*x, a, b) == 2);
        int sum = 0;
        for (std::size_t c = 0; c < p.size(); ++c) sum += x->sign(a, c) * x->sign(c, b);
        CHECK(sum == 0);
      }
  }
}

TEST_CASE("broken fixtures name the failing diamond", "[complex]") {
  Report r = validate(corpus::sign_broken_square());
  REQUIRE_FALSE(r.ok());
  CHECK(r.issues[0].kind == "sign-condition");
  CHECK(r.issues[0].cells.size() == 2);
  CHECK_FALSE(validate(corpus::bigon_matching_signs()).ok());
  Report bare = validate(corpus::bare_open_interval());
  REQUIRE_FALSE(bare.ok());
  CHECK(bare.issues[0].kind == "regularity");
}

TEST_CASE("constructor rejects bad references", "[complex]") {
  CHECK_THROWS_AS(CellComplex::from_ids({{"x", 0, ""}}, {{"x", "y", 1}}), UnknownCell);
  CHECK_THROWS(CellComplex::from_ids({{"x", 0, ""}, {"x", 1, ""}}, {}));
}

TEST_CASE("f-vectors", "[complex]") {
  CHECK(corpus::sphere().f_vector() == std::vector<std::size_t>{4, 6, 4});
  CHECK(corpus::torus().f_vector() == std::vector<std::size_t>{4, 8, 4});
  CHECK(corpus::projective_plane().f_vector() == std::vector<std::size_t>{6, 15, 10});
  CHECK(corpus::triangle().f_vector() == std::vector<std::size_t>{3, 3, 1});
  CHECK(product(corpus::interval(), corpus::interval()).f_vector() == std::vector<std::size_t>{4, 4, 1});
}

TEST_CASE("compact subcomplex drops cells touching infinity", "[complex]") {
  ComplexPtr h = share(corpus::half_open_interval());
  Subcomplex s = compact_subcomplex(h);
  REQUIRE(s.complex->size() == 1);
  CHECK(s.complex->dim(0) == 0);
  CHECK(validate(s.inclusion).ok());
  ComplexPtr o = share(corpus::open_interval());
  CHECK(compact_subcomplex(o).complex->size() == 1);
  CHECK(has_compact_closure(*o, o->index(compact_subcomplex(o).complex->id(0))));
}

TEST_CASE("barycentric subdivision counts chains", "[complex]") {
  for (const std::string name : {"interval", "circle", "triangle", "sphere"}) {
    INFO(name);
    ComplexPtr x = named(name);
    Subdivision sd = barycentric_subdivision(x);
    CHECK(validate(*sd.complex).ok());
    CHECK(validate_subdivision(sd.map).ok());
    // Independent count of k-chains in the face poset of X.
    const Poset& p = x->poset();
    std::vector<std::size_t> expect;
    std::vector<std::vector<std::size_t>> chains;
    for (std::size_t i = 0; i < p.size(); ++i) chains.push_back({i});
    while (!chains.empty()) {
      expect.push_back(chains.size());
      std::vector<std::vector<std::size_t>> next;
      for (const auto& c : chains)
        for (std::size_t j = 0; j < p.size(); ++j)
          if (p.less(c.back(), j)) {
            auto d = c;
            d.push_back(j);
            next.push_back(d);
          }
      chains = std::move(next);
    }
    CHECK(sd.complex->f_vector() == expect);
    CHECK(sd.complex->size() >= x->size());
  }
  CHECK_THROWS_AS(barycentric_subdivision(named("half-open-interval")), std::invalid_argument);
}

TEST_CASE("manifold screen", "[complex]") {
  CHECK(manifold_check(corpus::circle(), 1).ok());
  CHECK(manifold_check(corpus::sphere(), 2).ok());
  CHECK_FALSE(manifold_check(corpus::wedge_of_circles(), 1).ok());
  CHECK_FALSE(manifold_check(corpus::theta_graph(), 1).ok());
  CHECK_FALSE(manifold_check(corpus::triangle(), 2).ok());
}

TEST_CASE("dual cell structure reverses dimensions", "[complex]") {
  CellComplex s = corpus::sphere();
  CellComplex d = dual_structure(s, 2);
  CHECK(d.f_vector() == std::vector<std::size_t>{4, 6, 4});
  CHECK(validate(d).ok());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(d.dim(i) == 2 - s.dim(i));
  CHECK(validate(dual_structure(corpus::torus(), 2)).ok());
  CHECK_THROWS_AS(dual_structure(corpus::wedge_of_circles(), 1), std::invalid_argument);
  CHECK_NOTHROW(dual_structure(corpus::wedge_of_circles(), 1, true));
  CHECK_THROWS_AS(dual_structure(corpus::half_open_interval(), 1), std::invalid_argument);
}

TEST_CASE("poset maps", "[complex]") {
  ComplexPtr x = named("interval");
  ComplexPtr c = named("circle");
  CHECK(validate(to_point(x)).ok());
  CHECK(validate(identity_map(x)).ok());
  CHECK(is_surjective(barycentric_subdivision(c).map));
  // Sending the edge to a vertex while its endpoints go to the edge reverses order.
  PosetMap bad{x, x, {x->index("a"), x->index("a"), x->index("x")}};
  CHECK_FALSE(validate(bad).ok());
  PosetMap g = compose(to_point(x), barycentric_subdivision(x).map);
  CHECK(g.source->size() == 5);
  CHECK(g.target->size() == 1);
}

TEST_CASE("simplicial complexes", "[complex]") {
  CellComplex t = simplicial({"a", "b", "c"}, {{"a", "b", "c"}});
  CHECK(t.f_vector() == std::vector<std::size_t>{3, 3, 1});
  CHECK(validate(t).ok());
  CHECK(t.sign(t.index("b,c"), t.index("a,b,c")) == 1);
  CHECK(t.sign(t.index("a,c"), t.index("a,b,c")) == -1);
}

TEST_CASE("dualizing the cell structure twice gives the original", "[complex]") {
  for (const std::string name : {"circle", "sphere", "torus"}) {
    INFO(name);
    ComplexPtr x = named(name);
    int n = x->dimension();
    CellComplex dd = dual_structure(dual_structure(*x, n), n);
    REQUIRE(dd.size() == x->size());
    for (std::size_t i = 0; i < x->size(); ++i) CHECK(dd.dim(i) == x->dim(i));
    for (std::size_t c = 0; c < x->num_covers(); ++c) {
      const Incidence& e = x->incidence(c);
      CHECK(dd.sign(e.lo, e.hi) == e.sign);
    }
  }
}

TEST_CASE("random simplicial complexes validate", "[complex]") {
  Rng rng(19);
  std::vector<std::string> v{"0", "1", "2", "3", "4"};
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<std::string>> facets;
    int count = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int f = 0; f < count; ++f) {
      std::vector<std::string> facet;
      for (const auto& s : v)
        if (std::bernoulli_distribution(0.5)(rng)) facet.push_back(s);
      if (!facet.empty()) facets.push_back(facet);
    }
    if (facets.empty()) continue;
    CellComplex x = simplicial(v, facets);
    CHECK(validate(x).ok());
    Subdivision sd = barycentric_subdivision(share(x));
    CHECK(validate(*sd.complex).ok());
    CHECK(is_surjective(sd.map));
  }
}
