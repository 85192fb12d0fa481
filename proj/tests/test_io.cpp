#include <catch_amalgamated.hpp>

#include <filesystem>

#include "sheafkit/duality.hpp"
#include "sheafkit/io.hpp"
#include "support.hpp"

using namespace sheafkit;
using namespace sheafkit::testing;

namespace fs = std::filesystem;

namespace {

bool same_structure(const CellComplex& a, const CellComplex& b) {
  if (a.size() != b.size() || a.num_covers() != b.num_covers() || a.has_infinity() != b.has_infinity()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.id(i) != b.id(i) || a.dim(i) != b.dim(i)) return false;
  for (std::size_t c = 0; c < a.num_covers(); ++c) {
    const Incidence& e = a.incidence(c);
    if (b.sign(b.index(a.id(e.lo)), b.index(a.id(e.hi))) != e.sign) return false;
  }
  return true;
}

std::string expect_parse_error(auto&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.where();
  }
  FAIL("no ParseError");
  return {};
}

}  // namespace

TEST_CASE("complexes survive a round trip", "[io]") {
  for (const auto& e : corpus::entries()) {
    INFO(e.name);
    CellComplex x = e.make();
    CHECK(same_structure(complex_from_text(complex_to_text(x)), x));
  }
}

TEMPLATE_TEST_CASE("objects survive a round trip", "[io]", Rational, ModP) {
  ModP::Scope scope(7);
  Rng rng(91);
  for (const ComplexPtr& x : small_complexes()) {
    Sheaf<TestType> f = random_sheaf<TestType>(x, rng);
    CHECK((object_from_text<TestType, Variance::sheaf>(object_to_text(f, "x.json"), x) == f));
    Cosheaf<TestType> g = linear_dual(f);
    CHECK((object_from_text<TestType, Variance::cosheaf>(object_to_text(g, "x.json"), x) == g));
  }
}

TEST_CASE("syntax errors carry a line and column", "[io]") {
  std::string text = complex_to_text(corpus::circle());
  std::string where = expect_parse_error([&] { complex_from_text(text.substr(0, 40), "cut.json"); });
  CHECK(where.rfind("line ", 0) == 0);
  CHECK(where.find("column") != std::string::npos);
}

TEST_CASE("structural errors carry a field path", "[io]") {
  ComplexPtr x = named("interval");
  std::string good = object_to_text(constant<Rational, Variance::sheaf>(x, 1), "interval.json");
  CHECK(object_from_text<Rational, Variance::sheaf>(good, x).dim(0) == 1);

  std::string bad_scalar = good;
  auto at = bad_scalar.find("\"1\"");
  REQUIRE(at != std::string::npos);
  bad_scalar.replace(at, 3, "\"1/0\"");
  CHECK(expect_parse_error([&] { object_from_text<Rational, Variance::sheaf>(bad_scalar, x); }).find("maps[") == 0);

  std::string no_stalks = R"({"format": "sheafkit-sheaf/1", "kind": "sheaf", "complex": "i.json", "maps": []})";
  CHECK(expect_parse_error([&] { object_from_text<Rational, Variance::sheaf>(no_stalks, x); }) == "top level");

  std::string unknown = R"({"format": "sheafkit-complex/1", "cells": [{"id": "x", "dim": 0}],
    "covers": [{"lo": "x", "hi": "y", "sign": 1}]})";
  CHECK(expect_parse_error([&] { complex_from_text(unknown); }).find("covers[0]") == 0);
}

TEST_CASE("the workspace shares complexes between files", "[io]") {
  fs::path dir = fs::temp_directory_path() / "sheafkit-io-test";
  fs::create_directories(dir);
  ComplexPtr x = named("circle");
  write_file(dir / "c.complex.json", complex_to_text(*x));
  auto k = constant<Rational, Variance::sheaf>(x, 1);
  write_file(dir / "k.sheaf.json", object_to_text(k, "c.complex.json"));
  write_file(dir / "d.cosheaf.json", object_to_text(linear_dual(k), "c.complex.json"));
  write_file(dir / "p.cplx.json", complex_object_to_text(phat(k), "c.complex.json"));

  Workspace ws;
  auto a = ws.object<Rational, Variance::sheaf>(dir / "k.sheaf.json");
  auto b = ws.object<Rational, Variance::cosheaf>(dir / "d.cosheaf.json");
  CHECK(a.base == b.base);
  CHECK(ws.kind(dir / "d.cosheaf.json") == Variance::cosheaf);
  CHECK(ws.format(dir / "k.sheaf.json") == "sheafkit-sheaf/1");
  auto c = ws.object_complex<Rational, Variance::cosheaf>(dir / "p.cplx.json");
  CHECK(c.base == a.base);
  CHECK(same_complex(c.data, phat(a).data));
  CHECK(ws.path_of(a.base).has_value());
  fs::remove_all(dir);
}
