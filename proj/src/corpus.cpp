#include "sheafkit/corpus.hpp"

namespace sheafkit::corpus {

namespace {
using C = CellComplex::IdCover;
}

CellComplex point() { return CellComplex::from_ids({{"pt", 0, ""}}, {}); }

CellComplex interval() {
  return CellComplex::from_ids({{"x", 0, ""}, {"y", 0, ""}, {"a", 1, ""}}, {C{"x", "a", -1}, C{"y", "a", 1}});
}

CellComplex half_open_interval() {
  return CellComplex::from_ids({{"x", 0, ""}, {"a", 1, ""}, {"inf", 0, "point at infinity"}},
                               {C{"x", "a", -1}, C{"inf", "a", 1}}, "inf");
}

CellComplex open_interval() {
  return CellComplex::from_ids({{"a", 1, ""}, {"v", 0, ""}, {"b", 1, ""}, {"inf", 0, "point at infinity"}},
                               {C{"inf", "a", -1}, C{"v", "a", 1}, C{"v", "b", -1}, C{"inf", "b", 1}}, "inf");
}

CellComplex bare_open_interval() { return CellComplex::from_ids({{"a", 1, ""}}, {}); }

CellComplex circle() {
  return CellComplex::from_ids({{"v0", 0, ""}, {"v1", 0, ""}, {"e0", 1, ""}, {"e1", 1, ""}},
                               {C{"v0", "e0", -1}, C{"v1", "e0", 1}, C{"v1", "e1", -1}, C{"v0", "e1", 1}});
}

CellComplex triangle() { return simplicial({"0", "1", "2"}, {{"0", "1", "2"}}); }

CellComplex square() { return product(interval(), interval()); }

CellComplex sphere() {
  return simplicial({"0", "1", "2", "3"}, {{"0", "1", "2"}, {"0", "1", "3"}, {"0", "2", "3"}, {"1", "2", "3"}});
}

CellComplex torus() { return product(circle(), circle()); }

CellComplex projective_plane() {
  return simplicial({"0", "1", "2", "3", "4", "5"},
                    {{"0", "1", "2"}, {"0", "2", "3"}, {"0", "3", "4"}, {"0", "4", "5"}, {"0", "5", "1"},
                     {"1", "2", "4"}, {"2", "3", "5"}, {"3", "4", "1"}, {"4", "5", "2"}, {"5", "1", "3"}});
}

CellComplex wedge_of_circles() {
  return CellComplex::from_ids({{"w", 0, "wedge point"}, {"u", 0, ""}, {"z", 0, ""}, {"a0", 1, ""}, {"a1", 1, ""},
                                {"b0", 1, ""}, {"b1", 1, ""}},
                               {C{"w", "a0", -1}, C{"u", "a0", 1}, C{"u", "a1", -1}, C{"w", "a1", 1},
                                C{"w", "b0", -1}, C{"z", "b0", 1}, C{"z", "b1", -1}, C{"w", "b1", 1}});
}

CellComplex theta_graph() {
  return CellComplex::from_ids({{"p", 0, ""}, {"q", 0, ""}, {"e0", 1, ""}, {"e1", 1, ""}, {"e2", 1, ""}},
                               {C{"p", "e0", -1}, C{"q", "e0", 1}, C{"p", "e1", -1}, C{"q", "e1", 1},
                                C{"p", "e2", -1}, C{"q", "e2", 1}});
}

namespace {
CellComplex square_cell(int last_sign) {
  return CellComplex::from_ids(
      {{"v0", 0, ""}, {"v1", 0, ""}, {"v2", 0, ""}, {"v3", 0, ""}, {"e0", 1, ""}, {"e1", 1, ""}, {"e2", 1, ""},
       {"e3", 1, ""}, {"f", 2, ""}},
      {C{"v0", "e0", -1}, C{"v1", "e0", 1}, C{"v1", "e1", -1}, C{"v2", "e1", 1}, C{"v2", "e2", -1},
       C{"v3", "e2", 1}, C{"v3", "e3", -1}, C{"v0", "e3", 1}, C{"e0", "f", 1}, C{"e1", "f", 1}, C{"e2", "f", 1},
       C{"e3", "f", last_sign}});
}
}  // namespace

CellComplex sign_broken_square() { return square_cell(-1); }

CellComplex bigon_matching_signs() {
  return CellComplex::from_ids({{"x", 0, ""}, {"y", 0, ""}, {"a", 1, ""}, {"b", 1, ""}, {"f", 2, ""}},
                               {C{"x", "a", -1}, C{"y", "a", 1}, C{"x", "b", -1}, C{"y", "b", 1},
                                C{"a", "f", 1}, C{"b", "f", 1}});
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = {
      {"point", point, true, 0},
      {"interval", interval, true, -1},
      {"half-open-interval", half_open_interval, true, -1},
      {"open-interval", open_interval, true, -1},
      {"circle", circle, true, 1},
      {"triangle", triangle, true, -1},
      {"square", square, true, -1},
      {"sphere", sphere, true, 2},
      {"torus", torus, true, 2},
      {"projective-plane", projective_plane, true, 2},
      {"wedge-of-circles", wedge_of_circles, true, -1},
      {"theta-graph", theta_graph, true, -1},
      {"sign-broken-square", sign_broken_square, false, -1},
      {"bigon-matching-signs", bigon_matching_signs, false, -1},
      {"bare-open-interval", bare_open_interval, false, -1},
  };
  return all;
}

}  // namespace sheafkit::corpus
