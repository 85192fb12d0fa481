#include "sheafkit/cell_complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace sheafkit {

std::string Report::to_string() const {
  std::ostringstream os;
  for (const Issue& i : issues) {
    os << i.kind << ": " << i.message;
    if (!i.cells.empty()) {
      os << " [";
      for (std::size_t k = 0; k < i.cells.size(); ++k) os << (k ? ", " : "") << i.cells[k];
      os << "]";
    }
    os << "\n";
  }
  for (const std::string& n : notes) os << "note: " << n << "\n";
  return os.str();
}

CellComplex::CellComplex(std::vector<Cell> cells, std::vector<Incidence> covers, std::optional<std::size_t> infinity) {
  const std::size_t total = cells.size();
  if (infinity && *infinity >= total) throw std::invalid_argument("infinity refers to an unknown cell");
  // Move infinity to the end, keeping the order of the other cells.
  std::vector<std::size_t> new_index(total);
  std::size_t next = 0;
  for (std::size_t i = 0; i < total; ++i) {
    if (infinity && i == *infinity) continue;
    new_index[i] = next++;
    cells_.push_back(std::move(cells[i]));
  }
  if (infinity) {
    new_index[*infinity] = next;
    cells_.push_back(std::move(cells[*infinity]));
  }
  n_ = infinity ? total - 1 : total;
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (cells_[i].dim < 0) throw std::invalid_argument("cell '" + cells_[i].id + "' has negative dimension");
    if (!by_id_.emplace(cells_[i].id, i).second) throw std::invalid_argument("duplicate cell id '" + cells_[i].id + "'");
  }
  std::vector<Incidence> inner, outer;
  for (const Incidence& c : covers) {
    if (c.lo >= total || c.hi >= total) throw std::invalid_argument("cover refers to an unknown cell");
    Incidence m{new_index[c.lo], new_index[c.hi], c.sign};
    (m.lo < n_ && m.hi < n_ ? inner : outer).push_back(m);
  }
  m_ = inner.size();
  covers_ = std::move(inner);
  covers_.insert(covers_.end(), outer.begin(), outer.end());

  std::vector<Cover> plain;
  for (const Incidence& c : covers_) plain.push_back({c.lo, c.hi});
  try {
    poset_plus_ = Poset(cells_.size(), plain);
    poset_ = Poset(n_, std::vector<Cover>(plain.begin(), plain.begin() + static_cast<std::ptrdiff_t>(m_)));
  } catch (const std::invalid_argument&) {
    acyclic_ = false;
    poset_plus_ = Poset(cells_.size(), {});
    poset_ = Poset(n_, {});
  }
  opposite_ = poset_.opposite();
}

CellComplex CellComplex::from_ids(std::vector<Cell> cells, const std::vector<IdCover>& covers,
                                  const std::optional<std::string>& infinity) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < cells.size(); ++i) idx.emplace(cells[i].id, i);
  auto lookup = [&](const std::string& id) {
    auto it = idx.find(id);
    if (it == idx.end()) throw UnknownCell(id);
    return it->second;
  };
  std::vector<Incidence> inc;
  for (const IdCover& c : covers) inc.push_back({lookup(c.lo), lookup(c.hi), c.sign});
  std::optional<std::size_t> inf;
  if (infinity) inf = lookup(*infinity);
  return CellComplex(std::move(cells), std::move(inc), inf);
}

std::size_t CellComplex::infinity() const {
  if (!has_infinity()) throw std::logic_error("complex has no point at infinity");
  return n_;
}

std::optional<std::size_t> CellComplex::find(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::size_t CellComplex::index(const std::string& id) const {
  auto i = find(id);
  if (!i) throw UnknownCell(id);
  return *i;
}

int CellComplex::dimension() const {
  int d = -1;
  for (std::size_t i = 0; i < n_; ++i) d = std::max(d, cells_[i].dim);
  return d;
}

std::vector<std::size_t> CellComplex::cells_of_dim(int k) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n_; ++i)
    if (cells_[i].dim == k) out.push_back(i);
  return out;
}

std::vector<std::size_t> CellComplex::f_vector() const {
  std::vector<std::size_t> f(static_cast<std::size_t>(dimension() + 1), 0);
  for (std::size_t i = 0; i < n_; ++i) ++f[static_cast<std::size_t>(cells_[i].dim)];
  return f;
}

int CellComplex::sign(std::size_t lo, std::size_t hi) const {
  for (std::size_t c : poset_plus_.up_covers(lo))
    if (covers_[c].hi == hi) return covers_[c].sign;
  return 0;
}

std::string CellComplex::describe(std::size_t i) const {
  return cells_.at(i).id + " (dim " + std::to_string(cells_.at(i).dim) + ")";
}

Report validate(const CellComplex& x) {
  Report r;
  const auto& cells = x.cells_plus();
  const auto& covers = x.incidences_plus();
  bool structural = true;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const Incidence& c : covers) {
    const std::string& lo = cells[c.lo].id;
    const std::string& hi = cells[c.hi].id;
    if (cells[c.hi].dim != cells[c.lo].dim + 1) {
      r.add("cover-dimension", {lo, hi}, "cover does not raise dimension by exactly one");
      structural = false;
    }
    if (c.sign != 1 && c.sign != -1) {
      r.add("sign", {lo, hi}, "incidence number " + std::to_string(c.sign) + " is not +1 or -1");
    }
    if (!seen.emplace(c.lo, c.hi).second) {
      r.add("duplicate-cover", {lo, hi}, "cover listed more than once");
      structural = false;
    }
  }
  if (!x.acyclic()) {
    r.add("cycle", {}, "covering relation is not acyclic");
    structural = false;
  }
  if (x.has_infinity() && cells[x.infinity()].dim != 0) {
    r.add("infinity", {cells[x.infinity()].id}, "point at infinity must be a vertex");
  }
  if (!structural) return r;

  const Poset& p = x.poset_plus();
  for (std::size_t tau = 0; tau < cells.size(); ++tau) {
    std::size_t facets = p.down_covers(tau).size();
    if (cells[tau].dim == 1 && facets != 2) {
      r.add("regularity", {cells[tau].id}, "1-cell has " + std::to_string(facets) + " vertex faces, expected 2");
    } else if (cells[tau].dim > 1 && facets == 0) {
      r.add("regularity", {cells[tau].id}, "cell of positive dimension has no faces");
    }
    std::map<std::size_t, std::pair<int, int>> diamonds;  // gamma -> (count, sum of sign products)
    for (std::size_t c1 : p.down_covers(tau)) {
      std::size_t lambda = covers[c1].lo;
      for (std::size_t c2 : p.down_covers(lambda)) {
        auto& d = diamonds[covers[c2].lo];
        d.first += 1;
        d.second += covers[c2].sign * covers[c1].sign;
      }
    }
    for (const auto& [gamma, d] : diamonds) {
      if (d.first != 2) {
        r.add("diamond", {cells[gamma].id, cells[tau].id},
              std::to_string(d.first) + " cells between a codimension-2 pair, expected 2");
      }
      if (d.second != 0) {
        r.add("sign-condition", {cells[gamma].id, cells[tau].id},
              "sum of incidence products is " + std::to_string(d.second) + ", expected 0");
      }
    }
  }
  return r;
}

std::vector<std::size_t> closure(const CellComplex& x, std::size_t sigma) {
  if (sigma >= x.size()) throw UnknownCell("#" + std::to_string(sigma));
  return x.poset().down_set(sigma);
}

std::vector<std::size_t> open_star(const CellComplex& x, std::size_t sigma) {
  if (sigma >= x.size()) throw UnknownCell("#" + std::to_string(sigma));
  return x.poset().up_set(sigma);
}

bool has_compact_closure(const CellComplex& x, std::size_t sigma) {
  if (sigma >= x.size()) throw UnknownCell("#" + std::to_string(sigma));
  return !x.has_infinity() || !x.poset_plus().leq(x.infinity(), sigma);
}

Report validate(const PosetMap& f) {
  Report r;
  if (!f.source || !f.target) {
    r.add("map", {}, "missing source or target");
    return r;
  }
  if (f.assignment.size() != f.source->size()) {
    r.add("map", {}, "assignment has " + std::to_string(f.assignment.size()) + " entries, source has " +
                         std::to_string(f.source->size()) + " cells");
    return r;
  }
  for (std::size_t i = 0; i < f.assignment.size(); ++i) {
    if (f.assignment[i] >= f.target->size()) {
      r.add("map", {f.source->id(i)}, "image is not a cell of the target");
      return r;
    }
  }
  const Poset& p = f.source->poset();
  for (const Cover& c : p.covers()) {
    if (!f.target->poset().leq(f(c.lo), f(c.hi))) {
      r.add("order", {f.source->id(c.lo), f.source->id(c.hi)},
            "images " + f.target->id(f(c.lo)) + ", " + f.target->id(f(c.hi)) + " are not ordered");
    }
  }
  return r;
}

bool is_surjective(const PosetMap& f) {
  std::vector<bool> hit(f.target->size(), false);
  for (std::size_t y : f.assignment) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

PosetMap identity_map(const ComplexPtr& x) {
  std::vector<std::size_t> a(x->size());
  std::iota(a.begin(), a.end(), std::size_t{0});
  return {x, x, std::move(a)};
}

PosetMap compose(const PosetMap& g, const PosetMap& f) {
  if (f.target.get() != g.source.get() && f.target->size() != g.source->size()) {
    throw std::invalid_argument("cannot compose poset maps with mismatched middle complex");
  }
  std::vector<std::size_t> a;
  for (std::size_t y : f.assignment) a.push_back(g(y));
  return {f.source, g.target, std::move(a)};
}

namespace {
ComplexPtr point_complex() {
  static const ComplexPtr pt = share(CellComplex({Cell{"pt", 0, ""}}, {}, std::nullopt));
  return pt;
}
}  // namespace

PosetMap to_point(const ComplexPtr& x) { return {x, point_complex(), std::vector<std::size_t>(x->size(), 0)}; }

PosetMap point_inclusion(const ComplexPtr& x, std::size_t sigma) {
  if (sigma >= x->size()) throw UnknownCell("#" + std::to_string(sigma));
  return {point_complex(), x, {sigma}};
}

Subcomplex restrict_to(const ComplexPtr& x, const std::vector<std::size_t>& keep) {
  std::vector<std::ptrdiff_t> slot(x->size(), -1);
  std::vector<Cell> cells;
  for (std::size_t i : keep) {
    slot[i] = static_cast<std::ptrdiff_t>(cells.size());
    cells.push_back(x->cell(i));
  }
  std::vector<Incidence> covers;
  for (std::size_t c = 0; c < x->num_covers(); ++c) {
    const Incidence& inc = x->incidence(c);
    if (slot[inc.lo] >= 0 && slot[inc.hi] >= 0)
      covers.push_back({static_cast<std::size_t>(slot[inc.lo]), static_cast<std::size_t>(slot[inc.hi]), inc.sign});
  }
  auto sub = share(CellComplex(std::move(cells), std::move(covers), std::nullopt));
  return {sub, PosetMap{sub, x, keep}};
}

Subcomplex compact_subcomplex(const ComplexPtr& x) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < x->size(); ++i)
    if (has_compact_closure(*x, i)) keep.push_back(i);
  return restrict_to(x, keep);
}

CellComplex simplicial(const std::vector<std::string>& vertices, const std::vector<std::vector<std::string>>& facets) {
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!pos.emplace(vertices[i], i).second) throw std::invalid_argument("duplicate vertex '" + vertices[i] + "'");
  auto by_size = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  };
  std::set<std::vector<std::size_t>, decltype(by_size)> faces(by_size);
  for (std::size_t v = 0; v < vertices.size(); ++v) faces.insert({v});
  for (const auto& facet : facets) {
    std::vector<std::size_t> s;
    for (const std::string& v : facet) {
      auto it = pos.find(v);
      if (it == pos.end()) throw UnknownCell(v);
      s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw std::invalid_argument("duplicate vertex in a facet");
    if (s.empty() || s.size() > 20) throw std::invalid_argument("facet size out of range");
    for (std::uint32_t mask = 1; mask < (1u << s.size()); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t k = 0; k < s.size(); ++k)
        if (mask & (1u << k)) face.push_back(s[k]);
      faces.insert(std::move(face));
    }
  }
  std::vector<Cell> cells;
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (const auto& f : faces) {
    std::string id;
    for (std::size_t k = 0; k < f.size(); ++k) id += (k ? "," : "") + vertices[f[k]];
    index[f] = cells.size();
    cells.push_back({id, static_cast<int>(f.size()) - 1, ""});
  }
  std::vector<Incidence> covers;
  for (const auto& f : faces) {
    if (f.size() < 2) continue;
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::vector<std::size_t> g = f;
      g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
      covers.push_back({index.at(g), index.at(f), i % 2 == 0 ? 1 : -1});
    }
  }
  return CellComplex(std::move(cells), std::move(covers), std::nullopt);
}

Subdivision barycentric_subdivision(const ComplexPtr& x) {
  if (x->has_infinity()) throw std::invalid_argument("barycentric subdivision needs a compact complex");
  const Poset& p = x->poset();
  std::vector<std::vector<std::size_t>> chains;
  std::function<void(std::vector<std::size_t>&)> extend = [&](std::vector<std::size_t>& chain) {
    chains.push_back(chain);
    for (std::size_t y = 0; y < x->size(); ++y) {
      if (p.less(chain.back(), y)) {
        chain.push_back(y);
        extend(chain);
        chain.pop_back();
      }
    }
  };
  for (std::size_t a = 0; a < x->size(); ++a) {
    std::vector<std::size_t> chain{a};
    extend(chain);
  }
  std::stable_sort(chains.begin(), chains.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::map<std::vector<std::size_t>, std::size_t> index;
  std::vector<Cell> cells;
  std::vector<std::size_t> top;
  for (const auto& ch : chains) {
    std::string id;
    for (std::size_t k = 0; k < ch.size(); ++k) id += (k ? "<" : "") + x->id(ch[k]);
    index[ch] = cells.size();
    cells.push_back({id, static_cast<int>(ch.size()) - 1, ""});
    top.push_back(ch.back());
  }
  std::vector<Incidence> covers;
  for (const auto& ch : chains) {
    if (ch.size() < 2) continue;
    for (std::size_t i = 0; i < ch.size(); ++i) {
      std::vector<std::size_t> g = ch;
      g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
      covers.push_back({index.at(g), index.at(ch), i % 2 == 0 ? 1 : -1});
    }
  }
  auto sub = share(CellComplex(std::move(cells), std::move(covers), std::nullopt));
  return {sub, PosetMap{sub, x, std::move(top)}};
}

Report validate_subdivision(const PosetMap& s) {
  Report r = validate(s);
  if (r.ok() && !is_surjective(s)) r.add("subdivision", {}, "map is not surjective");
  return r;
}

Report manifold_check(const CellComplex& x, int n) {
  Report r;
  r.notes.push_back("purity, pseudomanifold and connectivity are necessary conditions only");
  const Poset& p = x.poset();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.dim(i) > n) {
      r.add("purity", {x.id(i)}, "cell of dimension " + std::to_string(x.dim(i)) + " exceeds " + std::to_string(n));
    } else if (p.up_covers(i).empty() && x.dim(i) != n) {
      r.add("purity", {x.id(i)}, "maximal cell of dimension " + std::to_string(x.dim(i)));
    }
  }
  std::vector<std::size_t> top = x.cells_of_dim(n);
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t k = 0; k < top.size(); ++k) slot[top[k]] = k;
  std::vector<std::size_t> parent(top.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> root = [&](std::size_t a) {
    return parent[a] == a ? a : parent[a] = root(parent[a]);
  };
  for (std::size_t i : x.cells_of_dim(n - 1)) {
    std::vector<std::size_t> cof;
    for (std::size_t c : p.up_covers(i)) cof.push_back(p.cover(c).hi);
    if (cof.size() != 2) {
      r.add("pseudomanifold", {x.id(i)},
            "(n-1)-cell is a face of " + std::to_string(cof.size()) + " n-cells, expected 2");
    }
    for (std::size_t k = 1; k < cof.size(); ++k) parent[root(slot[cof[k]])] = root(slot[cof[0]]);
  }
  std::set<std::size_t> comps;
  for (std::size_t k = 0; k < top.size(); ++k) comps.insert(root(k));
  if (top.empty()) {
    r.add("purity", {}, "no cells of dimension " + std::to_string(n));
  } else if (comps.size() > 1) {
    r.add("connectivity", {}, "top cells form " + std::to_string(comps.size()) + " components");
  }
  return r;
}

CellComplex dual_structure(const CellComplex& x, int n, bool assume_manifold) {
  if (x.has_infinity()) throw std::invalid_argument("dual cell structure needs a compact complex");
  if (!assume_manifold) {
    Report r = manifold_check(x, n);
    if (!r.ok()) throw std::invalid_argument("manifold check failed:\n" + r.to_string());
  }
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < x.size(); ++i) cells.push_back({x.id(i) + "~", n - x.dim(i), x.cell(i).label});
  std::vector<Incidence> covers;
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& inc = x.incidence(c);
    covers.push_back({inc.hi, inc.lo, inc.sign});
  }
  return CellComplex(std::move(cells), std::move(covers), std::nullopt);
}

CellComplex product(const CellComplex& x, const CellComplex& y) {
  if (x.has_infinity() || y.has_infinity()) throw std::invalid_argument("product needs compact complexes");
  const std::size_t ny = y.size();
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < ny; ++j) cells.push_back({x.id(i) + "*" + y.id(j), x.dim(i) + y.dim(j), ""});
  std::vector<Incidence> covers;
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& inc = x.incidence(c);
    for (std::size_t j = 0; j < ny; ++j) covers.push_back({inc.lo * ny + j, inc.hi * ny + j, inc.sign});
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    int s = x.dim(i) % 2 == 0 ? 1 : -1;
    for (std::size_t c = 0; c < y.num_covers(); ++c) {
      const Incidence& inc = y.incidence(c);
      covers.push_back({i * ny + inc.lo, i * ny + inc.hi, s * inc.sign});
    }
  }
  return CellComplex(std::move(cells), std::move(covers), std::nullopt);
}

}  // namespace sheafkit
