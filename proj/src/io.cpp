#include "sheafkit/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sheafkit {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kComplexFormat = "sheafkit-complex/1";
constexpr const char* kObjectFormat = "sheafkit-sheaf/1";
constexpr const char* kMapFormat = "sheafkit-map/1";
constexpr const char* kCplxFormat = "sheafkit-cplx/1";

std::string member(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }
std::string element(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

struct Reader {
  std::string source;

  [[noreturn]] void fail(const std::string& where, const std::string& message) const {
    throw ParseError(source, where.empty() ? "top level" : where, message);
  }

  json parse(std::string_view text) const {
    try {
      return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      std::size_t line = 1, column = 1;
      for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      std::string msg = e.what();
      if (auto k = msg.find("] "); msg.starts_with("[") && k != std::string::npos) msg = msg.substr(k + 2);
      if (auto k = msg.find(": "); msg.starts_with("parse error") && k != std::string::npos) msg = msg.substr(k + 2);
      throw ParseError(source, "line " + std::to_string(line) + ", column " + std::to_string(column), msg);
    }
  }

  const json& get(const json& j, const std::string& key, const std::string& where) const {
    if (!j.is_object()) fail(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(where, "missing field '" + key + "'");
    return *it;
  }

  const json* find(const json& j, const std::string& key) const {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
  }

  std::string string(const json& j, const std::string& where) const {
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
  }

  long long integer(const json& j, const std::string& where) const {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<long long>();
  }

  const json& array(const json& j, const std::string& where) const {
    if (!j.is_array()) fail(where, "expected an array");
    return j;
  }

  const json& object(const json& j, const std::string& where) const {
    if (!j.is_object()) fail(where, "expected an object");
    return j;
  }

  void expect_format(const json& j, const char* format) const {
    std::string f = string(get(j, "format", ""), "format");
    if (f != format) fail("format", "expected \"" + std::string(format) + "\", found \"" + f + "\"");
  }

  template <class S>
  S scalar(const json& j, const std::string& where) const {
    try {
      if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
      if (j.is_number_integer()) return parse_scalar<S>(std::to_string(j.get<long long>()));
    } catch (const std::exception& e) {
      fail(where, e.what());
    }
    fail(where, "expected an exact scalar (integer or \"p/q\" string)");
  }

  template <class S>
  Mat<S> matrix(const json& j, Index rows, Index cols, const std::string& where) const {
    array(j, where);
    if (static_cast<Index>(j.size()) != rows)
      fail(where, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
    Mat<S> m = zeros<S>(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      const std::string wr = element(where, static_cast<std::size_t>(r));
      const json& row = array(j[static_cast<std::size_t>(r)], wr);
      if (static_cast<Index>(row.size()) != cols)
        fail(wr, "expected " + std::to_string(cols) + " entries, found " + std::to_string(row.size()));
      for (Index c = 0; c < cols; ++c) m(r, c) = scalar<S>(row[static_cast<std::size_t>(c)], element(wr, static_cast<std::size_t>(c)));
    }
    return m;
  }

  std::size_t cell(const CellComplex& x, const json& j, const std::string& where) const {
    std::string id = string(j, where);
    auto i = x.find(id);
    if (!i || *i >= x.size()) fail(where, "unknown cell '" + id + "'");
    return *i;
  }

  Variance kind(const json& j) const {
    std::string k = string(get(j, "kind", ""), "kind");
    if (k == "sheaf") return Variance::sheaf;
    if (k == "cosheaf") return Variance::cosheaf;
    fail("kind", "expected \"sheaf\" or \"cosheaf\", found \"" + k + "\"");
  }

  template <class S, Variance V>
  Cellular<S, V> object(const json& j, const ComplexPtr& x, const std::string& where) const {
    const CellComplex& cx = *x;
    std::vector<Index> dims(cx.size(), -1);
    const std::string ws = member(where, "stalks");
    const json& stalks = object(get(j, "stalks", where), ws);
    for (const auto& [id, value] : stalks.items()) {
      const std::string wi = member(ws, id);
      auto i = cx.find(id);
      if (!i || *i >= cx.size()) fail(wi, "unknown cell '" + id + "'");
      long long d = integer(value, wi);
      if (d < 0) fail(wi, "negative stalk dimension");
      dims[*i] = static_cast<Index>(d);
    }
    for (std::size_t i = 0; i < cx.size(); ++i)
      if (dims[i] < 0) fail(ws, "no stalk dimension for cell '" + cx.id(i) + "'");

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> cover;
    for (std::size_t c = 0; c < cx.num_covers(); ++c) cover[{cx.incidence(c).lo, cx.incidence(c).hi}] = c;
    auto shape = [&](std::size_t c) {
      const Incidence& in = cx.incidence(c);
      return V == Variance::sheaf ? std::pair{dims[in.hi], dims[in.lo]} : std::pair{dims[in.lo], dims[in.hi]};
    };
    std::vector<std::optional<Mat<S>>> maps(cx.num_covers());
    const std::string wm = member(where, "maps");
    const json* jm = find(j, "maps");
    if (jm) {
      array(*jm, wm);
      for (std::size_t k = 0; k < jm->size(); ++k) {
        const std::string wk = element(wm, k);
        const json& e = object((*jm)[k], wk);
        std::size_t lo = cell(cx, get(e, "lo", wk), member(wk, "lo"));
        std::size_t hi = cell(cx, get(e, "hi", wk), member(wk, "hi"));
        auto it = cover.find({lo, hi});
        if (it == cover.end()) fail(wk, cx.id(lo) + " < " + cx.id(hi) + " is not a cover");
        if (maps[it->second]) fail(wk, "second matrix for the cover " + cx.id(lo) + " < " + cx.id(hi));
        auto [rows, cols] = shape(it->second);
        maps[it->second] = matrix<S>(get(e, "entries", wk), rows, cols, member(wk, "entries"));
      }
    }
    std::vector<Mat<S>> out;
    for (std::size_t c = 0; c < cx.num_covers(); ++c) {
      auto [rows, cols] = shape(c);
      if (!maps[c]) {
        if (rows * cols != 0)
          fail(wm, "no matrix for the cover " + cx.id(cx.incidence(c).lo) + " < " + cx.id(cx.incidence(c).hi));
        maps[c] = zeros<S>(rows, cols);
      }
      out.push_back(std::move(*maps[c]));
    }
    return make_object<S, V>(x, std::move(dims), std::move(out));
  }
};

template <class S>
json matrix_json(const Mat<S>& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S, Variance V>
json object_body(const Cellular<S, V>& f) {
  const CellComplex& x = *f.base;
  json j;
  json stalks = json::object();
  for (std::size_t i = 0; i < x.size(); ++i) stalks[x.id(i)] = f.dim(i);
  j["stalks"] = std::move(stalks);
  json maps = json::array();
  for (std::size_t c = 0; c < x.num_covers(); ++c) {
    const Incidence& in = x.incidence(c);
    maps.push_back({{"lo", x.id(in.lo)}, {"hi", x.id(in.hi)}, {"entries", matrix_json(f.map(c))}});
  }
  j["maps"] = std::move(maps);
  return j;
}

// Like dump(2), but arrays of scalars and small flat objects stay on one line.
void pretty(const json& j, std::string& out, int indent) {
  auto pad = [&](int n) { out.append(static_cast<std::size_t>(n), ' '); };
  auto flat = [](const json& a) {
    for (const auto& e : a)
      if (e.is_structured()) return false;
    return true;
  };
  if (j.is_object() && indent > 0 && j.size() <= 4 && flat(j)) {
    out += "{";
    std::size_t k = 0;
    for (const auto& [key, v] : j.items()) out += (k++ ? ", " : "") + json(key).dump() + ": " + v.dump();
    out += "}";
  } else if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (const auto& [key, v] : j.items()) {
      pad(indent + 2);
      out += json(key).dump() + ": ";
      pretty(v, out, indent + 2);
      out += ++k < j.size() ? ",\n" : "\n";
    }
    pad(indent);
    out += "}";
  } else if (j.is_array() && !j.empty() && !flat(j)) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      pad(indent + 2);
      pretty(j[k], out, indent + 2);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    pad(indent);
    out += "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t k = 0; k < j.size(); ++k) out += (k ? ", " : "") + j[k].dump();
    out += "]";
  } else {
    out += j.dump();
  }
}

std::string render(const json& j) {
  std::string out;
  pretty(j, out, 0);
  return out + "\n";
}

fs::path resolve(const fs::path& file, const std::string& ref) {
  fs::path p(ref);
  if (p.is_absolute()) return p;
  return file.parent_path() / p;
}

std::string key(const fs::path& p) { return fs::weakly_canonical(p).string(); }

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "file", "cannot be read");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string complex_to_text(const CellComplex& x) {
  json j;
  j["format"] = kComplexFormat;
  json cells = json::array();
  for (const Cell& c : x.cells_plus()) {
    json e = {{"id", c.id}, {"dim", c.dim}};
    if (!c.label.empty()) e["label"] = c.label;
    cells.push_back(std::move(e));
  }
  j["cells"] = std::move(cells);
  json covers = json::array();
  for (const Incidence& in : x.incidences_plus())
    covers.push_back({{"lo", x.cell(in.lo).id}, {"hi", x.cell(in.hi).id}, {"sign", in.sign}});
  j["covers"] = std::move(covers);
  if (x.has_infinity()) j["infinity"] = x.cell(x.infinity()).id;
  return render(j);
}

CellComplex complex_from_text(std::string_view text, const std::string& source) {
  Reader rd{source};
  json j = rd.parse(text);
  rd.object(j, "");
  rd.expect_format(j, kComplexFormat);
  std::vector<Cell> cells;
  std::set<std::string> ids;
  const json& jc = rd.array(rd.get(j, "cells", ""), "cells");
  for (std::size_t i = 0; i < jc.size(); ++i) {
    const std::string w = element("cells", i);
    const json& e = rd.object(jc[i], w);
    Cell c;
    c.id = rd.string(rd.get(e, "id", w), member(w, "id"));
    if (c.id.empty()) rd.fail(member(w, "id"), "empty cell id");
    if (!ids.insert(c.id).second) rd.fail(member(w, "id"), "duplicate cell id '" + c.id + "'");
    long long d = rd.integer(rd.get(e, "dim", w), member(w, "dim"));
    if (d < 0) rd.fail(member(w, "dim"), "negative dimension");
    c.dim = static_cast<int>(d);
    if (const json* l = rd.find(e, "label")) c.label = rd.string(*l, member(w, "label"));
    cells.push_back(std::move(c));
  }
  std::optional<std::string> infinity;
  if (const json* inf = rd.find(j, "infinity")) {
    infinity = rd.string(*inf, "infinity");
    if (!ids.count(*infinity)) {
      cells.push_back({*infinity, 0, ""});
      ids.insert(*infinity);
    }
  }
  std::vector<CellComplex::IdCover> covers;
  const json& jv = rd.array(rd.get(j, "covers", ""), "covers");
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const std::string w = element("covers", i);
    const json& e = rd.object(jv[i], w);
    CellComplex::IdCover c;
    c.lo = rd.string(rd.get(e, "lo", w), member(w, "lo"));
    c.hi = rd.string(rd.get(e, "hi", w), member(w, "hi"));
    if (!ids.count(c.lo)) rd.fail(member(w, "lo"), "unknown cell '" + c.lo + "'");
    if (!ids.count(c.hi)) rd.fail(member(w, "hi"), "unknown cell '" + c.hi + "'");
    c.sign = static_cast<int>(rd.integer(rd.get(e, "sign", w), member(w, "sign")));
    covers.push_back(std::move(c));
  }
  try {
    return CellComplex::from_ids(std::move(cells), covers, infinity);
  } catch (const std::exception& e) {
    rd.fail("", e.what());
  }
}

template <class S, Variance V>
std::string object_to_text(const Cellular<S, V>& f, const std::string& complex_ref) {
  json j;
  j["format"] = kObjectFormat;
  j["kind"] = to_string(V);
  j["field"] = current_field<S>().to_string();
  j["complex"] = complex_ref;
  json body = object_body(f);
  for (auto& [k, v] : body.items()) j[k] = v;
  return render(j);
}

template <class S, Variance V>
Cellular<S, V> object_from_text(std::string_view text, const ComplexPtr& x, const std::string& source) {
  Reader rd{source};
  json j = rd.parse(text);
  rd.object(j, "");
  rd.expect_format(j, kObjectFormat);
  if (rd.kind(j) != V) rd.fail("kind", std::string("expected a ") + to_string(V));
  return rd.object<S, V>(j, x, "");
}

template <class S, Variance V>
std::string complex_object_to_text(const CellularComplex<S, V>& c, const std::string& complex_ref) {
  const CellComplex& x = *c.base;
  json j;
  j["format"] = kCplxFormat;
  j["kind"] = to_string(V);
  j["field"] = current_field<S>().to_string();
  j["complex"] = complex_ref;
  j["lo"] = c.data.lo;
  json terms = json::array();
  for (int n = c.data.lo; n <= c.data.hi(); ++n) terms.push_back(object_body(Cellular<S, V>{c.base, c.data.term(n)}));
  j["terms"] = std::move(terms);
  json diffs = json::array();
  for (int n = c.data.lo; n < c.data.hi(); ++n) {
    Morphism<S> d = c.data.d(n);
    json comp = json::object();
    for (std::size_t i = 0; i < x.size(); ++i) comp[x.id(i)] = matrix_json(d.at[i]);
    diffs.push_back({{"components", std::move(comp)}});
  }
  j["differentials"] = std::move(diffs);
  return render(j);
}

std::string map_to_text(const PosetMap& f, const std::string& source_ref, const std::string& target_ref) {
  json j;
  j["format"] = kMapFormat;
  j["source"] = source_ref;
  j["target"] = target_ref;
  json a = json::object();
  for (std::size_t i = 0; i < f.source->size(); ++i) a[f.source->id(i)] = f.target->id(f(i));
  j["assignment"] = std::move(a);
  return render(j);
}

void Workspace::add(const fs::path& path, ComplexPtr x) { complexes_[key(path)] = std::move(x); }

std::optional<fs::path> Workspace::path_of(const ComplexPtr& x) const {
  for (const auto& [k, v] : complexes_)
    if (v == x) return fs::path(k);
  return std::nullopt;
}

ComplexPtr Workspace::complex(const fs::path& path) {
  std::string k = key(path);
  if (auto it = complexes_.find(k); it != complexes_.end()) return it->second;
  ComplexPtr x = share(complex_from_text(read_file(path), path.string()));
  complexes_[k] = x;
  return x;
}

std::string Workspace::format(const fs::path& path) {
  Reader rd{path.string()};
  json j = rd.parse(read_file(path));
  return rd.string(rd.get(j, "format", ""), "format");
}

Variance Workspace::kind(const fs::path& path) {
  Reader rd{path.string()};
  return rd.kind(rd.parse(read_file(path)));
}

std::optional<FieldSpec> Workspace::field(const fs::path& path) {
  Reader rd{path.string()};
  json j = rd.parse(read_file(path));
  const json* f = rd.find(rd.object(j, ""), "field");
  if (!f) return std::nullopt;
  try {
    return FieldSpec::parse(rd.string(*f, "field"));
  } catch (const std::invalid_argument& e) {
    rd.fail("field", e.what());
  }
}

fs::path Workspace::complex_path(const fs::path& path) {
  Reader rd{path.string()};
  json j = rd.parse(read_file(path));
  rd.object(j, "");
  const char* field = rd.find(j, "complex") ? "complex" : "source";
  return resolve(path, rd.string(rd.get(j, field, ""), field));
}

template <class S, Variance V>
Cellular<S, V> Workspace::object(const fs::path& path) {
  std::string text = read_file(path);
  ComplexPtr x = complex(complex_path(path));
  return object_from_text<S, V>(text, x, path.string());
}

template <class S, Variance V>
CellularComplex<S, V> Workspace::object_complex(const fs::path& path) {
  Reader rd{path.string()};
  json j = rd.parse(read_file(path));
  rd.object(j, "");
  rd.expect_format(j, kCplxFormat);
  if (rd.kind(j) != V) rd.fail("kind", std::string("expected a complex of ") + to_string(V) + "s");
  ComplexPtr x = complex(resolve(path, rd.string(rd.get(j, "complex", ""), "complex")));
  int lo = static_cast<int>(rd.integer(rd.get(j, "lo", ""), "lo"));
  CellularComplex<S, V> out{x, {}};
  out.data.poset = poset_of<V>(x);
  out.data.lo = lo;
  const json& terms = rd.array(rd.get(j, "terms", ""), "terms");
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string w = element("terms", k);
    if (terms[k].is_string()) {
      fs::path p = resolve(path, terms[k].get<std::string>());
      Cellular<S, V> t = object<S, V>(p);
      if (t.base != x) rd.fail(w, p.string() + " lives on a different complex");
      out.data.terms.push_back(std::move(t.data));
    } else {
      out.data.terms.push_back(rd.object<S, V>(terms[k], x, w).data);
    }
  }
  const json* jd = rd.find(j, "differentials");
  std::size_t nd = jd ? rd.array(*jd, "differentials").size() : 0;
  if (!terms.empty() && nd != terms.size() - 1)
    rd.fail("differentials", "expected " + std::to_string(terms.size() - 1) + " differentials, found " + std::to_string(nd));
  for (std::size_t k = 0; k < nd; ++k) {
    const std::string w = element("differentials", k);
    const json& comp = rd.object(rd.get((*jd)[k], "components", w), member(w, "components"));
    std::vector<std::optional<Mat<S>>> at(x->size());
    for (const auto& [id, m] : comp.items()) {
      const std::string wi = member(member(w, "components"), id);
      auto i = x->find(id);
      if (!i || *i >= x->size()) rd.fail(wi, "unknown cell '" + id + "'");
      at[*i] = rd.matrix<S>(m, out.data.terms[k + 1].dims[*i], out.data.terms[k].dims[*i], wi);
    }
    Morphism<S> d;
    for (std::size_t i = 0; i < x->size(); ++i) {
      Index rows = out.data.terms[k + 1].dims[i], cols = out.data.terms[k].dims[i];
      if (!at[i]) {
        if (rows * cols != 0) rd.fail(member(w, "components"), "no component at cell '" + x->id(i) + "'");
        at[i] = zeros<S>(rows, cols);
      }
      d.at.push_back(std::move(*at[i]));
    }
    out.data.diffs.push_back(std::move(d));
  }
  return out;
}

PosetMap Workspace::map(const fs::path& path) {
  Reader rd{path.string()};
  json j = rd.parse(read_file(path));
  rd.object(j, "");
  rd.expect_format(j, kMapFormat);
  ComplexPtr src = complex(resolve(path, rd.string(rd.get(j, "source", ""), "source")));
  ComplexPtr tgt = complex(resolve(path, rd.string(rd.get(j, "target", ""), "target")));
  std::vector<long long> a(src->size(), -1);
  const json& ja = rd.object(rd.get(j, "assignment", ""), "assignment");
  for (const auto& [id, value] : ja.items()) {
    const std::string w = member("assignment", id);
    auto i = src->find(id);
    if (!i || *i >= src->size()) rd.fail(w, "unknown source cell '" + id + "'");
    a[*i] = static_cast<long long>(rd.cell(*tgt, value, w));
  }
  PosetMap f{src, tgt, {}};
  for (std::size_t i = 0; i < src->size(); ++i) {
    if (a[i] < 0) rd.fail("assignment", "no image for cell '" + src->id(i) + "'");
    f.assignment.push_back(static_cast<std::size_t>(a[i]));
  }
  return f;
}

#define SHEAFKIT_INSTANTIATE_IO_V(S, V)                                                                       \
  template std::string object_to_text(const Cellular<S, V>&, const std::string&);                             \
  template Cellular<S, V> object_from_text<S, V>(std::string_view, const ComplexPtr&, const std::string&);    \
  template std::string complex_object_to_text(const CellularComplex<S, V>&, const std::string&);              \
  template Cellular<S, V> Workspace::object<S, V>(const fs::path&);                                           \
  template CellularComplex<S, V> Workspace::object_complex<S, V>(const fs::path&);

#define SHEAFKIT_INSTANTIATE_IO(S)                   \
  SHEAFKIT_INSTANTIATE_IO_V(S, Variance::sheaf)      \
  SHEAFKIT_INSTANTIATE_IO_V(S, Variance::cosheaf)

SHEAFKIT_INSTANTIATE_IO(Rational)
SHEAFKIT_INSTANTIATE_IO(ModP)

}  // namespace sheafkit
