// sheafkit: command-line front end.
//
// Exit codes: 0 success, 1 a mathematical check failed, 2 invalid input.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sheafkit/coend.hpp"
#include "sheafkit/corpus.hpp"
#include "sheafkit/duality.hpp"
#include "sheafkit/functors.hpp"
#include "sheafkit/homology.hpp"
#include "sheafkit/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace sheafkit;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInvalid = 2;

struct Options {
  bool json_output = false;
  std::string field;
  bool assume_manifold = false;
};

// One command's output: a structured report and its human rendering.
struct Output {
  json report = json::object();
  std::ostringstream text;
  int code = kOk;

  void fail() { code = kCheckFailed; }
  int emit(bool as_json) {
    report["ok"] = code == kOk;
    if (as_json) {
      std::cout << report.dump(2) << "\n";
    } else {
      std::cout << text.str();
    }
    return code;
  }
};

json dims_json(const GradedDims& d) {
  json j = json::object();
  for (const auto& [n, v] : d) j[std::to_string(n)] = v;
  return j;
}

long long euler(const GradedDims& d) {
  long long chi = 0;
  for (const auto& [n, v] : d) chi += (n % 2 == 0 ? 1 : -1) * v;
  return chi;
}

json report_json(const Report& r) {
  json issues = json::array();
  for (const auto& i : r.issues) issues.push_back({{"kind", i.kind}, {"cells", i.cells}, {"message", i.message}});
  return {{"ok", r.ok()}, {"issues", issues}, {"notes", r.notes}};
}

// The field to compute over: --field, then SHEAFKIT_FIELD, then the field the
// input file declares, then q.
FieldSpec pick_field(const Options& o, Workspace& ws, const std::optional<fs::path>& file) {
  if (!o.field.empty()) return FieldSpec::parse(o.field);
  if (const char* env = std::getenv("SHEAFKIT_FIELD"); env && *env) return FieldSpec::parse(env);
  if (file) {
    if (auto f = ws.field(*file)) return *f;
  }
  return FieldSpec::rational();
}

std::string reference(const fs::path& target, const fs::path& from_file) {
  fs::path dir = from_file.parent_path();
  if (dir.empty()) dir = ".";
  return fs::relative(fs::weakly_canonical(target), fs::weakly_canonical(dir)).generic_string();
}

void theory_line(Output& out, const std::string& name, const GradedDims& d, bool homological) {
  out.text << "  " << name << ":";
  if (d.empty()) out.text << " all zero";
  for (const auto& [n, v] : d) out.text << "  " << (homological ? "H_" : "H^") << n << " = " << v;
  out.text << "   (euler " << euler(d) << ")\n";
  out.report["theories"].push_back(
      {{"theory", name}, {"homological", homological}, {"dims", dims_json(d)}, {"euler", euler(d)}});
}

void header(Output& out, const std::string& command, const FieldSpec& field, const std::string& input) {
  out.report["command"] = command;
  out.report["field"] = field.to_string();
  out.report["input"] = input;
  out.report["theories"] = json::array();
  out.text << command << " " << input << " over " << field.to_string() << "\n";
}

// ---------------------------------------------------------------------------

int cmd_validate(const Options& o, const std::vector<std::string>& paths) {
  Workspace ws;
  Output out;
  out.report["command"] = "validate";
  out.report["files"] = json::array();
  for (const std::string& p : paths) {
    std::string format = ws.format(p);
    Report r;
    if (format == "sheafkit-complex/1") {
      r = validate(*ws.complex(p));
    } else if (format == "sheafkit-map/1") {
      r = validate(ws.map(p));
    } else if (format == "sheafkit-sheaf/1" || format == "sheafkit-cplx/1") {
      FieldSpec field = pick_field(o, ws, fs::path(p));
      bool sheaf = ws.kind(p) == Variance::sheaf;
      bool cplx = format == "sheafkit-cplx/1";
      r = validate(*ws.complex(ws.complex_path(p)));
      if (r.ok()) {
        r = with_field(field, [&]<class S>() -> Report {
          auto check_cplx = [&]<Variance V>() {
            CellularComplex<S, V> c = ws.object_complex<S, V>(p);
            Report rep;
            for (int n = c.data.lo; n <= c.data.hi(); ++n) {
              Report t = validate(Cellular<S, V>{c.base, c.data.term(n)});
              for (auto& i : t.issues) rep.add(i.kind, i.cells, "term " + std::to_string(n) + ": " + i.message);
            }
            for (int n = c.data.lo; n < c.data.hi(); ++n)
              if (auto bad = morphism_violation(c.data.term(n), c.data.term(n + 1), c.data.d(n)))
                rep.add("morphism", {c.base->id(c.base->incidence(*bad).lo), c.base->id(c.base->incidence(*bad).hi)},
                        "differential " + std::to_string(n) + " is not natural");
            if (auto bad = square_violation(c.data))
              rep.add("d-squared", {c.base->id(bad->second)}, "d o d != 0 from degree " + std::to_string(bad->first));
            return rep;
          };
          if (cplx) return sheaf ? check_cplx.template operator()<Variance::sheaf>()
                                 : check_cplx.template operator()<Variance::cosheaf>();
          return sheaf ? validate(ws.object<S, Variance::sheaf>(p)) : validate(ws.object<S, Variance::cosheaf>(p));
        });
      }
    } else {
      throw ParseError(p, "format", "unknown format \"" + format + "\"");
    }
    out.text << (r.ok() ? "ok    " : "FAIL  ") << p << " (" << format << ")\n";
    if (!r.ok()) out.text << r.to_string();
    json entry = report_json(r);
    entry["path"] = p;
    entry["format"] = format;
    out.report["files"].push_back(entry);
    if (!r.ok()) out.fail();
  }
  return out.emit(o.json_output);
}

struct TheoryFlags {
  bool compact = false, ordinary = false, derived = false, bm = false, cosheaf_cohomology = false,
       sheaf_homology = false;
};

int cmd_cohomology(const Options& o, const std::string& path, TheoryFlags t) {
  Workspace ws;
  if (ws.kind(path) != Variance::sheaf) throw std::invalid_argument(path + " is not a sheaf");
  if (!t.compact && !t.ordinary && !t.derived) t.compact = t.ordinary = t.derived = true;
  FieldSpec field = pick_field(o, ws, fs::path(path));
  Output out;
  header(out, "cohomology", field, path);
  with_field(field, [&]<class S>() {
    Sheaf<S> f = ws.object<S, Variance::sheaf>(path);
    if (t.compact) theory_line(out, "compact-sheaf-cohomology", compact_cohomology(f).dims, false);
    if (t.ordinary) theory_line(out, "sheaf-cohomology", ordinary_cohomology(f).dims, false);
    if (t.derived) {
      GradedDims d = derived_sheaf_cohomology(f).dims;
      theory_line(out, "derived-sheaf-cohomology", d, false);
      if (d != ordinary_cohomology(f).dims) {
        out.text << "  derived and cellular sheaf cohomology disagree\n";
        out.fail();
      }
    }
    if (t.sheaf_homology) theory_line(out, "sheaf-homology", derived_sheaf_homology(f).dims, true);
    out.report["cellular_euler"] = cellular_euler(f);
  });
  return out.emit(o.json_output);
}

int cmd_homology(const Options& o, const std::string& path, TheoryFlags t) {
  Workspace ws;
  Variance kind = ws.kind(path);
  FieldSpec field = pick_field(o, ws, fs::path(path));
  Output out;
  header(out, "homology", field, path);
  if (kind == Variance::sheaf) {
    if (t.bm || t.ordinary || t.derived || t.cosheaf_cohomology)
      throw std::invalid_argument(path + " is a sheaf; only --sheaf-homology applies");
    with_field(field, [&]<class S>() {
      Sheaf<S> f = ws.object<S, Variance::sheaf>(path);
      theory_line(out, "sheaf-homology", derived_sheaf_homology(f).dims, true);
    });
    return out.emit(o.json_output);
  }
  if (t.sheaf_homology) throw std::invalid_argument(path + " is a cosheaf; --sheaf-homology needs a sheaf");
  if (!t.bm && !t.ordinary && !t.derived && !t.cosheaf_cohomology) t.bm = t.ordinary = t.derived = true;
  with_field(field, [&]<class S>() {
    Cosheaf<S> f = ws.object<S, Variance::cosheaf>(path);
    if (t.bm) theory_line(out, "BM-cosheaf-homology", bm_homology(f).dims, true);
    if (t.ordinary) theory_line(out, "cosheaf-homology", cosheaf_homology(f).dims, true);
    if (t.derived) {
      GradedDims d = derived_cosheaf_homology(f).dims;
      theory_line(out, "derived-cosheaf-homology", d, true);
      if (d != cosheaf_homology(f).dims) {
        out.text << "  derived and cellular cosheaf homology disagree\n";
        out.fail();
      }
    }
    if (t.cosheaf_cohomology) theory_line(out, "cosheaf-cohomology", derived_cosheaf_cohomology(f).dims, false);
    out.report["cellular_euler"] = cellular_euler(f);
  });
  return out.emit(o.json_output);
}

struct DualizeFlags {
  bool phat = false, verdier = false, roundtrip = false;
  std::string local;
  int poincare = -1;
  std::string output;
};

void describe_terms(Output& out, const std::string& name, int lo, const std::vector<Index>& totals) {
  out.text << "  " << name << ": terms";
  json t = json::object();
  for (std::size_t k = 0; k < totals.size(); ++k) {
    int n = lo + static_cast<int>(k);
    out.text << "  [" << n << "] " << totals[k];
    t[std::to_string(n)] = totals[k];
  }
  out.text << "  (total stalk dimension per degree)\n";
  out.report[name] = {{"term_dims", t}};
}

template <class S>
std::vector<Index> term_totals(const DiagramComplex<S>& c) {
  std::vector<Index> v;
  for (const auto& t : c.terms) v.push_back(t.total_dim());
  return v;
}

int cmd_dualize(const Options& o, const std::string& path, const DualizeFlags& fl) {
  Workspace ws;
  if (ws.kind(path) != Variance::sheaf) throw std::invalid_argument(path + " is not a sheaf");
  FieldSpec field = pick_field(o, ws, fs::path(path));
  Output out;
  header(out, "dualize", field, path);
  bool any = fl.phat || fl.verdier || fl.roundtrip || !fl.local.empty() || fl.poincare >= 0;
  with_field(field, [&]<class S>() {
    Sheaf<S> f = ws.object<S, Variance::sheaf>(path);
    const std::string complex_file = ws.complex_path(path).string();
    if (fl.phat || !any) {
      CosheafComplex<S> c = phat(f);
      describe_terms(out, "phat", c.data.lo, term_totals(c.data));
      if (!fl.output.empty() && fl.phat)
        write_file(fl.output, complex_object_to_text(c, reference(complex_file, fl.output)));
    }
    if (fl.verdier) {
      SheafComplex<S> d = verdier_dual(f);
      describe_terms(out, "verdier", d.data.lo, term_totals(d.data));
      RoundTrip<S> dd = double_dual(f);
      out.text << "  D(D(F)) quasi-isomorphic to F: " << (dd.report.ok() ? "pass" : "FAIL") << "\n";
      out.report["double_dual"] = report_json(dd.report);
      if (!dd.report.ok()) {
        out.text << dd.report.to_string();
        out.fail();
      }
      if (!fl.output.empty() && !fl.phat)
        write_file(fl.output, complex_object_to_text(d, reference(complex_file, fl.output)));
    }
    if (fl.roundtrip || !any) {
      RoundTrip<S> rt = roundtrip(f);
      out.text << "  unit F -> P(phat(F)) is a quasi-isomorphism: " << (rt.report.ok() ? "pass" : "FAIL") << "\n";
      out.report["roundtrip"] = report_json(rt.report);
      if (!rt.report.ok()) {
        out.text << rt.report.to_string();
        out.fail();
      }
    }
    if (!fl.local.empty()) {
      std::size_t sigma = f.base->index(fl.local);
      GradedDims h = local_homology(f, sigma);
      out.text << "  local homology at " << fl.local << ": " << format_dims(h) << "\n";
      out.report["local"] = {{"cell", fl.local}, {"dims", dims_json(h)}};
    }
    if (fl.poincare >= 0) {
      Report r = poincare_check(f, fl.poincare, o.assume_manifold);
      out.text << "  Poincare duality in dimension " << fl.poincare << ": " << (r.ok() ? "pass" : "FAIL") << "\n";
      if (r.ok()) {
        for (const auto& n : r.notes) out.text << "    " << n << "\n";
      } else {
        out.text << r.to_string();
        out.fail();
      }
      out.report["poincare"] = report_json(r);
    }
  });
  return out.emit(o.json_output);
}

int cmd_subdivide(const Options& o, const std::string& complex_path, const std::string& sheaf_path,
                  const std::string& out_dir) {
  Workspace ws;
  ComplexPtr x = ws.complex(complex_path);
  Subdivision sd = barycentric_subdivision(x);
  Output out;
  out.report["command"] = "subdivide";
  out.report["input"] = complex_path;
  out.report["cells"] = {{"before", x->size()}, {"after", sd.complex->size()}};
  out.text << "subdivide " << complex_path << ": " << x->size() << " cells -> " << sd.complex->size() << " cells\n";
  const std::string stem = fs::path(complex_path).filename().string();
  const std::string base = stem.substr(0, stem.find('.'));
  fs::path dir = out_dir.empty() ? fs::path(complex_path).parent_path() : fs::path(out_dir);
  if (dir.empty()) dir = ".";
  fs::path cx_out = dir / (base + ".sd.complex.json");
  fs::path map_out = dir / (base + ".sd.map.json");
  if (!out_dir.empty()) {
    fs::create_directories(dir);
    write_file(cx_out, complex_to_text(*sd.complex));
    write_file(map_out, map_to_text(sd.map, reference(cx_out, map_out), reference(complex_path, map_out)));
    out.report["written"] = {cx_out.string(), map_out.string()};
    out.text << "  wrote " << cx_out.string() << "\n  wrote " << map_out.string() << "\n";
  }
  if (!sheaf_path.empty()) {
    if (ws.kind(sheaf_path) != Variance::sheaf) throw std::invalid_argument(sheaf_path + " is not a sheaf");
    if (ws.complex(ws.complex_path(sheaf_path)) != x)
      throw std::invalid_argument(sheaf_path + " does not live on " + complex_path);
    FieldSpec field = pick_field(o, ws, fs::path(sheaf_path));
    out.report["field"] = field.to_string();
    with_field(field, [&]<class S>() {
      Sheaf<S> f = ws.object<S, Variance::sheaf>(sheaf_path);
      Report r = subdivision_invariance_check(f, sd.map);
      out.text << "  invariance over " << field.to_string() << ": " << (r.ok() ? "pass" : "FAIL") << "\n";
      if (r.ok()) {
        for (const auto& n : r.notes) out.text << "    " << n << "\n";
      } else {
        out.text << r.to_string();
        out.fail();
      }
      out.report["invariance"] = report_json(r);
      if (!out_dir.empty()) {
        fs::path sh_out = dir / (base + ".sd.sheaf.json");
        write_file(sh_out, object_to_text(pullback(sd.map, f), reference(cx_out, sh_out)));
        out.text << "  wrote " << sh_out.string() << "\n";
      }
    });
  }
  return out.emit(o.json_output);
}

int cmd_tensor(const Options& o, const std::vector<std::string>& inputs, bool phat_constant) {
  Workspace ws;
  if (inputs.size() != (phat_constant ? 1u : 2u))
    throw std::invalid_argument(phat_constant ? "tensor --phat-constant takes one sheaf" : "tensor takes a cosheaf and a sheaf");
  const std::string& sheaf_path = inputs.back();
  if (ws.kind(sheaf_path) != Variance::sheaf) throw std::invalid_argument(sheaf_path + " is not a sheaf");
  FieldSpec field = pick_field(o, ws, fs::path(sheaf_path));
  Output out;
  header(out, "tensor", field, sheaf_path);
  with_field(field, [&]<class S>() {
    Sheaf<S> f = ws.object<S, Variance::sheaf>(sheaf_path);
    if (phat_constant) {
      GradedDims h = cc_via_coend(f);
      GradedDims c = compact_cohomology(f).dims;
      theory_line(out, "phat(k) tensor F", h, false);
      theory_line(out, "compact-sheaf-cohomology", c, false);
      if (h != c) {
        out.text << "  the two disagree\n";
        out.fail();
      }
      return;
    }
    if (ws.kind(inputs[0]) != Variance::cosheaf) throw std::invalid_argument(inputs[0] + " is not a cosheaf");
    Cosheaf<S> g = ws.object<S, Variance::cosheaf>(inputs[0]);
    if (g.base != f.base) throw std::invalid_argument("the cosheaf and the sheaf live on different complexes");
    Index d = tensor(g, f).dim();
    out.text << "  dim G (x) F = " << d << "\n";
    out.report["dim"] = d;
  });
  return out.emit(o.json_output);
}

int cmd_functor(const Options& o, const std::string& map_path, const std::string& object_path, int which,
                const std::string& output) {
  static const char* names[] = {"pullback", "pushforward", "dagger"};
  Workspace ws;
  PosetMap f = ws.map(map_path);
  Report vr = validate(f);
  if (!vr.ok()) throw std::invalid_argument("map is not order-preserving:\n" + vr.to_string());
  Variance kind = ws.kind(object_path);
  FieldSpec field = pick_field(o, ws, fs::path(object_path));
  Output out;
  header(out, std::string("functor ") + names[which], field, object_path);
  with_field(field, [&]<class S>() {
    auto run = [&]<Variance V>() {
      Cellular<S, V> a = ws.object<S, V>(object_path);
      Cellular<S, V> b = which == 0 ? pullback(f, a) : which == 1 ? pushforward(f, a) : dagger_pushforward(f, a);
      json stalks = json::object();
      for (std::size_t i = 0; i < b.base->size(); ++i) stalks[b.base->id(i)] = b.dim(i);
      out.report["stalks"] = stalks;
      out.text << "  result (" << to_string(V) << " on " << b.base->size() << " cells):";
      for (std::size_t i = 0; i < b.base->size(); ++i) out.text << " " << b.base->id(i) << ":" << b.dim(i);
      out.text << "\n";
      if (!output.empty()) {
        auto cx = ws.path_of(b.base);
        if (!cx) throw std::logic_error("result complex has no file");
        write_file(output, object_to_text(b, reference(*cx, output)));
        out.text << "  wrote " << output << "\n";
      }
    };
    if (kind == Variance::sheaf) {
      run.template operator()<Variance::sheaf>();
    } else {
      run.template operator()<Variance::cosheaf>();
    }
  });
  return out.emit(o.json_output);
}

int cmd_corpus(const Options& o, const std::string& out_dir) {
  Output out;
  out.report["command"] = "corpus";
  out.report["entries"] = json::array();
  for (const auto& e : corpus::entries()) {
    CellComplex x = e.make();
    Report r = validate(x);
    out.text << e.name << "  cells " << x.size() << "  dim " << x.dimension() << "  " << (r.ok() ? "valid" : "invalid");
    if (e.manifold_dim >= 0) out.text << "  closed " << e.manifold_dim << "-manifold";
    out.text << "\n";
    out.report["entries"].push_back(
        {{"name", e.name}, {"cells", x.size()}, {"dim", x.dimension()}, {"valid", r.ok()}, {"manifold_dim", e.manifold_dim}});
    if (r.ok() != e.valid) out.fail();
    if (!out_dir.empty()) {
      fs::create_directories(out_dir);
      fs::path cx = fs::path(out_dir) / (e.name + ".complex.json");
      write_file(cx, complex_to_text(x));
      if (e.valid) {
        fs::path sh = fs::path(out_dir) / (e.name + ".constant.sheaf.json");
        fs::path co = fs::path(out_dir) / (e.name + ".constant.cosheaf.json");
        ComplexPtr p = share(x);
        write_file(sh, object_to_text(constant<Rational, Variance::sheaf>(p, 1), cx.filename().string()));
        write_file(co, object_to_text(constant<Rational, Variance::cosheaf>(p, 1), cx.filename().string()));
      }
    }
  }
  return out.emit(o.json_output);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with cellular sheaves and cosheaves"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json_output, "Print the structured report as JSON");
  app.add_option("--field", o.field, "Coefficient field: q, fp or fp:<p> (default: $SHEAFKIT_FIELD, the file's field, q)");
  app.add_flag("--assume-manifold", o.assume_manifold, "Skip the manifold screen before duality computations");

  std::vector<std::string> validate_paths;
  auto* validate_cmd = app.add_subcommand("validate", "Check complexes, (co)sheaves, maps and complexes of sheaves");
  validate_cmd->add_option("paths", validate_paths)->required()->check(CLI::ExistingFile);

  std::string input;
  TheoryFlags tf;
  auto* coh = app.add_subcommand("cohomology", "Sheaf cohomology");
  coh->add_option("sheaf", input)->required()->check(CLI::ExistingFile);
  coh->add_flag("--compact", tf.compact, "Compactly supported cochains");
  coh->add_flag("--ordinary", tf.ordinary, "Cochains on the compact subcomplex");
  coh->add_flag("--derived", tf.derived, "Limit of an injective resolution");
  coh->add_flag("--sheaf-homology", tf.sheaf_homology, "Colimit of a projective resolution");

  auto* hom = app.add_subcommand("homology", "Cosheaf homology (or sheaf homology of a sheaf)");
  hom->add_option("object", input)->required()->check(CLI::ExistingFile);
  hom->add_flag("--bm", tf.bm, "Borel-Moore chains on all cells");
  hom->add_flag("--ordinary", tf.ordinary, "Chains on the compact subcomplex");
  hom->add_flag("--derived", tf.derived, "Colimit of a projective resolution");
  hom->add_flag("--cosheaf-cohomology", tf.cosheaf_cohomology, "Limit of an injective resolution");
  hom->add_flag("--sheaf-homology", tf.sheaf_homology, "Derived sheaf homology of a sheaf file");

  DualizeFlags df;
  auto* dua = app.add_subcommand("dualize", "Derived equivalence and Verdier duality");
  dua->add_option("sheaf", input)->required()->check(CLI::ExistingFile);
  dua->add_flag("--phat", df.phat, "The complex of projective cosheaves phat(F)");
  dua->add_flag("--verdier", df.verdier, "The Verdier dual, and the double-dual check");
  dua->add_flag("--roundtrip", df.roundtrip, "Check that F -> P(phat(F)) is a quasi-isomorphism");
  dua->add_option("--local", df.local, "Local homology at a cell (by id)");
  dua->add_option("--poincare", df.poincare, "Poincare duality check in the given dimension");
  dua->add_option("-o,--output", df.output, "Write phat(F) (with --phat) or D(F) (with --verdier)");

  std::string sd_sheaf, out_dir;
  auto* sub = app.add_subcommand("subdivide", "Barycentric subdivision and the invariance report");
  sub->add_option("complex", input)->required()->check(CLI::ExistingFile);
  sub->add_option("sheaf", sd_sheaf)->check(CLI::ExistingFile);
  sub->add_option("-o,--output-dir", out_dir, "Directory for the subdivided complex, map and sheaf");

  std::vector<std::string> tensor_inputs;
  bool phat_constant = false;
  auto* ten = app.add_subcommand("tensor", "Coend of a cosheaf with a sheaf");
  ten->add_option("inputs", tensor_inputs, "[cosheaf] sheaf")->required()->check(CLI::ExistingFile);
  ten->add_flag("--phat-constant", phat_constant, "Use phat of the constant sheaf as the cosheaf complex");

  std::string map_path, fn_output;
  bool pull = false, push = false, dagger = false;
  auto* fun = app.add_subcommand("functor", "Pullback and pushforwards along a cell map");
  fun->add_option("map", map_path)->required()->check(CLI::ExistingFile);
  fun->add_option("object", input)->required()->check(CLI::ExistingFile);
  auto* g = fun->add_option_group("which");
  g->add_flag("--pullback", pull);
  g->add_flag("--pushforward", push);
  g->add_flag("--dagger", dagger);
  g->require_option(1);
  fun->add_option("-o,--output", fn_output, "Write the result");

  std::string corpus_dir;
  auto* cor = app.add_subcommand("corpus", "List the built-in complexes, optionally writing them out");
  cor->add_option("-o,--output-dir", corpus_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, validate_paths);
    if (*coh) return cmd_cohomology(o, input, tf);
    if (*hom) return cmd_homology(o, input, tf);
    if (*dua) return cmd_dualize(o, input, df);
    if (*sub) return cmd_subdivide(o, input, sd_sheaf, out_dir);
    if (*ten) return cmd_tensor(o, tensor_inputs, phat_constant);
    if (*fun) return cmd_functor(o, map_path, input, pull ? 0 : push ? 1 : 2, fn_output);
    if (*cor) return cmd_corpus(o, corpus_dir);
  } catch (const std::exception& e) {
    // Parse errors, unknown cells and shape errors all mean the input is bad.
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
