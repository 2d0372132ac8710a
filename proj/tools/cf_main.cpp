#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cf/fixtures.hpp"
#include "cf/json_io.hpp"
#include "cf/selftest.hpp"

using namespace cf;
using io::Json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInvalid = 2, kRefused = 3 };

struct Options {
  std::string input, output, algebra, system, filter, kind = "assoc_noncomm", scalars = "Z";
  std::optional<long long> cap;
  std::optional<int> degree;
  long long rank = 1;
  bool unital = false, quiet = false, table = false, certificates = false;
  int corrupt = -1;
};

Integer cap_of(const Options& o) {
  if (o.cap) return *o.cap;
  if (const char* env = std::getenv("CF_CAP")) {
    const std::string s = env;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("invalid environment", "CF_CAP must be a positive integer");
    return Integer(s);
  }
  return 1000000;
}

Json load(const std::string& path, const char* flag) {
  if (path.empty()) throw ValidationError("missing input", std::string("--") + flag + " is required");
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return io::parse(buf.str());
  }
  return io::read_file(path);
}

Json document(Json body) {
  Json out{{"format", io::kFormat}};
  for (auto& [k, v] : body.items()) out[k] = std::move(v);
  return out;
}

Json canonical_report(const FgModule& m) {
  const Canonicalization c = canonicalize(m);
  return Json{{"module", io::to_json(m)},
              {"rank", c.rank},
              {"invariant_factors", io::to_json(c.invariant_factors)},
              {"cardinality", io::to_json(m.cardinality())},
              {"canonical", io::to_json(c.module)},
              {"to_canonical", io::to_json(c.to_canonical.matrix)},
              {"from_canonical", io::to_json(c.from_canonical.matrix)}};
}

Json submodule_json(const Submodule& s) {
  return Json{{"generators", io::to_json(s.generators())}, {"cardinality", io::to_json(s.cardinality())}};
}

Json trichotomy_json(const TrichotomyReport& t) {
  return Json{{"scalar_ring", io::to_json(t.scalar_ring)},
              {"C1", io::to_json(t.c1)},
              {"A1xB1", io::to_json(t.a1xb1)},
              {"consistent", t.consistent}};
}

// A bilinear document, or an algebra whose multiplication is taken.
BilinearTensor load_map(const Json& j) {
  if (j.is_object() && j.contains("mult") && !j.contains("tensor")) return multiplication(io::read_algebra(j));
  return io::read_bilinear(j);
}

Json run_canon(const Options& o) { return canonical_report(io::read_module(load(o.input, "input"))); }

Json run_bilinear(const Options& o) {
  const BilinearTensor f = load_map(load(o.input, "input"));
  const ReducedMap r = reduce(f);
  return Json{{"full", is_full(f)},
              {"nondegenerate", is_nondegenerate(f)},
              {"ann_left", submodule_json(r.ann_l)},
              {"ann_right", submodule_json(r.ann_r)},
              {"image", submodule_json(r.image)},
              {"A1", io::to_json(r.A1)},
              {"B1", r.shared_domain ? Json("A1") : io::to_json(r.B1)},
              {"C1", io::to_json(r.C1)},
              {"shared_domain", r.shared_domain},
              {"reduced", io::to_json(r.square_map())},
              {"trichotomy", trichotomy_json(classify_trichotomy(f))}};
}

Json run_scalars(const Options& o) {
  const BilinearTensor f = load_map(load(o.input, "input"));
  const ReducedMap r = reduce(f);
  const BilinearTensor& g = r.square_map();
  const EndoSubmodule s = sym(g);
  const ScalarRing z = z_sym(g, s);
  const ScalarRing big = largest_ring(g, z);
  Json sym_gens = Json::array();
  for (const Matrix& m : s.generators()) sym_gens.push_back(io::to_json(m));
  Json ring = io::to_json(z);
  const CanonicalForm& cf = z.module().canonical();
  ring["rank"] = cf.free_rank;
  ring["invariant_factors"] = io::to_json(cf.invariant_factors);
  ring["ring_axioms"] = check_ring(z);
  Json out{{"map", g.square() ? "f1" : "f2"},
           {"sym", Json{{"generators", sym_gens}, {"cardinality", io::to_json(s.cardinality())}}},
           {"scalar_ring", ring},
           {"largest_ring", io::to_json(big)},
           {"trichotomy", trichotomy_json(classify_trichotomy(f))}};
  if (o.certificates) out["interpretation"] = io::to_json(interp_zsym(g));
  return out;
}

Interpretation build_interpretation(const Json& j, const std::string& path, const Options& o) {
  io::check_format(j, path);
  if (!j.is_object() || !j.contains("kind")) throw io::SchemaError(path + "/kind", "missing member");
  if (!j["kind"].is_string()) throw io::SchemaError(path + "/kind", "expected a string");
  const std::string kind = j["kind"].get<std::string>();
  auto need = [&](const char* key) -> const Json& {
    if (!j.contains(key)) throw io::SchemaError(path + "/" + key, "missing member");
    return j[key];
  };
  if (kind == "identity") {
    if (j.contains("module")) return identity_interpretation(Structure::of_module(io::read_module(j["module"], path + "/module")));
    return identity_interpretation(Structure::of_algebra(io::read_algebra(need("algebra"), path + "/algebra")));
  }
  if (kind == "quotient") {
    const AlgebraPresentation a = io::read_algebra(need("algebra"), path + "/algebra");
    return interp_quotient(a, io::read_matrix(need("ideal"), path + "/ideal", a.ngens()));
  }
  if (kind == "quotient_In") {
    const AlgebraPresentation a = io::read_algebra(need("algebra"), path + "/algebra");
    const Matrix t = io::read_matrix(need("T"), path + "/T", a.ngens());
    int n = o.degree.value_or(0);
    if (j.contains("n")) n = static_cast<int>(io::read_integer(j["n"], path + "/n"));
    if (n < 1) throw io::SchemaError(path + "/n", "expected n >= 1, or --degree");
    return interp_quotient(a, ideal_In(a, t, n).generators());
  }
  if (kind == "module_quotient") {
    const FgModule m = io::read_module(need("module"), path + "/module");
    return interp_quotient(m, io::read_matrix(need("submodule"), path + "/submodule", m.ngens()));
  }
  if (kind == "module_finite") return interp_module_finite(io::read_algebra(need("algebra"), path + "/algebra"));
  if (kind == "zsym") return interp_zsym(reduce(load_map(need("bilinear"))).square_map());
  if (kind == "compose")
    return compose(build_interpretation(need("first"), path + "/first", o), build_interpretation(need("second"), path + "/second", o));
  throw io::SchemaError(path + "/kind", "unknown interpretation kind \"" + kind + "\"");
}

Json run_interpret(const Options& o) { return io::to_json(build_interpretation(load(o.input, "input"), "", o)); }

Json run_translate(const Options& o) {
  const Json j = load(o.input, "input");
  io::check_format(j);
  if (!j.contains("interpretation")) throw io::SchemaError("/interpretation", "missing member");
  if (!j.contains("system")) throw io::SchemaError("/system", "missing member");
  const Interpretation phi = build_interpretation(j["interpretation"], "/interpretation", o);
  const EqSystem sigma = io::read_system(j["system"], "/system");
  Json out = io::to_json(translate(sigma, phi));
  out["target"] = io::to_json(phi.target);
  return out;
}

struct Problem {
  AlgebraPresentation algebra;
  EqSystem system;
};

Problem load_problem(const Options& o) {
  if (!o.input.empty()) {
    const Json j = load(o.input, "input");
    io::check_format(j);
    if (!j.contains("algebra")) throw io::SchemaError("/algebra", "missing member");
    if (!j.contains("system")) throw io::SchemaError("/system", "missing member");
    return {io::read_algebra(j["algebra"], "/algebra"), io::read_system(j["system"], "/system")};
  }
  return {io::read_algebra(load(o.algebra, "algebra")), io::read_system(load(o.system, "system"))};
}

Json run_decide(const Options& o) {
  const Problem p = load_problem(o);
  if (is_linear(p.system)) return io::to_json(decide_linear(Structure::of_algebra(p.algebra, "R"), p.system));
  return io::to_json(decide_finite_square(p.algebra, p.system, cap_of(o)));
}

Json run_brute(const Options& o) {
  const Problem p = load_problem(o);
  return io::to_json(brute_force(p.algebra, p.system, cap_of(o)));
}

Json run_free(const Options& o) {
  FreeTruncationSpec spec;
  if (!o.input.empty()) {
    spec = io::read_free_spec(load(o.input, "input"));
    if (o.degree) spec.degree_bound = *o.degree;
  } else {
    spec.kind = parse_free_kind(o.kind);
    spec.rank = o.rank;
    spec.unital = o.unital;
    spec.degree_bound = o.degree.value_or(2);
    if (o.scalars != "Z" && (o.scalars.empty() || o.scalars.find_first_not_of("0123456789") != std::string::npos || Integer(o.scalars) < 2))
      throw ValidationError("invalid scalars", "--scalars expects Z or a modulus >= 2");
    spec.scalars = o.scalars == "Z" ? Scalars::integers() : Scalars::modular(Integer(o.scalars));
  }
  const FreeBasis b = free_basis(spec);
  Json out{{"kind", free_kind_name(spec.kind)},
           {"rank", spec.rank},
           {"unital", spec.unital && spec.kind != FreeKind::Lie},
           {"degree_bound", spec.degree_bound},
           {"scalars", io::to_json(spec.scalars)},
           {"dimension", b.words.size()},
           {"graded_dims", b.graded_dims},
           {"basis", b.labels},
           {"words", b.words}};
  if (o.table) out["algebra"] = io::to_json(truncated_free(spec).algebra);
  return out;
}

Json run_selftest(const Options& o, int& code) {
  selftest::Fixtures fx = selftest::default_fixtures();
  if (o.corrupt >= 0) selftest::corrupt_structure_constant(fx, static_cast<std::size_t>(o.corrupt));
  const std::vector<selftest::Result> results = selftest::run(fx, o.filter);
  Json rows = Json::array();
  int failed = 0;
  for (const selftest::Result& r : results) {
    rows.push_back(Json{{"id", r.id}, {"group", r.group}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
    if (!r.pass) ++failed;
    if (!o.quiet) std::cerr << r.id << (r.pass ? " PASS " : " FAIL ") << r.title << ": " << r.detail << "\n";
  }
  if (failed > 0) code = kFailed;
  return Json{{"criteria", rows}, {"passed", results.size() - static_cast<std::size_t>(failed)}, {"failed", failed}};
}

void emit(const Options& o, const Json& j) {
  const std::string text = io::dump(document(j));
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw ValidationError("unwritable output", "cannot open " + o.output);
  out << text;
}

int fail(const Options& o, int code, const std::string& kind, const std::string& message, const Json& extra = Json::object()) {
  Json err{{"kind", kind}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  std::cout << io::dump(document(Json{{"error", err}}));
  if (!o.quiet) std::cerr << "cf: " << kind << ": " << message << "\n";
  return code;
}

std::string message_of(const std::runtime_error& e, const std::string& kind) {
  const std::string w = e.what();
  return w.rfind(kind + ": ", 0) == 0 ? w.substr(kind.size() + 2) : w;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Module-finite algebras, bilinear maps, scalar rings and equation systems", "cf"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  auto common = [&](CLI::App* c) {
    c->add_option("--input", o.input, "input JSON file, - for stdin");
    c->add_option("--output", o.output, "write the report here instead of stdout");
    c->add_flag("--quiet", o.quiet, "no diagnostics on stderr");
  };
  auto capped = [&](CLI::App* c) { c->add_option("--cap", o.cap, "search cap, default CF_CAP or 1000000")->check(CLI::PositiveNumber); };

  CLI::App* canon = app.add_subcommand("canon", "canonical form of a module");
  common(canon);
  CLI::App* bil = app.add_subcommand("bilinear-analyze", "annihilators, reduction and trichotomy of a bilinear map");
  common(bil);
  CLI::App* sc = app.add_subcommand("scalars", "Sym, its center and the largest ring of a bilinear map");
  common(sc);
  sc->add_flag("--certificates", o.certificates, "include the interpretation of the scalar ring");
  CLI::App* interp = app.add_subcommand("interpret", "build an interpretation with its certificates");
  common(interp);
  interp->add_option("--degree", o.degree, "n for quotient_In");
  CLI::App* tr = app.add_subcommand("translate", "translate an equation system along an interpretation");
  common(tr);
  tr->add_option("--degree", o.degree, "n for quotient_In");
  CLI::App* dec = app.add_subcommand("decide", "decide an equation system in an algebra with finite square");
  common(dec);
  capped(dec);
  dec->add_option("--algebra", o.algebra, "algebra JSON file");
  dec->add_option("--system", o.system, "equation system JSON file");
  CLI::App* br = app.add_subcommand("brute", "all solutions in a finite algebra");
  common(br);
  capped(br);
  br->add_option("--algebra", o.algebra, "algebra JSON file");
  br->add_option("--system", o.system, "equation system JSON file");
  CLI::App* ft = app.add_subcommand("free-trunc", "basis of a truncated free algebra");
  common(ft);
  ft->add_option("--kind", o.kind, "assoc_noncomm, assoc_comm or lie");
  ft->add_option("--rank", o.rank, "number of free generators");
  ft->add_option("--degree", o.degree, "degree bound n, words of degree < n");
  ft->add_flag("--unital", o.unital, "include the empty word");
  ft->add_option("--scalars", o.scalars, "Z or a modulus");
  ft->add_flag("--table", o.table, "include the multiplication table");
  CLI::App* st = app.add_subcommand("selftest", "run the acceptance criteria");
  common(st);
  st->add_option("--filter", o.filter, "comma-separated criterion ids or groups");
  st->add_option("--corrupt-fixture", o.corrupt, "break 1 * 1 in one census ring first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(o, kInvalid, "usage", e.what());
  }

  int code = kOk;
  try {
    Json out;
    if (canon->parsed()) out = run_canon(o);
    else if (bil->parsed()) out = run_bilinear(o);
    else if (sc->parsed()) out = run_scalars(o);
    else if (interp->parsed()) out = run_interpret(o);
    else if (tr->parsed()) out = run_translate(o);
    else if (dec->parsed()) out = run_decide(o);
    else if (br->parsed()) out = run_brute(o);
    else if (ft->parsed()) out = run_free(o);
    else out = run_selftest(o, code);
    emit(o, out);
    return code;
  } catch (const io::SchemaError& e) {
    return fail(o, kInvalid, e.kind(), message_of(e, e.kind()), Json{{"path", e.path()}});
  } catch (const ValidationError& e) {
    return fail(o, kInvalid, e.kind(), message_of(e, e.kind()));
  } catch (const Refusal& e) {
    if (dec->parsed() && e.kind() == "cap exceeded") {
      Verdict v;
      v.status = Verdict::Status::Refused;
      v.message = message_of(e, e.kind());
      Json out = io::to_json(v);
      if (e.estimate() >= 0) out["estimate"] = io::to_json(e.estimate());
      emit(o, out);
      return kRefused;
    }
    Json extra = Json::object();
    if (e.estimate() >= 0) extra["estimate"] = io::to_json(e.estimate());
    return fail(o, kRefused, e.kind(), message_of(e, e.kind()), extra);
  } catch (const std::exception& e) {
    return fail(o, kFailed, "internal error", e.what());
  }
}
