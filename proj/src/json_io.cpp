#include "cf/json_io.hpp"

#include <fstream>
#include <sstream>

namespace cf::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& member(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(path, key), "missing member");
  return *it;
}

const Json* optional_member(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::string string_value(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

bool bool_value(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected a boolean");
  return j.get<bool>();
}

Index index_value(const Json& j, const std::string& path, Index lo) {
  const Integer v = read_integer(j, path);
  if (v < lo || v > Integer(1) << 20) throw SchemaError(path, "out of range");
  return static_cast<Index>(v);
}

void line_column(const std::string& text, std::size_t byte, std::size_t& line, std::size_t& col) {
  line = 1;
  col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

Json elements(const std::vector<Element>& v) {
  Json out = Json::array();
  for (const Element& e : v) out.push_back(to_json(e));
  return out;
}

Json table(const std::vector<std::vector<Element>>& t) {
  Json out = Json::array();
  for (const auto& row : t) out.push_back(elements(row));
  return out;
}

std::vector<std::vector<Element>> read_table(const Json& j, const std::string& path, Index rows, Index cols, Index len) {
  array(j, path);
  if (static_cast<Index>(j.size()) != rows) throw SchemaError(path, "expected " + std::to_string(rows) + " rows");
  std::vector<std::vector<Element>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = at(path, i);
    array(j[i], p);
    if (static_cast<Index>(j[i].size()) != cols) throw SchemaError(p, "expected " + std::to_string(cols) + " entries");
    std::vector<Element> row;
    for (std::size_t k = 0; k < j[i].size(); ++k) row.push_back(read_vector(j[i][k], at(p, k), len));
    out.push_back(std::move(row));
  }
  return out;
}

std::string term_head(const Term& t) {
  switch (t.kind) {
    case TermKind::Var: return "var";
    case TermKind::Const: return "const";
    case TermKind::Zero: return "zero";
    case TermKind::Add: return "add";
    case TermKind::Neg: return "neg";
    case TermKind::SMul: return t.scalar_param ? "smul_param" : "smul";
    case TermKind::Mul: return "mul";
    case TermKind::Apply: return t.name;
  }
  return "";
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 0, col = 0;
    line_column(text, e.byte, line, col);
    std::string what = e.what();
    const std::size_t cut = what.find(": ");
    if (cut != std::string::npos) what = what.substr(cut + 2);
    throw ValidationError("malformed json",
                          "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("unreadable input", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(e.kind(), path + ": " + std::string(e.what()).substr(e.kind().size() + 2));
  }
}

namespace {

bool has_object(const Json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const Json& e : j)
      if (has_object(e)) return true;
  return false;
}

// Arrays without objects stay on one line when short.
void pretty(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out += pad + Json(it.key()).dump() + ": ";
      pretty(it.value(), indent + 2, out);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "}";
    return;
  }
  if (j.is_array() && !j.empty()) {
    const std::string flat = j.dump();
    if (!has_object(j) && flat.size() + static_cast<std::size_t>(indent) <= 100) {
      std::string spaced;
      bool in_string = false;
      for (std::size_t i = 0; i < flat.size(); ++i) {
        const char c = flat[i];
        if (c == '"' && (i == 0 || flat[i - 1] != '\\')) in_string = !in_string;
        spaced += c;
        if (c == ',' && !in_string) spaced += ' ';
      }
      out += spaced;
      return;
    }
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += pad;
      pretty(j[k], indent + 2, out);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(static_cast<std::size_t>(indent), ' ') + "]";
    return;
  }
  out += j.dump();
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  pretty(j, 0, out);
  return out + "\n";
}

void check_format(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  const Json* f = optional_member(j, path, "format");
  if (f && (!f->is_number_integer() || f->get<long long>() != kFormat))
    throw SchemaError(at(path, "format"), "unsupported format, expected 1");
}

// ---------------------------------------------------------------- writers

Json to_json(const Integer& a) {
  if (const auto v = to_int64(a)) return *v;
  return a.str();
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

Json to_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const Integer& a : v) out.push_back(to_json(a));
  return out;
}

Json to_json(const Scalars& s) {
  if (!s.is_modular()) return "Z";
  return Json{{"mod", to_json(s.modulus())}};
}

Json to_json(const Cardinality& c) {
  Json out{{"kind", c.kind_name()}};
  if (c.is_finite()) out["count"] = to_json(c.count);
  return out;
}

Json to_json(const FgModule& m) {
  return Json{{"scalars", to_json(m.scalars())}, {"ngens", m.ngens()}, {"relations", to_json(m.relations())}};
}

Json to_json(const AlgebraPresentation& a) {
  Json flags{{"associative", a.flags.associative}, {"commutative", a.flags.commutative}, {"lie", a.flags.lie}};
  if (a.flags.identity) flags["identity"] = to_json(*a.flags.identity);
  if (a.flags.degrees) flags["degrees"] = *a.flags.degrees;
  Json out{{"module", to_json(a.module)}, {"mult", table(a.mult)}, {"flags", flags}};
  if (!a.labels.empty()) out["labels"] = a.labels;
  return out;
}

Json to_json(const BilinearTensor& f) {
  Json out{{"A", to_json(f.A)}};
  out["B"] = f.B.same_object(f.A) ? Json("A") : to_json(f.B);
  out["C"] = f.C.same_object(f.A) ? Json("A") : f.C.same_object(f.B) ? Json("B") : to_json(f.C);
  out["tensor"] = table(f.tensor);
  return out;
}

Json to_json(const Term& t) {
  Json out = Json::array({term_head(t)});
  switch (t.kind) {
    case TermKind::Var: out.push_back(t.name); break;
    case TermKind::Const:
      out.push_back(to_json(t.value));
      if (!t.sort.empty()) out.push_back(t.sort);
      break;
    case TermKind::Zero:
      if (!t.sort.empty()) out.push_back(t.sort);
      break;
    case TermKind::SMul:
      if (!t.scalar_param) out.push_back(to_json(t.scalar));
      out.push_back(to_json(t.args[0]));
      break;
    default:
      for (const Term& a : t.args) out.push_back(to_json(a));
  }
  return out;
}

Json to_json(const EqSystem& s) {
  Json vars = Json::array(), eqs = Json::array();
  for (const Variable& v : s.variables) vars.push_back(Json{{"name", v.name}, {"sort", v.sort}});
  for (const Equation& e : s.equations) eqs.push_back(Json::array({to_json(e.lhs), to_json(e.rhs)}));
  return Json{{"variables", vars}, {"equations", eqs}};
}

Json to_json(const Structure& st) {
  Json sorts = Json::array(), maps = Json::array();
  for (const SortSpec& s : st.sorts) {
    Json o{{"name", s.name}, {"carrier", to_json(s.carrier)}};
    if (s.mult) o["mult"] = table(*s.mult);
    sorts.push_back(o);
  }
  for (const MapSpec& m : st.maps)
    maps.push_back(Json{{"name", m.name}, {"left", m.left}, {"right", m.right}, {"result", m.result}, {"tensor", table(m.tensor)}});
  return Json{{"sorts", sorts}, {"maps", maps}};
}

Json to_json(const Certificate& c) { return Json{{"interface", c.interface}, {"system", to_json(c.system)}}; }

Json to_json(const Interpretation& phi) {
  Json sorts = Json::array(), ops = Json::array();
  for (const SortInterp& s : phi.sorts)
    sorts.push_back(Json{{"sort", s.sort},
                         {"target_sorts", s.target_sorts},
                         {"domain", to_json(s.domain)},
                         {"equality", to_json(s.equality)},
                         {"preimage", to_json(s.preimage)}});
  for (const OpInterp& o : phi.ops) ops.push_back(Json{{"key", o.key}, {"graph", to_json(o.graph)}});
  return Json{{"name", phi.name}, {"source", to_json(phi.source)}, {"target", to_json(phi.target)}, {"sorts", sorts}, {"ops", ops}};
}

Json to_json(const Translation& t) {
  Json prov = Json::object();
  for (const auto& [k, v] : t.provenance) prov[k] = v;
  return Json{{"system", to_json(t.system)}, {"provenance", prov}};
}

Json to_json(const Verdict& v) {
  Json out{{"status", v.status_name()}};
  if (v.status == Verdict::Status::Sat) {
    Json w = Json::object();
    for (std::size_t i = 0; i < v.variables.size(); ++i) w[v.variables[i]] = to_json(v.witness[i]);
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  out["systems_explored"] = to_json(v.systems_explored);
  if (!v.message.empty()) out["message"] = v.message;
  return out;
}

Json to_json(const Solutions& s) {
  Json rows = Json::array();
  for (const auto& a : s.assignments) rows.push_back(elements(a));
  return Json{{"variables", s.variables}, {"count", rows.size()}, {"solutions", rows}};
}

Json to_json(const ScalarRing& r) {
  Json gens = Json::array();
  for (const Matrix& m : r.matrices()) gens.push_back(to_json(m));
  return Json{{"generators", gens},
              {"module", to_json(r.module())},
              {"cardinality", to_json(r.cardinality())},
              {"structure_constants", table(r.structure_constants)},
              {"one", to_json(r.one)}};
}

// ---------------------------------------------------------------- readers

Integer read_integer(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw SchemaError(path, "expected an integer");
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw SchemaError(path, "expected an integer, got \"" + s + "\"");
    return Integer(s);
  }
  throw SchemaError(path, "expected an integer");
}

Vector read_vector(const Json& j, const std::string& path, Index size) {
  array(j, path);
  if (size >= 0 && static_cast<Index>(j.size()) != size)
    throw SchemaError(path, "expected " + std::to_string(size) + " coordinates, got " + std::to_string(j.size()));
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = read_integer(j[i], at(path, i));
  return v;
}

Matrix read_matrix(const Json& j, const std::string& path, Index cols) {
  array(j, path);
  Matrix m(static_cast<Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) m.row(static_cast<Index>(i)) = read_vector(j[i], at(path, i), cols).transpose();
  return m;
}

Scalars read_scalars(const Json& j, const std::string& path) {
  if (j.is_string()) {
    if (j.get<std::string>() == "Z") return Scalars::integers();
    throw SchemaError(path, "expected \"Z\" or {\"mod\": m}");
  }
  const Integer m = read_integer(member(j, path, "mod"), at(path, "mod"));
  if (m < 2) throw SchemaError(at(path, "mod"), "modulus must be at least 2");
  return Scalars::modular(m);
}

FgModule read_module(const Json& j, const std::string& path) {
  check_format(j, path);
  const Scalars s = read_scalars(member(j, path, "scalars"), at(path, "scalars"));
  const Index n = index_value(member(j, path, "ngens"), at(path, "ngens"), 0);
  const Json* rel = optional_member(j, path, "relations");
  const Matrix r = rel ? read_matrix(*rel, at(path, "relations"), n) : Matrix(0, n);
  return FgModule(s, n, r);
}

AlgebraPresentation read_algebra(const Json& j, const std::string& path) {
  check_format(j, path);
  AlgebraPresentation a;
  a.module = read_module(member(j, path, "module"), at(path, "module"));
  const Index n = a.ngens();
  a.mult = read_table(member(j, path, "mult"), at(path, "mult"), n, n, n);
  if (const Json* f = optional_member(j, path, "flags")) {
    const std::string p = at(path, "flags");
    if (const Json* b = optional_member(*f, p, "associative")) a.flags.associative = bool_value(*b, at(p, "associative"));
    if (const Json* b = optional_member(*f, p, "commutative")) a.flags.commutative = bool_value(*b, at(p, "commutative"));
    if (const Json* b = optional_member(*f, p, "lie")) a.flags.lie = bool_value(*b, at(p, "lie"));
    if (const Json* e = optional_member(*f, p, "identity"); e && !e->is_null())
      a.flags.identity = read_vector(*e, at(p, "identity"), n);
    if (const Json* d = optional_member(*f, p, "degrees")) {
      array(*d, at(p, "degrees"));
      if (static_cast<Index>(d->size()) != n) throw SchemaError(at(p, "degrees"), "expected one degree per generator");
      std::vector<int> deg;
      for (std::size_t i = 0; i < d->size(); ++i)
        deg.push_back(static_cast<int>(index_value((*d)[i], at(at(p, "degrees"), i), 0)));
      a.flags.degrees = deg;
    }
  }
  if (const Json* l = optional_member(j, path, "labels")) {
    array(*l, at(path, "labels"));
    if (static_cast<Index>(l->size()) != n) throw SchemaError(at(path, "labels"), "expected one label per generator");
    for (std::size_t i = 0; i < l->size(); ++i) a.labels.push_back(string_value((*l)[i], at(at(path, "labels"), i)));
  }
  require_valid_algebra(a);
  return a;
}

BilinearTensor read_bilinear(const Json& j, const std::string& path) {
  check_format(j, path);
  BilinearTensor f;
  f.A = read_module(member(j, path, "A"), at(path, "A"));
  auto named = [&](const std::string& key, std::initializer_list<std::pair<const char*, const FgModule*>> earlier) {
    const Json& m = member(j, path, key);
    if (m.is_string()) {
      for (const auto& [name, mod] : earlier)
        if (m.get<std::string>() == name) return *mod;
      throw SchemaError(at(path, key), "unknown module reference");
    }
    return read_module(m, at(path, key));
  };
  f.B = named("B", {{"A", &f.A}});
  f.C = named("C", {{"A", &f.A}, {"B", &f.B}});
  f.tensor = read_table(member(j, path, "tensor"), at(path, "tensor"), f.A.ngens(), f.B.ngens(), f.C.ngens());
  const std::vector<Violation> bad = validate(f);
  if (!bad.empty()) throw SchemaError(at(path, "tensor"), "not bilinear on the presentations: " + bad.front().str());
  return f;
}

Term read_term(const Json& j, const std::string& path) {
  array(j, path);
  if (j.empty()) throw SchemaError(path, "empty term");
  const std::string head = string_value(j[0], at(path, 0));
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (j.size() < lo + 1 || j.size() > hi + 1) throw SchemaError(path, "wrong number of arguments for " + head);
  };
  auto sub = [&](std::size_t i) { return read_term(j[i], at(path, i)); };
  if (head == "var") {
    arity(1, 1);
    return Term::var(string_value(j[1], at(path, 1)));
  }
  if (head == "const") {
    arity(1, 2);
    return Term::constant(read_vector(j[1], at(path, 1)), j.size() > 2 ? string_value(j[2], at(path, 2)) : "");
  }
  if (head == "zero") {
    arity(0, 1);
    return Term::zero(j.size() > 1 ? string_value(j[1], at(path, 1)) : "");
  }
  if (head == "add") {
    arity(2, 2);
    return Term::add(sub(1), sub(2));
  }
  if (head == "sub") {
    arity(2, 2);
    return Term::sub(sub(1), sub(2));
  }
  if (head == "neg") {
    arity(1, 1);
    return Term::neg(sub(1));
  }
  if (head == "smul") {
    arity(2, 2);
    return Term::smul(read_integer(j[1], at(path, 1)), sub(2));
  }
  if (head == "smul_param") {
    arity(1, 1);
    return Term::smul_param(sub(1));
  }
  if (head == "mul") {
    arity(2, 2);
    return Term::mul(sub(1), sub(2));
  }
  arity(2, 2);
  return Term::apply(head, sub(1), sub(2));
}

EqSystem read_system(const Json& j, const std::string& path) {
  check_format(j, path);
  EqSystem s;
  const std::string vp = at(path, "variables");
  const Json& vars = array(member(j, path, "variables"), vp);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string p = at(vp, i);
    const std::string name = string_value(member(vars[i], p, "name"), at(p, "name"));
    if (s.find(name)) throw SchemaError(at(p, "name"), "duplicate variable " + name);
    s.add_variable(name, string_value(member(vars[i], p, "sort"), at(p, "sort")));
  }
  const std::string ep = at(path, "equations");
  const Json& eqs = array(member(j, path, "equations"), ep);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const std::string p = at(ep, i);
    if (eqs[i].is_array()) {
      if (eqs[i].size() != 2) throw SchemaError(p, "expected [lhs, rhs]");
      s.add_equation(read_term(eqs[i][0], at(p, 0)), read_term(eqs[i][1], at(p, 1)));
    } else {
      s.add_equation(read_term(member(eqs[i], p, "lhs"), at(p, "lhs")), read_term(member(eqs[i], p, "rhs"), at(p, "rhs")));
    }
  }
  return s;
}

FreeTruncationSpec read_free_spec(const Json& j, const std::string& path) {
  check_format(j, path);
  FreeTruncationSpec spec;
  try {
    spec.kind = parse_free_kind(string_value(member(j, path, "kind"), at(path, "kind")));
  } catch (const SchemaError&) {
    throw;
  } catch (const ValidationError& e) {
    throw SchemaError(at(path, "kind"), e.what());
  }
  spec.rank = index_value(member(j, path, "rank"), at(path, "rank"), 1);
  spec.degree_bound = static_cast<int>(index_value(member(j, path, "degree_bound"), at(path, "degree_bound"), 2));
  if (const Json* u = optional_member(j, path, "unital")) spec.unital = bool_value(*u, at(path, "unital"));
  if (const Json* s = optional_member(j, path, "scalars")) spec.scalars = read_scalars(*s, at(path, "scalars"));
  return spec;
}

}  // namespace cf::io
