#include <gtest/gtest.h>

#include "cf/fixtures.hpp"
#include "cf/json_io.hpp"

using namespace cf;
using io::Json;

namespace {

std::string schema_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::SchemaError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST(JsonIo, IntegersAsNumbersOrStrings) {
  EXPECT_EQ(io::to_json(Integer(-7)), Json(-7));
  const Integer big = Integer(1) << 70;
  EXPECT_EQ(io::to_json(big), Json(big.str()));
  EXPECT_EQ(io::read_integer(io::to_json(big), ""), big);
  EXPECT_EQ(io::read_integer(Json("-12"), ""), -12);
  EXPECT_THROW(io::read_integer(Json("1x"), ""), io::SchemaError);
  EXPECT_THROW(io::read_integer(Json(1.5), ""), io::SchemaError);
}

TEST(JsonIo, ModuleRoundTrip) {
  const FgModule m(Scalars::modular(12), 2, make_matrix({{2, 4}}));
  const FgModule back = io::read_module(io::to_json(m));
  EXPECT_TRUE(back.same_presentation(m));
  EXPECT_EQ(back.scalars(), m.scalars());
}

TEST(JsonIo, AlgebraRoundTrip) {
  for (const AlgebraPresentation& a : {gaussian_integers(), f4(), z_plus_z2(), matrix_ring_f2()}) {
    const AlgebraPresentation b = io::read_algebra(io::to_json(a));
    EXPECT_TRUE(b.module.same_presentation(a.module));
    EXPECT_EQ(b.mult, a.mult);
    EXPECT_EQ(b.flags.identity.has_value(), a.flags.identity.has_value());
    EXPECT_EQ(b.labels, a.labels);
    EXPECT_EQ(io::dump(io::to_json(b)), io::dump(io::to_json(a)));
  }
}

TEST(JsonIo, BilinearSharedDomain) {
  const Json j = io::parse(R"({"A": {"scalars": "Z", "ngens": 1}, "B": "A", "C": "A", "tensor": [[[1]]]})");
  const BilinearTensor f = io::read_bilinear(j);
  EXPECT_TRUE(f.A.same_object(f.B));
  EXPECT_TRUE(f.C.same_object(f.A));
  EXPECT_EQ(io::to_json(f)["B"], Json("A"));
}

TEST(JsonIo, BilinearViolationIsReported) {
  const Json j = io::parse(R"({"A": {"scalars": "Z", "ngens": 1, "relations": [[2]]}, "B": "A",
                              "C": {"scalars": "Z", "ngens": 1}, "tensor": [[[1]]]})");
  EXPECT_EQ(schema_path([&] { io::read_bilinear(j); }), "/tensor");
}

TEST(JsonIo, TermRoundTrip) {
  const Term t = Term::add(Term::smul(3, Term::mul(Term::var("x"), Term::constant(make_vector({1, 0}), "R"))),
                           Term::neg(Term::apply("f", Term::var("y"), Term::smul_param(Term::zero("R")))));
  EXPECT_EQ(io::read_term(io::to_json(t), ""), t);
  EXPECT_EQ(io::to_json(t).dump(),
            R"(["add",["smul",3,["mul",["var","x"],["const",[1,0],"R"]]],["neg",["f",["var","y"],["smul_param",["zero","R"]]]]])");
}

TEST(JsonIo, SystemAcceptsBothEquationForms) {
  const Json j = io::parse(R"({"variables": [{"name": "x", "sort": "R"}],
      "equations": [[["var", "x"], ["zero"]], {"lhs": ["sub", ["var", "x"], ["var", "x"]], "rhs": ["zero"]}]})");
  const EqSystem s = io::read_system(j);
  ASSERT_EQ(s.equations.size(), 2u);
  EXPECT_EQ(s.equations[1].lhs.kind, TermKind::Add);
  const EqSystem back = io::read_system(io::to_json(s));
  EXPECT_EQ(back.str(), s.str());
}

TEST(JsonIo, FieldPaths) {
  EXPECT_EQ(schema_path([] { io::read_module(io::parse(R"({"scalars": "Q", "ngens": 1})")); }), "/scalars");
  EXPECT_EQ(schema_path([] { io::read_module(io::parse(R"({"scalars": "Z"})")); }), "/ngens");
  EXPECT_EQ(schema_path([] { io::read_module(io::parse(R"({"scalars": "Z", "ngens": 2, "relations": [[1, 2], [3]]})")); }),
            "/relations/1");
  EXPECT_EQ(schema_path([] { io::read_module(io::parse(R"({"format": 2, "scalars": "Z", "ngens": 1})")); }), "/format");
  EXPECT_EQ(schema_path([] { io::read_system(io::parse(R"({"variables": [], "equations": [[["frob"], ["zero"]]]})")); }),
            "/equations/0/0");
  EXPECT_EQ(schema_path([] {
              io::read_algebra(io::parse(R"({"module": {"scalars": "Z", "ngens": 1}, "mult": [[[1, 2]]]})"));
            }),
            "/mult/0/0");
}

TEST(JsonIo, MalformedLocation) {
  try {
    io::parse("{\n  \"a\": 1,\n  \"b\" 2\n}");
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.kind(), "malformed json");
    EXPECT_NE(std::string(e.what()).find("line 3, column"), std::string::npos);
  }
}

TEST(JsonIo, FreeSpec) {
  const FreeTruncationSpec s = io::read_free_spec(io::parse(R"({"kind": "lie", "rank": 2, "degree_bound": 4})"));
  EXPECT_EQ(s.kind, FreeKind::Lie);
  EXPECT_EQ(s.rank, 2);
  EXPECT_EQ(s.degree_bound, 4);
  EXPECT_EQ(schema_path([] { io::read_free_spec(io::parse(R"({"kind": "group", "rank": 2, "degree_bound": 4})")); }), "/kind");
  EXPECT_EQ(schema_path([] { io::read_free_spec(io::parse(R"({"kind": "lie", "rank": 0, "degree_bound": 4})")); }), "/rank");
}

TEST(JsonIo, CompactDump) {
  const Json j{{"a", Json::array({1, 2, 3})}, {"b", "x,y"}};
  EXPECT_EQ(io::dump(j), "{\n  \"a\": [1, 2, 3],\n  \"b\": \"x,y\"\n}\n");
}
