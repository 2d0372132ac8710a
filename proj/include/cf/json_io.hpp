#pragma once

#include <string>

#include <json.hpp>

#include "cf/algebra.hpp"
#include "cf/bilinear.hpp"
#include "cf/error.hpp"
#include "cf/interpretation.hpp"
#include "cf/scalar_ring.hpp"
#include "cf/solver.hpp"
#include "cf/structure.hpp"
#include "cf/term.hpp"

// JSON documents, format 1. Integers are numbers when they fit in 64 bits, strings otherwise.
namespace cf::io {

using Json = nlohmann::ordered_json;

inline constexpr int kFormat = 1;

// Schema violation at a JSON pointer such as /tensor/0/1.
class SchemaError : public ValidationError {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : ValidationError("schema violation", (path.empty() ? "/" : path) + ": " + message), path_(path.empty() ? "/" : path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Throws ValidationError("malformed json") with line and column.
Json parse(const std::string& text);
Json read_file(const std::string& path);
std::string dump(const Json& j);

// A "format" member, when present, must be 1.
void check_format(const Json& j, const std::string& path = "");

Json to_json(const Integer& a);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);
Json to_json(const std::vector<Integer>& v);
Json to_json(const Scalars& s);
Json to_json(const Cardinality& c);
Json to_json(const FgModule& m);
Json to_json(const AlgebraPresentation& a);
Json to_json(const BilinearTensor& f);
Json to_json(const Term& t);
Json to_json(const EqSystem& s);
Json to_json(const Structure& st);
Json to_json(const Certificate& c);
Json to_json(const Interpretation& phi);
Json to_json(const Translation& t);
Json to_json(const Verdict& v);
Json to_json(const Solutions& s);
Json to_json(const ScalarRing& r);

Integer read_integer(const Json& j, const std::string& path);
Vector read_vector(const Json& j, const std::string& path, Index size = -1);
Matrix read_matrix(const Json& j, const std::string& path, Index cols);
Scalars read_scalars(const Json& j, const std::string& path);
FgModule read_module(const Json& j, const std::string& path = "");
AlgebraPresentation read_algebra(const Json& j, const std::string& path = "");
// "B" or "C" may be the string "A" (or "B") to reuse one module object.
BilinearTensor read_bilinear(const Json& j, const std::string& path = "");
Term read_term(const Json& j, const std::string& path);
EqSystem read_system(const Json& j, const std::string& path = "");
FreeTruncationSpec read_free_spec(const Json& j, const std::string& path = "");

}  // namespace cf::io
