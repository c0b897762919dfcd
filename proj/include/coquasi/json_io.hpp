#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "coquasi/quasi.hpp"
#include "coquasi/recon.hpp"

namespace coquasi::io {

using json = nlohmann::json;  // std::map objects: keys come out sorted
using exactla::Field;
using exactla::Matrix;
using exactla::Scalar;
using exactla::Vector;

/// Malformed input: wrong shape, bad scalar, missing key, unknown name.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "rational" or "fp:<p>".
Field parse_field(const std::string& s);

/// The field the document's scalars live in: F_p if any {"p", "v"} scalar
/// occurs, else the rationals. With `forced`, rational input is reduced mod p;
/// residues of a different prime are rejected.
Field resolve_field(const json& doc, std::optional<Field> forced);

Scalar scalar_from_json(const json& j, Field f);
json to_json(const Scalar& s);

Vector vector_from_json(const json& j, Field f, std::size_t n);
Matrix matrix_from_json(const json& j, Field f, std::size_t rows, std::size_t cols);
json to_json(const Vector& v);
json to_json(const Matrix& m);
/// A 1 x n or n x 1 matrix written as a flat list.
json flat_json(const Matrix& m);

coalg::Coalgebra coalgebra_from_json(const json& j, Field f);
coalg::Algebra algebra_from_json(const json& j, Field f);
json to_json(const coalg::Coalgebra& c);
json to_json(const coalg::Algebra& a);

cqb::CoquasiBialgebra coquasi_from_json(const json& j, Field f);
json to_json(const cqb::CoquasiBialgebra& h);

qb::QuasiBialgebra quasi_from_json(const json& j, Field f);
json to_json(const qb::QuasiBialgebra& a);

/// {"dim": n, "s": [[...]]}
Matrix preantipode_from_json(const json& j, Field f, std::size_t n);
json preantipode_to_json(const Matrix& s);

/// {"s", "alpha", "beta"} with alpha and beta as flat lists.
json to_json(const cqb::CoquasiHopfData& q);

/// Resolves a string "over" reference to a coquasi-bialgebra.
using OverResolver = std::function<cqb::CoquasiBialgebra(const std::string&)>;
comodcat::Comodule comodule_from_json(const json& j, Field f, const OverResolver& resolve);
json comodule_to_json(const comodcat::Comodule& c, const json& over);

recon::MonoidalDiagram diagram_from_json(const json& j, Field f);
json to_json(const recon::MonoidalDiagram& d);

/// The coend structure plus {"proj": {object name: matrix}}.
json coend_to_json(const recon::MonoidalDiagram& d, const recon::Coend& c, const cqb::CoquasiBialgebra& h);

/// {"pass", "failures": [{"axiom", "index"}], "flags"}
json to_json(const Report& r);
/// One line per failure, mirroring the JSON report.
std::string report_text(const Report& r);

json read_file(const std::filesystem::path& p);
/// Canonical rendering: two-space indent, sorted keys, trailing newline.
std::string dump(const json& j);

}  // namespace coquasi::io
