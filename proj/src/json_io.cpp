#include "coquasi/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace coquasi::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw SchemaError(msg); }

const json& at(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object with key '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing key '") + key + "'");
  return *it;
}

std::size_t size_of(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

void collect_primes(const json& j, std::set<std::uint64_t>& out) {
  if (j.is_object()) {
    if (j.size() == 2 && j.contains("p") && j.contains("v") && j["p"].is_number_integer()) {
      out.insert(j["p"].get<std::uint64_t>());
      return;
    }
    for (const auto& [k, v] : j.items()) collect_primes(v, out);
  } else if (j.is_array()) {
    for (const auto& v : j) collect_primes(v, out);
  }
}

std::size_t object_ref(const json& j, const recon::MonoidalDiagram& d) {
  if (j.is_string()) {
    auto idx = d.find_object(j.get<std::string>());
    if (!idx) bad("unknown object '" + j.get<std::string>() + "'");
    return *idx;
  }
  std::size_t i = size_of(j, "object reference");
  if (i >= d.objects.size()) bad("object index " + std::to_string(i) + " out of range");
  return i;
}

std::size_t dim_of(const recon::MonoidalDiagram& d, std::size_t x) { return d.objects[x].dim; }

}  // namespace

Field parse_field(const std::string& s) {
  if (s == "rational") return Field::rational();
  if (s.rfind("fp:", 0) == 0) {
    try {
      std::size_t used = 0;
      unsigned long long p = std::stoull(s.substr(3), &used);
      if (used + 3 != s.size()) bad("bad field '" + s + "'");
      return Field::prime(p);
    } catch (const std::invalid_argument& e) {
      bad("bad field '" + s + "': " + e.what());
    } catch (const std::out_of_range&) {
      bad("bad field '" + s + "'");
    }
  }
  bad("field must be 'rational' or 'fp:<p>', got '" + s + "'");
}

Field resolve_field(const json& doc, std::optional<Field> forced) {
  std::set<std::uint64_t> primes;
  collect_primes(doc, primes);
  if (primes.size() > 1) bad("document mixes residues of several primes");
  if (primes.empty()) return forced.value_or(Field::rational());
  Field f;
  try {
    f = Field::prime(*primes.begin());
  } catch (const std::invalid_argument& e) {
    bad(e.what());
  }
  if (forced && *forced != f) bad("document is over " + f.name() + " but " + forced->name() + " was requested");
  return f;
}

Scalar scalar_from_json(const json& j, Field f) {
  static const std::regex pattern("-?[0-9]+(/[0-9]+)?");
  mpq_class q;
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (!std::regex_match(s, pattern)) bad("bad scalar '" + s + "'");
    q = mpq_class(s, 10);
    if (q.get_den() == 0) bad("zero denominator in '" + s + "'");
    q.canonicalize();
  } else if (j.is_number_unsigned()) {
    q = mpq_class(mpz_class(std::to_string(j.get<std::uint64_t>())));
  } else if (j.is_number_integer()) {
    q = mpq_class(mpz_class(std::to_string(j.get<std::int64_t>())));
  } else if (j.is_object()) {
    std::uint64_t p = size_of(at(j, "p"), "p"), v = size_of(at(j, "v"), "v");
    if (f.characteristic() != p) bad("residue mod " + std::to_string(p) + " in a document over " + f.name());
    if (v >= p) bad("residue " + std::to_string(v) + " is not reduced mod " + std::to_string(p));
    return Scalar(v, p);
  } else {
    bad("scalar must be a string, an integer or {\"p\", \"v\"}, got " + j.dump());
  }
  try {
    return f.from_rational(q);
  } catch (const std::domain_error& e) {
    bad(e.what());
  }
}

json to_json(const Scalar& s) {
  if (s.is_rational()) return s.rational().get_str();
  return json{{"p", s.residue().p}, {"v", s.residue().v}};
}

Vector vector_from_json(const json& j, Field f, std::size_t n) {
  if (!j.is_array() || j.size() != n) bad("expected a list of " + std::to_string(n) + " scalars");
  Vector v;
  v.reserve(n);
  for (const auto& e : j) v.push_back(scalar_from_json(e, f));
  return v;
}

Matrix matrix_from_json(const json& j, Field f, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    bad("expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  Matrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || row.size() != cols)
      bad("row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row[c], f);
  }
  return m;
}

json to_json(const Vector& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(to_json(s));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

json flat_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(to_json(m(r, c)));
  return out;
}

namespace {
Matrix row_from_json(const json& j, Field f, std::size_t n) { return Matrix::row_vector(f, vector_from_json(j, f, n)); }
Matrix col_from_json(const json& j, Field f, std::size_t n) {
  return Matrix::column_vector(f, vector_from_json(j, f, n));
}
}  // namespace

coalg::Coalgebra coalgebra_from_json(const json& j, Field f) {
  std::size_t n = size_of(at(j, "dim"), "dim");
  if (n == 0) bad("dim must be positive");
  return {n, matrix_from_json(at(j, "delta"), f, n * n, n), row_from_json(at(j, "counit"), f, n)};
}

coalg::Algebra algebra_from_json(const json& j, Field f) {
  std::size_t n = size_of(at(j, "dim"), "dim");
  if (n == 0) bad("dim must be positive");
  return {n, matrix_from_json(at(j, "mult"), f, n, n * n), col_from_json(at(j, "unit"), f, n)};
}

json to_json(const coalg::Coalgebra& c) {
  return json{{"dim", c.dim}, {"delta", to_json(c.delta)}, {"counit", flat_json(c.counit)}};
}

json to_json(const coalg::Algebra& a) {
  return json{{"dim", a.dim}, {"mult", to_json(a.mult)}, {"unit", flat_json(a.unit)}};
}

cqb::CoquasiBialgebra coquasi_from_json(const json& j, Field f) {
  if (j.is_object() && (j.contains("l") || j.contains("r")))
    bad("general unit constraints l, r are not supported; normalize so that l = r = counit and drop them");
  auto c = coalgebra_from_json(at(j, "coalgebra"), f);
  std::size_t n = c.dim;
  Matrix mult = matrix_from_json(at(j, "mult"), f, n, n * n);
  Matrix unit = col_from_json(at(j, "unit"), f, n);
  Matrix omega = row_from_json(at(j, "omega"), f, n * n * n);
  return cqb::CoquasiBialgebra::create(std::move(c), std::move(mult), std::move(unit), std::move(omega));
}

json to_json(const cqb::CoquasiBialgebra& h) {
  return json{{"coalgebra", to_json(h.coalgebra)},
              {"mult", to_json(h.mult)},
              {"unit", flat_json(h.unit)},
              {"omega", flat_json(h.omega)}};
}

qb::QuasiBialgebra quasi_from_json(const json& j, Field f) {
  auto a = algebra_from_json(at(j, "algebra"), f);
  std::size_t n = a.dim;
  Matrix delta = matrix_from_json(at(j, "delta"), f, n * n, n);
  Matrix counit = row_from_json(at(j, "counit"), f, n);
  Vector phi = vector_from_json(at(j, "phi"), f, n * n * n);
  std::optional<Vector> phi_inv;
  if (j.contains("phi_inv")) phi_inv = vector_from_json(j["phi_inv"], f, n * n * n);
  return qb::QuasiBialgebra::create(std::move(a), std::move(delta), std::move(counit), std::move(phi),
                                    std::move(phi_inv));
}

json to_json(const qb::QuasiBialgebra& a) {
  return json{{"algebra", to_json(a.algebra)},
              {"delta", to_json(a.delta)},
              {"counit", flat_json(a.counit)},
              {"phi", to_json(a.phi)}};
}

Matrix preantipode_from_json(const json& j, Field f, std::size_t n) {
  std::size_t d = size_of(at(j, "dim"), "dim");
  if (d != n) bad("preantipode has dim " + std::to_string(d) + ", structure has dim " + std::to_string(n));
  return matrix_from_json(at(j, "s"), f, n, n);
}

json preantipode_to_json(const Matrix& s) { return json{{"dim", s.rows()}, {"s", to_json(s)}}; }

json to_json(const cqb::CoquasiHopfData& q) {
  return json{{"s", to_json(q.s)}, {"alpha", flat_json(q.alpha)}, {"beta", flat_json(q.beta)}};
}

comodcat::Comodule comodule_from_json(const json& j, Field f, const OverResolver& resolve) {
  const auto& over = at(j, "over");
  std::shared_ptr<const cqb::CoquasiBialgebra> h;
  if (over.is_string())
    h = std::make_shared<const cqb::CoquasiBialgebra>(resolve(over.get<std::string>()));
  else
    h = std::make_shared<const cqb::CoquasiBialgebra>(coquasi_from_json(over, f));
  std::size_t d = size_of(at(j, "dim"), "dim");
  if (d == 0) bad("dim must be positive");
  Matrix rho = matrix_from_json(at(j, "rho"), f, h->dim() * d, d);
  return comodcat::Comodule{std::move(h), d, std::move(rho)};
}

json comodule_to_json(const comodcat::Comodule& c, const json& over) {
  return json{{"over", over}, {"dim", c.dim}, {"rho", to_json(c.rho)}};
}

recon::MonoidalDiagram diagram_from_json(const json& j, Field f) {
  recon::MonoidalDiagram d;
  d.field = f;
  const auto& objects = at(j, "objects");
  if (!objects.is_array() || objects.empty()) bad("objects must be a non-empty list");
  for (const auto& o : objects) {
    std::string name = at(o, "name").get<std::string>();
    if (d.find_object(name)) bad("duplicate object name '" + name + "'");
    std::size_t dim = size_of(at(o, "dim"), "dim");
    if (dim == 0) bad("object '" + name + "' has dim 0");
    d.objects.push_back({name, dim, std::nullopt});
  }
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].contains("coaction")) {
      const auto& c = objects[i]["coaction"];
      if (!c.is_array() || c.empty() || !c[0].is_array()) bad("coaction must be a matrix");
      std::size_t dim = d.objects[i].dim;
      if (c.size() % dim != 0) bad("coaction of '" + d.objects[i].name + "' must have a multiple of dim rows");
      d.objects[i].coaction = matrix_from_json(c, f, c.size(), dim);
    }
  if (j.contains("morphisms"))
    for (const auto& m : j["morphisms"]) {
      std::size_t from = object_ref(at(m, "from"), d), to = object_ref(at(m, "to"), d);
      d.morphisms.push_back({at(m, "name").get<std::string>(), from, to,
                             matrix_from_json(at(m, "matrix"), f, dim_of(d, to), dim_of(d, from))});
    }
  const auto& unit = at(j, "unit");
  d.unit_object = object_ref(at(unit, "object"), d);
  d.phi0 = col_from_json(at(unit, "phi0"), f, dim_of(d, d.unit_object));
  if (j.contains("tensor"))
    for (const auto& t : j["tensor"]) {
      std::size_t x = object_ref(at(t, "x"), d), y = object_ref(at(t, "y"), d), z = object_ref(at(t, "z"), d);
      if (d.tensor_of(x, y)) bad("duplicate tensor entry");
      d.tensor.push_back({x, y, z, matrix_from_json(at(t, "phi"), f, dim_of(d, z), dim_of(d, x) * dim_of(d, y))});
    }
  if (j.contains("associators"))
    for (const auto& a : j["associators"]) {
      std::size_t x = object_ref(at(a, "x"), d), y = object_ref(at(a, "y"), d), z = object_ref(at(a, "z"), d);
      const auto* xy = d.tensor_of(x, y);
      const auto* yz = d.tensor_of(y, z);
      const auto* l = xy ? d.tensor_of(xy->z, z) : nullptr;
      const auto* r = yz ? d.tensor_of(x, yz->z) : nullptr;
      if (!l || !r) bad("associator listed for a triple whose tensor entries are missing");
      d.associators.push_back({x, y, z, matrix_from_json(at(a, "matrix"), f, dim_of(d, r->z), dim_of(d, l->z))});
    }
  if (j.contains("duals"))
    for (const auto& du : j["duals"]) {
      std::size_t x = object_ref(at(du, "x"), d), s = object_ref(at(du, "dual"), d);
      std::size_t n = dim_of(d, x) * dim_of(d, s);
      d.duals.push_back({x, s, row_from_json(at(du, "ev"), f, n), col_from_json(at(du, "db"), f, n)});
    }
  return d;
}

json to_json(const recon::MonoidalDiagram& d) {
  auto name = [&](std::size_t x) { return d.objects[x].name; };
  json objects = json::array(), morphisms = json::array(), tensor = json::array(), assoc = json::array(),
       duals = json::array();
  for (const auto& o : d.objects) {
    json e{{"name", o.name}, {"dim", o.dim}};
    if (o.coaction) e["coaction"] = to_json(*o.coaction);
    objects.push_back(std::move(e));
  }
  for (const auto& m : d.morphisms)
    morphisms.push_back({{"name", m.name}, {"from", name(m.from)}, {"to", name(m.to)}, {"matrix", to_json(m.matrix)}});
  for (const auto& t : d.tensor)
    tensor.push_back({{"x", name(t.x)}, {"y", name(t.y)}, {"z", name(t.z)}, {"phi", to_json(t.phi)}});
  for (const auto& a : d.associators)
    assoc.push_back({{"x", name(a.x)}, {"y", name(a.y)}, {"z", name(a.z)}, {"matrix", to_json(a.matrix)}});
  for (const auto& du : d.duals)
    duals.push_back({{"x", name(du.x)}, {"dual", name(du.dual)}, {"ev", flat_json(du.ev)}, {"db", flat_json(du.db)}});
  return json{{"objects", objects},
              {"morphisms", morphisms},
              {"unit", {{"object", name(d.unit_object)}, {"phi0", flat_json(d.phi0)}}},
              {"tensor", tensor},
              {"associators", assoc},
              {"duals", duals}};
}

json coend_to_json(const recon::MonoidalDiagram& d, const recon::Coend& c, const cqb::CoquasiBialgebra& h) {
  json out = to_json(h);
  json proj = json::object();
  for (std::size_t x = 0; x < d.objects.size(); ++x) proj[d.objects[x].name] = to_json(c.proj[x]);
  out["proj"] = std::move(proj);
  return out;
}

json to_json(const Report& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"axiom", f.axiom}, {"index", f.index}});
  return json{{"pass", r.pass()}, {"failures", failures}, {"flags", r.flags}};
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << "pass      " << (r.pass() ? "true" : "false") << "\n";
  os << "failures  " << r.failures.size() << "\n";
  for (const auto& f : r.failures) {
    os << "  " << f.axiom;
    for (std::size_t i = 0; i < f.index.size(); ++i) os << (i == 0 ? "  [" : ", ") << f.index[i];
    if (!f.index.empty()) os << "]";
    os << "\n";
  }
  os << "flags     " << r.flags.size() << "\n";
  for (const auto& f : r.flags) os << "  " << f << "\n";
  return os.str();
}

json read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) bad("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    bad(p.string() + ": " + e.what());
  }
}

namespace {

bool is_leaf(const json& j) { return !j.is_structured() || (j.is_object() && j.size() == 2 && j.contains("p")); }

// Like json::dump(2), but a list of scalars stays on one line.
void write(std::ostringstream& os, const json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (is_leaf(j)) {
    os << j.dump();
  } else if (j.is_array()) {
    if (j.empty()) {
      os << "[]";
      return;
    }
    bool flat = std::all_of(j.begin(), j.end(), is_leaf);
    if (flat) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) os << (i ? ", " : "") << j[i].dump();
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      os << pad;
      write(os, j[i], indent + 2);
      os << (i + 1 < j.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "]";
  } else {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    std::size_t i = 0;
    for (const auto& [k, v] : j.items()) {
      os << pad << json(k).dump() << ": ";
      write(os, v, indent + 2);
      os << (++i < j.size() ? ",\n" : "\n");
    }
    os << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  }
}

}  // namespace

std::string dump(const json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

}  // namespace coquasi::io
