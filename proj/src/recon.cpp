#include "coquasi/recon.hpp"

#include <array>
#include <functional>

#include "coquasi/ops.hpp"

namespace coquasi::recon {

using exactla::Scalar;
using exactla::SparseVector;
using exactla::Vector;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::string obj_name(const MonoidalDiagram& d, std::size_t x) { return d.objects.at(x).name; }

void check_matrix(const Matrix& m, Field f, std::size_t rows, std::size_t cols, const std::string& what) {
  require(m.field() == f, what + ": field mismatch");
  require(m.rows() == rows && m.cols() == cols,
          what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// The coalgebra only needs objects and morphisms; the monoidal data is
// checked when `monoidal` is set.
void check_shapes(const MonoidalDiagram& d, bool monoidal = true) {
  std::size_t no = d.objects.size();
  require(no > 0, "diagram has no objects");
  auto dim = [&](std::size_t x) {
    require(x < no, "object index out of range");
    return d.objects[x].dim;
  };
  for (const auto& o : d.objects) require(o.dim > 0, "object " + o.name + " has dimension 0");
  for (const auto& m : d.morphisms) check_matrix(m.matrix, d.field, dim(m.to), dim(m.from), "morphism " + m.name);
  if (!monoidal) return;
  check_matrix(d.phi0, d.field, dim(d.unit_object), 1, "phi0");
  for (const auto& t : d.tensor)
    check_matrix(t.phi, d.field, dim(t.z), dim(t.x) * dim(t.y),
                 "tensor phi (" + obj_name(d, t.x) + ", " + obj_name(d, t.y) + ")");
  for (const auto& a : d.associators) {
    const auto* xy = d.tensor_of(a.x, a.y);
    const auto* yz = d.tensor_of(a.y, a.z);
    if (!xy || !yz) continue;  // reported as tensor_missing
    const auto* l = d.tensor_of(xy->z, a.z);
    const auto* r = d.tensor_of(a.x, yz->z);
    if (!l || !r) continue;
    check_matrix(a.matrix, d.field, dim(r->z), dim(l->z), "associator");
  }
  for (const auto& du : d.duals) {
    std::size_t dx = dim(du.x), ds = dim(du.dual);
    check_matrix(du.ev, d.field, 1, dx * ds, "ev of " + obj_name(d, du.x));
    check_matrix(du.db, d.field, ds * dx, 1, "db of " + obj_name(d, du.x));
  }
}

Matrix inverse_or_throw(const Matrix& m, const std::string& what) {
  auto inv = exactla::inverse(m);
  if (!inv) throw std::invalid_argument(what + " is not invertible");
  return *inv;
}

struct Generator {
  std::size_t obj, a, b;
};

// Shared plumbing for maps defined on the ambient space of the coend.
class Ambient {
 public:
  Ambient(const MonoidalDiagram& d, const Coend& c) : d_(d), c_(c), proj_cols_(exactla::column_terms(c.quotient.proj)) {
    for (std::size_t x = 0; x < d.objects.size(); ++x) {
      std::size_t n = d.objects[x].dim;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) gens_.push_back({x, a, b});
    }
  }

  std::size_t index(std::size_t x, std::size_t a, std::size_t b) const {
    return c_.offset[x] + a * d_.objects[x].dim + b;
  }
  const Generator& gen(std::size_t g) const { return gens_[g]; }
  std::size_t size() const { return gens_.size(); }
  std::size_t rep(std::size_t beta) const { return c_.quotient.basis_coords[beta]; }
  const SparseVector& proj(std::size_t g) const { return proj_cols_[g]; }

  /// Projects an ambient sparse vector to H.
  Vector project(const SparseVector& v) const {
    Vector out(c_.dim(), d_.field.zero());
    for (const auto& e : v) ops::add_scaled(out, proj_cols_[e.index], e.value);
    return out;
  }

  /// Relation generators of the quotient, with the label of their morphism.
  std::vector<std::pair<std::string, SparseVector>> relations() const {
    std::vector<std::pair<std::string, SparseVector>> out;
    for (const auto& m : d_.morphisms) {
      std::size_t dx = d_.objects[m.from].dim, dy = d_.objects[m.to].dim;
      for (std::size_t a = 0; a < dx; ++a)
        for (std::size_t b = 0; b < dy; ++b) {
          ops::RowBuilder row;
          for (std::size_t c = 0; c < dx; ++c) row.add(index(m.from, a, c), m.matrix(b, c));
          for (std::size_t e = 0; e < dy; ++e) row.add(index(m.to, e, b), -m.matrix(e, a));
          auto r = row.take();
          if (!r.empty()) out.emplace_back(m.name, std::move(r));
        }
    }
    return out;
  }

 private:
  const MonoidalDiagram& d_;
  const Coend& c_;
  std::vector<SparseVector> proj_cols_;
  std::vector<Generator> gens_;
};

// (phi_XY (x) id)^{-1} phi_{XY,Z}^{-1} U(a)^{-1} phi_{X,YZ} (id (x) phi_YZ): the U-level image of omega.
class PsiCache {
 public:
  explicit PsiCache(const MonoidalDiagram& d) : d_(d) {}

  const Matrix& get(std::size_t x, std::size_t y, std::size_t z) {
    std::array<std::size_t, 3> key{x, y, z};
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const auto* xy = need_tensor(x, y);
    const auto* yz = need_tensor(y, z);
    const auto* l = need_tensor(xy->z, z);
    const auto* r = need_tensor(x, yz->z);
    const auto* a = d_.associator_of(x, y, z);
    if (!a)
      throw std::invalid_argument("no associator for (" + obj_name(d_, x) + ", " + obj_name(d_, y) + ", " +
                                  obj_name(d_, z) + ")");
    Field f = d_.field;
    Matrix ix = Matrix::identity(f, d_.objects[x].dim), iz = Matrix::identity(f, d_.objects[z].dim);
    Matrix psi = exactla::kron(inverse_or_throw(xy->phi, "tensor phi"), iz) * inverse_or_throw(l->phi, "tensor phi") *
                 inverse_or_throw(a->matrix, "associator") * r->phi * exactla::kron(ix, yz->phi);
    return cache_.emplace(key, std::move(psi)).first->second;
  }

 private:
  const MonoidalDiagram::Tensor* need_tensor(std::size_t x, std::size_t y) const {
    const auto* t = d_.tensor_of(x, y);
    if (!t) throw std::invalid_argument("no tensor entry for (" + obj_name(d_, x) + ", " + obj_name(d_, y) + ")");
    return t;
  }
  const MonoidalDiagram& d_;
  std::map<std::array<std::size_t, 3>, Matrix> cache_;
};

[[noreturn]] void not_well_defined(const std::string& map, const std::string& morphism) {
  throw WellDefinednessError(map + " does not descend to the coend: relation from morphism '" + morphism + "'");
}

/// Builds the H-matrix of a linear map defined on generators and checks that
/// it kills every relation. `image(g)` returns the ambient image of generator g
/// as a dense vector in the target (already projected when the target is H).
Matrix descend(const Ambient& amb, const Coend& c, Field f, std::size_t rows, const std::string& name,
               const std::function<Vector(std::size_t)>& image) {
  Matrix out(f, rows, c.dim());
  for (std::size_t beta = 0; beta < c.dim(); ++beta) {
    Vector v = image(amb.rep(beta));
    for (std::size_t r = 0; r < rows; ++r) out(r, beta) = v[r];
  }
  for (const auto& [label, rel] : amb.relations()) {
    Vector acc(rows, f.zero());
    for (const auto& e : rel) ops::add_scaled(acc, image(e.index), e.value);
    if (!exactla::is_zero(acc)) not_well_defined(name, label);
  }
  return out;
}

}  // namespace

std::optional<std::size_t> MonoidalDiagram::find_object(const std::string& name) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].name == name) return i;
  return std::nullopt;
}

const MonoidalDiagram::Tensor* MonoidalDiagram::tensor_of(std::size_t x, std::size_t y) const {
  for (const auto& t : tensor)
    if (t.x == x && t.y == y) return &t;
  return nullptr;
}

const MonoidalDiagram::Associator* MonoidalDiagram::associator_of(std::size_t x, std::size_t y, std::size_t z) const {
  for (const auto& a : associators)
    if (a.x == x && a.y == y && a.z == z) return &a;
  return nullptr;
}

const MonoidalDiagram::Dual* MonoidalDiagram::dual_of(std::size_t x) const {
  for (const auto& du : duals)
    if (du.x == x) return &du;
  return nullptr;
}

Report validate_diagram(const MonoidalDiagram& d) {
  check_shapes(d);
  Report r;
  Field f = d.field;
  std::size_t no = d.objects.size();
  for (const auto& t : d.tensor)
    if (!exactla::inverse(t.phi)) r.fail("phi_invertible", {t.x, t.y});
  if (!exactla::inverse(d.phi0)) r.fail("phi0_invertible");
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y)
      if (!d.tensor_of(x, y)) r.fail("tensor_missing", {x, y});
  for (std::size_t x = 0; x < no; ++x)
    for (std::size_t y = 0; y < no; ++y)
      for (std::size_t z = 0; z < no; ++z)
        if (!d.associator_of(x, y, z)) r.fail("associator_missing", {x, y, z});
  if (!r.pass()) return r;

  // strict unit: I (x) X = X = X (x) I with phi(phi0 (x) id) = id
  std::size_t u = d.unit_object;
  for (std::size_t x = 0; x < no; ++x) {
    Matrix id = Matrix::identity(f, d.objects[x].dim);
    const auto* l = d.tensor_of(u, x);
    const auto* rt = d.tensor_of(x, u);
    if (l->z != x || l->phi * exactla::kron(d.phi0, id) != id) r.fail("unit_neutrality", {x, 0});
    if (rt->z != x || rt->phi * exactla::kron(id, d.phi0) != id) r.fail("unit_neutrality", {x, 1});
  }

  PsiCache psi(d);
  for (std::size_t x = 0; x < no; ++x) {
    const auto* du = d.dual_of(x);
    if (!du) {
      r.fail("dual_missing", {x});
      continue;
    }
    Matrix ix = Matrix::identity(f, d.objects[x].dim), is = Matrix::identity(f, d.objects[du->dual].dim);
    if (exactla::kron(du->ev, ix) * psi.get(x, du->dual, x) * exactla::kron(ix, du->db) != ix)
      r.fail("dual_zigzag_1", {x});
    auto inv = exactla::inverse(psi.get(du->dual, x, du->dual));
    if (!inv || exactla::kron(is, du->ev) * *inv * exactla::kron(du->db, is) != is) r.fail("dual_zigzag_2", {x});
  }
  return r;
}

MonoidalDiagram close_under_composition(const MonoidalDiagram& d, std::size_t cap) {
  MonoidalDiagram out = d;
  bool grown = true;
  while (grown && out.morphisms.size() < cap) {
    grown = false;
    std::size_t count = out.morphisms.size();
    for (std::size_t i = 0; i < count && out.morphisms.size() < cap; ++i)
      for (std::size_t j = 0; j < count && out.morphisms.size() < cap; ++j) {
        const auto& f = out.morphisms[i];
        const auto& g = out.morphisms[j];
        if (f.to != g.from) continue;
        Matrix comp = g.matrix * f.matrix;
        bool known = false;
        for (const auto& h : out.morphisms)
          if (h.from == f.from && h.to == g.to && h.matrix == comp) known = true;
        if (known) continue;
        out.morphisms.push_back({g.name + "*" + f.name, f.from, g.to, std::move(comp)});
        grown = true;
      }
  }
  return out;
}

Coend coend_coalgebra(const MonoidalDiagram& d) {
  check_shapes(d, false);
  Field f = d.field;
  Coend c;
  std::size_t total = 0;
  for (const auto& o : d.objects) {
    c.offset.push_back(total);
    total += o.dim * o.dim;
  }
  // relations are assembled by Ambient, which needs the offsets only
  c.quotient.proj = Matrix(f, 0, total);
  Ambient pre(d, c);
  std::vector<SparseVector> rels;
  for (auto& [label, rel] : pre.relations()) rels.push_back(rel);
  c.quotient = exactla::quotient(f, total, std::move(rels));
  std::size_t n = c.quotient.dim();

  Ambient amb(d, c);
  auto delta_image = [&](std::size_t g) {
    const auto& gen = amb.gen(g);
    Vector out(n * n, f.zero());
    for (std::size_t i = 0; i < d.objects[gen.obj].dim; ++i) {
      for (const auto& l : amb.proj(amb.index(gen.obj, gen.a, i)))
        for (const auto& r : amb.proj(amb.index(gen.obj, i, gen.b))) out[l.index * n + r.index] += l.value * r.value;
    }
    return out;
  };
  auto counit_image = [&](std::size_t g) {
    const auto& gen = amb.gen(g);
    return Vector{gen.a == gen.b ? f.one() : f.zero()};
  };
  Matrix delta = descend(amb, c, f, n * n, "comultiplication", delta_image);
  Matrix counit = descend(amb, c, f, 1, "counit", counit_image);
  c.coalgebra = coalg::Coalgebra{n, std::move(delta), std::move(counit)};

  for (std::size_t x = 0; x < d.objects.size(); ++x) {
    std::size_t dx = d.objects[x].dim;
    Matrix p(f, n, dx * dx), rho(f, n * dx, dx);
    for (std::size_t a = 0; a < dx; ++a)
      for (std::size_t b = 0; b < dx; ++b)
        for (const auto& e : amb.proj(amb.index(x, a, b))) {
          p(e.index, a * dx + b) = e.value;
          rho(e.index * dx + b, a) = e.value;
        }
    c.proj.push_back(std::move(p));
    c.delta.push_back(std::move(rho));
  }

  Report r = coalg::check_coalgebra(c.coalgebra);
  if (!r.pass()) throw std::runtime_error("coend coalgebra fails " + r.failures.front().axiom);
  return c;
}

CoquasiBialgebra coend_bialgebra(const MonoidalDiagram& d, const Coend& c) {
  check_shapes(d);
  Field f = d.field;
  std::size_t n = c.dim();
  Ambient amb(d, c);
  std::size_t G = amb.size();

  std::map<std::pair<std::size_t, std::size_t>, Matrix> phi_inv;
  auto tensor = [&](std::size_t x, std::size_t y) -> std::pair<const MonoidalDiagram::Tensor*, const Matrix*> {
    const auto* t = d.tensor_of(x, y);
    if (!t) throw std::invalid_argument("no tensor entry for (" + obj_name(d, x) + ", " + obj_name(d, y) + ")");
    auto it = phi_inv.find({x, y});
    if (it == phi_inv.end()) it = phi_inv.emplace(std::make_pair(x, y), inverse_or_throw(t->phi, "tensor phi")).first;
    return {t, &it->second};
  };

  // m(gen_X(a, b), gen_Y(c, e)) = sum phi[p, (a, c)] phi^{-1}[(b, e), q] gen_Z(p, q), projected
  auto mult_amb = [&](std::size_t g1, std::size_t g2) {
    const auto& x = amb.gen(g1);
    const auto& y = amb.gen(g2);
    auto [t, pinv] = tensor(x.obj, y.obj);
    std::size_t dy = d.objects[y.obj].dim, dz = d.objects[t->z].dim;
    ops::RowBuilder acc;
    for (std::size_t p = 0; p < dz; ++p) {
      const auto& cp = t->phi(p, x.a * dy + y.a);
      if (cp.is_zero()) continue;
      for (std::size_t q = 0; q < dz; ++q) {
        const auto& cq = (*pinv)(x.b * dy + y.b, q);
        if (!cq.is_zero()) acc.add(amb.index(t->z, p, q), cp * cq);
      }
    }
    return amb.project(acc.take());
  };

  auto rels = amb.relations();
  Matrix mult(f, n, n * n);
  for (std::size_t b1 = 0; b1 < n; ++b1)
    for (std::size_t b2 = 0; b2 < n; ++b2) {
      Vector v = mult_amb(amb.rep(b1), amb.rep(b2));
      for (std::size_t r = 0; r < n; ++r) mult(r, b1 * n + b2) = v[r];
    }
  for (const auto& [label, rel] : rels)
    for (std::size_t g = 0; g < G; ++g) {
      Vector l(n, f.zero()), r(n, f.zero());
      for (const auto& e : rel) {
        ops::add_scaled(l, mult_amb(e.index, g), e.value);
        ops::add_scaled(r, mult_amb(g, e.index), e.value);
      }
      if (!exactla::is_zero(l) || !exactla::is_zero(r)) not_well_defined("multiplication", label);
    }

  std::size_t iu = d.unit_object;
  require(d.objects[iu].dim == 1, "unit object must be one-dimensional");
  Matrix phi0_inv = inverse_or_throw(d.phi0, "phi0");
  Vector uvec = amb.project(SparseVector{{amb.index(iu, 0, 0), d.phi0(0, 0) * phi0_inv(0, 0)}});
  Matrix unit = Matrix::column_vector(f, uvec);

  PsiCache psi(d);
  auto omega_amb = [&](std::size_t g1, std::size_t g2, std::size_t g3) {
    const auto& x = amb.gen(g1);
    const auto& y = amb.gen(g2);
    const auto& z = amb.gen(g3);
    const Matrix& p = psi.get(x.obj, y.obj, z.obj);
    std::size_t dy = d.objects[y.obj].dim, dz = d.objects[z.obj].dim;
    return p((x.b * dy + y.b) * dz + z.b, (x.a * dy + y.a) * dz + z.a);
  };
  Matrix omega(f, 1, n * n * n);
  for (std::size_t b1 = 0; b1 < n; ++b1)
    for (std::size_t b2 = 0; b2 < n; ++b2)
      for (std::size_t b3 = 0; b3 < n; ++b3)
        omega(0, (b1 * n + b2) * n + b3) = omega_amb(amb.rep(b1), amb.rep(b2), amb.rep(b3));
  for (const auto& [label, rel] : rels)
    for (std::size_t g = 0; g < G; ++g)
      for (std::size_t h = 0; h < G; ++h) {
        Scalar s1 = f.zero(), s2 = f.zero(), s3 = f.zero();
        for (const auto& e : rel) {
          s1 += e.value * omega_amb(e.index, g, h);
          s2 += e.value * omega_amb(g, e.index, h);
          s3 += e.value * omega_amb(g, h, e.index);
        }
        if (!s1.is_zero() || !s2.is_zero() || !s3.is_zero()) not_well_defined("reassociator", label);
      }

  auto h = CoquasiBialgebra::create(c.coalgebra, std::move(mult), std::move(unit), std::move(omega));
  Report r = cqb::validate_coquasi(h);
  if (!r.pass()) throw std::runtime_error("reconstructed structure fails " + r.failures.front().axiom);
  return h;
}

Matrix coend_preantipode(const MonoidalDiagram& d, const Coend& c, const CoquasiBialgebra& h) {
  check_shapes(d);
  Field f = d.field;
  Ambient amb(d, c);
  auto image = [&](std::size_t g) {
    const auto& gen = amb.gen(g);
    const auto* du = d.dual_of(gen.obj);
    if (!du) throw std::invalid_argument("no dual listed for " + obj_name(d, gen.obj));
    std::size_t dx = d.objects[gen.obj].dim, ds = d.objects[du->dual].dim;
    ops::RowBuilder acc;
    for (std::size_t j = 0; j < ds; ++j) {
      const auto& cj = du->db(j * dx + gen.b, 0);
      if (cj.is_zero()) continue;
      for (std::size_t i = 0; i < ds; ++i) acc.add(amb.index(du->dual, j, i), cj * du->ev(0, gen.a * ds + i));
    }
    return amb.project(acc.take());
  };
  Matrix s = descend(amb, c, f, c.dim(), "preantipode", image);
  Report r = cqb::check_preantipode(h, s);
  if (!r.pass()) throw std::runtime_error("reconstructed preantipode fails " + r.failures.front().axiom);
  return s;
}

cqb::CoquasiHopfData coend_coquasi_antipode(const MonoidalDiagram& d, const Coend& c, const CoquasiBialgebra& h,
                                            const std::vector<Matrix>& nu) {
  check_shapes(d);
  Field f = d.field;
  require(nu.size() == d.objects.size(), "one nu per object is required");
  std::vector<Matrix> nu_inv;
  for (std::size_t x = 0; x < nu.size(); ++x) {
    const auto* du = d.dual_of(x);
    if (!du) throw std::invalid_argument("no dual listed for " + obj_name(d, x));
    check_matrix(nu[x], f, d.objects[x].dim, d.objects[du->dual].dim, "nu of " + obj_name(d, x));
    nu_inv.push_back(inverse_or_throw(nu[x], "nu of " + obj_name(d, x)));
  }
  Ambient amb(d, c);
  auto alpha_image = [&](std::size_t g) {
    const auto& gen = amb.gen(g);
    const auto* du = d.dual_of(gen.obj);
    std::size_t dx = d.objects[gen.obj].dim, ds = d.objects[du->dual].dim;
    Scalar acc = f.zero();
    for (std::size_t j = 0; j < ds; ++j) acc += nu[gen.obj](gen.a, j) * du->db(j * dx + gen.b, 0);
    return Vector{acc};
  };
  auto beta_image = [&](std::size_t g) {
    const auto& gen = amb.gen(g);
    const auto* du = d.dual_of(gen.obj);
    std::size_t ds = d.objects[du->dual].dim;
    Scalar acc = f.zero();
    for (std::size_t j = 0; j < ds; ++j) acc += du->ev(0, gen.a * ds + j) * nu_inv[gen.obj](j, gen.b);
    return Vector{acc};
  };
  auto s_image = [&](std::size_t g) {
    const auto& gen = amb.gen(g);
    const auto* du = d.dual_of(gen.obj);
    std::size_t ds = d.objects[du->dual].dim;
    ops::RowBuilder acc;
    for (std::size_t j = 0; j < ds; ++j) {
      const auto& cj = nu_inv[gen.obj](j, gen.b);
      if (cj.is_zero()) continue;
      for (std::size_t l = 0; l < ds; ++l) acc.add(amb.index(du->dual, j, l), cj * nu[gen.obj](gen.a, l));
    }
    return amb.project(acc.take());
  };
  cqb::CoquasiHopfData q{descend(amb, c, f, c.dim(), "coquasi-antipode s", s_image),
                         descend(amb, c, f, 1, "coquasi-antipode alpha", alpha_image),
                         descend(amb, c, f, 1, "coquasi-antipode beta", beta_image)};
  Report r = cqb::validate_coquasi_hopf(h, q);
  if (!r.pass()) throw std::runtime_error("reconstructed coquasi-antipode fails " + r.failures.front().axiom);
  return q;
}

CanResult can_map(const MonoidalDiagram& d, const Coend& c, const CoquasiBialgebra& h, const CoquasiBialgebra& b) {
  check_shapes(d);
  Field f = d.field;
  std::size_t nb = b.dim();
  auto bp = std::make_shared<const CoquasiBialgebra>(b);
  std::vector<comodcat::Comodule> comods;
  for (const auto& o : d.objects) {
    require(o.coaction.has_value(), "object " + o.name + " carries no coaction");
    check_matrix(*o.coaction, f, nb * o.dim, o.dim, "coaction of " + o.name);
    comodcat::Comodule m{bp, o.dim, *o.coaction};
    require(comodcat::check_comodule(m).pass(), "coaction of " + o.name + " is not a comodule");
    comods.push_back(std::move(m));
  }
  for (const auto& m : d.morphisms)
    require(comodcat::is_colinear(m.matrix, comods[m.from], comods[m.to]), "morphism " + m.name + " is not colinear");

  Ambient amb(d, c);
  auto image = [&](std::size_t g) {
    const auto& gen = amb.gen(g);
    std::size_t dx = d.objects[gen.obj].dim;
    Vector out(nb, f.zero());
    for (std::size_t beta = 0; beta < nb; ++beta) out[beta] = (*d.objects[gen.obj].coaction)(beta * dx + gen.b, gen.a);
    return out;
  };
  CanResult out;
  out.can = descend(amb, c, f, nb, "can", image);
  out.report = cqb::check_morphism(out.can, h, b);
  out.bijective = nb == c.dim() && exactla::inverse(out.can).has_value();
  if (out.bijective) out.report.flag("Galois");
  return out;
}

CoquasiBialgebra transport(const CoquasiBialgebra& h, const Matrix& can) {
  Matrix inv = inverse_or_throw(can, "can");
  Matrix delta = exactla::kron(can, can) * h.coalgebra.delta * inv;
  Matrix counit = h.coalgebra.counit * inv;
  Matrix mult = can * h.mult * exactla::kron(inv, inv);
  Matrix unit = can * h.unit;
  Matrix omega = h.omega * exactla::kron(exactla::kron(inv, inv), inv);
  return CoquasiBialgebra::create(coalg::Coalgebra{h.dim(), delta, counit}, mult, unit, omega);
}

Reconstruction reconstruct(const MonoidalDiagram& d) {
  Coend c = coend_coalgebra(d);
  CoquasiBialgebra h = coend_bialgebra(d, c);
  Matrix s = coend_preantipode(d, c, h);
  return {std::move(c), std::move(h), std::move(s)};
}

}  // namespace coquasi::recon
