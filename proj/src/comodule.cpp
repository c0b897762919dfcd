#include "coquasi/comodule.hpp"

#include <stdexcept>

#include "coquasi/ops.hpp"

namespace coquasi::comodcat {

using exactla::Scalar;
using exactla::SparseVector;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_shape(const Comodule& v) {
  require(v.h != nullptr, "comodule without coquasi-bialgebra");
  require(v.rho.rows() == v.h->dim() * v.dim && v.rho.cols() == v.dim, "coaction must be (n*d) x d");
}

void same_h(const Comodule& a, const Comodule& b) {
  if (a.h != b.h && !(a.h->coalgebra.delta == b.h->coalgebra.delta && a.h->mult == b.h->mult &&
                      a.h->omega == b.h->omega))
    throw std::invalid_argument("comodules over different coquasi-bialgebras");
}

struct CoactionTerm {
  std::size_t h;
  std::size_t v;
  Scalar coef;
};

// rho(e_j) as (H index, V index, coefficient)
std::vector<std::vector<CoactionTerm>> coaction_terms(const Comodule& c) {
  std::vector<std::vector<CoactionTerm>> out(c.dim);
  for (std::size_t j = 0; j < c.dim; ++j)
    for (const auto& e : c.rho.sparse_column(j)) out[j].push_back({e.index / c.dim, e.index % c.dim, e.value});
  return out;
}

Matrix reassociate(const Comodule& u, const Comodule& v, const Comodule& w, const Matrix& form) {
  same_h(u, v);
  same_h(v, w);
  std::size_t n = u.h->dim();
  std::size_t du = u.dim, dv = v.dim, dw = w.dim;
  auto tu = coaction_terms(u), tv = coaction_terms(v), tw = coaction_terms(w);
  Matrix a(u.field(), du * dv * dw, du * dv * dw);
  for (std::size_t i = 0; i < du; ++i)
    for (std::size_t j = 0; j < dv; ++j)
      for (std::size_t k = 0; k < dw; ++k)
        for (const auto& x : tu[i])
          for (const auto& y : tv[j])
            for (const auto& z : tw[k]) {
              Scalar c = x.coef * y.coef * z.coef * form(0, (x.h * n + y.h) * n + z.h);
              if (!c.is_zero()) a((x.v * dv + y.v) * dw + z.v, (i * dv + j) * dw + k) += c;
            }
  return a;
}

}  // namespace

Report check_comodule(const Comodule& v) {
  check_shape(v);
  Report r;
  std::size_t n = v.h->dim(), d = v.dim;
  Field f = v.field();
  auto dt = coalg::coproduct_terms(v.h->coalgebra);
  auto terms = coaction_terms(v);
  for (std::size_t j = 0; j < d; ++j) {
    Vector lhs(n * n * d, f.zero()), rhs(n * n * d, f.zero());
    Vector counit(d, f.zero());
    for (const auto& t : terms[j]) {
      for (const auto& s : dt.of[t.h]) lhs[(s.left * n + s.right) * d + t.v] += t.coef * s.coef;
      for (const auto& t2 : terms[t.v]) rhs[(t.h * n + t2.h) * d + t2.v] += t.coef * t2.coef;
      counit[t.v] += t.coef * v.h->coalgebra.counit(0, t.h);
    }
    if (lhs != rhs) r.fail("coaction_coassociativity", {j});
    if (counit != exactla::unit_vector(f, d, j)) r.fail("coaction_counit", {j});
  }
  return r;
}

Comodule trivial_comodule(std::shared_ptr<const CoquasiBialgebra> h) {
  Matrix rho = h->unit;
  return Comodule{std::move(h), 1, std::move(rho)};
}

Comodule regular_comodule(std::shared_ptr<const CoquasiBialgebra> h) {
  std::size_t n = h->dim();
  Matrix rho = h->coalgebra.delta;
  return Comodule{std::move(h), n, std::move(rho)};
}

Comodule direct_sum(const Comodule& v, const Comodule& w) {
  same_h(v, w);
  std::size_t n = v.h->dim(), d = v.dim + w.dim;
  Matrix rho(v.field(), n * d, d);
  for (std::size_t j = 0; j < v.dim; ++j)
    for (const auto& e : v.rho.sparse_column(j)) rho((e.index / v.dim) * d + e.index % v.dim, j) = e.value;
  for (std::size_t j = 0; j < w.dim; ++j)
    for (const auto& e : w.rho.sparse_column(j))
      rho((e.index / w.dim) * d + v.dim + e.index % w.dim, v.dim + j) = e.value;
  return Comodule{v.h, d, std::move(rho)};
}

Comodule change_basis(const Comodule& v, const Matrix& p) {
  auto pinv = exactla::inverse(p);
  require(pinv.has_value() && p.rows() == v.dim, "change of basis must be invertible");
  Matrix rho = exactla::kron(Matrix::identity(v.field(), v.h->dim()), *pinv) * v.rho * p;
  return Comodule{v.h, v.dim, std::move(rho)};
}

Comodule tensor_comodule(const Comodule& v, const Comodule& w) {
  same_h(v, w);
  check_shape(v);
  check_shape(w);
  std::size_t n = v.h->dim(), dv = v.dim, dw = w.dim, d = dv * dw;
  auto m = coalg::product_terms(v.h->algebra());
  auto tv = coaction_terms(v), tw = coaction_terms(w);
  Matrix rho(v.field(), n * d, d);
  for (std::size_t a = 0; a < dv; ++a)
    for (std::size_t b = 0; b < dw; ++b)
      for (const auto& x : tv[a])
        for (const auto& y : tw[b])
          for (const auto& e : m(x.h, y.h)) rho(e.index * d + x.v * dw + y.v, a * dw + b) += x.coef * y.coef * e.value;
  return Comodule{v.h, d, std::move(rho)};
}

Matrix associator(const Comodule& u, const Comodule& v, const Comodule& w) {
  return reassociate(u, v, w, u.h->omega_inverse());
}

Matrix associator_inverse(const Comodule& u, const Comodule& v, const Comodule& w) {
  return reassociate(u, v, w, u.h->omega);
}

exactla::Subspace coinvariants(const Matrix& right_rho, const Matrix& unit) {
  std::size_t d = right_rho.cols(), n = unit.rows();
  require(right_rho.rows() == d * n, "right coaction must be (d*n) x d");
  return exactla::nullspace(right_rho - exactla::kron(Matrix::identity(unit.field(), d), unit));
}

bool is_colinear(const Matrix& f, const Comodule& v, const Comodule& w) {
  same_h(v, w);
  require(f.rows() == w.dim && f.cols() == v.dim, "colinear map has the wrong shape");
  return w.rho * f == exactla::kron(Matrix::identity(f.field(), v.h->dim()), f) * v.rho;
}

DualComoduleData dual_comodule(const Comodule& v, const Matrix& s) {
  check_shape(v);
  const auto& h = *v.h;
  std::size_t n = h.dim(), d = v.dim;
  Field f = v.field();
  require(s.rows() == n && s.cols() == n, "preantipode must be n x n");
  auto dt = coalg::coproduct_terms(h.coalgebra);
  auto m = coalg::product_terms(h.algebra());

  // right coaction of V^*: e^i |-> sum rho[(h, i), j] e^j (x) e_h
  std::vector<std::vector<CoactionTerm>> dual_terms(d);
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& e : v.rho.sparse_column(j)) dual_terms[e.index % d].push_back({e.index / d, j, e.value});

  // diagonal right coaction on V^* (x) H, H-leg last
  std::size_t amb = d * n;
  Matrix right(f, amb * n, amb);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t b = 0; b < n; ++b)
      for (const auto& t : dual_terms[i])
        for (const auto& tb : dt.of[b])
          for (const auto& e : m(t.h, tb.right))
            right((t.v * n + tb.left) * n + e.index, i * n + b) += t.coef * tb.coef * e.value;
  auto K = coinvariants(right, h.unit);
  std::size_t k = K.dim();

  auto coords = [&](const Vector& x) {
    auto c = K.coordinates(x);
    if (!c) throw std::runtime_error("element expected in (V^* (x) H)^coH is not coinvariant");
    return *c;
  };

  Matrix rho(f, n * k, k);
  for (std::size_t kappa = 0; kappa < k; ++kappa) {
    std::vector<Vector> parts(n, Vector(amb, f.zero()));
    for (const auto& e : K.echelon().rows[kappa]) {
      std::size_t i = e.index / n, b = e.index % n;
      for (const auto& tb : dt.of[b]) parts[tb.left][i * n + tb.right] += e.value * tb.coef;
    }
    for (std::size_t hh = 0; hh < n; ++hh) {
      if (exactla::is_zero(parts[hh])) continue;
      auto c = coords(parts[hh]);
      for (std::size_t x = 0; x < k; ++x) rho(hh * k + x, kappa) = c[x];
    }
  }
  DualComoduleData out{Comodule{v.h, k, std::move(rho)}, Matrix(f, 1, d * k), Matrix(f, k * d, 1)};

  for (std::size_t kappa = 0; kappa < k; ++kappa)
    for (const auto& e : K.echelon().rows[kappa])
      out.ev(0, (e.index / n) * k + kappa) += e.value * h.coalgebra.counit(0, e.index % n);

  auto scols = exactla::column_terms(s);
  for (std::size_t i = 0; i < d; ++i) {
    Vector x(amb, f.zero());
    for (const auto& t : dual_terms[i])
      for (const auto& sg : scols[t.h]) x[t.v * n + sg.index] += t.coef * sg.value;
    auto c = coords(x);
    for (std::size_t kappa = 0; kappa < k; ++kappa) out.db(kappa * d + i, 0) = c[kappa];
  }

  Report r = check_dual(v, out);
  if (!r.pass()) throw std::runtime_error("dual comodule verification failed: " + r.failures.front().axiom);
  return out;
}

Report check_dual(const Comodule& v, const DualComoduleData& dd) {
  Report r;
  const auto& h = *v.h;
  std::size_t n = h.dim(), d = v.dim, k = dd.dual.dim;
  Field f = v.field();
  require(dd.ev.rows() == 1 && dd.ev.cols() == d * k, "ev must be 1 x (d*k)");
  require(dd.db.rows() == k * d && dd.db.cols() == 1, "db must be (k*d) x 1");
  r.merge(check_comodule(dd.dual));
  if (!r.pass()) return r;
  Matrix id_h = Matrix::identity(f, n);
  if (exactla::kron(id_h, dd.ev) * tensor_comodule(v, dd.dual).rho != h.unit * dd.ev) r.fail("ev_colinear");
  if (tensor_comodule(dd.dual, v).rho * dd.db != exactla::kron(h.unit, dd.db)) r.fail("db_colinear");
  if (!h.omega_inv) {
    r.fail("omega_invertible");
    return r;
  }
  Matrix id_v = Matrix::identity(f, d), id_k = Matrix::identity(f, k);
  Matrix z1 = exactla::kron(dd.ev, id_v) * associator_inverse(v, dd.dual, v) * exactla::kron(id_v, dd.db);
  if (z1 != id_v) r.fail("zigzag_1");
  Matrix z2 = exactla::kron(id_k, dd.ev) * associator(dd.dual, v, dd.dual) * exactla::kron(dd.db, id_k);
  if (z2 != id_k) r.fail("zigzag_2");
  return r;
}

Matrix kappa(const Comodule& v, const DualComoduleData& d1, const DualComoduleData& d2) {
  Field f = v.field();
  std::size_t d = v.dim, k1 = d1.dual.dim, k2 = d2.dual.dim;
  Matrix k = exactla::kron(Matrix::identity(f, k2), d1.ev) * associator(d2.dual, v, d1.dual) *
             exactla::kron(d2.db, Matrix::identity(f, k1));
  if (exactla::kron(k, Matrix::identity(f, d)) * d1.db != d2.db)
    throw std::runtime_error("kappa does not carry db(1) to db(2)");
  if (d2.ev * exactla::kron(Matrix::identity(f, d), k) != d1.ev)
    throw std::runtime_error("kappa does not carry ev(2) to ev(1)");
  return k;
}

}  // namespace coquasi::comodcat
