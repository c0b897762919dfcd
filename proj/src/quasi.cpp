#include "coquasi/quasi.hpp"

#include <functional>
#include <stdexcept>

#include "coquasi/ops.hpp"

namespace coquasi::qb {

using coalg::CoproductTerms;
using coalg::ProductTerms;
using exactla::SparseVector;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::size_t> digits_of(std::size_t x, std::size_t n, std::size_t k) {
  std::vector<std::size_t> d(k);
  for (std::size_t t = k; t-- > 0;) {
    d[t] = x % n;
    x /= n;
  }
  return d;
}

// Terms (index, coefficient) of a flat tensor.
SparseVector terms(const Vector& v) { return exactla::to_sparse(v); }

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) out.push_back(x * y);
  return out;
}

}  // namespace

// Leg by leg; state index is (o_1..o_t, x_{t+1..k}, y_{t+1..k}).
Vector tensor_mul(const ProductTerms& m, std::size_t k, const Vector& x, const Vector& y) {
  std::size_t n = m.dim;
  std::size_t total = ipow(n, k);
  Vector state(total * total, m.field.zero());
  auto tx = terms(x), ty = terms(y);
  for (const auto& a : tx)
    for (const auto& b : ty) state[a.index * total + b.index] = a.value * b.value;
  std::size_t pre = 1;
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t rest = ipow(n, k - t - 1), block = n * rest;
    Vector next(pre * n * rest * rest, m.field.zero());
    for (std::size_t s = 0; s < state.size(); ++s) {
      if (state[s].is_zero()) continue;
      std::size_t yr = s % block, xr = (s / block) % block, o = s / (block * block);
      for (const auto& e : m(xr / rest, yr / rest))
        next[((o * n + e.index) * rest + xr % rest) * rest + yr % rest] += e.value * state[s];
    }
    state = std::move(next);
    pre *= n;
  }
  return state;
}

Vector apply_delta(const CoproductTerms& d, std::size_t k, std::size_t leg, const Vector& x) {
  std::size_t n = d.dim;
  Vector out(ipow(n, k + 1), d.field.zero());
  std::size_t tail = ipow(n, k - leg - 1);
  for (const auto& e : terms(x)) {
    std::size_t head = e.index / (tail * n), mid = (e.index / tail) % n, low = e.index % tail;
    for (const auto& t : d.of[mid]) out[((head * n + t.left) * n + t.right) * tail + low] += e.value * t.coef;
  }
  return out;
}

Vector apply_counit(const Matrix& counit, std::size_t n, std::size_t k, std::size_t leg, const Vector& x) {
  Vector out(ipow(n, k - 1), counit.field().zero());
  std::size_t tail = ipow(n, k - leg - 1);
  for (const auto& e : terms(x)) {
    std::size_t head = e.index / (tail * n), mid = (e.index / tail) % n, low = e.index % tail;
    out[head * tail + low] += e.value * counit(0, mid);
  }
  return out;
}

Vector tensor_one(const coalg::Algebra& a, std::size_t k) {
  Vector out{a.field().one()};
  for (std::size_t t = 0; t < k; ++t) out = kron_vec(out, a.unit.column(0));
  return out;
}

std::optional<Vector> tensor_inverse(const coalg::Algebra& a, std::size_t k, const Vector& x) {
  auto m = coalg::product_terms(a);
  std::size_t total = ipow(a.dim, k);
  Field f = a.field();
  std::vector<ops::RowBuilder> rows(total);
  for (std::size_t j = 0; j < total; ++j) {
    auto col = tensor_mul(m, k, x, exactla::unit_vector(f, total, j));
    for (std::size_t r = 0; r < total; ++r)
      if (!col[r].is_zero()) rows[r].add(j, col[r]);
  }
  std::vector<SparseVector> sys;
  sys.reserve(total);
  for (auto& r : rows) sys.push_back(r.take());
  auto one = tensor_one(a, k);
  auto sol = exactla::solve_affine_sparse(f, total, std::move(sys), one);
  if (!sol) return std::nullopt;
  if (tensor_mul(m, k, sol->particular, x) != one) return std::nullopt;
  return sol->particular;
}

QuasiBialgebra QuasiBialgebra::create(coalg::Algebra a, Matrix delta, Matrix counit, Vector phi,
                                      std::optional<Vector> phi_inv) {
  std::size_t n = a.dim;
  require(a.mult.rows() == n && a.mult.cols() == n * n, "mult must be n x n^2");
  require(a.unit.rows() == n && a.unit.cols() == 1, "unit must be n x 1");
  require(delta.rows() == n * n && delta.cols() == n, "delta must be n^2 x n");
  require(counit.rows() == 1 && counit.cols() == n, "counit must be 1 x n");
  require(phi.size() == n * n * n, "phi must have n^3 entries");
  Field f = a.field();
  require(delta.field() == f && counit.field() == f && a.unit.field() == f, "all structure maps must share one field");
  for (const auto& x : phi) require(x.field() == f, "phi must live over the algebra's field");
  if (phi_inv) require(phi_inv->size() == n * n * n, "phi_inv must have n^3 entries");
  QuasiBialgebra q{std::move(a), std::move(delta), std::move(counit), std::move(phi), std::move(phi_inv)};
  if (!q.phi_inv) q.phi_inv = tensor_inverse(q.algebra, 3, q.phi);
  return q;
}

const Vector& QuasiBialgebra::phi_inverse() const {
  if (!phi_inv) throw std::domain_error("phi is not invertible");
  return *phi_inv;
}

bool is_trivial_phi(const QuasiBialgebra& a) { return a.phi == tensor_one(a.algebra, 3); }

Report validate_quasi(const QuasiBialgebra& a) {
  Report r = coalg::check_algebra(a.algebra);
  std::size_t n = a.dim();
  Field f = a.field();
  auto m = coalg::product_terms(a.algebra);
  auto d = coalg::coproduct_terms(a.coalgebra());
  Vector unit = a.algebra.unit.column(0);

  for (std::size_t x = 0; x < n; ++x) {
    Vector dx = a.delta.column(x);
    if (apply_counit(a.counit, n, 2, 0, dx) != exactla::unit_vector(f, n, x)) r.fail("left_counit", {x});
    if (apply_counit(a.counit, n, 2, 1, dx) != exactla::unit_vector(f, n, x)) r.fail("right_counit", {x});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector prod = exactla::to_dense(f, m(i, j), n);
      if (a.delta.apply(prod) != tensor_mul(m, 2, a.delta.column(i), a.delta.column(j)))
        r.fail("delta_multiplicative", {i, j});
      if (a.counit.apply(prod)[0] != a.counit(0, i) * a.counit(0, j)) r.fail("counit_multiplicative", {i, j});
    }
  if (a.delta.apply(unit) != kron_vec(unit, unit)) r.fail("delta_unital");
  if (!a.counit.apply(unit)[0].is_one()) r.fail("counit_unital");

  Vector one2 = tensor_one(a.algebra, 2);
  for (std::size_t leg = 0; leg < 3; ++leg)
    if (apply_counit(a.counit, n, 3, leg, a.phi) != one2) r.fail("phi_counital", {leg});

  Vector one3 = tensor_one(a.algebra, 3);
  if (!a.phi_inv || tensor_mul(m, 3, a.phi, *a.phi_inv) != one3 || tensor_mul(m, 3, *a.phi_inv, a.phi) != one3) {
    r.fail("phi_invertible");
  }

  for (std::size_t x = 0; x < n; ++x) {
    Vector dx = a.delta.column(x);
    Vector left = apply_delta(d, 2, 0, dx);
    Vector right = apply_delta(d, 2, 1, dx);
    if (tensor_mul(m, 3, a.phi, left) != tensor_mul(m, 3, right, a.phi)) r.fail("quasi_coassociativity", {x});
  }

  Vector lhs = tensor_mul(m, 4, tensor_mul(m, 4, kron_vec(unit, a.phi), apply_delta(d, 3, 1, a.phi)),
                          kron_vec(a.phi, unit));
  Vector rhs = tensor_mul(m, 4, apply_delta(d, 3, 2, a.phi), apply_delta(d, 3, 0, a.phi));
  for (std::size_t x = 0; x < lhs.size(); ++x)
    if (lhs[x] != rhs[x]) r.fail("3-cocycle", digits_of(x, n, 4));

  if (a.phi == one3) r.flag("ordinary bialgebra");
  return r;
}

// --- preantipode -----------------------------------------------------------

Report check_quasi_preantipode(const QuasiBialgebra& a, const Matrix& s) {
  std::size_t n = a.dim();
  require(s.rows() == n && s.cols() == n, "preantipode must be n x n");
  Field f = a.field();
  Report r;
  auto m = coalg::product_terms(a.algebra);
  auto d = coalg::coproduct_terms(a.coalgebra());
  auto mul = [&](const Vector& x, const Vector& y) { return ops::multiply(m, x, y); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t b = 0; b < n; ++b) {
      Vector target = s.column(b);
      for (auto& v : target) v *= a.counit(0, x);
      Vector l1(n, f.zero()), l2(n, f.zero());
      Vector eb = exactla::unit_vector(f, n, b);
      for (const auto& t : d.of[x]) {
        Vector x1 = exactla::unit_vector(f, n, t.left), x2 = exactla::unit_vector(f, n, t.right);
        ops::add_scaled(l1, mul(x1, s.apply(mul(eb, x2))), t.coef);
        ops::add_scaled(l2, mul(s.apply(mul(x1, eb)), x2), t.coef);
      }
      if (l1 != target) r.fail("preantipode_1", {x, b});
      if (l2 != target) r.fail("preantipode_2", {x, b});
    }
  Vector acc(n, f.zero());
  for (const auto& e : terms(a.phi)) {
    auto dg = digits_of(e.index, n, 3);
    Vector t = mul(mul(exactla::unit_vector(f, n, dg[0]), s.column(dg[1])), exactla::unit_vector(f, n, dg[2]));
    ops::add_scaled(acc, t, e.value);
  }
  if (acc != a.algebra.unit.column(0)) r.fail("preantipode_3");
  return r;
}

cqb::PreantipodeSolution solve_quasi_preantipode(const QuasiBialgebra& a) {
  std::size_t n = a.dim();
  Field f = a.field();
  auto m = coalg::product_terms(a.algebra);
  auto d = coalg::coproduct_terms(a.coalgebra());
  std::vector<SparseVector> rows;
  Vector rhs;
  // unknown S(i, c) (coefficient of e_i in S(e_c)) at column i*n + c
  for (int axiom = 1; axiom <= 2; ++axiom)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<ops::RowBuilder> builders(n);
        for (const auto& t : d.of[x]) {
          if (axiom == 1) {
            // x1 S(b x2)
            for (const auto& c : m(b, t.right))
              for (std::size_t i = 0; i < n; ++i)
                for (const auto& e : m(t.left, i)) builders[e.index].add(i * n + c.index, t.coef * c.value * e.value);
          } else {
            // S(x1 b) x2
            for (const auto& c : m(t.left, b))
              for (std::size_t i = 0; i < n; ++i)
                for (const auto& e : m(i, t.right)) builders[e.index].add(i * n + c.index, t.coef * c.value * e.value);
          }
        }
        for (std::size_t r = 0; r < n; ++r) {
          builders[r].add(r * n + b, -a.counit(0, x));
          rows.push_back(builders[r].take());
          rhs.push_back(f.zero());
        }
      }
  std::vector<ops::RowBuilder> builders(n);
  for (const auto& e : terms(a.phi)) {
    auto dg = digits_of(e.index, n, 3);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& p : m(dg[0], i))
        for (const auto& q : m(p.index, dg[2])) builders[q.index].add(i * n + dg[1], e.value * p.value * q.value);
  }
  for (std::size_t r = 0; r < n; ++r) {
    rows.push_back(builders[r].take());
    rhs.push_back(a.algebra.unit(r, 0));
  }
  auto sol = exactla::solve_affine_sparse(f, n * n, std::move(rows), rhs);
  cqb::PreantipodeSolution out;
  if (!sol) return out;
  Matrix s(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) s(i, c) = sol->particular[i * n + c];
  out.s = std::move(s);
  out.nullity = sol->nullspace.dim();
  out.status = out.nullity == 0 ? cqb::PreantipodeSolution::Status::unique : cqb::PreantipodeSolution::Status::nonunique;
  return out;
}

// --- p and q ----------------------------------------------------------------

namespace {

struct Calculus {
  std::size_t n;
  Field f;
  ProductTerms m;
  CoproductTerms d;
  const Matrix& s;

  Calculus(const QuasiBialgebra& a, const Matrix& s_)
      : n(a.dim()), f(a.field()), m(coalg::product_terms(a.algebra)), d(coalg::coproduct_terms(a.coalgebra())),
        s(s_) {}

  Vector e(std::size_t i) const { return exactla::unit_vector(f, n, i); }
  Vector mul(const Vector& x, const Vector& y) const { return ops::multiply(m, x, y); }
  Vector mul(std::size_t i, const Vector& y) const { return mul(e(i), y); }
  Vector mul(const Vector& x, std::size_t j) const { return mul(x, e(j)); }
  Vector S(const Vector& x) const { return s.apply(x); }

  // p(a) = sum phi1 (x) phi2 S(a phi3)
  Vector p(const Vector& phi_inv, const Vector& x) const {
    Vector out(n * n, f.zero());
    for (const auto& t : terms(phi_inv)) {
      auto dg = digits_of(t.index, n, 3);
      Vector right = mul(dg[1], S(mul(x, dg[2])));
      for (std::size_t r = 0; r < n; ++r)
        if (!right[r].is_zero()) out[dg[0] * n + r] += t.value * right[r];
    }
    return out;
  }

  // q(a) = sum S(phi1 a) phi2 (x) phi3
  Vector q(const Vector& phi_inv, const Vector& x) const {
    Vector out(n * n, f.zero());
    for (const auto& t : terms(phi_inv)) {
      auto dg = digits_of(t.index, n, 3);
      Vector left = mul(S(mul(dg[0], x)), dg[1]);
      for (std::size_t r = 0; r < n; ++r)
        if (!left[r].is_zero()) out[r * n + dg[2]] += t.value * left[r];
    }
    return out;
  }

  Matrix as_map(const std::function<Vector(const Vector&)>& fn) const {
    Matrix out(f, n * n, n);
    for (std::size_t c = 0; c < n; ++c) {
      Vector v = fn(e(c));
      for (std::size_t r = 0; r < n * n; ++r) out(r, c) = v[r];
    }
    return out;
  }

  // (L_x (x) L_y) or (R_x (x) R_y) applied to an element of A (x) A
  Vector act2(const Vector& t, const Vector& x, const Vector& y, bool left) const {
    Vector out(n * n, f.zero());
    for (const auto& e2 : terms(t)) {
      std::size_t i = e2.index / n, j = e2.index % n;
      Vector u = left ? mul(x, i) : mul(i, x);
      Vector v = left ? mul(y, j) : mul(j, y);
      for (std::size_t a = 0; a < n; ++a) {
        if (u[a].is_zero()) continue;
        for (std::size_t b = 0; b < n; ++b)
          if (!v[b].is_zero()) out[a * n + b] += e2.value * u[a] * v[b];
      }
    }
    return out;
  }
};

}  // namespace

PQElements compute_pq(const QuasiBialgebra& a, const Matrix& s) {
  Calculus c(a, s);
  std::size_t n = c.n;
  const Vector& phi_inv = a.phi_inverse();
  PQElements out;
  out.p = c.as_map([&](const Vector& x) { return c.p(phi_inv, x); });
  out.q = c.as_map([&](const Vector& x) { return c.q(phi_inv, x); });

  Vector unit = a.algebra.unit.column(0);
  Vector d1 = apply_delta(c.d, 3, 0, phi_inv);
  Vector d3 = apply_delta(c.d, 3, 2, phi_inv);
  Vector y = tensor_mul(c.m, 4, tensor_mul(c.m, 4, d1, d3), kron_vec(unit, a.phi));
  Vector z = tensor_mul(c.m, 4, tensor_mul(c.m, 4, kron_vec(a.phi, unit), d1), d3);
  auto ty = terms(y), tz = terms(z);

  // Y1 (x) Y2 S(a Y3) Y4 and Z1 S(Z2 a) Z3 (x) Z4
  out.p_expanded = c.as_map([&](const Vector& x) {
    Vector v(n * n, c.f.zero());
    for (const auto& t : ty) {
      auto dg = digits_of(t.index, n, 4);
      Vector right = c.mul(c.mul(dg[1], c.S(c.mul(x, dg[2]))), dg[3]);
      for (std::size_t r = 0; r < n; ++r)
        if (!right[r].is_zero()) v[dg[0] * n + r] += t.value * right[r];
    }
    return v;
  });
  out.q_expanded = c.as_map([&](const Vector& x) {
    Vector v(n * n, c.f.zero());
    for (const auto& t : tz) {
      auto dg = digits_of(t.index, n, 4);
      Vector left = c.mul(c.mul(dg[0], c.S(c.mul(dg[1], x))), dg[2]);
      for (std::size_t r = 0; r < n; ++r)
        if (!left[r].is_zero()) v[r * n + dg[3]] += t.value * left[r];
    }
    return v;
  });
  return out;
}

Report check_pq_identities(const QuasiBialgebra& a, const Matrix& s, const PQElements& pq) {
  Calculus c(a, s);
  std::size_t n = c.n;
  Report r;
  for (std::size_t x = 0; x < n; ++x) {
    if (pq.p.column(x) != pq.p_expanded.column(x)) r.fail("p_closed_form", {x});
    if (pq.q.column(x) != pq.q_expanded.column(x)) r.fail("q_closed_form", {x});
  }
  Vector unit = a.algebra.unit.column(0);
  Vector none = unit;
  for (std::size_t x = 0; x < n; ++x) {
    Vector dx = a.delta.column(x);
    auto left3 = terms(apply_delta(c.d, 2, 0, dx));   // (Delta (x) id) Delta x
    auto right3 = terms(apply_delta(c.d, 2, 1, dx));  // (id (x) Delta) Delta x
    for (std::size_t b = 0; b < n; ++b) {
      // sum p1 a (x) p2(b) = sum a11 p1 (x) a12 p2(b a2)
      Vector lhs = c.act2(pq.p.column(b), c.e(x), unit, false);
      Vector rhs(n * n, c.f.zero());
      for (const auto& t : left3) {
        auto dg = digits_of(t.index, n, 3);
        ops::add_scaled(rhs, c.act2(pq.p.apply(c.mul(b, c.e(dg[2]))), c.e(dg[0]), c.e(dg[1]), true), t.value);
      }
      if (lhs != rhs) r.fail("p_invariance", {x, b});
    }
    // sum q1(a) (x) b q2 = sum q1(b1 a) b21 (x) q2 b22, with x in the role of b
    for (std::size_t y = 0; y < n; ++y) {
      Vector lhs = c.act2(pq.q.column(y), none, c.e(x), true);
      Vector rhs(n * n, c.f.zero());
      for (const auto& t : right3) {
        auto dg = digits_of(t.index, n, 3);
        ops::add_scaled(rhs, c.act2(pq.q.apply(c.mul(dg[0], c.e(y))), c.e(dg[1]), c.e(dg[2]), false), t.value);
      }
      if (lhs != rhs) r.fail("q_invariance", {y, x});
    }
  }
  return r;
}

Report check_s_recovery(const QuasiBialgebra& a, const Matrix& s, const PQElements& pq) {
  Calculus c(a, s);
  std::size_t n = c.n;
  Report r;
  const Vector& phi_inv = a.phi_inverse();
  Vector unit = a.algebra.unit.column(0);
  auto p1 = terms(pq.p.apply(unit));
  auto q1 = terms(pq.q.apply(unit));
  auto tphi = terms(phi_inv);
  for (std::size_t x = 0; x < n; ++x) {
    // q1(1) S(p1 a q2) p2(1)
    Vector via_pq(n, c.f.zero());
    for (const auto& tp : p1)
      for (const auto& tq : q1) {
        std::size_t pl = tp.index / n, pr = tp.index % n, ql = tq.index / n, qr = tq.index % n;
        Vector v = c.mul(c.mul(ql, c.S(c.mul(c.mul(pl, c.e(x)), qr))), pr);
        ops::add_scaled(via_pq, v, tp.value * tq.value);
      }
    if (via_pq != s.column(x)) r.fail("s_recovery", {x});

    // S(phi1) phi2 S(psi1 a phi3) psi2 S(psi3)
    Vector explicit_form(n, c.f.zero());
    for (const auto& tf : tphi) {
      auto df = digits_of(tf.index, n, 3);
      Vector head = c.mul(c.S(c.e(df[0])), df[1]);
      for (const auto& tg : tphi) {
        auto dg = digits_of(tg.index, n, 3);
        Vector mid = c.S(c.mul(c.mul(dg[0], c.e(x)), df[2]));
        Vector v = c.mul(c.mul(c.mul(head, mid), dg[1]), c.S(c.e(dg[2])));
        ops::add_scaled(explicit_form, v, tf.value * tg.value);
      }
    }
    if (explicit_form != s.column(x)) r.fail("s_recovery_explicit", {x});
  }
  return r;
}

Report check_antimultiplicativity(const QuasiBialgebra& a, const Matrix& s) {
  Calculus c(a, s);
  std::size_t n = c.n;
  Report r;
  const Vector& phi_inv = a.phi_inverse();
  std::vector<SparseVector> ps(n), qs(n);
  for (std::size_t x = 0; x < n; ++x) {
    ps[x] = terms(c.p(phi_inv, c.e(x)));
    qs[x] = terms(c.q(phi_inv, c.e(x)));
  }
  // S(ab) = sum q1(b) S(p1 q2) p2(a)
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Vector lhs = c.S(c.mul(x, c.e(y)));
      Vector rhs(n, c.f.zero());
      for (const auto& tq : qs[y])
        for (const auto& tp : ps[x]) {
          Vector v = c.mul(c.mul(tq.index / n, c.S(c.mul(tp.index / n, c.e(tq.index % n)))), tp.index % n);
          ops::add_scaled(rhs, v, tq.value * tp.value);
        }
      if (lhs != rhs) r.fail("antimultiplicativity", {x, y});
    }
  return r;
}

// --- modules ----------------------------------------------------------------

namespace {

// m . a as a dense vector
Vector act(const RightModule& mod, std::size_t n, const Vector& mv, std::size_t a) {
  Vector out(mod.dim, mod.action.field().zero());
  for (std::size_t i = 0; i < mod.dim; ++i) {
    if (mv[i].is_zero()) continue;
    for (std::size_t r = 0; r < mod.dim; ++r) {
      const auto& v = mod.action(r, i * n + a);
      if (!v.is_zero()) out[r] += mv[i] * v;
    }
  }
  return out;
}

void check_module_shape(const RightModule& m, std::size_t n) {
  require(m.action.rows() == m.dim && m.action.cols() == m.dim * n, "module action must be d x (d*n)");
}

// Legwise action of an element of A^(x)3 on M (x) N (x) P.
Matrix act3(const RightModule& u, const RightModule& v, const RightModule& w, std::size_t n, const Vector& elem) {
  Field f = u.action.field();
  std::size_t du = u.dim, dv = v.dim, dw = w.dim;
  Matrix out(f, du * dv * dw, du * dv * dw);
  for (const auto& t : terms(elem)) {
    auto dg = digits_of(t.index, n, 3);
    for (std::size_t i = 0; i < du; ++i)
      for (std::size_t j = 0; j < dv; ++j)
        for (std::size_t k = 0; k < dw; ++k)
          for (std::size_t x = 0; x < du; ++x) {
            const auto& cx = u.action(x, i * n + dg[0]);
            if (cx.is_zero()) continue;
            for (std::size_t y = 0; y < dv; ++y) {
              const auto& cy = v.action(y, j * n + dg[1]);
              if (cy.is_zero()) continue;
              for (std::size_t z = 0; z < dw; ++z) {
                const auto& cz = w.action(z, k * n + dg[2]);
                if (!cz.is_zero()) out((x * dv + y) * dw + z, (i * dv + j) * dw + k) += t.value * cx * cy * cz;
              }
            }
          }
  }
  return out;
}

}  // namespace

Report check_module(const RightModule& m, const coalg::Algebra& a) {
  std::size_t n = a.dim;
  check_module_shape(m, n);
  Report r;
  auto pt = coalg::product_terms(a);
  Field f = a.field();
  for (std::size_t i = 0; i < m.dim; ++i) {
    Vector ei = exactla::unit_vector(f, m.dim, i);
    Vector by_unit(m.dim, f.zero());
    for (std::size_t x = 0; x < n; ++x) ops::add_scaled(by_unit, act(m, n, ei, x), a.unit(x, 0));
    if (by_unit != ei) r.fail("module_unit", {i});
    for (std::size_t x = 0; x < n; ++x) {
      Vector ex = act(m, n, ei, x);
      for (std::size_t y = 0; y < n; ++y) {
        Vector lhs = act(m, n, ex, y);
        Vector rhs(m.dim, f.zero());
        for (const auto& e : pt(x, y)) ops::add_scaled(rhs, act(m, n, ei, e.index), e.value);
        if (lhs != rhs) r.fail("module_associativity", {i, x, y});
      }
    }
  }
  return r;
}

RightModule trivial_module(const QuasiBialgebra& a) { return {1, a.counit}; }

RightModule regular_module(const QuasiBialgebra& a) { return {a.dim(), a.algebra.mult}; }

RightModule tensor_module(const RightModule& m, const RightModule& k, const QuasiBialgebra& a) {
  std::size_t n = a.dim();
  check_module_shape(m, n);
  check_module_shape(k, n);
  Field f = a.field();
  auto d = coalg::coproduct_terms(a.coalgebra());
  std::size_t dm = m.dim, dk = k.dim, dim = dm * dk;
  Matrix action(f, dim, dim * n);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = 0; j < dk; ++j)
      for (std::size_t x = 0; x < n; ++x)
        for (const auto& t : d.of[x])
          for (std::size_t p = 0; p < dm; ++p) {
            const auto& cp = m.action(p, i * n + t.left);
            if (cp.is_zero()) continue;
            for (std::size_t q = 0; q < dk; ++q) {
              const auto& cq = k.action(q, j * n + t.right);
              if (!cq.is_zero()) action(p * dk + q, (i * dk + j) * n + x) += t.coef * cp * cq;
            }
          }
  return {dim, std::move(action)};
}

comodcat::Comodule module_to_comodule(const RightModule& m, std::shared_ptr<const cqb::CoquasiBialgebra> dual) {
  std::size_t n = dual->dim(), d = m.dim;
  check_module_shape(m, n);
  require(m.action.field() == dual->field(), "module and dual live over different fields");
  Matrix rho(dual->field(), n * d, d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t i = 0; i < d; ++i) rho(a * d + i, j) = m.action(i, j * n + a);
  return comodcat::Comodule{std::move(dual), d, std::move(rho)};
}

RightModule comodule_to_module(const comodcat::Comodule& c) {
  std::size_t n = c.h->dim(), d = c.dim;
  require(c.rho.rows() == n * d && c.rho.cols() == d, "coaction must be (n*d) x d");
  Matrix action(c.field(), d, d * n);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t i = 0; i < d; ++i) action(i, j * n + a) = c.rho(a * d + i, j);
  return {d, std::move(action)};
}

ModuleDual module_dual(const RightModule& mod, const QuasiBialgebra& a, const Matrix& s) {
  std::size_t n = a.dim(), d = mod.dim;
  check_module_shape(mod, n);
  Field f = a.field();
  auto m = coalg::product_terms(a.algebra);
  auto dt = coalg::coproduct_terms(a.coalgebra());

  // A^+ = ker eps; relations k . (e_x (x) e^i) = sum k1 e_x (x) k2 . e^i,
  // where (b . f)(v) = f(v . b). Ambient index x*d + i.
  auto plus = exactla::nullspace(a.counit);
  std::vector<SparseVector> relations;
  for (std::size_t kb = 0; kb < plus.dim(); ++kb) {
    const auto& kvec = plus.echelon().rows[kb];
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t i = 0; i < d; ++i) {
        ops::RowBuilder row;
        for (const auto& ke : kvec)
          for (const auto& t : dt.of[ke.index])
            for (const auto& pe : m(t.left, x))
              for (std::size_t v = 0; v < d; ++v) {
                const auto& c = mod.action(i, v * n + t.right);
                if (!c.is_zero()) row.add(pe.index * d + v, ke.value * t.coef * pe.value * c);
              }
        auto rv = row.take();
        if (!rv.empty()) relations.push_back(std::move(rv));
      }
  }
  auto quo = exactla::quotient(f, n * d, std::move(relations));
  std::size_t k = quo.dim();

  ModuleDual out{RightModule{k, Matrix(f, k, k * n)}, Matrix(f, 1, d * k), Matrix(f, k * d, 1)};
  for (std::size_t beta = 0; beta < k; ++beta) {
    Vector rep = quo.section.column(beta);
    for (std::size_t y = 0; y < n; ++y) {
      Vector moved(n * d, f.zero());
      for (const auto& e : terms(rep))
        for (const auto& pe : m(e.index / d, y)) moved[pe.index * d + e.index % d] += e.value * pe.value;
      Vector img = quo.proj.apply(moved);
      for (std::size_t r = 0; r < k; ++r) out.dual.action(r, beta * n + y) = img[r];
    }
    // ev(v (x) class(e_x (x) e^i)) = e^i(v . S(e_x))
    for (std::size_t v = 0; v < d; ++v) {
      Scalar acc = f.zero();
      for (const auto& e : terms(rep)) {
        std::size_t x = e.index / d, i = e.index % d;
        for (std::size_t c = 0; c < n; ++c)
          if (!s(c, x).is_zero()) acc += e.value * s(c, x) * mod.action(i, v * n + c);
      }
      out.ev(0, v * k + beta) = acc;
    }
  }
  Vector unit = a.algebra.unit.column(0);
  for (std::size_t i = 0; i < d; ++i) {
    Vector amb(n * d, f.zero());
    for (std::size_t x = 0; x < n; ++x) amb[x * d + i] = unit[x];
    Vector cls = quo.proj.apply(amb);
    for (std::size_t beta = 0; beta < k; ++beta) out.db(beta * d + i, 0) = cls[beta];
  }

  if (!check_module(out.dual, a.algebra).pass()) throw std::runtime_error("dual module action is not associative");
  // ev and db are A-linear for the trivial module structure eps on k
  RightModule triv = trivial_module(a);
  RightModule mk = tensor_module(mod, out.dual, a), km = tensor_module(out.dual, mod, a);
  for (std::size_t y = 0; y < n; ++y) {
    for (std::size_t col = 0; col < d * k; ++col) {
      Scalar lhs = f.zero();
      for (std::size_t r = 0; r < d * k; ++r) lhs += out.ev(0, r) * mk.action(r, col * n + y);
      if (lhs != out.ev(0, col) * triv.action(0, y)) throw std::runtime_error("ev is not A-linear");
    }
    for (std::size_t r = 0; r < k * d; ++r) {
      Scalar lhs = f.zero();
      for (std::size_t col = 0; col < k * d; ++col) lhs += km.action(r, col * n + y) * out.db(col, 0);
      if (lhs != out.db(r, 0) * triv.action(0, y)) throw std::runtime_error("db is not A-linear");
    }
  }
  // a((u (x) v) (x) w) = (u (x) (v (x) w)) . Phi^{-1}; a^{-1} acts by Phi
  Matrix id_d = Matrix::identity(f, d), id_k = Matrix::identity(f, k);
  Matrix z1 = exactla::kron(out.ev, id_d) * act3(mod, out.dual, mod, n, a.phi) * exactla::kron(id_d, out.db);
  if (z1 != id_d) throw std::runtime_error("module dual zigzag_1 failed");
  Matrix z2 =
      exactla::kron(id_k, out.ev) * act3(out.dual, mod, out.dual, n, a.phi_inverse()) * exactla::kron(out.db, id_k);
  if (z2 != id_k) throw std::runtime_error("module dual zigzag_2 failed");
  return out;
}

FiniteDual finite_dual(const QuasiBialgebra& a, const Matrix& s) {
  std::size_t n = a.dim();
  require(s.rows() == n && s.cols() == n, "preantipode must be n x n");
  Field f = a.field();
  coalg::Coalgebra c{n, a.algebra.mult.transpose(), a.algebra.unit.transpose()};
  Matrix omega = Matrix::row_vector(f, a.phi);
  auto h = cqb::CoquasiBialgebra::create(std::move(c), a.delta.transpose(), a.counit.transpose(), std::move(omega));
  FiniteDual out{std::move(h), s.transpose()};
  Report r = cqb::validate_coquasi(out.h);
  r.merge(cqb::check_preantipode(out.h, out.s));
  if (!r.pass()) throw std::runtime_error("finite dual failed verification: " + r.failures.front().axiom);
  return out;
}

}  // namespace coquasi::qb
