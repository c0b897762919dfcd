#include "coquasi/coquasi.hpp"

#include <map>
#include <stdexcept>

#include "coquasi/ops.hpp"

namespace coquasi::cqb {

using coalg::CoproductTerms;
using coalg::ProductTerms;
using exactla::SparseVector;
using ops::add_scaled;
using ops::multiply;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Vector basis(Field f, std::size_t n, std::size_t i) { return exactla::unit_vector(f, n, i); }

Matrix omega_of_composite(const CoquasiBialgebra& h, int slot) {
  // slot 0: omega(C (x) C (x) m), 1: omega(C (x) m (x) C), 2: omega(m (x) C (x) C)
  std::size_t n = h.dim();
  auto m = coalg::product_terms(h.algebra());
  Matrix out(h.field(), 1, n * n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          Scalar acc = h.field().zero();
          if (slot == 0)
            for (const auto& e : m(c, d)) acc += e.value * h.w(a, b, e.index);
          else if (slot == 1)
            for (const auto& e : m(b, c)) acc += e.value * h.w(a, e.index, d);
          else
            for (const auto& e : m(a, b)) acc += e.value * h.w(e.index, c, d);
          out(0, ((a * n + b) * n + c) * n + d) = acc;
        }
  return out;
}

}  // namespace

namespace {

void check_shapes(const coalg::Coalgebra& c, const Matrix& mult, const Matrix& unit, const Matrix& omega) {
  std::size_t n = c.dim;
  require(c.delta.rows() == n * n && c.delta.cols() == n, "delta must be n^2 x n");
  require(c.counit.rows() == 1 && c.counit.cols() == n, "counit must be 1 x n");
  require(mult.rows() == n && mult.cols() == n * n, "mult must be n x n^2");
  require(unit.rows() == n && unit.cols() == 1, "unit must be n x 1");
  require(omega.rows() == 1 && omega.cols() == n * n * n, "omega must have n^3 entries");
  Field f = c.field();
  require(mult.field() == f && unit.field() == f && omega.field() == f && c.counit.field() == f,
          "all structure maps must share one field");
}

}  // namespace

CoquasiBialgebra CoquasiBialgebra::create(coalg::Coalgebra c, Matrix mult, Matrix unit, Matrix omega) {
  check_shapes(c, mult, unit, omega);
  CoquasiBialgebra h{std::move(c), std::move(mult), std::move(unit), std::move(omega), std::nullopt};
  auto inv = coalg::convolution_inverse_power(h.omega, h.coalgebra, 3);
  if (auto* m = std::get_if<Matrix>(&inv)) h.omega_inv = *m;
  return h;
}

CoquasiBialgebra CoquasiBialgebra::create(coalg::Coalgebra c, Matrix mult, Matrix unit, Matrix omega,
                                          const Matrix& omega_inv) {
  check_shapes(c, mult, unit, omega);
  if (omega_inv.rows() == 1 && omega_inv.cols() == omega.cols() && omega_inv.field() == omega.field()) {
    auto d = coalg::coproduct_terms(c);
    Matrix eps3 = coalg::counit_power(c, 3);
    if (coalg::convolve_power(omega, omega_inv, d, 3) == eps3 && coalg::convolve_power(omega_inv, omega, d, 3) == eps3)
      return CoquasiBialgebra{std::move(c), std::move(mult), std::move(unit), std::move(omega), omega_inv};
  }
  return create(std::move(c), std::move(mult), std::move(unit), std::move(omega));
}

const Matrix& CoquasiBialgebra::omega_inverse() const {
  if (!omega_inv) throw std::domain_error("omega is not convolution invertible");
  return *omega_inv;
}

bool is_trivial_omega(const CoquasiBialgebra& h) { return h.omega == coalg::counit_power(h.coalgebra, 3); }

IteratedTerms iterated_coproduct(const coalg::Coalgebra& c, std::size_t legs) {
  auto d = coalg::coproduct_terms(c);
  IteratedTerms t;
  t.of.resize(c.dim);
  for (std::size_t x = 0; x < c.dim; ++x) {
    std::map<std::vector<std::size_t>, Scalar> cur{{{x}, c.field().one()}};
    for (std::size_t l = 1; l < legs; ++l) {
      std::map<std::vector<std::size_t>, Scalar> next;
      for (const auto& [idx, coef] : cur)
        for (const auto& term : d.of[idx.back()]) {
          auto key = idx;
          key.back() = term.left;
          key.push_back(term.right);
          auto it = next.find(key);
          if (it == next.end())
            next.emplace(std::move(key), coef * term.coef);
          else
            it->second += coef * term.coef;
        }
      cur = std::move(next);
    }
    for (auto& [idx, coef] : cur)
      if (!coef.is_zero()) t.of[x].push_back({idx, coef});
  }
  return t;
}

Report validate_coquasi(const CoquasiBialgebra& h) {
  Report r = coalg::check_coalgebra(h.coalgebra);
  std::size_t n = h.dim();
  Field f = h.field();
  auto d = coalg::coproduct_terms(h.coalgebra);
  auto m = coalg::product_terms(h.algebra());
  const Matrix& eps = h.coalgebra.counit;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector lhs(n * n, f.zero()), rhs(n * n, f.zero());
      for (const auto& e : m(i, j))
        for (const auto& t : d.of[e.index]) lhs[t.left * n + t.right] += e.value * t.coef;
      for (const auto& ti : d.of[i])
        for (const auto& tj : d.of[j]) {
          Scalar c = ti.coef * tj.coef;
          for (const auto& a : m(ti.left, tj.left))
            for (const auto& b : m(ti.right, tj.right)) rhs[a.index * n + b.index] += c * a.value * b.value;
        }
      if (lhs != rhs) r.fail("mult_comultiplicative", {i, j});
      Scalar em = f.zero();
      for (const auto& e : m(i, j)) em += e.value * eps(0, e.index);
      if (em != eps(0, i) * eps(0, j)) r.fail("mult_counital", {i, j});
    }

  Vector u = h.unit.column(0);
  {
    Vector lhs(n * n, f.zero()), rhs(n * n, f.zero());
    Scalar eu = f.zero();
    for (std::size_t e = 0; e < n; ++e) {
      if (u[e].is_zero()) continue;
      eu += u[e] * eps(0, e);
      for (const auto& t : d.of[e]) lhs[t.left * n + t.right] += u[e] * t.coef;
      for (std::size_t e2 = 0; e2 < n; ++e2) rhs[e * n + e2] = u[e] * u[e2];
    }
    if (lhs != rhs) r.fail("unit_comultiplicative");
    if (!eu.is_one()) r.fail("unit_counital");
  }

  for (std::size_t i = 0; i < n; ++i) {
    Vector left(n, f.zero()), right(n, f.zero());
    for (std::size_t e = 0; e < n; ++e) {
      if (u[e].is_zero()) continue;
      add_scaled(left, m(e, i), u[e]);
      add_scaled(right, m(i, e), u[e]);
    }
    if (left != basis(f, n, i)) r.fail("left_unit", {i});
    if (right != basis(f, n, i)) r.fail("right_unit", {i});
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Scalar acc = f.zero();
      for (std::size_t e = 0; e < n; ++e)
        if (!u[e].is_zero()) acc += u[e] * h.w(i, e, j);
      if (acc != eps(0, i) * eps(0, j)) r.fail("quasi_unitality", {i, j});
    }

  Matrix eps3 = coalg::counit_power(h.coalgebra, 3);
  if (!h.omega_inv) {
    r.fail("omega_invertible");
  } else {
    if (coalg::convolve_power(h.omega, *h.omega_inv, d, 3) != eps3 ||
        coalg::convolve_power(*h.omega_inv, h.omega, d, 3) != eps3)
      r.fail("omega_invertible");
  }

  Matrix lhs = coalg::convolve_power(omega_of_composite(h, 0), omega_of_composite(h, 2), d, 4);
  Matrix eps1 = coalg::counit_power(h.coalgebra, 1);
  Matrix left_w = exactla::kron(eps1, h.omega);
  Matrix right_w = exactla::kron(h.omega, eps1);
  Matrix rhs = coalg::convolve_power(coalg::convolve_power(left_w, omega_of_composite(h, 1), d, 4), right_w, d, 4);
  for (std::size_t x = 0; x < lhs.cols(); ++x)
    if (lhs(0, x) != rhs(0, x)) r.fail("3-cocycle", {x / (n * n * n), (x / (n * n)) % n, (x / n) % n, x % n});

  // m(C (x) m) and m(m (x) C) as maps C^3 -> C
  Matrix m_right(f, n, n * n * n), m_left(f, n, n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t col = (a * n + b) * n + c;
        for (const auto& e : m(b, c))
          for (const auto& g : m(a, e.index)) m_right(g.index, col) += e.value * g.value;
        for (const auto& e : m(a, b))
          for (const auto& g : m(e.index, c)) m_left(g.index, col) += e.value * g.value;
      }
  Matrix qa_l = coalg::convolve_power(m_right, h.omega, d, 3);
  Matrix qa_r = coalg::convolve_power(h.omega, m_left, d, 3);
  for (std::size_t x = 0; x < n * n * n; ++x)
    for (std::size_t v = 0; v < n; ++v)
      if (qa_l(v, x) != qa_r(v, x)) {
        r.fail("quasi_associativity", {x / (n * n), (x / n) % n, x % n});
        break;
      }

  if (h.omega == eps3) r.flag("ordinary bialgebra");
  return r;
}

namespace {

// Sum over Delta^2(x) of w(f(a) (x) g(b) (x) k(c)) for f, g, k : H -> H.
Scalar omega_sandwich(const CoquasiBialgebra& h, const Matrix& w, const IteratedTerms& d2, std::size_t x,
                      const std::vector<SparseVector>& f, const std::vector<SparseVector>& g,
                      const std::vector<SparseVector>& k) {
  std::size_t n = h.dim();
  Scalar acc = h.field().zero();
  for (const auto& t : d2.of[x])
    for (const auto& fa : f[t.idx[0]])
      for (const auto& gb : g[t.idx[1]])
        for (const auto& kc : k[t.idx[2]])
          acc += t.coef * fa.value * gb.value * kc.value * w(0, (fa.index * n + gb.index) * n + kc.index);
  return acc;
}

std::vector<SparseVector> identity_columns(Field f, std::size_t n) {
  std::vector<SparseVector> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = {{i, f.one()}};
  return c;
}

}  // namespace

Report check_preantipode(const CoquasiBialgebra& h, const Matrix& s) {
  std::size_t n = h.dim();
  require(s.rows() == n && s.cols() == n, "preantipode must be n x n");
  Field f = h.field();
  Report r;
  auto d = coalg::coproduct_terms(h.coalgebra);
  auto m = coalg::product_terms(h.algebra());
  auto d2 = iterated_coproduct(h.coalgebra, 3);
  auto scols = exactla::column_terms(s);
  Vector u = h.unit.column(0);

  std::vector<Vector> lhs1(n, Vector(n * n, f.zero())), lhs2(n, Vector(n * n, f.zero()));
  for (std::size_t c = 0; c < n; ++c) {
    // sum S(h1)_1 h2 (x) S(h1)_2
    for (const auto& t : d.of[c])
      for (const auto& si : scols[t.left])
        for (const auto& ti : d.of[si.index])
          for (const auto& e : m(ti.left, t.right))
            lhs1[c][e.index * n + ti.right] += t.coef * si.value * ti.coef * e.value;
    // sum S(h2)_1 (x) h1 S(h2)_2
    for (const auto& t : d.of[c])
      for (const auto& si : scols[t.right])
        for (const auto& ti : d.of[si.index])
          for (const auto& e : m(t.left, ti.right))
            lhs2[c][ti.left * n + e.index] += t.coef * si.value * ti.coef * e.value;
  }
  for (std::size_t c = 0; c < n; ++c) {
    Vector rhs1(n * n, f.zero()), rhs2(n * n, f.zero());
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        rhs1[a * n + b] = u[a] * s(b, c);
        rhs2[a * n + b] = s(a, c) * u[b];
      }
    if (lhs1[c] != rhs1) r.fail("preantipode_1", {c});
    if (lhs2[c] != rhs2) r.fail("preantipode_2", {c});
  }
  auto id = identity_columns(f, n);
  for (std::size_t c = 0; c < n; ++c)
    if (omega_sandwich(h, h.omega, d2, c, id, scols, id) != h.coalgebra.counit(0, c))
      r.fail("preantipode_3", {c});
  return r;
}

PreantipodeSystem preantipode_system(const CoquasiBialgebra& h) {
  std::size_t n = h.dim();
  Field f = h.field();
  auto d = coalg::coproduct_terms(h.coalgebra);
  auto m = coalg::product_terms(h.algebra());
  auto d2 = iterated_coproduct(h.coalgebra, 3);
  Vector u = h.unit.column(0);
  PreantipodeSystem sys;
  std::vector<ops::RowBuilder> rows(n * n);

  // axiom 1, row (c, r, q): sum S(i, a) D[c; a, b] D[i; p, q] M[r; p, b] - u_r S(q, c)
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& t : d.of[c])
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& ti : d.of[i])
          for (const auto& e : m(ti.left, t.right))
            rows[e.index * n + ti.right].add(i * n + t.left, t.coef * ti.coef * e.value);
    for (std::size_t rr = 0; rr < n; ++rr)
      for (std::size_t q = 0; q < n; ++q) {
        rows[rr * n + q].add(q * n + c, -u[rr]);
        sys.rows.push_back(rows[rr * n + q].take());
        sys.rhs.push_back(f.zero());
      }
  }
  // axiom 2, row (c, q, r): sum S(i, a) D[c; b, a] D[i; q, p] M[r; b, p] - S(q, c) u_r
  for (std::size_t c = 0; c < n; ++c) {
    for (const auto& t : d.of[c])
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& ti : d.of[i])
          for (const auto& e : m(t.left, ti.right))
            rows[ti.left * n + e.index].add(i * n + t.right, t.coef * ti.coef * e.value);
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t rr = 0; rr < n; ++rr) {
        rows[q * n + rr].add(q * n + c, -u[rr]);
        sys.rows.push_back(rows[q * n + rr].take());
        sys.rhs.push_back(f.zero());
      }
  }
  // axiom 3, row c: sum S(i, b) D2[c; a, b, e] w(a, i, e) = eps(c)
  for (std::size_t c = 0; c < n; ++c) {
    ops::RowBuilder row;
    for (const auto& t : d2.of[c])
      for (std::size_t i = 0; i < n; ++i) row.add(i * n + t.idx[1], t.coef * h.w(t.idx[0], i, t.idx[2]));
    sys.rows.push_back(row.take());
    sys.rhs.push_back(h.coalgebra.counit(0, c));
  }
  return sys;
}

PreantipodeSolution solve_preantipode(const CoquasiBialgebra& h) {
  std::size_t n = h.dim();
  auto sys = preantipode_system(h);
  auto sol = exactla::solve_affine_sparse(h.field(), n * n, std::move(sys.rows), sys.rhs);
  PreantipodeSolution out;
  if (!sol) return out;
  Matrix s(h.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < n; ++a) s(i, a) = sol->particular[i * n + a];
  out.s = std::move(s);
  out.nullity = sol->nullspace.dim();
  out.status = out.nullity == 0 ? PreantipodeSolution::Status::unique : PreantipodeSolution::Status::nonunique;
  return out;
}

namespace {

Matrix lift(const CoquasiBialgebra& h, const Matrix& functional) {
  return h.unit * functional;
}

// x |-> sum beta(x1) s(x2) alpha(x3), or alpha(x1) x2 beta(x3) when s is the identity.
Matrix sandwich(const CoquasiBialgebra& h, const Matrix& left, const Matrix& mid, const Matrix& right) {
  return coalg::convolve_bimodule(lift(h, left), mid, lift(h, right), h.coalgebra, h.algebra());
}

}  // namespace

Matrix preantipode_from_antipode(const CoquasiBialgebra& h, const CoquasiHopfData& q) {
  return sandwich(h, q.beta, q.s, q.alpha);
}

Report validate_coquasi_hopf(const CoquasiBialgebra& h, const CoquasiHopfData& q) {
  std::size_t n = h.dim();
  require(q.s.rows() == n && q.s.cols() == n, "s must be n x n");
  require(q.alpha.rows() == 1 && q.alpha.cols() == n && q.beta.rows() == 1 && q.beta.cols() == n,
          "alpha and beta must be 1 x n");
  Field f = h.field();
  Report r;
  auto d = coalg::coproduct_terms(h.coalgebra);
  auto m = coalg::product_terms(h.algebra());
  auto d2 = iterated_coproduct(h.coalgebra, 3);
  auto scols = exactla::column_terms(q.s);
  Vector u = h.unit.column(0);
  for (std::size_t x = 0; x < n; ++x) {
    Vector lhs(n * n, f.zero()), rhs(n * n, f.zero());
    for (const auto& e : scols[x])
      for (const auto& t : d.of[e.index]) lhs[t.left * n + t.right] += e.value * t.coef;
    for (const auto& t : d.of[x])
      for (const auto& a : scols[t.right])
        for (const auto& b : scols[t.left]) rhs[a.index * n + b.index] += t.coef * a.value * b.value;
    if (lhs != rhs) r.fail("s_anti_comultiplicative", {x});
    Scalar es = f.zero();
    for (const auto& e : scols[x]) es += e.value * h.coalgebra.counit(0, e.index);
    if (es != h.coalgebra.counit(0, x)) r.fail("s_counital", {x});
  }
  for (std::size_t x = 0; x < n; ++x) {
    Vector a1(n, f.zero()), a2(n, f.zero());
    for (const auto& t : d2.of[x]) {
      Scalar b = t.coef * q.beta(0, t.idx[1]);
      if (!b.is_zero())
        for (const auto& sc : scols[t.idx[2]]) add_scaled(a1, m(t.idx[0], sc.index), b * sc.value);
      Scalar a = t.coef * q.alpha(0, t.idx[1]);
      if (!a.is_zero())
        for (const auto& sc : scols[t.idx[0]]) add_scaled(a2, m(sc.index, t.idx[2]), a * sc.value);
    }
    Vector r1(n, f.zero()), r2(n, f.zero());
    for (std::size_t e = 0; e < n; ++e) {
      r1[e] = q.beta(0, x) * u[e];
      r2[e] = q.alpha(0, x) * u[e];
    }
    if (a1 != r1) r.fail("coquasi_antipode_1", {x});
    if (a2 != r2) r.fail("coquasi_antipode_2", {x});
  }
  auto tcols = exactla::column_terms(sandwich(h, q.beta, q.s, q.alpha));
  auto ucols = exactla::column_terms(sandwich(h, q.alpha, Matrix::identity(f, n), q.beta));
  auto id = identity_columns(f, n);
  for (std::size_t x = 0; x < n; ++x)
    if (omega_sandwich(h, h.omega, d2, x, id, tcols, id) != h.coalgebra.counit(0, x))
      r.fail("coquasi_antipode_3", {x});
  if (!h.omega_inv) {
    r.fail("omega_invertible");
    return r;
  }
  for (std::size_t x = 0; x < n; ++x)
    if (omega_sandwich(h, *h.omega_inv, d2, x, scols, ucols, scols) != h.coalgebra.counit(0, x))
      r.fail("coquasi_antipode_4", {x});
  return r;
}

Report check_morphism(const Matrix& fmap, const CoquasiBialgebra& h, const CoquasiBialgebra& l) {
  std::size_t n = h.dim(), k = l.dim();
  require(fmap.rows() == k && fmap.cols() == n, "morphism must be dim(L) x dim(H)");
  Field f = h.field();
  Report r;
  auto dh = coalg::coproduct_terms(h.coalgebra);
  auto dl = coalg::coproduct_terms(l.coalgebra);
  auto mh = coalg::product_terms(h.algebra());
  auto ml = coalg::product_terms(l.algebra());
  auto fc = exactla::column_terms(fmap);
  for (std::size_t x = 0; x < n; ++x) {
    Vector lhs(k * k, f.zero()), rhs(k * k, f.zero());
    for (const auto& e : fc[x])
      for (const auto& t : dl.of[e.index]) lhs[t.left * k + t.right] += e.value * t.coef;
    for (const auto& t : dh.of[x])
      for (const auto& a : fc[t.left])
        for (const auto& b : fc[t.right]) rhs[a.index * k + b.index] += t.coef * a.value * b.value;
    if (lhs != rhs) r.fail("comultiplicativity", {x});
    Scalar ef = f.zero();
    for (const auto& e : fc[x]) ef += e.value * l.coalgebra.counit(0, e.index);
    if (ef != h.coalgebra.counit(0, x)) r.fail("counit_preserving", {x});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Vector lhs(k, f.zero());
      for (const auto& e : mh(i, j)) add_scaled(lhs, fmap.column(e.index), e.value);
      Vector rhs = multiply(ml, fmap.column(i), fmap.column(j));
      if (lhs != rhs) r.fail("multiplicativity", {i, j});
    }
  if (fmap * h.unit != l.unit) r.fail("unit_preserving");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < n; ++c) {
        Scalar acc = f.zero();
        for (const auto& a : fc[i])
          for (const auto& b : fc[j])
            for (const auto& e : fc[c]) acc += a.value * b.value * e.value * l.w(a.index, b.index, e.index);
        if (acc != h.w(i, j, c)) r.fail("omega_compatibility", {i, j, c});
      }
  auto sh = solve_preantipode(h);
  auto sl = solve_preantipode(l);
  if (sh.s && sl.s) {
    Matrix lhs = fmap * *sh.s, rhs = *sl.s * fmap;
    for (std::size_t x = 0; x < n; ++x)
      if (lhs.column(x) != rhs.column(x)) r.fail("preantipode_intertwining", {x});
  } else {
    r.flag("preantipode comparison skipped");
  }
  return r;
}

namespace {

// (x (x) y) h = sum x1 (x) y1 h1 w(x2, y2, h2), as a vector in H (x) H.
Vector hat_action(const CoquasiBialgebra& h, const CoproductTerms& d, const ProductTerms& m, std::size_t x,
                  std::size_t y, std::size_t z) {
  std::size_t n = h.dim();
  Vector out(n * n, h.field().zero());
  for (const auto& tx : d.of[x])
    for (const auto& ty : d.of[y])
      for (const auto& tz : d.of[z]) {
        Scalar c = tx.coef * ty.coef * tz.coef * h.w(tx.right, ty.right, tz.right);
        if (c.is_zero()) continue;
        for (const auto& e : m(ty.left, tz.left)) out[tx.left * n + e.index] += c * e.value;
      }
  return out;
}

}  // namespace

HatEpsilon hat_epsilon(const CoquasiBialgebra& h, const Matrix& s) {
  std::size_t n = h.dim();
  Field f = h.field();
  auto d = coalg::coproduct_terms(h.coalgebra);
  auto m = coalg::product_terms(h.algebra());
  Vector u = h.unit.column(0);

  // rho^r(x (x) y) = x1 (x) y1 (x) x2 y2 minus v (x) 1
  Matrix coinv_sys(f, n * n * n, n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t col = x * n + y;
      for (const auto& tx : d.of[x])
        for (const auto& ty : d.of[y])
          for (const auto& e : m(tx.right, ty.right))
            coinv_sys((tx.left * n + ty.left) * n + e.index, col) += tx.coef * ty.coef * e.value;
      for (std::size_t e = 0; e < n; ++e) coinv_sys(col * n + e, col) -= u[e];
    }
  HatEpsilon out{exactla::nullspace(coinv_sys), {}, {}};
  const auto& K = out.coinvariants;
  std::size_t k = K.dim();

  out.forward = Matrix(f, n * n, k * n);
  for (std::size_t kappa = 0; kappa < k; ++kappa) {
    const auto& v = K.echelon().rows[kappa];
    for (std::size_t z = 0; z < n; ++z) {
      Vector col(n * n, f.zero());
      for (const auto& e : v) add_scaled(col, hat_action(h, d, m, e.index / n, e.index % n, z), e.value);
      for (std::size_t i = 0; i < n * n; ++i) out.forward(i, kappa * n + z) = col[i];
    }
  }

  // sum w^{-1}(S(x2)_1, x3, y1) (x1 (x) S(x2)_2) (x) x4 y2
  auto d4 = iterated_coproduct(h.coalgebra, 4);
  auto scols = exactla::column_terms(s);
  const Matrix& winv = h.omega_inverse();
  out.backward = Matrix(f, k * n, n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Vector amb(n * n * n, f.zero());
      for (const auto& t : d4.of[x])
        for (const auto& si : scols[t.idx[1]])
          for (const auto& ts : d.of[si.index])
            for (const auto& ty : d.of[y]) {
              Scalar c = t.coef * si.value * ts.coef * ty.coef * winv(0, (ts.left * n + t.idx[2]) * n + ty.left);
              if (c.is_zero()) continue;
              for (const auto& e : m(t.idx[3], ty.right)) amb[(t.idx[0] * n + ts.right) * n + e.index] += c * e.value;
            }
      for (std::size_t z = 0; z < n; ++z) {
        Vector v(n * n, f.zero());
        for (std::size_t i = 0; i < n * n; ++i) v[i] = amb[i * n + z];
        auto coords = K.coordinates(v);
        if (!coords) throw std::runtime_error("inverse image leaves the coinvariants");
        for (std::size_t kappa = 0; kappa < k; ++kappa) out.backward(kappa * n + z, x * n + y) = (*coords)[kappa];
      }
    }
  return out;
}

Report hat_epsilon_roundtrip(const CoquasiBialgebra& h, const Matrix& s) {
  Report r;
  std::size_t n = h.dim();
  HatEpsilon he;
  try {
    he = hat_epsilon(h, s);
  } catch (const std::runtime_error&) {
    r.fail("hat_epsilon_inverse_coinvariant");
    return r;
  } catch (const std::domain_error&) {
    r.fail("omega_invertible");
    return r;
  }
  std::size_t k = he.coinvariants.dim();
  if (k != n) r.fail("coinvariant_dimension", {k});
  Field f = h.field();
  if (he.forward * he.backward != Matrix::identity(f, n * n)) r.fail("hat_epsilon_right_inverse");
  if (he.backward * he.forward != Matrix::identity(f, k * n)) r.fail("hat_epsilon_left_inverse");
  return r;
}

Report epsilon_s_identities(const CoquasiBialgebra& h, const Matrix& s) {
  std::size_t n = h.dim();
  Field f = h.field();
  Report r;
  auto d = coalg::coproduct_terms(h.coalgebra);
  auto m = coalg::product_terms(h.algebra());
  auto d2 = iterated_coproduct(h.coalgebra, 3);
  auto scols = exactla::column_terms(s);
  Matrix eps_s = h.coalgebra.counit * s;
  Vector u = h.unit.column(0);
  for (std::size_t x = 0; x < n; ++x) {
    Vector a(n, f.zero()), b(n, f.zero()), target(n, f.zero());
    for (const auto& t : d.of[x]) {
      for (const auto& e : scols[t.right]) add_scaled(a, m(t.left, e.index), t.coef * e.value);
      for (const auto& e : scols[t.left]) add_scaled(b, m(e.index, t.right), t.coef * e.value);
    }
    for (std::size_t i = 0; i < n; ++i) target[i] = eps_s(0, x) * u[i];
    if (a != target) r.fail("h1_S_h2", {x});
    if (b != target) r.fail("S_h1_h2", {x});
  }
  if (!h.omega_inv) {
    r.fail("omega_invertible");
    return r;
  }
  auto id = identity_columns(f, n);
  for (std::size_t x = 0; x < n; ++x)
    if (omega_sandwich(h, *h.omega_inv, d2, x, scols, id, scols) != eps_s(0, x)) r.fail("omega_inv_S_h_S", {x});
  if (eps_s == h.coalgebra.counit) r.flag("ordinary antipode");
  return r;
}

}  // namespace coquasi::cqb
