#include "coquasi/coalgebra.hpp"

#include <cmath>
#include <map>

namespace coquasi::coalg {

using exactla::SparseVector;

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_coalgebra_shape(const Coalgebra& c) {
  require(c.delta.rows() == c.dim * c.dim && c.delta.cols() == c.dim, "coalgebra delta must be n^2 x n");
  require(c.counit.rows() == 1 && c.counit.cols() == c.dim, "coalgebra counit must be 1 x n");
}

void check_algebra_shape(const Algebra& a) {
  require(a.mult.rows() == a.dim && a.mult.cols() == a.dim * a.dim, "algebra mult must be n x n^2");
  require(a.unit.rows() == a.dim && a.unit.cols() == 1, "algebra unit must be n x 1");
}

void add_scaled(Vector& acc, const SparseVector& v, const Scalar& c) {
  for (const auto& e : v) acc[e.index] += c * e.value;
}

SparseVector sparse_from_map(const std::map<std::size_t, Scalar>& m) {
  SparseVector v;
  for (const auto& [i, x] : m)
    if (!x.is_zero()) v.push_back({i, x});
  return v;
}

}  // namespace

Algebra ground_algebra(Field f) {
  return Algebra{1, Matrix::identity(f, 1), Matrix::identity(f, 1)};
}

Coalgebra ground_coalgebra(Field f) {
  return Coalgebra{1, Matrix::identity(f, 1), Matrix::identity(f, 1)};
}

CoproductTerms coproduct_terms(const Coalgebra& c) {
  check_coalgebra_shape(c);
  CoproductTerms t{c.dim, c.field(), std::vector<std::vector<CoproductTerms::Term>>(c.dim)};
  for (std::size_t x = 0; x < c.dim; ++x)
    for (const auto& e : c.delta.sparse_column(x)) t.of[x].push_back({e.index / c.dim, e.index % c.dim, e.value});
  return t;
}

ProductTerms product_terms(const Algebra& a) {
  check_algebra_shape(a);
  return ProductTerms{a.dim, a.field(), exactla::column_terms(a.mult)};
}

TripleTerms double_coproduct(const CoproductTerms& d) {
  TripleTerms t;
  t.of.resize(d.dim);
  for (std::size_t x = 0; x < d.dim; ++x) {
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Scalar> acc;
    for (const auto& outer : d.of[x])
      for (const auto& inner : d.of[outer.left]) {
        auto key = std::make_tuple(inner.left, inner.right, outer.right);
        auto it = acc.find(key);
        Scalar v = outer.coef * inner.coef;
        if (it == acc.end())
          acc.emplace(key, v);
        else
          it->second += v;
      }
    for (auto& [key, v] : acc)
      if (!v.is_zero()) t.of[x].push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
  }
  return t;
}

Report check_coalgebra(const Coalgebra& c) {
  check_coalgebra_shape(c);
  Report r;
  std::size_t n = c.dim;
  Field f = c.field();
  auto d = coproduct_terms(c);
  for (std::size_t x = 0; x < n; ++x) {
    Vector lhs(n * n * n, f.zero()), rhs(n * n * n, f.zero());
    for (const auto& o : d.of[x]) {
      for (const auto& i : d.of[o.left]) lhs[(i.left * n + i.right) * n + o.right] += o.coef * i.coef;
      for (const auto& i : d.of[o.right]) rhs[(o.left * n + i.left) * n + i.right] += o.coef * i.coef;
    }
    if (lhs != rhs) r.fail("coassociativity", {x});
    Vector left(n, f.zero()), right(n, f.zero());
    for (const auto& o : d.of[x]) {
      left[o.right] += c.counit(0, o.left) * o.coef;
      right[o.left] += c.counit(0, o.right) * o.coef;
    }
    if (left != exactla::unit_vector(f, n, x)) r.fail("left_counit", {x});
    if (right != exactla::unit_vector(f, n, x)) r.fail("right_counit", {x});
  }
  return r;
}

Report check_algebra(const Algebra& a) {
  check_algebra_shape(a);
  Report r;
  std::size_t n = a.dim;
  Field f = a.field();
  auto m = product_terms(a);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vector lhs(n, f.zero()), rhs(n, f.zero());
        for (const auto& e : m(i, j)) add_scaled(lhs, m(e.index, k), e.value);
        for (const auto& e : m(j, k)) add_scaled(rhs, m(i, e.index), e.value);
        if (lhs != rhs) r.fail("associativity", {i, j, k});
      }
  for (std::size_t i = 0; i < n; ++i) {
    Vector left(n, f.zero()), right(n, f.zero());
    for (std::size_t u = 0; u < n; ++u) {
      const Scalar& c = a.unit(u, 0);
      if (c.is_zero()) continue;
      add_scaled(left, m(u, i), c);
      add_scaled(right, m(i, u), c);
    }
    if (left != exactla::unit_vector(f, n, i)) r.fail("left_unit", {i});
    if (right != exactla::unit_vector(f, n, i)) r.fail("right_unit", {i});
  }
  return r;
}

namespace {

// m(v (x) w) for dense v, w.
Vector multiply(const ProductTerms& m, const Vector& v, const Vector& w) {
  Vector out(m.dim, m.field.zero());
  for (std::size_t p = 0; p < m.dim; ++p) {
    if (v[p].is_zero()) continue;
    for (std::size_t q = 0; q < m.dim; ++q) {
      if (w[q].is_zero()) continue;
      add_scaled(out, m(p, q), v[p] * w[q]);
    }
  }
  return out;
}

}  // namespace

Matrix convolve(const Matrix& f, const Matrix& g, const Coalgebra& c, const Algebra& a) {
  require(f.cols() == c.dim && g.cols() == c.dim && f.rows() == a.dim && g.rows() == a.dim,
          "convolve: maps must go from C to A");
  auto d = coproduct_terms(c);
  auto m = product_terms(a);
  Matrix out(c.field(), a.dim, c.dim);
  for (std::size_t x = 0; x < c.dim; ++x) {
    Vector acc(a.dim, c.field().zero());
    for (const auto& t : d.of[x]) {
      Vector p = multiply(m, f.column(t.left), g.column(t.right));
      for (std::size_t i = 0; i < a.dim; ++i) acc[i] += t.coef * p[i];
    }
    for (std::size_t i = 0; i < a.dim; ++i) out(i, x) = acc[i];
  }
  return out;
}

Matrix convolve_bimodule(const Matrix& f, const Matrix& phi, const Matrix& g, const Coalgebra& c,
                         const Algebra& a) {
  require(f.cols() == c.dim && g.cols() == c.dim && phi.cols() == c.dim && f.rows() == a.dim &&
              g.rows() == a.dim && phi.rows() == a.dim,
          "convolve_bimodule: maps must go from C to A");
  auto d2 = double_coproduct(coproduct_terms(c));
  auto m = product_terms(a);
  Matrix out(c.field(), a.dim, c.dim);
  for (std::size_t x = 0; x < c.dim; ++x) {
    Vector acc(a.dim, c.field().zero());
    for (const auto& t : d2.of[x]) {
      Vector p = multiply(m, multiply(m, f.column(t.a), phi.column(t.b)), g.column(t.c));
      for (std::size_t i = 0; i < a.dim; ++i) acc[i] += t.coef * p[i];
    }
    for (std::size_t i = 0; i < a.dim; ++i) out(i, x) = acc[i];
  }
  return out;
}

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

Matrix convolve_expand(const Matrix& left, const Matrix& right, const CoproductTerms& d, std::size_t k) {
  std::size_t total = ipow(d.dim, k);
  std::size_t dv = left.rows(), dw = right.rows();
  auto lcols = exactla::column_terms(left);
  auto rcols = exactla::column_terms(right);
  Matrix out(d.field, dv * dw, total);
  for (std::size_t x = 0; x < total; ++x) {
    Vector acc(dv * dw, d.field.zero());
    for_each_power_term(d, k, x, [&](std::size_t y, std::size_t z, const Scalar& c) {
      for (const auto& a : lcols[y])
        for (const auto& b : rcols[z]) acc[a.index * dw + b.index] += c * a.value * b.value;
    });
    for (std::size_t i = 0; i < dv * dw; ++i) out(i, x) = acc[i];
  }
  return out;
}

// Contracts one leg pair at a time; state index is
// (v, w, a_1..a_t, i_{t+1}..i_k, j_{t+1}..j_k).
Matrix convolve_contract(const Matrix& left, const Matrix& right, const CoproductTerms& d, std::size_t k) {
  std::size_t n = d.dim;
  std::size_t total = ipow(n, k);
  std::size_t dv = left.rows(), dw = right.rows();
  Field f = d.field;
  std::vector<Scalar> state(dv * dw * total * total, f.zero());
  for (std::size_t v = 0; v < dv; ++v)
    for (std::size_t i = 0; i < total; ++i) {
      const Scalar& a = left(v, i);
      if (a.is_zero()) continue;
      for (std::size_t w = 0; w < dw; ++w)
        for (std::size_t j = 0; j < total; ++j) {
          const Scalar& b = right(w, j);
          if (!b.is_zero()) state[((v * dw + w) * total + i) * total + j] = a * b;
        }
    }
  std::size_t prefix = dv * dw;
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t rest = ipow(n, k - t - 1);
    std::size_t in_block = n * rest;
    std::vector<Scalar> next(prefix * n * rest * rest, f.zero());
    for (std::size_t p = 0; p < prefix; ++p)
      for (std::size_t a = 0; a < n; ++a)
        for (const auto& term : d.of[a])
          for (std::size_t ip = 0; ip < rest; ++ip) {
            std::size_t src_row = (p * in_block + term.left * rest + ip) * in_block + term.right * rest;
            std::size_t dst_row = ((p * n + a) * rest + ip) * rest;
            for (std::size_t jp = 0; jp < rest; ++jp) {
              const Scalar& s = state[src_row + jp];
              if (!s.is_zero()) next[dst_row + jp] += term.coef * s;
            }
          }
    state = std::move(next);
    prefix *= n;
  }
  Matrix out(f, dv * dw, total);
  for (std::size_t vw = 0; vw < dv * dw; ++vw)
    for (std::size_t x = 0; x < total; ++x) out(vw, x) = state[vw * total + x];
  return out;
}

}  // namespace

Matrix convolve_power(const Matrix& left, const Matrix& right, const CoproductTerms& d, std::size_t k,
                      ConvolutionPath path) {
  std::size_t total = ipow(d.dim, k);
  require(left.cols() == total && right.cols() == total, "convolve_power: domain must be C^k");
  if (path == ConvolutionPath::automatic) {
    std::size_t nnz = 0;
    for (const auto& ts : d.of) nnz += ts.size();
    double avg = static_cast<double>(nnz) / static_cast<double>(d.dim);
    double expand_cost = static_cast<double>(total) * std::pow(avg, static_cast<double>(k));
    double contract_size = static_cast<double>(left.rows() * right.rows()) * static_cast<double>(total) *
                           static_cast<double>(total);
    path = (contract_size <= (1 << 22) && contract_size < expand_cost) ? ConvolutionPath::contract
                                                                        : ConvolutionPath::expand;
  }
  return path == ConvolutionPath::contract ? convolve_contract(left, right, d, k)
                                           : convolve_expand(left, right, d, k);
}

Matrix counit_power(const Coalgebra& c, std::size_t k) {
  std::size_t total = ipow(c.dim, k);
  Matrix out(c.field(), 1, total);
  for (std::size_t x = 0; x < total; ++x) {
    Scalar v = c.field().one();
    std::size_t y = x;
    for (std::size_t t = 0; t < k; ++t) {
      v *= c.counit(0, y % c.dim);
      y /= c.dim;
    }
    out(0, x) = v;
  }
  return out;
}

namespace {

// Rows of the operator g |-> f * g (right = true) or g |-> g * f on functionals
// of C^{(x)k}; entry (x, u) is the coefficient of g(u) at x. Built one leg at a
// time, the state index is (x_1, u_1, ..., x_t, u_t, y_{t+1}, ..., y_k).
std::vector<SparseVector> multiplication_rows(const Matrix& f, const CoproductTerms& d, std::size_t k, bool right) {
  std::size_t n = d.dim;
  std::size_t total = ipow(n, k);
  std::vector<Scalar> state = f.row(0);
  std::size_t prefix = 1;
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t rest = ipow(n, k - t - 1);
    std::vector<Scalar> next(prefix * n * n * rest, d.field.zero());
    for (std::size_t p = 0; p < prefix; ++p)
      for (std::size_t a = 0; a < n; ++a)
        for (const auto& term : d.of[a]) {
          std::size_t kept = right ? term.right : term.left;
          std::size_t summed = right ? term.left : term.right;
          std::size_t src = (p * n + summed) * rest;
          std::size_t dst = ((p * n + a) * n + kept) * rest;
          for (std::size_t r = 0; r < rest; ++r) {
            const Scalar& v = state[src + r];
            if (!v.is_zero()) next[dst + r] += term.coef * v;
          }
        }
    state = std::move(next);
    prefix *= n * n;
  }
  std::vector<std::map<std::size_t, Scalar>> acc(total);
  for (std::size_t idx = 0; idx < state.size(); ++idx) {
    if (state[idx].is_zero()) continue;
    std::size_t x = 0, u = 0, scale = 1, rem = idx;
    for (std::size_t t = 0; t < k; ++t) {
      u += (rem % n) * scale;
      rem /= n;
      x += (rem % n) * scale;
      rem /= n;
      scale *= n;
    }
    acc[x].emplace(u, state[idx]);
  }
  std::vector<SparseVector> rows;
  rows.reserve(total);
  for (auto& m : acc) rows.push_back(sparse_from_map(m));
  return rows;
}

// Solves f * g = eps (right = true) or g * f = eps for g.
std::optional<Matrix> one_sided_inverse(const Matrix& f, const CoproductTerms& d, std::size_t k, const Matrix& eps,
                                        bool right) {
  auto sol = exactla::solve_affine_sparse(d.field, eps.cols(), multiplication_rows(f, d, k, right), eps.row(0));
  if (!sol) return std::nullopt;
  return Matrix::row_vector(d.field, sol->particular);
}

std::variant<Matrix, NotInvertible> inverse_on_power(const Matrix& f, const Coalgebra& c, std::size_t k) {
  require(f.rows() == 1 && f.cols() == ipow(c.dim, k), "convolution inverse needs a functional on C^k");
  auto d = coproduct_terms(c);
  Matrix eps = counit_power(c, k);
  auto r = one_sided_inverse(f, d, k, eps, true);
  auto l = one_sided_inverse(f, d, k, eps, false);
  if (!r && !l) return NotInvertible{"both"};
  if (!r) return NotInvertible{"right"};
  if (!l) return NotInvertible{"left"};
  if (!(*r == *l)) return NotInvertible{"both"};
  return *r;
}

}  // namespace

std::variant<Matrix, NotInvertible> convolution_inverse(const Matrix& f, const Coalgebra& c) {
  return inverse_on_power(f, c, 1);
}

std::variant<Matrix, NotInvertible> convolution_inverse_power(const Matrix& f, const Coalgebra& c, std::size_t k) {
  return inverse_on_power(f, c, k);
}

}  // namespace coquasi::coalg
