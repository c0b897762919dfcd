#include "coquasi/zoo.hpp"

#include <algorithm>
#include <stdexcept>

namespace coquasi::cli {

using coalg::Algebra;
using coalg::Coalgebra;
using cqb::CoquasiBialgebra;
using exactla::Vector;

std::size_t FiniteGroup::identity() const {
  for (std::size_t e = 0; e < order; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < order && ok; ++g) ok = mul(e, g) == g && mul(g, e) == g;
    if (ok) return e;
  }
  throw std::invalid_argument("multiplication table has no identity");
}

std::size_t FiniteGroup::inverse(std::size_t g) const {
  std::size_t e = identity();
  for (std::size_t h = 0; h < order; ++h)
    if (mul(g, h) == e) return h;
  throw std::invalid_argument("element without inverse");
}

void FiniteGroup::validate() const {
  if (order == 0 || order > 16) throw std::invalid_argument("group order must be between 1 and 16");
  if (table.size() != order * order) throw std::invalid_argument("multiplication table must be order x order");
  for (auto v : table)
    if (v >= order) throw std::invalid_argument("multiplication table entry out of range");
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b)
      for (std::size_t c = 0; c < order; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw std::invalid_argument("multiplication is not associative");
  for (std::size_t g = 0; g < order; ++g) inverse(g);
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  FiniteGroup g{n, std::vector<std::size_t>(n * n)};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
  return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  std::size_t n = a.order * b.order;
  FiniteGroup g{n, std::vector<std::size_t>(n * n)};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      g.table[x * n + y] = a.mul(x / b.order, y / b.order) * b.order + b.mul(x % b.order, y % b.order);
  return g;
}

FiniteGroup FiniteGroup::symmetric3() {
  // permutations of {0,1,2} in lexicographic order; product is composition (p o q)
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  FiniteGroup g{6, std::vector<std::size_t>(36)};
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      g.table[a * 6 + b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return g;
}

std::optional<std::array<std::size_t, 4>> cocycle_violation(const ZooSpec& z) {
  const auto& g = z.group;
  std::size_t n = g.order;
  if (z.cocycle.size() != n * n * n) throw std::invalid_argument("cocycle must have |G|^3 values");
  auto w = [&](std::size_t a, std::size_t b, std::size_t c) -> const Scalar& { return z.cocycle[(a * n + b) * n + c]; };
  std::size_t e = g.identity();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!w(e, a, b).is_one()) return std::array<std::size_t, 4>{e, a, b, e};
      if (!w(a, e, b).is_one()) return std::array<std::size_t, 4>{a, e, b, e};
      if (!w(a, b, e).is_one()) return std::array<std::size_t, 4>{a, b, e, e};
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          if (w(b, c, d) * w(a, g.mul(b, c), d) * w(a, b, c) != w(g.mul(a, b), c, d) * w(a, b, g.mul(c, d)))
            return std::array<std::size_t, 4>{a, b, c, d};
  return std::nullopt;
}

std::vector<Scalar> trivial_cocycle(const FiniteGroup& g, Field f) {
  return std::vector<Scalar>(g.order * g.order * g.order, f.one());
}

std::vector<Scalar> cyclic_cocycle(std::size_t n, const Scalar& lambda) {
  Field f = lambda.field();
  std::vector<Scalar> w;
  w.reserve(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        Scalar v = f.one();
        std::size_t e = a * ((b + c) / n);
        for (std::size_t i = 0; i < e; ++i) v *= lambda;
        w.push_back(v);
      }
  return w;
}

std::vector<Scalar> product_cocycle(const FiniteGroup& g1, const std::vector<Scalar>& w1, const FiniteGroup& g2,
                                    const std::vector<Scalar>& w2) {
  std::size_t n1 = g1.order, n2 = g2.order, n = n1 * n2;
  std::vector<Scalar> w;
  w.reserve(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        w.push_back(w1[((a / n2) * n1 + b / n2) * n1 + c / n2] * w2[((a % n2) * n2 + b % n2) * n2 + c % n2]);
  return w;
}

std::vector<Scalar> pullback_cocycle(const FiniteGroup& g, const std::vector<std::size_t>& hom, std::size_t k_order,
                                     const std::vector<Scalar>& w) {
  std::size_t n = g.order;
  std::vector<Scalar> out;
  out.reserve(n * n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) out.push_back(w[(hom[a] * k_order + hom[b]) * k_order + hom[c]]);
  return out;
}

namespace {

void check_spec(const ZooSpec& z) {
  z.group.validate();
  for (const auto& v : z.cocycle)
    if (!(v.field() == z.field)) throw exactla::FieldMismatch("cocycle values must lie in the zoo field");
  if (auto bad = cocycle_violation(z))
    throw std::invalid_argument("cocycle violation at (" + std::to_string((*bad)[0]) + "," +
                                std::to_string((*bad)[1]) + "," + std::to_string((*bad)[2]) + "," +
                                std::to_string((*bad)[3]) + ")");
}

Scalar correction(const ZooSpec& z, std::size_t g) {
  std::size_t n = z.group.order;
  std::size_t gi = z.group.inverse(g);
  return z.cocycle[(g * n + gi) * n + g].inverse();
}

}  // namespace

GroupCoquasi gen_group_coquasi(const ZooSpec& z) {
  check_spec(z);
  const auto& g = z.group;
  std::size_t n = g.order;
  Field f = z.field;
  Matrix delta(f, n * n, n), counit(f, 1, n), mult(f, n, n * n), unit(f, n, 1), omega(f, 1, n * n * n);
  for (std::size_t a = 0; a < n; ++a) {
    delta(a * n + a, a) = f.one();
    counit(0, a) = f.one();
    for (std::size_t b = 0; b < n; ++b) mult(g.mul(a, b), a * n + b) = f.one();
  }
  unit(g.identity(), 0) = f.one();
  for (std::size_t i = 0; i < n * n * n; ++i) omega(0, i) = z.cocycle[i];
  auto h = std::make_shared<const CoquasiBialgebra>(
      CoquasiBialgebra::create(Coalgebra{n, delta, counit}, mult, unit, omega));
  Matrix s(f, n, n);
  for (std::size_t a = 0; a < n; ++a) s(g.inverse(a), a) = correction(z, a);
  return {h, s};
}

cqb::CoquasiHopfData group_coquasi_hopf(const ZooSpec& z) {
  check_spec(z);
  std::size_t n = z.group.order;
  Field f = z.field;
  cqb::CoquasiHopfData q{Matrix(f, n, n), Matrix(f, 1, n), Matrix(f, 1, n)};
  for (std::size_t a = 0; a < n; ++a) {
    q.s(z.group.inverse(a), a) = f.one();
    q.alpha(0, a) = f.one();
    q.beta(0, a) = correction(z, a);
  }
  return q;
}

GroupQuasi gen_group_quasi(const ZooSpec& z) {
  check_spec(z);
  const auto& g = z.group;
  std::size_t n = g.order;
  Field f = z.field;
  Matrix mult(f, n, n * n), unit(f, n, 1), delta(f, n * n, n), counit(f, 1, n);
  for (std::size_t a = 0; a < n; ++a) {
    mult(a, a * n + a) = f.one();
    unit(a, 0) = f.one();
    for (std::size_t b = 0; b < n; ++b) delta(a * n + b, g.mul(a, b)) = f.one();
  }
  counit(0, g.identity()) = f.one();
  Vector phi(z.cocycle.begin(), z.cocycle.end());
  auto a = qb::QuasiBialgebra::create(Algebra{n, mult, unit}, delta, counit, phi);
  Matrix s(f, n, n);
  for (std::size_t h = 0; h < n; ++h) {
    std::size_t hi = g.inverse(h);
    s(hi, h) = correction(z, hi);
  }
  return {std::move(a), s};
}

namespace {

struct SweedlerTables {
  Matrix mult, unit, delta, counit, s;
};

SweedlerTables sweedler_tables(Field f) {
  // basis 0 = 1, 1 = g, 2 = x, 3 = gx
  SweedlerTables t{Matrix(f, 4, 16), Matrix(f, 4, 1), Matrix(f, 16, 4), Matrix(f, 1, 4), Matrix(f, 4, 4)};
  auto one = f.one(), neg = -f.one();
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, const Scalar& c) { t.mult(k, i * 4 + j) = c; };
  for (std::size_t i = 0; i < 4; ++i) {
    set(0, i, i, one);
    set(i, 0, i, one);
  }
  set(1, 1, 0, one);
  set(1, 2, 3, one);
  set(1, 3, 2, one);
  set(2, 1, 3, neg);
  set(3, 1, 2, neg);
  t.unit(0, 0) = one;
  t.delta(0 * 4 + 0, 0) = one;
  t.delta(1 * 4 + 1, 1) = one;
  t.delta(2 * 4 + 0, 2) = one;
  t.delta(1 * 4 + 2, 2) = one;
  t.delta(3 * 4 + 1, 3) = one;
  t.delta(0 * 4 + 3, 3) = one;
  t.counit(0, 0) = one;
  t.counit(0, 1) = one;
  t.s(0, 0) = one;
  t.s(1, 1) = one;
  t.s(3, 2) = neg;
  t.s(2, 3) = one;
  return t;
}

}  // namespace

GroupCoquasi sweedler(Field f) {
  if (f.characteristic() == 2) throw std::invalid_argument("Sweedler's algebra needs characteristic != 2");
  auto t = sweedler_tables(f);
  Matrix omega = coalg::counit_power(Coalgebra{4, t.delta, t.counit}, 3);
  auto h = std::make_shared<const CoquasiBialgebra>(
      CoquasiBialgebra::create(Coalgebra{4, t.delta, t.counit}, t.mult, t.unit, omega));
  return {h, t.s};
}

GroupQuasi sweedler_quasi(Field f) {
  auto t = sweedler_tables(f);
  Vector phi(64, f.zero());
  phi[0] = f.one();
  return {qb::QuasiBialgebra::create(Algebra{4, t.mult, t.unit}, t.delta, t.counit, phi), t.s};
}

GroupQuasi group_algebra_quasi(const FiniteGroup& g, Field f) {
  g.validate();
  std::size_t n = g.order;
  Matrix mult(f, n, n * n), unit(f, n, 1), delta(f, n * n, n), counit(f, 1, n), s(f, n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) mult(g.mul(a, b), a * n + b) = f.one();
    delta(a * n + a, a) = f.one();
    counit(0, a) = f.one();
    s(g.inverse(a), a) = f.one();
  }
  unit(g.identity(), 0) = f.one();
  Vector phi(n * n * n, f.zero());
  std::size_t e = g.identity();
  phi[(e * n + e) * n + e] = f.one();
  return {qb::QuasiBialgebra::create(Algebra{n, mult, unit}, delta, counit, phi), s};
}

CoquasiBialgebra base_change(const CoquasiBialgebra& h, const Matrix& p) {
  auto pinv = exactla::inverse(p);
  if (!pinv) throw std::invalid_argument("base change matrix is singular");
  Matrix delta = exactla::kron(*pinv, *pinv) * h.coalgebra.delta * p;
  Matrix counit = h.coalgebra.counit * p;
  Matrix mult = *pinv * h.mult * exactla::kron(p, p);
  Matrix unit = *pinv * h.unit;
  Matrix p3 = exactla::kron(exactla::kron(p, p), p);
  Matrix omega = h.omega * p3;
  if (h.omega_inv) return CoquasiBialgebra::create(Coalgebra{h.dim(), delta, counit}, mult, unit, omega, *h.omega_inv * p3);
  return CoquasiBialgebra::create(Coalgebra{h.dim(), delta, counit}, mult, unit, omega);
}

Matrix base_change_preantipode(const Matrix& s, const Matrix& p) {
  auto pinv = exactla::inverse(p);
  if (!pinv) throw std::invalid_argument("base change matrix is singular");
  return *pinv * s * p;
}

qb::QuasiBialgebra base_change(const qb::QuasiBialgebra& a, const Matrix& p) {
  auto pinv = exactla::inverse(p);
  if (!pinv) throw std::invalid_argument("base change matrix is singular");
  Matrix mult = *pinv * a.algebra.mult * exactla::kron(p, p);
  Matrix unit = *pinv * a.algebra.unit;
  Matrix delta = exactla::kron(*pinv, *pinv) * a.delta * p;
  Matrix counit = a.counit * p;
  Vector phi = exactla::kron(exactla::kron(*pinv, *pinv), *pinv).apply(a.phi);
  return qb::QuasiBialgebra::create(Algebra{a.dim(), mult, unit}, delta, counit, phi);
}

Matrix random_invertible(Field f, std::size_t n, std::mt19937& rng, int spread) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  for (;;) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = f.from_int(dist(rng));
    if (exactla::rank(m) == n) return m;
  }
}

namespace {

ZooSpec spec(FiniteGroup g, std::vector<Scalar> w, Field f) { return ZooSpec{std::move(g), std::move(w), f}; }

std::vector<ZooSpec> group_specs(std::vector<std::string>& names) {
  Field q = Field::rational();
  Field f5 = Field::prime(5);
  Field f7 = Field::prime(7);
  auto z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3), z4 = FiniteGroup::cyclic(4);
  auto sign = cyclic_cocycle(2, q.from_int(-1));
  std::vector<ZooSpec> out;
  auto add = [&](std::string name, ZooSpec s) {
    names.push_back(std::move(name));
    out.push_back(std::move(s));
  };
  add("trivial", spec(FiniteGroup::cyclic(1), {q.one()}, q));
  add("Z2_hopf", spec(z2, trivial_cocycle(z2, q), q));
  add("Z2_omega", spec(z2, sign, q));
  add("Z3_hopf", spec(z3, trivial_cocycle(z3, q), q));
  add("Z4_omega", spec(z4, cyclic_cocycle(4, q.from_int(-1)), q));
  add("Z2xZ2_omega", spec(FiniteGroup::product(z2, z2), product_cocycle(z2, sign, z2, sign), q));
  {
    // (-1)^(a1 b2 c2), a cup product of a character with a 2-cocycle
    std::vector<Scalar> w;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t c = 0; c < 4; ++c) w.push_back(q.from_int(((a / 2) & (b % 2) & (c % 2)) ? -1 : 1));
    add("Z2xZ2_mixed", spec(FiniteGroup::product(z2, z2), w, q));
  }
  auto s3 = FiniteGroup::symmetric3();
  std::vector<std::size_t> parity{0, 1, 1, 0, 0, 1};  // lexicographic permutations of {0,1,2}
  add("S3_omega", spec(s3, pullback_cocycle(s3, parity, 2, sign), q));
  add("Z4_omega_F5", spec(z4, cyclic_cocycle(4, f5.from_int(2)), f5));
  add("Z3_omega_F7", spec(z3, cyclic_cocycle(3, f7.from_int(2)), f7));
  return out;
}

}  // namespace

std::vector<ZooEntry> coquasi_zoo() {
  std::vector<std::string> names;
  auto specs = group_specs(names);
  std::vector<ZooEntry> out;
  for (std::size_t i = 0; i < specs.size(); ++i)
    out.push_back({names[i], gen_group_coquasi(specs[i]), group_coquasi_hopf(specs[i]), specs[i].group, specs[i],
                   std::nullopt});

  Field q = Field::rational();
  auto sw = sweedler(q);
  cqb::CoquasiHopfData swq{sw.s, sw.h->coalgebra.counit, sw.h->coalgebra.counit};
  out.push_back({"sweedler", sw, swq, std::nullopt, std::nullopt, std::nullopt});

  // a twisted group algebra in a basis that is not group-like
  const auto& z2w = out[2];
  Matrix p = Matrix::from_rows(q, {{q.from_int(1), q.from_int(1)}, {q.from_int(1), q.from_int(-1)}}, 2);
  auto hb = std::make_shared<const CoquasiBialgebra>(base_change(*z2w.data.h, p));
  cqb::CoquasiHopfData qb{base_change_preantipode(z2w.hopf->s, p), z2w.hopf->alpha * p, z2w.hopf->beta * p};
  out.push_back({"Z2_omega_rebased", {hb, base_change_preantipode(z2w.data.s, p)}, qb, std::nullopt, z2w.spec, p});
  return out;
}

std::vector<QuasiZooEntry> quasi_zoo() {
  std::vector<std::string> names;
  auto specs = group_specs(names);
  std::vector<QuasiZooEntry> out;
  for (std::size_t i = 0; i < specs.size(); ++i)
    out.push_back({"fun_" + names[i], gen_group_quasi(specs[i]), specs[i]});
  Field q = Field::rational();
  out.push_back({"kZ2_hopf", group_algebra_quasi(FiniteGroup::cyclic(2), q), std::nullopt});
  out.push_back({"kS3_hopf", group_algebra_quasi(FiniteGroup::symmetric3(), q), std::nullopt});
  out.push_back({"sweedler", sweedler_quasi(q), std::nullopt});
  const auto& fz2 = out[2];
  Matrix p = Matrix::from_rows(q, {{q.from_int(2), q.from_int(1)}, {q.from_int(1), q.from_int(1)}}, 2);
  out.push_back({"fun_Z2_omega_rebased", {base_change(fz2.data.a, p), base_change_preantipode(fz2.data.s, p)},
                 std::nullopt});
  return out;
}

}  // namespace coquasi::cli

namespace coquasi::cli {

recon::MonoidalDiagram grading_diagram(const ZooSpec& z, bool with_coaction, const std::optional<Matrix>& rebase) {
  const auto& g = z.group;
  g.validate();
  Field f = z.field;
  std::size_t n = g.order;
  auto one = [&](const Scalar& v) {
    Matrix m(f, 1, 1);
    m(0, 0) = v;
    return m;
  };
  auto w = [&](std::size_t a, std::size_t b, std::size_t c) { return z.cocycle[(a * n + b) * n + c]; };
  std::optional<Matrix> pinv;
  if (rebase) {
    pinv = exactla::inverse(*rebase);
    if (!pinv || rebase->rows() != n) throw std::invalid_argument("rebase must be an invertible n x n matrix");
  }

  recon::MonoidalDiagram d;
  d.field = f;
  for (std::size_t a = 0; a < n; ++a) {
    recon::MonoidalDiagram::Object o{"k" + std::to_string(a), 1, std::nullopt};
    if (with_coaction) {
      Matrix e = Matrix::column_vector(f, exactla::unit_vector(f, n, a));
      o.coaction = pinv ? *pinv * e : e;
    }
    d.objects.push_back(std::move(o));
  }
  d.unit_object = g.identity();
  d.phi0 = one(f.one());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d.tensor.push_back({a, b, g.mul(a, b), one(f.one())});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) d.associators.push_back({a, b, c, one(w(a, b, c).inverse())});
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t ai = g.inverse(a);
    d.duals.push_back({a, ai, one(w(a, ai, a).inverse()), one(f.one())});
  }
  return d;
}

}  // namespace coquasi::cli
