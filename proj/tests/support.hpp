#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "coquasi/ops.hpp"
#include "coquasi/zoo.hpp"

namespace testing_support {

using namespace coquasi;
using exactla::Field;
using exactla::Matrix;
using exactla::Scalar;
using exactla::Vector;

inline Field Q() { return Field::rational(); }

inline Scalar num(Field f, long long v) { return f.from_int(v); }

inline Scalar frac(Field f, const std::string& s) { return f.from_rational(mpq_class(s)); }

inline Matrix mat(Field f, std::initializer_list<std::initializer_list<long long>> rows) {
  std::size_t r = rows.size(), c = rows.begin()->size();
  Matrix m(f, r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (long long v : row) m(i, j++) = f.from_int(v);
    ++i;
  }
  return m;
}

inline Vector vec(Field f, std::initializer_list<long long> xs) {
  Vector v;
  for (long long x : xs) v.push_back(f.from_int(x));
  return v;
}

inline Matrix random_matrix(Field f, std::size_t r, std::size_t c, std::mt19937& rng, int spread = 3) {
  std::uniform_int_distribution<int> d(-spread, spread);
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(d(rng));
  return m;
}

inline const cli::ZooEntry& zoo_entry(const std::string& name) {
  static const auto zoo = cli::coquasi_zoo();
  for (const auto& z : zoo)
    if (z.name == name) return z;
  throw std::out_of_range(name);
}

inline const std::vector<cli::ZooEntry>& zoo() {
  static const auto z = cli::coquasi_zoo();
  return z;
}

inline const std::vector<cli::QuasiZooEntry>& quasi_zoo() {
  static const auto z = cli::quasi_zoo();
  return z;
}

inline const cli::QuasiZooEntry& quasi_entry(const std::string& name) {
  for (const auto& z : quasi_zoo())
    if (z.name == name) return z;
  throw std::out_of_range(name);
}

/// Z/2 = {1, x} twisted by w(x, x, x) = -1.
inline cli::ZooSpec z2_omega_spec(Field f = Q()) {
  auto g = cli::FiniteGroup::cyclic(2);
  return {g, cli::cyclic_cocycle(2, f.from_int(-1)), f};
}

/// Naive dense evaluation of the three preantipode identities; returns every
/// residual entry (left side minus right side), in no particular order.
/// Written with plain index loops over the structure constants, independent of
/// the library's term tables.
inline Vector naive_preantipode_residuals(const cqb::CoquasiBialgebra& h, const Matrix& s) {
  std::size_t n = h.dim();
  Field f = h.field();
  const Matrix& D = h.coalgebra.delta;
  const Matrix& M = h.mult;
  Vector out;
  for (std::size_t x = 0; x < n; ++x) {
    // sum S(h1)_1 h2 (x) S(h1)_2 - 1 (x) S(h)
    std::vector<Scalar> l1(n * n, f.zero()), l2(n * n, f.zero());
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        Scalar dab = D(a * n + b, x);
        if (dab.is_zero()) continue;
        for (std::size_t c = 0; c < n; ++c)
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
              for (std::size_t r = 0; r < n; ++r) {
                // axiom 1 with S(a)
                Scalar t1 = dab * s(c, a) * D(p * n + q, c);
                if (!t1.is_zero()) l1[r * n + q] += t1 * M(r, p * n + b);
                // axiom 2 with S(b): S(b)_1 (x) a S(b)_2
                Scalar t2 = dab * s(c, b) * D(p * n + q, c);
                if (!t2.is_zero()) l2[p * n + r] += t2 * M(r, a * n + q);
              }
      }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t q = 0; q < n; ++q) {
        out.push_back(l1[r * n + q] - h.unit(r, 0) * s(q, x));
        out.push_back(l2[r * n + q] - s(r, x) * h.unit(q, 0));
      }
    // sum omega(h1, S(h2), h3) - eps(h)
    Scalar acc = f.zero();
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t c = 0; c < n; ++c) {
        Scalar dyc = D(y * n + c, x);
        if (dyc.is_zero()) continue;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) {
            Scalar dab = D(a * n + b, y);
            if (dab.is_zero()) continue;
            for (std::size_t d = 0; d < n; ++d) acc += dyc * dab * s(d, b) * h.omega(0, (a * n + d) * n + c);
          }
      }
    out.push_back(acc - h.coalgebra.counit(0, x));
  }
  return out;
}

inline bool all_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

/// Brute-force preantipode solve: linearize the naive residuals in the n^2
/// entries of S and run a dense affine solve.
struct BruteSolution {
  std::optional<Matrix> s;
  std::size_t nullity = 0;
};

inline BruteSolution brute_force_preantipode(const cqb::CoquasiBialgebra& h) {
  std::size_t n = h.dim();
  Field f = h.field();
  Vector r0 = naive_preantipode_residuals(h, Matrix(f, n, n));
  Matrix a(f, r0.size(), n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) {
      Matrix e(f, n, n);
      e(i, c) = f.one();
      Vector r = naive_preantipode_residuals(h, e);
      for (std::size_t k = 0; k < r.size(); ++k) a(k, i * n + c) = r[k] - r0[k];
    }
  Vector b(r0.size(), f.zero());
  for (std::size_t k = 0; k < r0.size(); ++k) b[k] = -r0[k];
  auto sol = exactla::solve_affine(a, b);
  BruteSolution out;
  if (!sol) return out;
  Matrix s(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c) s(i, c) = sol->particular[i * n + c];
  out.s = s;
  out.nullity = sol->nullspace.dim();
  return out;
}

/// A random base change of a zoo twisted group algebra (fixture population for
/// the randomized properties).
struct RandomFixture {
  std::string origin;
  cqb::CoquasiBialgebra h;
  Matrix s;  // closed-form preantipode transported along the base change
  Matrix p;
};

inline RandomFixture random_fixture(std::mt19937& rng, std::size_t max_dim = 8) {
  std::vector<const cli::ZooEntry*> pool;
  for (const auto& z : zoo())
    if (z.data.h->dim() <= max_dim) pool.push_back(&z);
  const auto& z = *pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
  Matrix p = cli::random_invertible(z.data.h->field(), z.data.h->dim(), rng);
  return {z.name, cli::base_change(*z.data.h, p), cli::base_change_preantipode(z.data.s, p), p};
}

}  // namespace testing_support
