#pragma once

#include <variant>

#include "coquasi/linalg.hpp"
#include "coquasi/report.hpp"

namespace coquasi::coalg {

using exactla::Field;
using exactla::Matrix;
using exactla::Scalar;
using exactla::Vector;

/// delta: n^2 x n, counit: 1 x n.
struct Coalgebra {
  std::size_t dim = 0;
  Matrix delta;
  Matrix counit;
  Field field() const { return delta.field(); }
};

/// mult: n x n^2, unit: n x 1.
struct Algebra {
  std::size_t dim = 0;
  Matrix mult;
  Matrix unit;
  Field field() const { return mult.field(); }
};

/// The ground field as a one-dimensional algebra.
Algebra ground_algebra(Field f);
Coalgebra ground_coalgebra(Field f);

Report check_coalgebra(const Coalgebra& c);
Report check_algebra(const Algebra& a);

/// Coproduct of each basis element as a list of (left, right, coefficient).
struct CoproductTerms {
  struct Term {
    std::size_t left;
    std::size_t right;
    Scalar coef;
  };
  std::size_t dim = 0;
  Field field;
  std::vector<std::vector<Term>> of;
};

CoproductTerms coproduct_terms(const Coalgebra& c);

/// Product table: of[i * n + j] lists the terms of e_i e_j.
struct ProductTerms {
  std::size_t dim = 0;
  Field field;
  std::vector<exactla::SparseVector> of;
  const exactla::SparseVector& operator()(std::size_t i, std::size_t j) const { return of[i * dim + j]; }
};

ProductTerms product_terms(const Algebra& a);

/// m o (f (x) g) o delta for f, g : C -> A.
Matrix convolve(const Matrix& f, const Matrix& g, const Coalgebra& c, const Algebra& a);
/// x |-> sum f(x1) phi(x2) g(x3) for f, phi, g : C -> A.
Matrix convolve_bimodule(const Matrix& f, const Matrix& phi, const Matrix& g, const Coalgebra& c, const Algebra& a);

enum class ConvolutionPath { automatic, expand, contract };

/// For left : C^{(x)k} -> V and right : C^{(x)k} -> W, the map
/// x |-> sum left(x_(1)) (x) right(x_(2)) into V (x) W, where C^{(x)k}
/// carries the tensor-power coalgebra structure.
Matrix convolve_power(const Matrix& left, const Matrix& right, const CoproductTerms& delta, std::size_t k,
                      ConvolutionPath path = ConvolutionPath::automatic);

/// Counit of C^{(x)k} as a 1 x n^k row.
Matrix counit_power(const Coalgebra& c, std::size_t k);

struct NotInvertible {
  std::string side;  // "left", "right" or "both"
};

/// Two-sided convolution inverse of a functional f : C -> k.
std::variant<Matrix, NotInvertible> convolution_inverse(const Matrix& f, const Coalgebra& c);
/// Two-sided convolution inverse of a functional on C^{(x)k}.
std::variant<Matrix, NotInvertible> convolution_inverse_power(const Matrix& f, const Coalgebra& c, std::size_t k);

/// Expands the coproduct of the tensor-power basis element x of C^{(x)k};
/// calls fn(left_index, right_index, coefficient) for every term.
template <class Fn>
void for_each_power_term(const CoproductTerms& d, std::size_t k, std::size_t x, Fn&& fn);

/// (Delta (x) id) o Delta as terms (a, b, c, coef) per basis element.
struct TripleTerms {
  struct Term {
    std::size_t a, b, c;
    Scalar coef;
  };
  std::vector<std::vector<Term>> of;
};
TripleTerms double_coproduct(const CoproductTerms& d);

// ---------------------------------------------------------------------------

namespace detail {
template <class Fn>
void expand(const CoproductTerms& d, std::size_t k, const std::vector<std::size_t>& digits, std::size_t t,
            std::size_t left, std::size_t right, const Scalar& coef, Fn& fn) {
  if (t == k) {
    fn(left, right, coef);
    return;
  }
  for (const auto& term : d.of[digits[t]])
    expand(d, k, digits, t + 1, left * d.dim + term.left, right * d.dim + term.right, coef * term.coef, fn);
}
}  // namespace detail

template <class Fn>
void for_each_power_term(const CoproductTerms& d, std::size_t k, std::size_t x, Fn&& fn) {
  std::vector<std::size_t> digits(k);
  for (std::size_t t = k; t-- > 0;) {
    digits[t] = x % d.dim;
    x /= d.dim;
  }
  detail::expand(d, k, digits, 0, 0, 0, d.field.one(), fn);
}

}  // namespace coquasi::coalg
