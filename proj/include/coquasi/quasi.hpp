#pragma once

#include "coquasi/comodule.hpp"

namespace coquasi::qb {

using exactla::Field;
using exactla::Matrix;
using exactla::Scalar;
using exactla::Vector;

/// Quasi-bialgebra (A, m, u, Delta, eps, Phi); Phi is a flat vector of A^(x)3.
struct QuasiBialgebra {
  coalg::Algebra algebra;
  Matrix delta;   // n^2 x n
  Matrix counit;  // 1 x n
  Vector phi;
  std::optional<Vector> phi_inv;

  /// Checks shapes; solves for Phi^{-1} when it is not supplied.
  static QuasiBialgebra create(coalg::Algebra a, Matrix delta, Matrix counit, Vector phi,
                               std::optional<Vector> phi_inv = std::nullopt);

  std::size_t dim() const { return algebra.dim; }
  Field field() const { return algebra.field(); }
  coalg::Coalgebra coalgebra() const { return {algebra.dim, delta, counit}; }
  const Vector& phi_inverse() const;
};

// --- elements of A^(x)k -----------------------------------------------------

/// Componentwise product in A^(x)k.
Vector tensor_mul(const coalg::ProductTerms& m, std::size_t k, const Vector& x, const Vector& y);
/// Applies Delta to leg `leg` of an element of A^(x)k.
Vector apply_delta(const coalg::CoproductTerms& d, std::size_t k, std::size_t leg, const Vector& x);
/// Applies eps to leg `leg` of an element of A^(x)k.
Vector apply_counit(const Matrix& counit, std::size_t n, std::size_t k, std::size_t leg, const Vector& x);
/// 1 (x) ... (x) 1.
Vector tensor_one(const coalg::Algebra& a, std::size_t k);
std::optional<Vector> tensor_inverse(const coalg::Algebra& a, std::size_t k, const Vector& x);

Report validate_quasi(const QuasiBialgebra& a);

Report check_quasi_preantipode(const QuasiBialgebra& a, const Matrix& s);
cqb::PreantipodeSolution solve_quasi_preantipode(const QuasiBialgebra& a);

/// p and q as maps A -> A (x) A: p(a) = sum p1 (x) p2(a), q(a) = sum q1(a) (x) q2,
/// together with the expanded closed forms.
struct PQElements {
  Matrix p;
  Matrix q;
  Matrix p_expanded;
  Matrix q_expanded;
};

PQElements compute_pq(const QuasiBialgebra& a, const Matrix& s);
Report check_pq_identities(const QuasiBialgebra& a, const Matrix& s, const PQElements& pq);
Report check_s_recovery(const QuasiBialgebra& a, const Matrix& s, const PQElements& pq);
Report check_antimultiplicativity(const QuasiBialgebra& a, const Matrix& s);

/// Right A-module; action is d x (d*n) with index m*n + a.
struct RightModule {
  std::size_t dim = 0;
  Matrix action;
};

Report check_module(const RightModule& m, const coalg::Algebra& a);
RightModule trivial_module(const QuasiBialgebra& a);
RightModule regular_module(const QuasiBialgebra& a);
RightModule tensor_module(const RightModule& m, const RightModule& n, const QuasiBialgebra& a);

/// Coaction sum_i (e^i o mu_m) (x) e_i over the finite dual.
comodcat::Comodule module_to_comodule(const RightModule& m, std::shared_ptr<const cqb::CoquasiBialgebra> dual);
RightModule comodule_to_module(const comodcat::Comodule& c);

struct ModuleDual {
  RightModule dual;
  Matrix ev;  // 1 x (d * d*)
  Matrix db;  // (d* * d) x 1
};

/// M* = A (x) M^* / A^+(A (x) M^*); throws std::runtime_error on a zigzag failure.
ModuleDual module_dual(const RightModule& m, const QuasiBialgebra& a, const Matrix& s);

struct FiniteDual {
  cqb::CoquasiBialgebra h;
  Matrix s;
};

FiniteDual finite_dual(const QuasiBialgebra& a, const Matrix& s);

bool is_trivial_phi(const QuasiBialgebra& a);

}  // namespace coquasi::qb
