#pragma once

#include <optional>

#include "coquasi/coalgebra.hpp"

namespace coquasi::cqb {

using exactla::Field;
using exactla::Matrix;
using exactla::Scalar;
using exactla::Vector;

/// Normalized coquasi-bialgebra (H, Delta, eps, m, u, omega) in structure constants.
/// omega is a 1 x n^3 row with index (i*n + j)*n + k.
struct CoquasiBialgebra {
  coalg::Coalgebra coalgebra;
  Matrix mult;   // n x n^2
  Matrix unit;   // n x 1
  Matrix omega;  // 1 x n^3
  std::optional<Matrix> omega_inv;

  /// Checks shapes and caches omega^{-1} when it exists.
  static CoquasiBialgebra create(coalg::Coalgebra c, Matrix mult, Matrix unit, Matrix omega);
  /// Same, but tries `omega_inv` first and only solves when it is not a two-sided inverse.
  static CoquasiBialgebra create(coalg::Coalgebra c, Matrix mult, Matrix unit, Matrix omega, const Matrix& omega_inv);

  std::size_t dim() const { return coalgebra.dim; }
  Field field() const { return coalgebra.field(); }
  coalg::Algebra algebra() const { return {coalgebra.dim, mult, unit}; }
  /// Throws std::domain_error when omega is not convolution invertible.
  const Matrix& omega_inverse() const;

  Scalar w(std::size_t i, std::size_t j, std::size_t k) const { return omega(0, (i * dim() + j) * dim() + k); }
  Scalar w_inv(std::size_t i, std::size_t j, std::size_t k) const {
    return omega_inverse()(0, (i * dim() + j) * dim() + k);
  }
};

/// (s, alpha, beta): s : H -> H, alpha, beta : H -> k (1 x n rows).
struct CoquasiHopfData {
  Matrix s;
  Matrix alpha;
  Matrix beta;
};

Report validate_coquasi(const CoquasiBialgebra& h);

/// S is an n x n matrix; column a holds S(e_a).
Report check_preantipode(const CoquasiBialgebra& h, const Matrix& s);

struct PreantipodeSolution {
  enum class Status { unique, none, nonunique };
  Status status = Status::none;
  std::optional<Matrix> s;  // the particular solution when consistent
  std::size_t nullity = 0;
};

PreantipodeSolution solve_preantipode(const CoquasiBialgebra& h);

/// The linear system solved by solve_preantipode: rows in axiom order, unknown S(i, a) at column i*n + a.
struct PreantipodeSystem {
  std::vector<exactla::SparseVector> rows;
  Vector rhs;
};
PreantipodeSystem preantipode_system(const CoquasiBialgebra& h);

Matrix preantipode_from_antipode(const CoquasiBialgebra& h, const CoquasiHopfData& q);
Report validate_coquasi_hopf(const CoquasiBialgebra& h, const CoquasiHopfData& q);

/// f : H -> L. Preantipodes are solved on both sides; when both exist,
/// f S_H = S_L f is checked as well.
Report check_morphism(const Matrix& f, const CoquasiBialgebra& h, const CoquasiBialgebra& l);

Report hat_epsilon_roundtrip(const CoquasiBialgebra& h, const Matrix& s);
Report epsilon_s_identities(const CoquasiBialgebra& h, const Matrix& s);

/// The Hopf-module data used by hat_epsilon_roundtrip, exposed for tests.
struct HatEpsilon {
  exactla::Subspace coinvariants;  // inside H (x) H
  Matrix forward;                  // coinv (x) H -> H (x) H
  Matrix backward;                 // H (x) H -> coinv (x) H
};
HatEpsilon hat_epsilon(const CoquasiBialgebra& h, const Matrix& s);

bool is_trivial_omega(const CoquasiBialgebra& h);

/// Iterated coproduct Delta^(k-1) as (indices, coefficient) terms per basis element.
struct IteratedTerms {
  struct Term {
    std::vector<std::size_t> idx;
    Scalar coef;
  };
  std::vector<std::vector<Term>> of;
};
IteratedTerms iterated_coproduct(const coalg::Coalgebra& c, std::size_t legs);

}  // namespace coquasi::cqb
