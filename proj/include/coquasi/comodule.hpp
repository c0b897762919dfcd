#pragma once

#include <memory>

#include "coquasi/coquasi.hpp"

namespace coquasi::comodcat {

using cqb::CoquasiBialgebra;
using exactla::Field;
using exactla::Matrix;
using exactla::Vector;

/// Left H-comodule; rho is (n*d) x d with the H-leg first.
struct Comodule {
  std::shared_ptr<const CoquasiBialgebra> h;
  std::size_t dim = 0;
  Matrix rho;

  Field field() const { return rho.field(); }
};

/// Right dual X* with evaluation X (x) X* -> k and dual basis k -> X* (x) X.
struct DualComoduleData {
  Comodule dual;
  Matrix ev;  // 1 x (d * d*)
  Matrix db;  // (d* * d) x 1
};

Report check_comodule(const Comodule& v);

/// The ground field with coaction 1 (x) k.
Comodule trivial_comodule(std::shared_ptr<const CoquasiBialgebra> h);
/// H with rho = Delta.
Comodule regular_comodule(std::shared_ptr<const CoquasiBialgebra> h);
/// Direct sum of comodules over the same H.
Comodule direct_sum(const Comodule& v, const Comodule& w);
/// Transports the coaction along an invertible change of basis p : k^d -> V.
Comodule change_basis(const Comodule& v, const Matrix& p);

Comodule tensor_comodule(const Comodule& v, const Comodule& w);

/// a(u (x) v (x) w) = sum w^{-1}(u_-1, v_-1, w_-1) u_0 (x) v_0 (x) w_0.
Matrix associator(const Comodule& u, const Comodule& v, const Comodule& w);
/// The inverse, built with omega in place of omega^{-1}.
Matrix associator_inverse(const Comodule& u, const Comodule& v, const Comodule& w);

/// Right coinvariants of a right coaction given as (d*n) x d with the H-leg last.
exactla::Subspace coinvariants(const Matrix& right_rho, const Matrix& unit);

/// Whether f : V -> W is colinear.
bool is_colinear(const Matrix& f, const Comodule& v, const Comodule& w);

/// V* = (V^* (x) H)^coH with ev and db; throws std::runtime_error when
/// colinearity or a zigzag identity fails.
DualComoduleData dual_comodule(const Comodule& v, const Matrix& s);

/// Colinearity of ev and db plus both zigzag identities.
Report check_dual(const Comodule& v, const DualComoduleData& d);

/// The comparison X^(1)* -> X^(2)* between two right duals of one object;
/// throws std::runtime_error if the defining identities fail.
Matrix kappa(const Comodule& v, const DualComoduleData& d1, const DualComoduleData& d2);

}  // namespace coquasi::comodcat
