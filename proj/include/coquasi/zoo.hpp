#pragma once

#include <array>
#include <random>
#include <string>

#include "coquasi/quasi.hpp"
#include "coquasi/recon.hpp"

namespace coquasi::cli {

using exactla::Field;
using exactla::Matrix;
using exactla::Scalar;

/// Finite group given by its multiplication table: table[g * order + h] = gh.
struct FiniteGroup {
  std::size_t order = 0;
  std::vector<std::size_t> table;

  std::size_t mul(std::size_t g, std::size_t h) const { return table[g * order + h]; }
  std::size_t identity() const;
  std::size_t inverse(std::size_t g) const;
  /// Throws std::invalid_argument unless the table is a group of order <= 16.
  void validate() const;

  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
  static FiniteGroup symmetric3();
};

struct ZooSpec {
  FiniteGroup group;
  std::vector<Scalar> cocycle;  // |G|^3 values, index (g*|G| + h)*|G| + k
  Field field;
};

/// First 4-tuple violating the cocycle identity or normalization, if any.
std::optional<std::array<std::size_t, 4>> cocycle_violation(const ZooSpec& z);

std::vector<Scalar> trivial_cocycle(const FiniteGroup& g, Field f);
/// w(a, b, c) = lambda^(a * floor((b + c) / n)) on Z/n; a cocycle iff lambda^n = 1.
std::vector<Scalar> cyclic_cocycle(std::size_t n, const Scalar& lambda);
/// Product of cocycles pulled back along the two projections of G1 x G2.
std::vector<Scalar> product_cocycle(const FiniteGroup& g1, const std::vector<Scalar>& w1, const FiniteGroup& g2,
                                    const std::vector<Scalar>& w2);
/// Pullback along a homomorphism hom : G -> K.
std::vector<Scalar> pullback_cocycle(const FiniteGroup& g, const std::vector<std::size_t>& hom, std::size_t k_order,
                                     const std::vector<Scalar>& w);

struct GroupCoquasi {
  std::shared_ptr<const cqb::CoquasiBialgebra> h;
  Matrix s;  // closed-form preantipode candidate
};

struct GroupQuasi {
  qb::QuasiBialgebra a;
  Matrix s;
};

/// kG with group-like basis and the given reassociator; throws
/// std::invalid_argument naming the failing 4-tuple on a bad cocycle.
GroupCoquasi gen_group_coquasi(const ZooSpec& z);
/// Functions on G with idempotent basis e_g and Phi = sum w(g,h,k) e_g (x) e_h (x) e_k.
GroupQuasi gen_group_quasi(const ZooSpec& z);

/// Coquasi-Hopf data s(g) = g^{-1}, alpha = eps, beta(g) = w(g, g^{-1}, g)^{-1}.
cqb::CoquasiHopfData group_coquasi_hopf(const ZooSpec& z);

/// Sweedler's four-dimensional Hopf algebra, basis 1, g, x, gx.
GroupCoquasi sweedler(Field f);
/// The same algebra as a quasi-bialgebra with trivial Phi.
GroupQuasi sweedler_quasi(Field f);
/// kG as an algebra with g |-> g (x) g and trivial Phi.
GroupQuasi group_algebra_quasi(const FiniteGroup& g, Field f);

/// Structure transported along an invertible p : H' -> H (p becomes an isomorphism).
cqb::CoquasiBialgebra base_change(const cqb::CoquasiBialgebra& h, const Matrix& p);
Matrix base_change_preantipode(const Matrix& s, const Matrix& p);
qb::QuasiBialgebra base_change(const qb::QuasiBialgebra& a, const Matrix& p);

/// Random invertible matrix with small integer entries.
Matrix random_invertible(Field f, std::size_t n, std::mt19937& rng, int spread = 2);

/// A named zoo member.
struct ZooEntry {
  std::string name;
  GroupCoquasi data;
  std::optional<cqb::CoquasiHopfData> hopf;
  std::optional<FiniteGroup> group;  // set for twisted group algebras in the natural basis
  std::optional<ZooSpec> spec;       // also set for rebased twisted group algebras
  std::optional<Matrix> rebase;      // p : H -> kG_w for rebased entries
};

std::vector<ZooEntry> coquasi_zoo();

struct QuasiZooEntry {
  std::string name;
  GroupQuasi data;
  std::optional<ZooSpec> spec;
};

std::vector<QuasiZooEntry> quasi_zoo();

/// One-dimensional G-graded spaces k_g with associator w(g,h,k)^{-1},
/// dual k_{g^{-1}}, ev = w(g,g^{-1},g)^{-1}, db = 1. With `with_coaction`
/// each k_g carries its coaction over kG_w, or over the rebased algebra
/// (p^{-1} e_g) when `rebase` is given.
recon::MonoidalDiagram grading_diagram(const ZooSpec& z, bool with_coaction = true,
                                       const std::optional<Matrix>& rebase = std::nullopt);

}  // namespace coquasi::cli
