#pragma once

#include <optional>
#include <vector>

#include "coquasi/matrix.hpp"

namespace coquasi::exactla {

/// Reduced row echelon form with leftmost pivots, stored sparsely.
struct Echelon {
  Field field;
  std::size_t cols = 0;
  std::vector<SparseVector> rows;  // sorted by pivot column
  std::vector<std::size_t> pivots;

  std::size_t rank() const { return rows.size(); }
  Matrix dense() const;
};

Echelon echelonize(Field f, std::size_t cols, std::vector<SparseVector> rows);
Echelon echelonize(const Matrix& rows);

/// A subspace of k^ambient, held by its reduced echelon basis.
class Subspace {
 public:
  Subspace() = default;
  Subspace(Field f, std::size_t ambient);
  explicit Subspace(Echelon e) : ech_(std::move(e)) {}

  std::size_t ambient_dim() const { return ech_.cols; }
  std::size_t dim() const { return ech_.rank(); }
  Field field() const { return ech_.field; }
  const Echelon& echelon() const { return ech_; }

  Vector basis_vector(std::size_t i) const;
  /// Basis vectors as the columns of an ambient x dim matrix.
  Matrix inclusion() const;
  bool contains(const Vector& v) const;
  /// Coordinates in the echelon basis, or nothing if v is outside.
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  Echelon ech_;
};

Subspace span(Field f, std::size_t ambient, const std::vector<Vector>& vectors);
Subspace nullspace(const Matrix& a);
Subspace nullspace(Field f, std::size_t cols, std::vector<SparseVector> rows);

struct AffineSolution {
  Vector particular;  // free coordinates set to zero
  Subspace nullspace;
};

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b);
/// Same as solve_affine with the system given as sparse rows.
std::optional<AffineSolution> solve_affine_sparse(Field f, std::size_t cols, std::vector<SparseVector> rows,
                                                  const Vector& rhs);

struct Quotient {
  Matrix proj;                            // ambient -> quotient
  Matrix section;                         // quotient -> ambient
  std::vector<std::size_t> basis_coords;  // non-pivot coordinates, one per quotient basis vector
  std::size_t dim() const { return basis_coords.size(); }
};

/// Quotient of k^ambient by the span of the relation vectors.
Quotient quotient(Field f, std::size_t ambient, std::vector<SparseVector> relations);
Quotient quotient(std::size_t ambient, const Subspace& relations);

std::size_t rank(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

}  // namespace coquasi::exactla
