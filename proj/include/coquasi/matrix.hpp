#pragma once

#include <cstddef>
#include <vector>

#include "coquasi/scalar.hpp"

namespace coquasi::exactla {

using Vector = std::vector<Scalar>;

/// Sparse vector entry; SparseVector keeps entries sorted by index with no zeros.
struct Entry {
  std::size_t index;
  Scalar value;
};
using SparseVector = std::vector<Entry>;

/// Dense matrix over an exact field. Read as a linear map from
/// k^cols (domain) to k^rows (codomain); entry (r, c) is the r-th
/// coordinate of the image of the c-th basis vector.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, const std::vector<Vector>& rows, std::size_t cols);
  static Matrix column_vector(Field f, const Vector& v);
  static Matrix row_vector(Field f, const Vector& v);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t dom_dim() const { return cols_; }
  std::size_t cod_dim() const { return rows_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Composition: (A * B) = A after B.
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& s) const;
  Matrix transpose() const;

  Vector apply(const Vector& v) const;
  Vector column(std::size_t c) const;
  Vector row(std::size_t r) const;
  SparseVector sparse_column(std::size_t c) const;
  SparseVector sparse_row(std::size_t r) const;

  bool is_zero() const;
  bool operator==(const Matrix& o) const;

 private:
  void check_shape(const Matrix& o, const char* op) const;
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using LinearMap = Matrix;

/// Kronecker product with row-major index (i * dim_b + j).
Matrix kron(const Matrix& a, const Matrix& b);

/// Nonzero entries of every column: result[c] lists (row, value).
std::vector<SparseVector> column_terms(const Matrix& m);

Vector zero_vector(Field f, std::size_t n);
Vector unit_vector(Field f, std::size_t n, std::size_t i);
SparseVector to_sparse(const Vector& v);
Vector to_dense(Field f, const SparseVector& v, std::size_t n);
bool is_zero(const Vector& v);

/// Reorders tensor legs: leg t of the result is leg perm[t] of the input.
Vector permute_legs(const Vector& v, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm);
Matrix permutation_matrix(Field f, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm);

/// Swap of two tensor factors of dimensions m and n.
Matrix flip(Field f, std::size_t m, std::size_t n);

}  // namespace coquasi::exactla
