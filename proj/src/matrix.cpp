#include "coquasi/matrix.hpp"

#include <numeric>
#include <string>

namespace coquasi::exactla {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::column_vector(Field f, const Vector& v) {
  Matrix m(f, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

Matrix Matrix::row_vector(Field f, const Vector& v) {
  Matrix m(f, 1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
  return m;
}

void Matrix::check_shape(const Matrix& o, const char* op) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument(std::string("shape mismatch in ") + op + ": " + std::to_string(rows_) + "x" +
                                std::to_string(cols_) + " vs " + std::to_string(o.rows_) + "x" +
                                std::to_string(o.cols_));
  if (!(field_ == o.field_)) throw FieldMismatch(std::string("field mismatch in ") + op);
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("cannot compose " + std::to_string(rows_) + "x" + std::to_string(cols_) + " with " +
                                std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
  if (!(field_ == o.field_)) throw FieldMismatch("field mismatch in composition");
  Matrix r(field_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o(k, j);
        if (!b.is_zero()) r(i, j) += a * b;
      }
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_shape(o, "addition");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_shape(o, "subtraction");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length does not match domain");
  Vector out(rows_, field_.zero());
  for (std::size_t j = 0; j < cols_; ++j) {
    if (v[j].is_zero()) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar& a = (*this)(i, j);
      if (!a.is_zero()) out[i] += a * v[j];
    }
  }
  return out;
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, c));
  return v;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

SparseVector Matrix::sparse_column(std::size_t c) const {
  SparseVector v;
  for (std::size_t i = 0; i < rows_; ++i)
    if (!(*this)(i, c).is_zero()) v.push_back({i, (*this)(i, c)});
  return v;
}

SparseVector Matrix::sparse_row(std::size_t r) const {
  SparseVector v;
  for (std::size_t j = 0; j < cols_; ++j)
    if (!(*this)(r, j).is_zero()) v.push_back({j, (*this)(r, j)});
  return v;
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  if (!(field_ == o.field_)) return false;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != o.data_[i]) return false;
  return true;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("field mismatch in kron");
  Matrix r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const Scalar& x = a(i1, j1);
      if (x.is_zero()) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
          const Scalar& y = b(i2, j2);
          if (!y.is_zero()) r(i1 * b.rows() + i2, j1 * b.cols() + j2) = x * y;
        }
    }
  return r;
}

std::vector<SparseVector> column_terms(const Matrix& m) {
  std::vector<SparseVector> out(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) out[c] = m.sparse_column(c);
  return out;
}

Vector zero_vector(Field f, std::size_t n) { return Vector(n, f.zero()); }

Vector unit_vector(Field f, std::size_t n, std::size_t i) {
  Vector v(n, f.zero());
  v.at(i) = f.one();
  return v;
}

SparseVector to_sparse(const Vector& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.push_back({i, v[i]});
  return s;
}

Vector to_dense(Field f, const SparseVector& v, std::size_t n) {
  Vector d(n, f.zero());
  for (const auto& e : v) d.at(e.index) = e.value;
  return d;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

namespace {

std::size_t permuted_index(std::size_t idx, const std::vector<std::size_t>& dims,
                           const std::vector<std::size_t>& perm) {
  std::size_t k = dims.size();
  std::vector<std::size_t> digits(k);
  for (std::size_t t = k; t-- > 0;) {
    digits[t] = idx % dims[t];
    idx /= dims[t];
  }
  std::size_t out = 0;
  for (std::size_t t = 0; t < k; ++t) out = out * dims[perm[t]] + digits[perm[t]];
  return out;
}

}  // namespace

Vector permute_legs(const Vector& v, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  if (perm.size() != dims.size()) throw std::invalid_argument("permutation length mismatch");
  Vector out(v.size(), v.empty() ? Field().zero() : v[0].field().zero());
  for (std::size_t i = 0; i < v.size(); ++i) out[permuted_index(i, dims, perm)] = v[i];
  return out;
}

Matrix permutation_matrix(Field f, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& perm) {
  std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  Matrix m(f, total, total);
  for (std::size_t i = 0; i < total; ++i) m(permuted_index(i, dims, perm), i) = f.one();
  return m;
}

Matrix flip(Field f, std::size_t m, std::size_t n) { return permutation_matrix(f, {m, n}, {1, 0}); }

}  // namespace coquasi::exactla
