#include "coquasi/linalg.hpp"

#include <algorithm>
#include <limits>

namespace coquasi::exactla {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// row - c * piv, both sorted sparse.
SparseVector axpy(const SparseVector& row, const Scalar& c, const SparseVector& piv) {
  SparseVector out;
  out.reserve(row.size() + piv.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < piv.size()) {
    if (j == piv.size() || (i < row.size() && row[i].index < piv[j].index)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || piv[j].index < row[i].index) {
      out.push_back({piv[j].index, -(c * piv[j].value)});
      ++j;
    } else {
      Scalar v = row[i].value - c * piv[j].value;
      if (!v.is_zero()) out.push_back({row[i].index, std::move(v)});
      ++i;
      ++j;
    }
  }
  return out;
}

class Reducer {
 public:
  Reducer(Field f, std::size_t cols) : field_(f), cols_(cols), pivot_row_(cols, kNone) {}

  // Reduces entries at positions >= start against known pivots.
  void reduce(SparseVector& row, std::size_t start = 0) const {
    std::size_t pos = start;
    while (pos < row.size()) {
      std::size_t r = pivot_row_[row[pos].index];
      if (r == kNone) {
        ++pos;
        continue;
      }
      Scalar c = row[pos].value;
      row = axpy(row, c, rows_[r]);
    }
  }

  void insert(SparseVector row) {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
    row.erase(std::remove_if(row.begin(), row.end(), [](const Entry& e) { return e.value.is_zero(); }), row.end());
    reduce(row);
    if (row.empty()) return;
    Scalar inv = row.front().value.inverse();
    for (auto& e : row) e.value *= inv;
    pivot_row_[row.front().index] = rows_.size();
    rows_.push_back(std::move(row));
  }

  Echelon finish() {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rows_[a].front().index > rows_[b].front().index; });
    for (std::size_t r : order) reduce(rows_[r], 1);
    Echelon e{field_, cols_, {}, {}};
    std::reverse(order.begin(), order.end());
    for (std::size_t r : order) {
      e.pivots.push_back(rows_[r].front().index);
      e.rows.push_back(std::move(rows_[r]));
    }
    return e;
  }

 private:
  Field field_;
  std::size_t cols_;
  std::vector<std::size_t> pivot_row_;
  std::vector<SparseVector> rows_;
};

}  // namespace

Matrix Echelon::dense() const {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& e : rows[r]) m(r, e.index) = e.value;
  return m;
}

Echelon echelonize(Field f, std::size_t cols, std::vector<SparseVector> rows) {
  Reducer red(f, cols);
  for (auto& r : rows) {
    for (const auto& e : r)
      if (e.index >= cols) throw std::invalid_argument("sparse row index out of range");
    red.insert(std::move(r));
  }
  return red.finish();
}

Echelon echelonize(const Matrix& rows) {
  std::vector<SparseVector> rs;
  rs.reserve(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) rs.push_back(rows.sparse_row(r));
  return echelonize(rows.field(), rows.cols(), std::move(rs));
}

Subspace::Subspace(Field f, std::size_t ambient) : ech_{f, ambient, {}, {}} {}

Vector Subspace::basis_vector(std::size_t i) const { return to_dense(ech_.field, ech_.rows.at(i), ech_.cols); }

Matrix Subspace::inclusion() const {
  Matrix m(ech_.field, ech_.cols, dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (const auto& e : ech_.rows[i]) m(e.index, i) = e.value;
  return m;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ech_.cols) throw std::invalid_argument("vector not in ambient space");
  Vector coords;
  coords.reserve(dim());
  SparseVector rest = to_sparse(v);
  for (std::size_t i = 0; i < dim(); ++i) {
    Scalar c = v[ech_.pivots[i]];
    coords.push_back(c);
    if (!c.is_zero()) rest = axpy(rest, c, ech_.rows[i]);
  }
  if (!rest.empty()) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

Subspace span(Field f, std::size_t ambient, const std::vector<Vector>& vectors) {
  std::vector<SparseVector> rows;
  for (const auto& v : vectors) {
    if (v.size() != ambient) throw std::invalid_argument("spanning vector has wrong length");
    rows.push_back(to_sparse(v));
  }
  return Subspace(echelonize(f, ambient, std::move(rows)));
}

namespace {

std::vector<SparseVector> null_generators(const Echelon& e) {
  std::vector<bool> is_pivot(e.cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  // column -> list of (row, value) for non-pivot columns
  std::vector<SparseVector> by_col(e.cols);
  for (std::size_t r = 0; r < e.rows.size(); ++r)
    for (const auto& ent : e.rows[r])
      if (!is_pivot[ent.index]) by_col[ent.index].push_back({e.pivots[r], -ent.value});
  std::vector<SparseVector> gens;
  for (std::size_t c = 0; c < e.cols; ++c) {
    if (is_pivot[c]) continue;
    SparseVector g = by_col[c];
    g.push_back({c, e.field.one()});
    gens.push_back(std::move(g));
  }
  return gens;
}

}  // namespace

Subspace nullspace(Field f, std::size_t cols, std::vector<SparseVector> rows) {
  Echelon e = echelonize(f, cols, std::move(rows));
  return Subspace(echelonize(f, cols, null_generators(e)));
}

Subspace nullspace(const Matrix& a) {
  std::vector<SparseVector> rows;
  for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.sparse_row(r));
  return nullspace(a.field(), a.cols(), std::move(rows));
}

std::optional<AffineSolution> solve_affine_sparse(Field f, std::size_t cols, std::vector<SparseVector> rows,
                                                  const Vector& rhs) {
  if (rhs.size() != rows.size()) throw std::invalid_argument("right-hand side length mismatch");
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (!rhs[r].is_zero()) rows[r].push_back({cols, rhs[r]});
  Echelon aug = echelonize(f, cols + 1, std::move(rows));
  if (!aug.pivots.empty() && aug.pivots.back() == cols) return std::nullopt;
  Vector x(cols, f.zero());
  Echelon plain{f, cols, {}, aug.pivots};
  for (std::size_t r = 0; r < aug.rows.size(); ++r) {
    SparseVector row;
    for (const auto& e : aug.rows[r]) {
      if (e.index == cols)
        x[aug.pivots[r]] = e.value;
      else
        row.push_back(e);
    }
    plain.rows.push_back(std::move(row));
  }
  return AffineSolution{std::move(x), Subspace(echelonize(f, cols, null_generators(plain)))};
}

std::optional<AffineSolution> solve_affine(const Matrix& a, const Vector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  std::vector<SparseVector> rows;
  for (std::size_t r = 0; r < a.rows(); ++r) rows.push_back(a.sparse_row(r));
  return solve_affine_sparse(a.field(), a.cols(), std::move(rows), b);
}

Quotient quotient(std::size_t ambient, const Subspace& relations) {
  if (relations.ambient_dim() != ambient) throw std::invalid_argument("relations live in a different space");
  const Echelon& e = relations.echelon();
  Field f = e.field;
  std::vector<bool> is_pivot(ambient, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Quotient q;
  for (std::size_t c = 0; c < ambient; ++c)
    if (!is_pivot[c]) q.basis_coords.push_back(c);
  std::vector<std::size_t> slot(ambient, kNone);
  for (std::size_t i = 0; i < q.basis_coords.size(); ++i) slot[q.basis_coords[i]] = i;
  q.proj = Matrix(f, q.dim(), ambient);
  q.section = Matrix(f, ambient, q.dim());
  for (std::size_t i = 0; i < q.dim(); ++i) {
    q.proj(i, q.basis_coords[i]) = f.one();
    q.section(q.basis_coords[i], i) = f.one();
  }
  // a pivot coordinate equals minus the rest of its relation row
  for (std::size_t r = 0; r < e.rows.size(); ++r)
    for (const auto& ent : e.rows[r])
      if (ent.index != e.pivots[r]) q.proj(slot[ent.index], e.pivots[r]) = -ent.value;
  return q;
}

Quotient quotient(Field f, std::size_t ambient, std::vector<SparseVector> relations) {
  return quotient(ambient, Subspace(echelonize(f, ambient, std::move(relations))));
}

std::size_t rank(const Matrix& a) { return echelonize(a).rank(); }

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  std::size_t n = a.rows();
  Field f = a.field();
  std::vector<SparseVector> rows;
  for (std::size_t r = 0; r < n; ++r) {
    SparseVector row = a.sparse_row(r);
    row.push_back({n + r, f.one()});
    rows.push_back(std::move(row));
  }
  Echelon e = echelonize(f, 2 * n, std::move(rows));
  if (e.rank() != n || (n > 0 && e.pivots.back() != n - 1)) return std::nullopt;
  Matrix inv(f, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (const auto& ent : e.rows[r])
      if (ent.index >= n) inv(r, ent.index - n) = ent.value;
  return inv;
}

}  // namespace coquasi::exactla
