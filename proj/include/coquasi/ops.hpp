#pragma once

#include <map>

#include "coquasi/coalgebra.hpp"

// Small dense/sparse helpers shared by the structure checks.
namespace coquasi::ops {

using exactla::Scalar;
using exactla::SparseVector;
using exactla::Vector;

inline void add_scaled(Vector& acc, const SparseVector& v, const Scalar& c) {
  for (const auto& e : v) acc[e.index] += c * e.value;
}

inline void add_scaled(Vector& acc, const Vector& v, const Scalar& c) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) acc[i] += c * v[i];
}

/// Product of two dense elements of an algebra given by its product table.
inline Vector multiply(const coalg::ProductTerms& m, const Vector& v, const Vector& w) {
  Vector out(m.dim, m.field.zero());
  for (std::size_t p = 0; p < m.dim; ++p) {
    if (v[p].is_zero()) continue;
    for (std::size_t q = 0; q < m.dim; ++q) {
      if (w[q].is_zero()) continue;
      add_scaled(out, m(p, q), v[p] * w[q]);
    }
  }
  return out;
}

/// Accumulates sparse rows keyed by column.
class RowBuilder {
 public:
  void add(std::size_t col, const Scalar& v) {
    if (v.is_zero()) return;
    auto it = acc_.find(col);
    if (it == acc_.end())
      acc_.emplace(col, v);
    else
      it->second += v;
  }
  SparseVector take() {
    SparseVector out;
    for (auto& [c, v] : acc_)
      if (!v.is_zero()) out.push_back({c, v});
    acc_.clear();
    return out;
  }

 private:
  std::map<std::size_t, Scalar> acc_;
};

}  // namespace coquasi::ops
