#pragma once

#include <Eigen/Dense>

namespace apiinfer {

using Embedding = Eigen::VectorXd;
// One embedding per row.
using EmbeddingMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Cosine similarity; 0 when either side is the zero vector.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cosine(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Scalar na = a.norm();
  const Scalar nb = b.norm();
  if (na == Scalar(0) || nb == Scalar(0)) return Scalar(0);
  return a.dot(b) / (na * nb);
}

// Row-wise cosine of every row of `rows` against `query`.
template <typename DerivedM, typename DerivedV>
Eigen::Matrix<typename DerivedM::Scalar, Eigen::Dynamic, 1> cosine_rows(const Eigen::MatrixBase<DerivedM>& rows,
                                                                       const Eigen::MatrixBase<DerivedV>& query) {
  using Scalar = typename DerivedM::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(rows.rows());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) out(i) = cosine(rows.row(i).transpose(), query);
  return out;
}

// L2-normalizes in place; leaves the zero vector untouched. Returns false for it.
template <typename Derived>
bool normalize_in_place(Eigen::MatrixBase<Derived>& v) {
  const auto n = v.norm();
  if (n == 0) return false;
  v /= n;
  return true;
}

template <typename Derived>
bool is_unit(const Eigen::MatrixBase<Derived>& v, double tol = 1e-6) {
  return std::abs(static_cast<double>(v.norm()) - 1.0) <= tol;
}

}  // namespace apiinfer
