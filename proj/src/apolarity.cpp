#include "kvsp/apolarity.hpp"

#include <Eigen/SVD>

namespace kvsp {

Eigen::Matrix<Complex, 6, 6> to_eigen(const Mat6<Complex>& m) {
  Eigen::Matrix<Complex, 6, 6> out;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out(i, j) = m[i][j];
  return out;
}

Eigen::Matrix<Complex, 6, 6> to_eigen(const Mat6<Rational>& m) {
  Eigen::Matrix<Complex, 6, 6> out;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) out(i, j) = Complex(m[i][j].get_d(), 0.0);
  return out;
}

std::vector<Eigen::VectorXcd> nullspace(const Eigen::MatrixXcd& m, double tol) {
  const auto cols = m.cols();
  std::vector<Eigen::VectorXcd> out;
  if (cols == 0) return out;
  if (m.rows() == 0 || m.norm() == 0.0) {
    for (Eigen::Index k = 0; k < cols; ++k) out.push_back(Eigen::VectorXcd::Unit(cols, k));
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol * sv(0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  for (Eigen::Index k = rank; k < cols; ++k) out.push_back(svd.matrixV().col(k));
  return out;
}

int numerical_rank(const Eigen::MatrixXcd& m, double tol) {
  if (m.size() == 0 || m.norm() == 0.0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > tol * sv(0)) ++rank;
  return rank;
}

}  // namespace kvsp
