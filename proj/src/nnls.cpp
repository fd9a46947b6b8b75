#include "horoball/nnls.hpp"

#include <vector>

namespace horoball {

NnlsResult nnls(const Matrix& a, const Vector& b) {
  const int cols = static_cast<int>(a.cols());
  Vector lambda = Vector::Zero(cols);
  if (cols == 0) return {lambda, b.norm()};

  std::vector<char> passive(cols, 0);
  Vector residual = b;
  const double w_tol = 1e-12 * std::max(1.0, (a.transpose() * b).lpNorm<Eigen::Infinity>());

  const int max_outer = 3 * cols + 15;
  for (int outer = 0; outer < max_outer; ++outer) {
    Vector w = a.transpose() * residual;
    int best = -1;
    double best_w = w_tol;
    for (int i = 0; i < cols; ++i) {
      if (!passive[i] && w[i] > best_w) {
        best_w = w[i];
        best = i;
      }
    }
    if (best < 0) break;  // KKT satisfied
    passive[best] = 1;

    for (int inner = 0; inner < max_outer; ++inner) {
      std::vector<int> idx;
      for (int i = 0; i < cols; ++i)
        if (passive[i]) idx.push_back(i);
      Matrix ap(a.rows(), idx.size());
      for (std::size_t j = 0; j < idx.size(); ++j) ap.col(j) = a.col(idx[j]);
      Vector z = ap.colPivHouseholderQr().solve(b);

      double min_z = z.size() ? z.minCoeff() : 1.0;
      if (min_z > 0.0) {
        lambda.setZero();
        for (std::size_t j = 0; j < idx.size(); ++j) lambda[idx[j]] = z[j];
        break;
      }
      // Step toward z until the first passive coefficient hits zero.
      double alpha = 1.0;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (z[j] <= 0.0) {
          double lj = lambda[idx[j]];
          double denom = lj - z[j];
          if (denom > 0.0) alpha = std::min(alpha, lj / denom);
        }
      }
      for (std::size_t j = 0; j < idx.size(); ++j) {
        int i = idx[j];
        lambda[i] += alpha * (z[j] - lambda[i]);
        if (lambda[i] <= 1e-14) {
          lambda[i] = 0.0;
          passive[i] = 0;
        }
      }
    }
    residual = b - a * lambda;
  }
  return {lambda, (b - a * lambda).norm()};
}

}  // namespace horoball
