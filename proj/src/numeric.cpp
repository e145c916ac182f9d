#include "gridpca/numeric.hpp"

#include <cmath>
#include <limits>

#include "gridpca/errors.hpp"

namespace gridpca {

double spectral_cutoff(Eigen::Index n, double max_abs_eigenvalue) {
  return static_cast<double>(n) * std::numeric_limits<double>::epsilon() * max_abs_eigenvalue;
}

int count_nonzero(const Eigen::VectorXd& eigenvalues, Eigen::Index n) {
  if (eigenvalues.size() == 0) return 0;
  const double cut = spectral_cutoff(n, eigenvalues.cwiseAbs().maxCoeff());
  int count = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues[i] > cut) ++count;
  }
  return count;
}

Eigen::MatrixXd pinv_psd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw validation_error("pinv_psd: matrix must be square");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw numeric_error("pinv_psd: eigendecomposition failed");
  const Eigen::VectorXd& vals = es.eigenvalues();
  const double cut = spectral_cutoff(m.rows(), vals.cwiseAbs().maxCoeff());
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals[i] > cut) inv[i] = 1.0 / vals[i];
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw validation_error("sqrt_psd: matrix must be square");
  const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw numeric_error("sqrt_psd: eigendecomposition failed");
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * vals.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

void fix_sign(Eigen::VectorXd& column) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < column.size(); ++i) {
    const double a = std::abs(column[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (column.size() > 0 && column[best] < 0.0) column = -column;
}

void fix_column_signs(Eigen::MatrixXd& columns) {
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    Eigen::VectorXd col = columns.col(c);
    fix_sign(col);
    columns.col(c) = col;
  }
}

}  // namespace gridpca
