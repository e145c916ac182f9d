#pragma once

#include <Eigen/Dense>

namespace gridpca {

/// Shared zero/nonzero eigenvalue cut: an eigenvalue counts as nonzero when it
/// exceeds n * eps * max_eigenvalue. Every rank assertion in the project uses
/// this single threshold.
double spectral_cutoff(Eigen::Index n, double max_abs_eigenvalue);

/// Number of entries above the shared cutoff. Expects eigenvalues of a PSD matrix.
int count_nonzero(const Eigen::VectorXd& eigenvalues, Eigen::Index n);

/// Moore-Penrose pseudoinverse of a symmetric PSD matrix via full symmetric
/// eigendecomposition, zeroing eigenvalues below the shared cutoff.
Eigen::MatrixXd pinv_psd(const Eigen::MatrixXd& m);

/// Symmetric PSD square root; negative round-off eigenvalues clamped to zero.
Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m);

/// Flip every column whose largest-magnitude entry is negative, so repeated
/// runs and figure exports get stable eigenvector signs.
void fix_column_signs(Eigen::MatrixXd& columns);
void fix_sign(Eigen::VectorXd& column);

}  // namespace gridpca
