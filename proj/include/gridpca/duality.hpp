#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gridpca/pca.hpp"
#include "gridpca/ptdf.hpp"

namespace gridpca {

/// Topological matrix t = h^T h (equal to the Laplacian pseudoinverse for unit
/// susceptances) and duality matrix m = injection_cov * t, whose eigenvectors
/// generate every flow principal component through h.
struct SpectralDuality {
  Eigen::MatrixXd t_matrix;        // N x N, symmetric PSD, rank N-1
  Eigen::MatrixXd m_matrix;        // N x N, nonsymmetric, real nonnegative spectrum
  Eigen::VectorXd m_eigenvalues;   // eta, descending, clamped at zero
  Eigen::MatrixXd m_eigenvectors;  // v_k, unit-norm columns
  Eigen::VectorXd t_eigenvalues;   // mu, descending
  Eigen::MatrixXd t_eigenvectors;  // s_m, orthonormal columns
};

/// Sigma_f = h * injection_cov * h^T (symmetrized). Rank at most N-1.
Eigen::MatrixXd flow_covariance(const PtdfMatrix& ptdf, const Eigen::MatrixXd& injection_cov);

/// Eigenpairs of m = injection_cov * t computed through the symmetric
/// congruence sqrt(cov) * t * sqrt(cov), which keeps the spectrum real and
/// nonnegative; eigenpairs of t from a symmetric solver.
SpectralDuality build_duality(const PtdfMatrix& ptdf, const Eigen::MatrixXd& injection_cov);

struct FlowPcs {
  Eigen::MatrixXd axes;                    // L x R, unit columns h v_k / |h v_k|
  Eigen::VectorXd normalized_eigenvalues;  // eta_k / tr(m)
};

/// Flow principal components for every eta above the shared cutoff.
FlowPcs flow_pcs_from_m(const SpectralDuality& duality, const PtdfMatrix& ptdf);

/// Cumulative spectra normalized by tr(m): the partial sums of the flow
/// eigenvalues sandwiched between the sorted elementwise products of the
/// nonzero injection-covariance and topology spectra (descending-ascending
/// below, descending-descending above). The bound sequences end at <= 1 and
/// >= 1 respectively; only partial_sums ends at 1.
struct MajorizationBounds {
  Eigen::VectorXd partial_sums;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
};

/// Both inputs must be PSD with matching rank structure: the bounds pair the
/// nonzero eigenvalues of each side (rank N-1 in the balanced power-grid
/// case). Errors when either rank falls below N-1.
MajorizationBounds majorization_bounds(const Eigen::MatrixXd& injection_cov,
                                       const Eigen::MatrixXd& t_matrix);

/// O(k,m) = lambda_k * mu_m * (axis_k . s_m)^2; the total equals
/// tr(injection_cov * t) = tr(m) = tr(flow_cov).
struct OverlapMatrix {
  Eigen::MatrixXd entries;               // N x N, nonnegative
  Eigen::VectorXd injection_eigenvalues;  // lambda (rows)
  Eigen::VectorXd topology_eigenvalues;   // mu (columns)
  double total = 0.0;
  double trace_residual = 0.0;  // |total - tr(m)| / tr(m)
};

OverlapMatrix overlap_matrix(const PcaResult& injection_pca, const SpectralDuality& duality);

struct OverlapEntry {
  int rank;  // 1-based, descending by value
  int k;     // 1-based injection PC index
  int m;     // 1-based topology eigenvector index
  double value_normalized;         // O_km / total
  double pure_product_normalized;  // lambda_k * mu_m / total
};

std::vector<OverlapEntry> top_overlap_entries(const OverlapMatrix& overlap, int count = 15);

}  // namespace gridpca
