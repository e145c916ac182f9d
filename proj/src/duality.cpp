#include "gridpca/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gridpca/errors.hpp"
#include "gridpca/numeric.hpp"

namespace gridpca {

namespace {

void require_square_match(const Eigen::MatrixXd& cov, Eigen::Index n, const char* name) {
  if (cov.rows() != cov.cols()) {
    throw validation_error(std::string(name) + ": covariance must be square");
  }
  if (cov.rows() != n) {
    throw validation_error(std::string(name) + ": covariance has " + std::to_string(cov.rows()) +
                           " rows but the network has " + std::to_string(n) + " nodes");
  }
}

// Descending eigenvalues (clamped at zero) and matching vectors of a
// symmetric matrix.
void eig_descending(const Eigen::MatrixXd& sym, Eigen::VectorXd& values,
                    Eigen::MatrixXd& vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (sym + sym.transpose()));
  if (es.info() != Eigen::Success) throw numeric_error("eigendecomposition failed");
  const Eigen::Index n = sym.rows();
  values.resize(n);
  vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    values[i] = std::max(es.eigenvalues()[n - 1 - i], 0.0);
    vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
}

void check_orthonormal(const Eigen::MatrixXd& basis, const char* name) {
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const double residual =
      (gram - Eigen::MatrixXd::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
  if (residual > 1e-8) {
    throw validation_error(std::string(name) + ": basis is not orthonormal (residual " +
                           std::to_string(residual) + ")");
  }
}

}  // namespace

Eigen::MatrixXd flow_covariance(const PtdfMatrix& ptdf, const Eigen::MatrixXd& injection_cov) {
  require_square_match(injection_cov, ptdf.h.cols(), "flow_covariance");
  const Eigen::MatrixXd cov = ptdf.h * injection_cov * ptdf.h.transpose();
  return 0.5 * (cov + cov.transpose());
}

SpectralDuality build_duality(const PtdfMatrix& ptdf, const Eigen::MatrixXd& injection_cov) {
  require_square_match(injection_cov, ptdf.h.cols(), "build_duality");
  SpectralDuality duality;
  duality.t_matrix = ptdf.h.transpose() * ptdf.h;
  duality.t_matrix = 0.5 * (duality.t_matrix + duality.t_matrix.transpose()).eval();
  duality.m_matrix = injection_cov * duality.t_matrix;
  if (!duality.m_matrix.allFinite()) {
    throw numeric_error("build_duality: non-finite duality matrix");
  }

  eig_descending(duality.t_matrix, duality.t_eigenvalues, duality.t_eigenvectors);
  fix_column_signs(duality.t_eigenvectors);

  // Eigenpairs of m = cov * t through the congruent symmetric matrix
  // sqrt(cov) * t * sqrt(cov): if S u = eta u then v = sqrt(cov) u satisfies
  // m v = eta v, and the spectrum stays real and nonnegative.
  const Eigen::MatrixXd root = sqrt_psd(injection_cov);
  const Eigen::MatrixXd congruent = root * duality.t_matrix * root;
  Eigen::VectorXd eta;
  Eigen::MatrixXd u;
  eig_descending(congruent, eta, u);
  const Eigen::Index n = duality.t_matrix.rows();
  duality.m_eigenvalues = eta;
  duality.m_eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd v = root * u.col(k);
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    fix_sign(v);
    duality.m_eigenvectors.col(k) = v;
  }
  return duality;
}

FlowPcs flow_pcs_from_m(const SpectralDuality& duality, const PtdfMatrix& ptdf) {
  const Eigen::Index n = duality.m_eigenvalues.size();
  if (ptdf.h.cols() != n) {
    throw validation_error("flow_pcs_from_m: PTDF does not match the duality matrix");
  }
  const double eta_max = duality.m_eigenvalues.maxCoeff();
  const double cut = spectral_cutoff(n, eta_max);
  const double trace_m = duality.m_matrix.trace();

  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (duality.m_eigenvalues[k] > cut) kept.push_back(k);
  }

  FlowPcs pcs;
  pcs.axes.resize(ptdf.h.rows(), static_cast<Eigen::Index>(kept.size()));
  pcs.normalized_eigenvalues.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Eigen::Index k = kept[i];
    Eigen::VectorXd mapped = ptdf.h * duality.m_eigenvectors.col(k);
    const double norm = mapped.norm();
    if (norm <= 1e-12) {
      throw numeric_error("flow_pcs_from_m: |h v_k| vanished for eigenvalue " +
                          std::to_string(duality.m_eigenvalues[k]) +
                          " above the zero cutoff");
    }
    mapped /= norm;
    fix_sign(mapped);
    pcs.axes.col(static_cast<Eigen::Index>(i)) = mapped;
    pcs.normalized_eigenvalues[static_cast<Eigen::Index>(i)] =
        duality.m_eigenvalues[k] / trace_m;
  }
  return pcs;
}

MajorizationBounds majorization_bounds(const Eigen::MatrixXd& injection_cov,
                                       const Eigen::MatrixXd& t_matrix) {
  if (injection_cov.rows() != injection_cov.cols() || t_matrix.rows() != t_matrix.cols() ||
      injection_cov.rows() != t_matrix.rows()) {
    throw validation_error("majorization_bounds: matrices must be square and equally sized");
  }
  const Eigen::Index n = t_matrix.rows();

  Eigen::VectorXd cov_eigs, t_eigs;
  Eigen::MatrixXd scratch;
  eig_descending(injection_cov, cov_eigs, scratch);
  eig_descending(t_matrix, t_eigs, scratch);

  const int rank_cov = count_nonzero(cov_eigs, n);
  const int rank_t = count_nonzero(t_eigs, n);
  if (rank_t < static_cast<int>(n) - 1) {
    throw validation_error("majorization_bounds: topological matrix rank " +
                           std::to_string(rank_t) + " below N-1 (disconnected network?)");
  }
  if (rank_cov < static_cast<int>(n) - 1) {
    throw validation_error("majorization_bounds: injection covariance rank " +
                           std::to_string(rank_cov) + " below N-1 (degenerate covariance)");
  }
  // Only nonzero eigenvalues enter the products; both sides contribute the
  // same count r. In the balanced power-grid case r = N-1 for both.
  const int r = std::min(rank_cov, rank_t);

  const Eigen::MatrixXd root = sqrt_psd(injection_cov);
  Eigen::VectorXd eta;
  eig_descending(root * t_matrix * root, eta, scratch);
  const double trace = eta.sum();
  if (!(trace > 0.0)) throw validation_error("majorization_bounds: zero total variance");

  std::vector<double> lower_products(static_cast<std::size_t>(r));
  std::vector<double> upper_products(static_cast<std::size_t>(r));
  for (int k = 0; k < r; ++k) {
    lower_products[static_cast<std::size_t>(k)] = cov_eigs[k] * t_eigs[r - 1 - k];
    upper_products[static_cast<std::size_t>(k)] = cov_eigs[k] * t_eigs[k];
  }
  std::sort(lower_products.rbegin(), lower_products.rend());
  std::sort(upper_products.rbegin(), upper_products.rend());

  MajorizationBounds bounds;
  bounds.partial_sums.resize(r);
  bounds.lower.resize(r);
  bounds.upper.resize(r);
  double sum_actual = 0.0, sum_lower = 0.0, sum_upper = 0.0;
  for (int k = 0; k < r; ++k) {
    sum_actual += eta[k];
    sum_lower += lower_products[static_cast<std::size_t>(k)];
    sum_upper += upper_products[static_cast<std::size_t>(k)];
    bounds.partial_sums[k] = sum_actual / trace;
    bounds.lower[k] = sum_lower / trace;
    bounds.upper[k] = sum_upper / trace;
  }
  return bounds;
}

OverlapMatrix overlap_matrix(const PcaResult& injection_pca, const SpectralDuality& duality) {
  const Eigen::Index n = duality.t_eigenvectors.rows();
  if (injection_pca.axes.rows() != n) {
    throw validation_error("overlap_matrix: injection PCA dimension does not match the network");
  }
  check_orthonormal(injection_pca.axes, "overlap_matrix: injection axes");
  check_orthonormal(duality.t_eigenvectors, "overlap_matrix: topology eigenvectors");

  OverlapMatrix overlap;
  overlap.injection_eigenvalues = injection_pca.eigenvalues;
  overlap.topology_eigenvalues = duality.t_eigenvalues;
  const Eigen::MatrixXd alignment =
      (injection_pca.axes.transpose() * duality.t_eigenvectors).array().square().matrix();
  overlap.entries = injection_pca.eigenvalues.asDiagonal() * alignment *
                    duality.t_eigenvalues.asDiagonal();
  overlap.total = overlap.entries.sum();
  const double trace_m = duality.m_matrix.trace();
  overlap.trace_residual =
      std::abs(overlap.total - trace_m) / std::max(std::abs(trace_m), 1e-300);
  return overlap;
}

std::vector<OverlapEntry> top_overlap_entries(const OverlapMatrix& overlap, int count) {
  struct Cell {
    double value;
    int k, m;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(overlap.entries.size()));
  for (Eigen::Index k = 0; k < overlap.entries.rows(); ++k) {
    for (Eigen::Index m = 0; m < overlap.entries.cols(); ++m) {
      cells.push_back({overlap.entries(k, m), static_cast<int>(k), static_cast<int>(m)});
    }
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.k != b.k) return a.k < b.k;
    return a.m < b.m;
  });
  const int take = std::min<int>(count, static_cast<int>(cells.size()));
  const double total = overlap.total > 0.0 ? overlap.total : 1.0;
  std::vector<OverlapEntry> entries;
  entries.reserve(static_cast<std::size_t>(take));
  for (int i = 0; i < take; ++i) {
    const Cell& cell = cells[static_cast<std::size_t>(i)];
    entries.push_back({i + 1, cell.k + 1, cell.m + 1, cell.value / total,
                       overlap.injection_eigenvalues[cell.k] *
                           overlap.topology_eigenvalues[cell.m] / total});
  }
  return entries;
}

}  // namespace gridpca
