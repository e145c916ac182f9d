#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gridpca/network.hpp"
#include "gridpca/timeseries.hpp"

namespace gridpca {

/// Linear map from balanced nodal injections to line flows,
/// h = omega * incidence^T * b_pinv, with the network's line order on rows
/// and node order on columns.
struct PtdfMatrix {
  Eigen::MatrixXd h;              // L x N, rows sum to zero
  Eigen::MatrixXd incidence;      // N x L, +1 at from_node, -1 at to_node
  Eigen::VectorXd inv_reactance;  // L, diagonal of omega
  Eigen::MatrixXd b_pinv;         // N x N Moore-Penrose pseudoinverse of the susceptance matrix
  std::vector<std::string> node_ids;
  std::vector<std::string> line_ids;
};

Eigen::MatrixXd incidence_matrix(const Network& network);

/// Nodal susceptance matrix incidence * omega * incidence^T. Symmetric PSD,
/// row sums zero; equals the graph Laplacian for unit reactances.
Eigen::MatrixXd build_susceptance(const Network& network);

/// Requires a connected network with positive reactances.
PtdfMatrix build_ptdf(const Network& network);

struct FlowReport {
  double max_imbalance = 0.0;  // max over snapshots of |sum p| / sum |p|
  bool balanced = true;        // imbalance within tolerance for every snapshot
};

/// f(t) = h * p(t) for every snapshot. Injection labels must match the PTDF
/// node order. Unbalanced snapshots beyond 1e-9 relative produce a warning on
/// stderr and are flagged in the report.
TimeSeriesEnsemble compute_flows(const PtdfMatrix& ptdf, const TimeSeriesEnsemble& injections,
                                 FlowReport* report = nullptr);

/// L rows x N columns with line/node id labels, 17 significant digits.
void write_ptdf_csv(const PtdfMatrix& ptdf, const std::string& path);
PtdfMatrix read_ptdf_csv(const std::string& path);

}  // namespace gridpca
