#include "gridpca/ptdf.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "gridpca/csv.hpp"
#include "gridpca/errors.hpp"
#include "gridpca/numeric.hpp"

namespace gridpca {

Eigen::MatrixXd incidence_matrix(const Network& network) {
  const auto index = network.node_index_map();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(network.node_count(), network.line_count());
  for (Eigen::Index l = 0; l < network.line_count(); ++l) {
    const auto& line = network.lines[static_cast<std::size_t>(l)];
    k(static_cast<Eigen::Index>(index.at(line.from_node)), l) = 1.0;
    k(static_cast<Eigen::Index>(index.at(line.to_node)), l) = -1.0;
  }
  return k;
}

Eigen::MatrixXd build_susceptance(const Network& network) {
  network.validate();
  const Eigen::MatrixXd k = incidence_matrix(network);
  Eigen::VectorXd omega(network.line_count());
  for (Eigen::Index l = 0; l < network.line_count(); ++l) {
    omega[l] = 1.0 / network.lines[static_cast<std::size_t>(l)].reactance_pu;
  }
  return k * omega.asDiagonal() * k.transpose();
}

PtdfMatrix build_ptdf(const Network& network) {
  network.validate();
  network.require_connected();
  PtdfMatrix ptdf;
  ptdf.node_ids = network.node_ids();
  ptdf.line_ids = network.line_ids();
  ptdf.incidence = incidence_matrix(network);
  ptdf.inv_reactance.resize(network.line_count());
  for (Eigen::Index l = 0; l < network.line_count(); ++l) {
    ptdf.inv_reactance[l] = 1.0 / network.lines[static_cast<std::size_t>(l)].reactance_pu;
  }
  const Eigen::MatrixXd b =
      ptdf.incidence * ptdf.inv_reactance.asDiagonal() * ptdf.incidence.transpose();
  ptdf.b_pinv = pinv_psd(b);
  ptdf.h = ptdf.inv_reactance.asDiagonal() * ptdf.incidence.transpose() * ptdf.b_pinv;
  return ptdf;
}

TimeSeriesEnsemble compute_flows(const PtdfMatrix& ptdf, const TimeSeriesEnsemble& injections,
                                 FlowReport* report) {
  injections.validate();
  if (injections.dimension() != ptdf.h.cols()) {
    throw validation_error("compute_flows: injection series has " +
                           std::to_string(injections.dimension()) + " columns but the PTDF has " +
                           std::to_string(ptdf.h.cols()) + " nodes");
  }
  if (injections.labels != ptdf.node_ids) {
    throw validation_error("compute_flows: injection labels do not match the PTDF node order");
  }
  constexpr double kBalanceTol = 1e-9;
  double max_imbalance = 0.0;
  for (Eigen::Index t = 0; t < injections.steps(); ++t) {
    const double total = injections.values.row(t).sum();
    const double scale = injections.values.row(t).cwiseAbs().sum();
    if (scale > 0.0) max_imbalance = std::max(max_imbalance, std::abs(total) / scale);
  }
  const bool balanced = max_imbalance <= kBalanceTol;
  if (!balanced) {
    std::cerr << "warning: injections are not balanced; max |sum p| / sum |p| = "
              << format_double(max_imbalance) << "\n";
  }
  if (report != nullptr) {
    report->max_imbalance = max_imbalance;
    report->balanced = balanced;
  }
  TimeSeriesEnsemble flows;
  flows.timestamps = injections.timestamps;
  flows.labels = ptdf.line_ids;
  flows.values = injections.values * ptdf.h.transpose();
  return flows;
}

void write_ptdf_csv(const PtdfMatrix& ptdf, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write file '" + path + "'");
  out << "line_id";
  for (const auto& id : ptdf.node_ids) out << ',' << id;
  out << '\n';
  for (Eigen::Index l = 0; l < ptdf.h.rows(); ++l) {
    out << ptdf.line_ids[static_cast<std::size_t>(l)];
    for (Eigen::Index n = 0; n < ptdf.h.cols(); ++n) out << ',' << format_double(ptdf.h(l, n));
    out << '\n';
  }
}

PtdfMatrix read_ptdf_csv(const std::string& path) {
  // Only the sensitivity matrix and its labels live in the file; incidence,
  // omega and b_pinv are reconstructed from the network when needed.
  const CsvTable table = read_csv(path);
  if (table.header.empty() || table.header[0] != "line_id") {
    throw validation_error(path + ":1: first column must be 'line_id'");
  }
  PtdfMatrix ptdf;
  ptdf.node_ids.assign(table.header.begin() + 1, table.header.end());
  ptdf.h.resize(static_cast<Eigen::Index>(table.rows.size()),
                static_cast<Eigen::Index>(ptdf.node_ids.size()));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    ptdf.line_ids.push_back(table.rows[r][0]);
    for (std::size_t c = 0; c < ptdf.node_ids.size(); ++c) {
      ptdf.h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_double(table.rows[r][c + 1], path, table.line_numbers[r], ptdf.node_ids[c]);
    }
  }
  return ptdf;
}

}  // namespace gridpca
