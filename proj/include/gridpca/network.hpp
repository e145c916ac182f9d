#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace gridpca {

struct Node {
  std::string id;
  double x_km = 0.0;
  double y_km = 0.0;
  std::string country;
  double mean_load_mw = 0.0;
};

struct Line {
  std::string id;
  std::string from_node;
  std::string to_node;
  double reactance_pu = 1.0;  // must be positive
};

/// Transmission network on pre-projected planar km coordinates. Line
/// orientation is fixed by file order (from -> to); flows are signed accordingly.
struct Network {
  std::vector<Node> nodes;
  std::vector<Line> lines;
  double area_km2 = 0.0;  // total covered area, used for the spatial scale xi

  Eigen::Index node_count() const { return static_cast<Eigen::Index>(nodes.size()); }
  Eigen::Index line_count() const { return static_cast<Eigen::Index>(lines.size()); }

  std::unordered_map<std::string, std::size_t> node_index_map() const;
  std::vector<std::string> node_ids() const;
  std::vector<std::string> line_ids() const;
  Eigen::VectorXd mean_loads() const;

  /// Structural checks: unique node ids, line endpoints exist, from != to,
  /// positive reactances. Connectivity is checked separately.
  void validate() const;

  /// Connected component id per node (0-based, in discovery order).
  std::vector<int> component_labels() const;

  /// Throws validation_error naming the components when the graph is disconnected.
  void require_connected() const;
};

/// Reads `nodes.csv` (node_id,x_km,y_km,country,mean_load_mw) and `lines.csv`
/// (line_id,from_node,to_node,reactance_pu). When area_km2 is 0 the bounding
/// box of the node coordinates is used.
Network read_network_csv(const std::string& nodes_path, const std::string& lines_path,
                         double area_km2 = 0.0);
void write_network_csv(const Network& network, const std::string& nodes_path,
                       const std::string& lines_path);

/// Characteristic inter-node spacing sqrt(area / N) in km.
double mean_neighbor_distance(const Network& network);

}  // namespace gridpca
