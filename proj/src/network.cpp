#include "gridpca/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>

#include "gridpca/csv.hpp"
#include "gridpca/errors.hpp"

namespace gridpca {

std::unordered_map<std::string, std::size_t> Network::node_index_map() const {
  std::unordered_map<std::string, std::size_t> map;
  map.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) map.emplace(nodes[i].id, i);
  return map;
}

std::vector<std::string> Network::node_ids() const {
  std::vector<std::string> ids;
  ids.reserve(nodes.size());
  for (const auto& n : nodes) ids.push_back(n.id);
  return ids;
}

std::vector<std::string> Network::line_ids() const {
  std::vector<std::string> ids;
  ids.reserve(lines.size());
  for (const auto& l : lines) ids.push_back(l.id);
  return ids;
}

Eigen::VectorXd Network::mean_loads() const {
  Eigen::VectorXd loads(node_count());
  for (Eigen::Index i = 0; i < node_count(); ++i) {
    loads[i] = nodes[static_cast<std::size_t>(i)].mean_load_mw;
  }
  return loads;
}

void Network::validate() const {
  if (nodes.empty()) throw validation_error("network has no nodes");
  const auto index = node_index_map();
  if (index.size() != nodes.size()) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (index.at(nodes[i].id) != i) {
        throw validation_error("duplicate node id '" + nodes[i].id + "'");
      }
    }
  }
  std::unordered_map<std::string, std::size_t> line_ids;
  for (const auto& line : lines) {
    if (!line_ids.emplace(line.id, 0).second) {
      throw validation_error("duplicate line id '" + line.id + "'");
    }
    if (index.find(line.from_node) == index.end()) {
      throw validation_error("line '" + line.id + "' references unknown node '" +
                             line.from_node + "'");
    }
    if (index.find(line.to_node) == index.end()) {
      throw validation_error("line '" + line.id + "' references unknown node '" + line.to_node +
                             "'");
    }
    if (line.from_node == line.to_node) {
      throw validation_error("line '" + line.id + "' connects node '" + line.from_node +
                             "' to itself");
    }
    if (!(line.reactance_pu > 0.0)) {
      throw validation_error("line '" + line.id + "' has non-positive reactance " +
                             format_double(line.reactance_pu));
    }
  }
}

std::vector<int> Network::component_labels() const {
  const auto index = node_index_map();
  std::vector<std::vector<std::size_t>> adjacency(nodes.size());
  for (const auto& line : lines) {
    const std::size_t a = index.at(line.from_node);
    const std::size_t b = index.at(line.to_node);
    adjacency[a].push_back(b);
    adjacency[b].push_back(a);
  }
  std::vector<int> label(nodes.size(), -1);
  int next = 0;
  for (std::size_t start = 0; start < nodes.size(); ++start) {
    if (label[start] >= 0) continue;
    label[start] = next;
    std::queue<std::size_t> queue;
    queue.push(start);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop();
      for (const std::size_t v : adjacency[u]) {
        if (label[v] < 0) {
          label[v] = next;
          queue.push(v);
        }
      }
    }
    ++next;
  }
  return label;
}

void Network::require_connected() const {
  const auto labels = component_labels();
  const int count = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  if (count <= 1) return;
  std::vector<int> sizes(static_cast<std::size_t>(count), 0);
  std::vector<std::string> representative(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto& rep = representative[static_cast<std::size_t>(labels[i])];
    if (rep.empty()) rep = nodes[i].id;
    ++sizes[static_cast<std::size_t>(labels[i])];
  }
  std::string message = "network is disconnected: " + std::to_string(count) + " components (";
  for (int c = 0; c < count; ++c) {
    if (c > 0) message += ", ";
    message += std::to_string(sizes[static_cast<std::size_t>(c)]) + " nodes around '" +
               representative[static_cast<std::size_t>(c)] + "'";
  }
  message += ")";
  throw validation_error(message);
}

Network read_network_csv(const std::string& nodes_path, const std::string& lines_path,
                         double area_km2) {
  Network network;
  {
    const CsvTable table = read_csv(nodes_path);
    const std::size_t c_id = column_index(table, "node_id");
    const std::size_t c_x = column_index(table, "x_km");
    const std::size_t c_y = column_index(table, "y_km");
    const std::size_t c_country = column_index(table, "country");
    const std::size_t c_load = column_index(table, "mean_load_mw");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      Node node;
      node.id = row[c_id];
      node.x_km = parse_double(row[c_x], nodes_path, table.line_numbers[r], "x_km");
      node.y_km = parse_double(row[c_y], nodes_path, table.line_numbers[r], "y_km");
      node.country = row[c_country];
      node.mean_load_mw =
          parse_double(row[c_load], nodes_path, table.line_numbers[r], "mean_load_mw");
      network.nodes.push_back(std::move(node));
    }
  }
  {
    const CsvTable table = read_csv(lines_path);
    const std::size_t c_id = column_index(table, "line_id");
    const std::size_t c_from = column_index(table, "from_node");
    const std::size_t c_to = column_index(table, "to_node");
    const std::size_t c_x = column_index(table, "reactance_pu");
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      const auto& row = table.rows[r];
      Line line;
      line.id = row[c_id];
      line.from_node = row[c_from];
      line.to_node = row[c_to];
      line.reactance_pu =
          parse_double(row[c_x], lines_path, table.line_numbers[r], "reactance_pu");
      network.lines.push_back(std::move(line));
    }
  }
  if (area_km2 > 0.0) {
    network.area_km2 = area_km2;
  } else if (!network.nodes.empty()) {
    double min_x = network.nodes[0].x_km, max_x = min_x;
    double min_y = network.nodes[0].y_km, max_y = min_y;
    for (const auto& n : network.nodes) {
      min_x = std::min(min_x, n.x_km);
      max_x = std::max(max_x, n.x_km);
      min_y = std::min(min_y, n.y_km);
      max_y = std::max(max_y, n.y_km);
    }
    network.area_km2 = (max_x - min_x) * (max_y - min_y);
  }
  network.validate();
  return network;
}

void write_network_csv(const Network& network, const std::string& nodes_path,
                       const std::string& lines_path) {
  std::ofstream nodes_out(nodes_path);
  if (!nodes_out) throw validation_error("cannot write file '" + nodes_path + "'");
  nodes_out << "node_id,x_km,y_km,country,mean_load_mw\n";
  for (const auto& n : network.nodes) {
    nodes_out << n.id << ',' << format_double(n.x_km) << ',' << format_double(n.y_km) << ','
              << n.country << ',' << format_double(n.mean_load_mw) << '\n';
  }
  std::ofstream lines_out(lines_path);
  if (!lines_out) throw validation_error("cannot write file '" + lines_path + "'");
  lines_out << "line_id,from_node,to_node,reactance_pu\n";
  for (const auto& l : network.lines) {
    lines_out << l.id << ',' << l.from_node << ',' << l.to_node << ','
              << format_double(l.reactance_pu) << '\n';
  }
}

double mean_neighbor_distance(const Network& network) {
  if (network.node_count() == 0) throw validation_error("mean_neighbor_distance: empty network");
  if (!(network.area_km2 > 0.0)) {
    throw validation_error("mean_neighbor_distance: network area must be positive");
  }
  return std::sqrt(network.area_km2 / static_cast<double>(network.node_count()));
}

}  // namespace gridpca
