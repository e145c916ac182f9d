#include "gridpca/coarsen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "gridpca/errors.hpp"

namespace gridpca {

namespace {

struct Point {
  double x, y, w;
};

double dist2(const Point& p, double cx, double cy) {
  const double dx = p.x - cx;
  const double dy = p.y - cy;
  return dx * dx + dy * dy;
}

// k-means++ seeding: first center drawn with probability proportional to the
// weight, later centers proportional to weight * distance^2 to the nearest
// chosen center.
std::vector<std::pair<double, double>> seed_centers(const std::vector<Point>& points, int k,
                                                    std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto pick = [&](const std::vector<double>& mass) {
    double total = 0.0;
    for (const double m : mass) total += m;
    if (total <= 0.0) {
      return static_cast<std::size_t>(
          std::min<double>(unit(rng) * static_cast<double>(mass.size()),
                           static_cast<double>(mass.size() - 1)));
    }
    const double target = unit(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      acc += mass[i];
      if (acc >= target) return i;
    }
    return mass.size() - 1;
  };

  std::vector<std::pair<double, double>> centers;
  std::vector<double> mass(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) mass[i] = points[i].w;
  const std::size_t first = pick(mass);
  centers.emplace_back(points[first].x, points[first].y);
  std::vector<double> nearest(points.size());
  while (static_cast<int>(centers.size()) < k) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) best = std::min(best, dist2(points[i], c.first, c.second));
      nearest[i] = points[i].w * best;
    }
    const std::size_t next = pick(nearest);
    centers.emplace_back(points[next].x, points[next].y);
  }
  return centers;
}

struct KmeansOutcome {
  std::vector<int> assignment;
  std::vector<std::pair<double, double>> centers;
};

KmeansOutcome weighted_kmeans(const std::vector<Point>& points, int k, std::mt19937_64& rng) {
  constexpr int kMaxIterations = 100;
  auto centers = seed_centers(points, k, rng);
  std::vector<int> assignment(points.size(), -1);

  for (int iteration = 0; iteration < kMaxIterations; ++iteration) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      int best = 0;
      double best_d = dist2(points[i], centers[0].first, centers[0].second);
      for (int c = 1; c < k; ++c) {
        const double d =
            dist2(points[i], centers[static_cast<std::size_t>(c)].first,
                  centers[static_cast<std::size_t>(c)].second);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (assignment[i] != best) {
        assignment[i] = best;
        changed = true;
      }
    }

    // Keep every cluster populated: move the point with the largest weighted
    // distance to its center into the empty cluster (never the sole member of
    // another cluster).
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (const int a : assignment) ++counts[static_cast<std::size_t>(a)];
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      std::size_t worst = points.size();
      double worst_d = -1.0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const int a = assignment[i];
        if (counts[static_cast<std::size_t>(a)] <= 1) continue;
        const double d = std::max(points[i].w, 1e-12) *
                         dist2(points[i], centers[static_cast<std::size_t>(a)].first,
                               centers[static_cast<std::size_t>(a)].second);
        if (d > worst_d) {
          worst_d = d;
          worst = i;
        }
      }
      if (worst == points.size()) {
        throw validation_error("coarsen: cannot populate " + std::to_string(k) + " clusters");
      }
      --counts[static_cast<std::size_t>(assignment[worst])];
      assignment[worst] = c;
      ++counts[static_cast<std::size_t>(c)];
      changed = true;
    }

    for (int c = 0; c < k; ++c) {
      double sw = 0.0, sx = 0.0, sy = 0.0;
      double ux = 0.0, uy = 0.0;
      int n = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        if (assignment[i] != c) continue;
        sw += points[i].w;
        sx += points[i].w * points[i].x;
        sy += points[i].w * points[i].y;
        ux += points[i].x;
        uy += points[i].y;
        ++n;
      }
      if (sw > 0.0) {
        centers[static_cast<std::size_t>(c)] = {sx / sw, sy / sw};
      } else if (n > 0) {
        centers[static_cast<std::size_t>(c)] = {ux / n, uy / n};
      }
    }
    if (!changed && iteration > 0) break;
  }
  return {assignment, centers};
}

Network reduce(const Network& network, const KmeansOutcome& km, int k) {
  Network reduced;
  reduced.area_km2 = network.area_km2;
  reduced.nodes.resize(static_cast<std::size_t>(k));
  std::vector<std::map<std::string, double>> country_load(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < network.nodes.size(); ++i) {
    const auto c = static_cast<std::size_t>(km.assignment[i]);
    reduced.nodes[c].mean_load_mw += network.nodes[i].mean_load_mw;
    country_load[c][network.nodes[i].country] += std::max(network.nodes[i].mean_load_mw, 0.0);
  }
  for (int c = 0; c < k; ++c) {
    auto& node = reduced.nodes[static_cast<std::size_t>(c)];
    node.id = "c" + std::to_string(c);
    node.x_km = km.centers[static_cast<std::size_t>(c)].first;
    node.y_km = km.centers[static_cast<std::size_t>(c)].second;
    // Majority country by member load; ties resolve to the first name in order.
    double best = -1.0;
    for (const auto& [country, load] : country_load[static_cast<std::size_t>(c)]) {
      if (load > best) {
        best = load;
        node.country = country;
      }
    }
  }

  const auto index = network.node_index_map();
  std::map<std::pair<int, int>, double> admittance;  // cluster pair -> sum 1/x
  for (const auto& line : network.lines) {
    int a = km.assignment[index.at(line.from_node)];
    int b = km.assignment[index.at(line.to_node)];
    if (a == b) continue;  // intra-cluster lines are dropped
    if (a > b) std::swap(a, b);
    admittance[{a, b}] += 1.0 / line.reactance_pu;
  }
  for (const auto& [pair, y] : admittance) {
    Line line;
    line.id = "c" + std::to_string(pair.first) + "-c" + std::to_string(pair.second);
    line.from_node = "c" + std::to_string(pair.first);
    line.to_node = "c" + std::to_string(pair.second);
    line.reactance_pu = 1.0 / y;
    reduced.lines.push_back(std::move(line));
  }
  return reduced;
}

}  // namespace

CoarseningResult coarsen(const Network& network, int target_n, std::uint64_t seed) {
  network.validate();
  network.require_connected();
  const int n = static_cast<int>(network.node_count());
  if (target_n <= 1 || target_n > n) {
    throw validation_error("coarsen: target size " + std::to_string(target_n) +
                           " out of range (2.." + std::to_string(n) + ")");
  }
  if (target_n == n) {
    CoarseningResult identity;
    identity.network = network;
    identity.target_n = target_n;
    identity.assignment.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) identity.assignment[static_cast<std::size_t>(i)] = i;
    return identity;
  }

  std::vector<Point> points;
  points.reserve(network.nodes.size());
  double total_load = 0.0;
  for (const auto& node : network.nodes) total_load += std::max(node.mean_load_mw, 0.0);
  for (const auto& node : network.nodes) {
    const double w = total_load > 0.0 ? std::max(node.mean_load_mw, 0.0) : 1.0;
    points.push_back({node.x_km, node.y_km, w});
  }

  constexpr int kMaxRetries = 10;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(attempt));
    const KmeansOutcome km = weighted_kmeans(points, target_n, rng);
    Network reduced = reduce(network, km, target_n);
    const auto labels = reduced.component_labels();
    const bool connected =
        labels.empty() || *std::max_element(labels.begin(), labels.end()) == 0;
    if (connected) {
      CoarseningResult result;
      result.network = std::move(reduced);
      result.assignment = km.assignment;
      result.target_n = target_n;
      return result;
    }
  }
  throw validation_error("coarsen: reduced network stayed disconnected after " +
                         std::to_string(kMaxRetries + 1) + " seeding attempts");
}

TimeSeriesEnsemble aggregate_by_cluster(const TimeSeriesEnsemble& series,
                                        const CoarseningResult& coarsening,
                                        const Network& original) {
  series.validate();
  if (series.labels != original.node_ids()) {
    throw validation_error("aggregate_by_cluster: series labels do not match the network");
  }
  if (series.dimension() != static_cast<Eigen::Index>(coarsening.assignment.size())) {
    throw validation_error("aggregate_by_cluster: assignment size mismatch");
  }
  TimeSeriesEnsemble out;
  out.timestamps = series.timestamps;
  out.labels = coarsening.network.node_ids();
  out.values = Eigen::MatrixXd::Zero(series.steps(), coarsening.network.node_count());
  for (Eigen::Index c = 0; c < series.dimension(); ++c) {
    out.values.col(coarsening.assignment[static_cast<std::size_t>(c)]) += series.values.col(c);
  }
  return out;
}

}  // namespace gridpca
