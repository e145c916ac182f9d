#pragma once

#include <cstdint>
#include <vector>

#include "gridpca/network.hpp"
#include "gridpca/timeseries.hpp"

namespace gridpca {

struct CoarseningResult {
  Network network;              // reduced network, nodes c0..c{target_n-1}
  std::vector<int> assignment;  // original node position -> cluster index
  int target_n = 0;
};

/// Reduces the network to target_n nodes with load-weighted k-means on node
/// coordinates (k-means++ seeding, Lloyd iterations capped at 100). Cluster
/// centroids become node positions, member loads are summed, inter-cluster
/// lines merge with the parallel-reactance rule 1/x_eq = sum 1/x_l, and
/// intra-cluster lines are dropped. Reruns with a fresh seed when the reduced
/// graph comes out disconnected, up to a retry limit.
CoarseningResult coarsen(const Network& network, int target_n, std::uint64_t seed);

/// Sums nodal series columns over each cluster. Series labels must match the
/// original network's node order.
TimeSeriesEnsemble aggregate_by_cluster(const TimeSeriesEnsemble& series,
                                        const CoarseningResult& coarsening,
                                        const Network& original);

}  // namespace gridpca
