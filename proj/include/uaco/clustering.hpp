#pragma once

#include <array>
#include <vector>

#include "uaco/noma.hpp"
#include "uaco/rng.hpp"
#include "uaco/world.hpp"

namespace uaco {

using Point2 = std::array<double, 2>;

struct ClusterAssignment {
    std::vector<std::vector<int>> clusters;  // user ids per cluster
    std::vector<Point2> centroids;
};

struct KmeansResult {
    ClusterAssignment assignment;
    std::vector<double> sseHistory;  // SSE after each Lloyd iteration
    int iterations = 0;
};

double sse(const ClusterAssignment& a, const std::vector<Point2>& points);

/// Plain Lloyd K-means (no capacity bound). Centroids seeded from U distinct
/// random users; stops when centroids repeat or maxIters is reached. An
/// emptied cluster is reseeded at the point farthest from its assigned
/// centroid.
KmeansResult kmeans(const std::vector<Point2>& points, int numClusters, int maxIters,
                    Rng& rng);

/// Capacity pass: while any cluster exceeds eta members, its farthest member
/// moves to the nearest cluster with spare capacity (ties on farthest broken
/// toward the cheaper destination, then lower id); centroids are recomputed
/// after every move. Requires eta * numClusters >= numPoints.
ClusterAssignment enforceCapacity(ClusterAssignment a, int eta,
                                  const std::vector<Point2>& points);

/// Clusters matched to UAVs minimizing total centroid-to-UAV horizontal
/// distance (exhaustive over permutations for U <= 5, greedy beyond).
/// Output is indexed by UAV id, with empty decoding orders.
std::vector<NomaCluster> matchClustersToUavs(const ClusterAssignment& a,
                                             const std::vector<UavState>& uavs);

/// Full re-clustering step: kmeans + capacity + UAV matching.
std::vector<NomaCluster> recluster(const std::vector<UserState>& users,
                                   const std::vector<UavState>& uavs,
                                   const WorldConfig& cfg, Rng& rng,
                                   ClusterAssignment* outAssignment = nullptr);

}  // namespace uaco
