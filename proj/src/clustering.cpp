#include "uaco/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace uaco {

namespace {

double sqDist(const Point2& a, const Point2& b) {
    const double dx = a[0] - b[0];
    const double dy = a[1] - b[1];
    return dx * dx + dy * dy;
}

Point2 centroidOf(const std::vector<int>& members, const std::vector<Point2>& points) {
    Point2 c{0.0, 0.0};
    if (members.empty()) return c;
    for (int id : members) {
        c[0] += points[id][0];
        c[1] += points[id][1];
    }
    c[0] /= members.size();
    c[1] /= members.size();
    return c;
}

int nearestCentroid(const Point2& p, const std::vector<Point2>& centroids) {
    int best = 0;
    double bestD = std::numeric_limits<double>::infinity();
    for (int i = 0; i < static_cast<int>(centroids.size()); ++i) {
        const double d = sqDist(p, centroids[i]);
        if (d < bestD) {
            bestD = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

double sse(const ClusterAssignment& a, const std::vector<Point2>& points) {
    double total = 0.0;
    for (size_t i = 0; i < a.clusters.size(); ++i)
        for (int id : a.clusters[i]) total += sqDist(points[id], a.centroids[i]);
    return total;
}

KmeansResult kmeans(const std::vector<Point2>& points, int numClusters, int maxIters,
                    Rng& rng) {
    const int n = static_cast<int>(points.size());
    if (numClusters < 1 || n < numClusters)
        throw std::invalid_argument("kmeans: need 1 <= clusters <= points");

    // U distinct random samples as initial centroids.
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = 0; i < numClusters; ++i) {
        const int j = i + static_cast<int>(rng.uniformInt(n - i));
        std::swap(ids[i], ids[j]);
    }
    KmeansResult res;
    res.assignment.centroids.resize(numClusters);
    for (int i = 0; i < numClusters; ++i) res.assignment.centroids[i] = points[ids[i]];

    std::vector<Point2> prev;
    for (int iter = 0; iter < maxIters; ++iter) {
        auto& a = res.assignment;
        a.clusters.assign(numClusters, {});
        for (int k = 0; k < n; ++k)
            a.clusters[nearestCentroid(points[k], a.centroids)].push_back(k);

        // Reseed any emptied cluster at the point farthest from its assigned
        // centroid, then redo the assignment once.
        for (int i = 0; i < numClusters; ++i) {
            if (!a.clusters[i].empty()) continue;
            int farthest = 0;
            double worst = -1.0;
            for (int k = 0; k < n; ++k) {
                const double d = sqDist(points[k], a.centroids[nearestCentroid(points[k], a.centroids)]);
                if (d > worst) {
                    worst = d;
                    farthest = k;
                }
            }
            a.centroids[i] = points[farthest];
            a.clusters.assign(numClusters, {});
            for (int k = 0; k < n; ++k)
                a.clusters[nearestCentroid(points[k], a.centroids)].push_back(k);
        }

        for (int i = 0; i < numClusters; ++i)
            a.centroids[i] = centroidOf(a.clusters[i], points);
        res.sseHistory.push_back(sse(a, points));
        res.iterations = iter + 1;
        if (a.centroids == prev) break;
        prev = a.centroids;
    }
    return res;
}

ClusterAssignment enforceCapacity(ClusterAssignment a, int eta,
                                  const std::vector<Point2>& points) {
    const int numClusters = static_cast<int>(a.clusters.size());
    int total = 0;
    for (const auto& c : a.clusters) total += static_cast<int>(c.size());
    if (eta * numClusters < total)
        throw std::invalid_argument("enforceCapacity: eta * clusters < users");

    for (;;) {
        int over = -1;
        for (int i = 0; i < numClusters; ++i) {
            if (static_cast<int>(a.clusters[i].size()) > eta) {
                over = i;
                break;
            }
        }
        if (over < 0) break;

        // Candidate = member farthest from its centroid; ties prefer the
        // cheaper destination, then the lower user id.
        int pick = -1, pickDest = -1;
        double pickDist = -1.0, pickDestDist = 0.0;
        for (int id : a.clusters[over]) {
            const double d = sqDist(points[id], a.centroids[over]);
            int dest = -1;
            double destDist = std::numeric_limits<double>::infinity();
            for (int j = 0; j < numClusters; ++j) {
                if (j == over || static_cast<int>(a.clusters[j].size()) >= eta) continue;
                const double dj = sqDist(points[id], a.centroids[j]);
                if (dj < destDist) {
                    destDist = dj;
                    dest = j;
                }
            }
            if (dest < 0) continue;  // no spare capacity anywhere for this move
            const bool better =
                d > pickDist ||
                (d == pickDist && (destDist < pickDestDist ||
                                   (destDist == pickDestDist && id < pick)));
            if (better) {
                pick = id;
                pickDist = d;
                pickDest = dest;
                pickDestDist = destDist;
            }
        }
        if (pick < 0)
            throw std::logic_error("enforceCapacity: no destination with spare capacity");

        auto& src = a.clusters[over];
        src.erase(std::find(src.begin(), src.end(), pick));
        a.clusters[pickDest].push_back(pick);
        a.centroids[over] = centroidOf(src, points);
        a.centroids[pickDest] = centroidOf(a.clusters[pickDest], points);
    }
    return a;
}

std::vector<NomaCluster> matchClustersToUavs(const ClusterAssignment& a,
                                             const std::vector<UavState>& uavs) {
    const int u = static_cast<int>(uavs.size());
    if (static_cast<int>(a.clusters.size()) != u)
        throw std::invalid_argument("matchClustersToUavs: cluster/UAV count mismatch");

    std::vector<std::vector<double>> cost(u, std::vector<double>(u, 0.0));
    for (int c = 0; c < u; ++c)
        for (int v = 0; v < u; ++v) {
            const double dx = a.centroids[c][0] - uavs[v].pos.x;
            const double dy = a.centroids[c][1] - uavs[v].pos.y;
            cost[c][v] = std::sqrt(dx * dx + dy * dy);
        }

    std::vector<int> best(u);  // best[cluster] = uav
    std::iota(best.begin(), best.end(), 0);
    if (u <= 5) {
        std::vector<int> perm = best;
        double bestCost = std::numeric_limits<double>::infinity();
        std::sort(perm.begin(), perm.end());
        do {
            double c = 0.0;
            for (int i = 0; i < u; ++i) c += cost[i][perm[i]];
            if (c < bestCost) {
                bestCost = c;
                best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
        // Greedy: repeatedly take the globally cheapest unmatched pair.
        std::vector<bool> cUsed(u, false), vUsed(u, false);
        for (int step = 0; step < u; ++step) {
            double bc = std::numeric_limits<double>::infinity();
            int bi = -1, bj = -1;
            for (int i = 0; i < u; ++i) {
                if (cUsed[i]) continue;
                for (int j = 0; j < u; ++j) {
                    if (vUsed[j]) continue;
                    if (cost[i][j] < bc) {
                        bc = cost[i][j];
                        bi = i;
                        bj = j;
                    }
                }
            }
            best[bi] = bj;
            cUsed[bi] = vUsed[bj] = true;
        }
    }

    std::vector<NomaCluster> out(u);
    for (int c = 0; c < u; ++c) {
        auto& cluster = out[best[c]];
        cluster.uav = best[c];
        cluster.members = a.clusters[c];
        std::sort(cluster.members.begin(), cluster.members.end());
    }
    return out;
}

std::vector<NomaCluster> recluster(const std::vector<UserState>& users,
                                   const std::vector<UavState>& uavs,
                                   const WorldConfig& cfg, Rng& rng,
                                   ClusterAssignment* outAssignment) {
    std::vector<Point2> points(users.size());
    for (size_t k = 0; k < users.size(); ++k) points[k] = {users[k].x, users[k].y};
    auto km = kmeans(points, cfg.numUavs, cfg.kmeansMaxIters, rng);
    auto capped = enforceCapacity(km.assignment, cfg.maxUsersPerUav, points);
    if (outAssignment != nullptr) *outAssignment = capped;
    return matchClustersToUavs(capped, uavs);
}

}  // namespace uaco
