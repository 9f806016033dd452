#pragma once
// Weighted edge-betweenness centrality (Brandes) on a directed graph with
// positive edge distances. Scores count ordered source-target pairs.

#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace claimkit {

struct WeightedEdge {
    int source = 0;
    int target = 0;
    double distance = 0.0;
};

inline std::vector<double> edge_betweenness(int n_nodes, const std::vector<WeightedEdge>& edges) {
    for (const auto& e : edges) {
        if (e.source < 0 || e.source >= n_nodes || e.target < 0 || e.target >= n_nodes)
            throw std::invalid_argument("edge_betweenness: endpoint out of range");
        if (!(e.distance > 0.0))
            throw std::invalid_argument("edge_betweenness: non-positive distance");
    }

    std::vector<std::vector<int>> out(static_cast<std::size_t>(n_nodes));
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        out[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].source)].push_back(e);

    std::vector<double> scores(edges.size(), 0.0);
    constexpr double kInf = std::numeric_limits<double>::infinity();

    for (int s = 0; s < n_nodes; ++s) {
        std::vector<double> dist(static_cast<std::size_t>(n_nodes), kInf);
        std::vector<double> sigma(static_cast<std::size_t>(n_nodes), 0.0);
        std::vector<std::vector<int>> pred_edges(static_cast<std::size_t>(n_nodes));
        std::vector<int> settled;
        settled.reserve(static_cast<std::size_t>(n_nodes));

        using Entry = std::pair<double, int>;
        std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
        dist[static_cast<std::size_t>(s)] = 0.0;
        sigma[static_cast<std::size_t>(s)] = 1.0;
        queue.emplace(0.0, s);
        std::vector<bool> done(static_cast<std::size_t>(n_nodes), false);

        while (!queue.empty()) {
            const auto [d, v] = queue.top();
            queue.pop();
            if (done[static_cast<std::size_t>(v)]) continue;
            done[static_cast<std::size_t>(v)] = true;
            settled.push_back(v);
            for (const int e : out[static_cast<std::size_t>(v)]) {
                const auto& edge = edges[static_cast<std::size_t>(e)];
                const int w = edge.target;
                const double nd = dist[static_cast<std::size_t>(v)] + edge.distance;
                if (nd < dist[static_cast<std::size_t>(w)]) {
                    dist[static_cast<std::size_t>(w)] = nd;
                    sigma[static_cast<std::size_t>(w)] = sigma[static_cast<std::size_t>(v)];
                    pred_edges[static_cast<std::size_t>(w)].assign(1, e);
                    queue.emplace(nd, w);
                } else if (nd == dist[static_cast<std::size_t>(w)]) {
                    sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(v)];
                    pred_edges[static_cast<std::size_t>(w)].push_back(e);
                }
            }
        }

        std::vector<double> delta(static_cast<std::size_t>(n_nodes), 0.0);
        for (auto it = settled.rbegin(); it != settled.rend(); ++it) {
            const int w = *it;
            for (const int e : pred_edges[static_cast<std::size_t>(w)]) {
                const int v = edges[static_cast<std::size_t>(e)].source;
                const double c = sigma[static_cast<std::size_t>(v)] /
                                 sigma[static_cast<std::size_t>(w)] *
                                 (1.0 + delta[static_cast<std::size_t>(w)]);
                scores[static_cast<std::size_t>(e)] += c;
                delta[static_cast<std::size_t>(v)] += c;
            }
        }
    }
    return scores;
}

}  // namespace claimkit
