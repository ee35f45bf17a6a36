#include "gldpc/peg.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace gldpc {

void PegConfig::validate() const {
    target_degrees.validate();
    if (n_c < 1 || n_v < 1) throw std::invalid_argument("peg: empty dimensions");
    if (target_degrees.total_nodes() != n_v)
        throw std::invalid_argument("peg: degree counts do not sum to n_v");
    for (auto& [d, c] : target_degrees.pairs)
        if (d > n_c && c > 0) throw std::invalid_argument("peg: target degree exceeds n_c");
}

namespace {

// Adjacency under construction. Multiplicities are tracked explicitly since
// parallel edges may be forced on tiny protographs.
struct Graph {
    int n_c, n_v;
    std::vector<std::vector<std::pair<int, int>>> vn;  // per VN: (check, multiplicity)
    std::vector<std::vector<int>> cn;                  // per CN: neighbor VNs (unique)
    std::vector<int> cn_degree;                        // with multiplicity

    Graph(int nc, int nv) : n_c(nc), n_v(nv), vn(nv), cn(nc), cn_degree(nc, 0) {}

    bool is_neighbor(int v, int c) const {
        for (auto& [cc, m] : vn[v])
            if (cc == c) return true;
        return false;
    }
    void add_edge(int v, int c) {
        bool found = false;
        for (auto& [cc, m] : vn[v])
            if (cc == c) { ++m; found = true; break; }
        if (!found) {
            vn[v].push_back({c, 1});
            cn[c].push_back(v);
        }
        ++cn_degree[c];
    }
};

// BFS from variable node v over the bipartite graph, returning per-check
// distance (number of VN->CN hops; -1 if unreached).
void bfs_check_distances(const Graph& g, int v, std::vector<int>& dist,
                         std::vector<uint8_t>& seen_v, std::vector<int>& frontier,
                         std::vector<int>& next_frontier) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(seen_v.begin(), seen_v.end(), 0);
    frontier.clear();
    seen_v[v] = 1;
    for (auto& [c, m] : g.vn[v]) {
        if (dist[c] < 0) {
            dist[c] = 0;
            frontier.push_back(c);
        }
    }
    int depth = 0;
    while (!frontier.empty()) {
        next_frontier.clear();
        ++depth;
        for (int c : frontier) {
            for (int u : g.cn[c]) {
                if (seen_v[u]) continue;
                seen_v[u] = 1;
                for (auto& [c2, m2] : g.vn[u]) {
                    if (dist[c2] < 0) {
                        dist[c2] = depth;
                        next_frontier.push_back(c2);
                    }
                }
            }
        }
        frontier.swap(next_frontier);
    }
}

}  // namespace

BaseMatrix peg_build(const PegConfig& cfg) {
    cfg.validate();
    Rng rng = substream(cfg.rng_seed, "peg");
    Graph g(cfg.n_c, cfg.n_v);
    std::vector<int> degrees = cfg.target_degrees.expand();  // ascending

    std::vector<int> dist(cfg.n_c);
    std::vector<uint8_t> seen_v(cfg.n_v);
    std::vector<int> frontier, next_frontier, cands;
    frontier.reserve(cfg.n_c);
    next_frontier.reserve(cfg.n_c);

    for (int v = 0; v < cfg.n_v; ++v) {
        for (int k = 0; k < degrees[v]; ++k) {
            cands.clear();
            if (k == 0) {
                for (int c = 0; c < cfg.n_c; ++c) cands.push_back(c);
            } else {
                bfs_check_distances(g, v, dist, seen_v, frontier, next_frontier);
                int max_d = -1;
                bool any_unreached = false;
                for (int c = 0; c < cfg.n_c; ++c) {
                    if (dist[c] < 0) any_unreached = true;
                    else max_d = std::max(max_d, dist[c]);
                }
                if (any_unreached) {
                    for (int c = 0; c < cfg.n_c; ++c)
                        if (dist[c] < 0) cands.push_back(c);
                } else {
                    for (int c = 0; c < cfg.n_c; ++c)
                        if (dist[c] == max_d) cands.push_back(c);
                    // Prefer non-neighbors; fall back (forced parallel edge) if
                    // every maximum-distance check is already adjacent.
                    size_t w = 0;
                    for (size_t i = 0; i < cands.size(); ++i)
                        if (!g.is_neighbor(v, cands[i])) cands[w++] = cands[i];
                    if (w > 0) cands.resize(w);
                }
            }
            int min_deg = std::numeric_limits<int>::max();
            for (int c : cands) min_deg = std::min(min_deg, g.cn_degree[c]);
            size_t w = 0;
            for (size_t i = 0; i < cands.size(); ++i)
                if (g.cn_degree[cands[i]] == min_deg) cands[w++] = cands[i];
            cands.resize(w);
            int chosen = cands[rng.bounded(cands.size())];
            g.add_edge(v, chosen);
        }
    }

    Eigen::MatrixXi b = Eigen::MatrixXi::Zero(cfg.n_c, cfg.n_v);
    for (int v = 0; v < cfg.n_v; ++v)
        for (auto& [c, m] : g.vn[v]) b(c, v) = m;
    BaseMatrix out(std::move(b));
    out.validate();
    return out;
}

}  // namespace gldpc
