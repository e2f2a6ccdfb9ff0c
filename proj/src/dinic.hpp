#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

// Dinic max-flow on int64 capacities; enough for the parametric
// densest-subgraph networks built in structure.cpp (capacities are scaled
// rationals bounded by ~n^2 * m).

namespace nodallab::detail {

class Dinic {
  public:
    explicit Dinic(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

    void add_edge(int from, int to, std::int64_t cap) {
        arcs_.push_back({to, head_[from], cap});
        head_[from] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, head_[to], 0});
        head_[to] = static_cast<int>(arcs_.size()) - 1;
    }

    std::int64_t max_flow(int s, int t) {
        std::int64_t flow = 0;
        while (bfs(s, t)) {
            it_ = head_;
            for (;;) {
                const std::int64_t pushed = dfs(s, t, kInf);
                if (pushed == 0) break;
                flow += pushed;
            }
        }
        return flow;
    }

    /// After max_flow: nodes reachable from s in the residual graph
    /// (the source side of a minimum cut).
    std::vector<char> min_cut_side(int s) const {
        std::vector<char> side(head_.size(), 0);
        std::deque<int> queue{s};
        side[s] = 1;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int e = head_[u]; e != -1; e = arcs_[e].next) {
                if (arcs_[e].cap > 0 && !side[arcs_[e].to]) {
                    side[arcs_[e].to] = 1;
                    queue.push_back(arcs_[e].to);
                }
            }
        }
        return side;
    }

  private:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    struct Arc {
        int to;
        int next;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::deque<int> queue{s};
        level_[s] = 0;
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int e = head_[u]; e != -1; e = arcs_[e].next) {
                if (arcs_[e].cap > 0 && level_[arcs_[e].to] < 0) {
                    level_[arcs_[e].to] = level_[u] + 1;
                    queue.push_back(arcs_[e].to);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int u, int t, std::int64_t limit) {
        if (u == t) return limit;
        for (int& e = it_[u]; e != -1; e = arcs_[e].next) {
            Arc& a = arcs_[e];
            if (a.cap > 0 && level_[a.to] == level_[u] + 1) {
                const std::int64_t pushed = dfs(a.to, t, std::min(limit, a.cap));
                if (pushed > 0) {
                    a.cap -= pushed;
                    arcs_[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
        }
        level_[u] = -1;
        return 0;
    }

    std::vector<int> head_;
    std::vector<int> level_;
    std::vector<int> it_;
    std::vector<Arc> arcs_;
};

}  // namespace nodallab::detail
