#include "mnat/valuations.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <string>

namespace mnat {

namespace {

void validate_tables(const SeparableConcaveSpec& spec) {
    if (spec.tables.empty()) throw Error("separable spec needs at least one table");
    for (std::size_t i = 0; i < spec.tables.size(); ++i) {
        const auto& t = spec.tables[i];
        if (t.empty()) throw Error("separable table " + std::to_string(i) + " is empty");
        for (std::size_t z = 2; z < t.size(); ++z) {
            const double d1 = t[z - 1] - t[z - 2];
            const double d2 = t[z] - t[z - 1];
            if (d2 > d1 + kCheckTolerance) {
                throw NonConcaveTable("table " + std::to_string(i) +
                                      " has increasing forward differences at z=" +
                                      std::to_string(z - 1));
            }
        }
    }
}

std::vector<std::vector<std::size_t>> adjacency(const BipartiteFlowSpec& spec) {
    std::vector<std::vector<std::size_t>> adj(spec.left_count);
    for (std::size_t e = 0; e < spec.edges.size(); ++e) {
        const auto& edge = spec.edges[e];
        if (edge.left >= spec.left_count || edge.right >= spec.right_count) {
            throw Error("bipartite edge endpoint out of range");
        }
        adj[edge.left].push_back(e);
    }
    return adj;
}

// Enumerates, for left vertex `li` onward, every way of assigning at most
// x_i units to distinct free right vertices; returns the best total weight.
double best_assignment(const BipartiteFlowSpec& spec,
                       const std::vector<std::vector<std::size_t>>& adj, const Point& x,
                       std::size_t li, std::uint64_t used_right) {
    if (li == spec.left_count) return 0.0;
    double best = best_assignment(spec, adj, x, li + 1, used_right); // all units unassigned

    // Pick up to x_i edges of vertex li with distinct free right endpoints.
    const auto& edges = adj[li];
    const int units = x[li];
    struct Frame {
        std::size_t edge_pos;
        int remaining;
        double acc;
        std::uint64_t used;
    };
    std::vector<Frame> stack{{0, units, 0.0, used_right}};
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.edge_pos == edges.size() || f.remaining == 0) {
            if (f.acc > 0 || f.remaining < units) {
                const double rest = best_assignment(spec, adj, x, li + 1, f.used);
                best = std::max(best, f.acc + rest);
            }
            continue;
        }
        const auto& e = spec.edges[edges[f.edge_pos]];
        // skip this edge
        stack.push_back({f.edge_pos + 1, f.remaining, f.acc, f.used});
        // take this edge if its right vertex is free
        if (!(f.used & (std::uint64_t{1} << e.right))) {
            stack.push_back({f.edge_pos + 1, f.remaining - 1, f.acc + e.weight,
                             f.used | (std::uint64_t{1} << e.right)});
        }
    }
    return best;
}

// Min-cost flow on the assignment network: source -> left (cap x_i),
// left -> right (cap 1, cost -w), right -> sink (cap 1), left -> sink
// (cap x_i, cost 0) for unassigned units. Successive shortest paths with
// Bellman-Ford potentials; the graph is acyclic so negative edge costs
// are safe.
class MinCostFlow {
public:
    explicit MinCostFlow(std::size_t nodes) : head_(nodes, -1) {}

    void add_edge(std::size_t from, std::size_t to, int cap, double cost) {
        edges_.push_back({to, next_of(from), cap, cost});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, next_of(to), 0, -cost});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    /// Sends `amount` units from s to t; returns total cost. Assumes the
    /// flow is feasible.
    double run(std::size_t s, std::size_t t, int amount) {
        const std::size_t n = head_.size();
        std::vector<double> potential(n, 0.0);
        // Bellman-Ford over the initial residual graph (original arcs only).
        for (std::size_t pass = 0; pass + 1 < n; ++pass) {
            bool changed = false;
            for (std::size_t v = 0; v < n; ++v) {
                for (int e = head_[v]; e >= 0; e = edges_[e].next) {
                    if (edges_[e].cap <= 0) continue;
                    const double cand = potential[v] + edges_[e].cost;
                    if (cand < potential[edges_[e].to] - 1e-15) {
                        potential[edges_[e].to] = cand;
                        changed = true;
                    }
                }
            }
            if (!changed) break;
        }

        double total_cost = 0.0;
        while (amount > 0) {
            // Dijkstra with reduced costs.
            std::vector<double> dist(n, std::numeric_limits<double>::infinity());
            std::vector<int> prev_edge(n, -1);
            using Item = std::pair<double, std::size_t>;
            std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
            dist[s] = 0.0;
            heap.push({0.0, s});
            while (!heap.empty()) {
                auto [d, v] = heap.top();
                heap.pop();
                if (d > dist[v] + 1e-15) continue;
                for (int e = head_[v]; e >= 0; e = edges_[e].next) {
                    if (edges_[e].cap <= 0) continue;
                    const double nd = d + edges_[e].cost + potential[v] - potential[edges_[e].to];
                    if (nd < dist[edges_[e].to] - 1e-15) {
                        dist[edges_[e].to] = nd;
                        prev_edge[edges_[e].to] = e;
                        heap.push({nd, edges_[e].to});
                    }
                }
            }
            if (prev_edge[t] < 0) {
                throw Error("assignment flow is infeasible");
            }
            for (std::size_t v = 0; v < n; ++v) {
                if (dist[v] < std::numeric_limits<double>::infinity()) potential[v] += dist[v];
            }
            // Bottleneck along the path.
            int push = amount;
            for (int e = prev_edge[t]; e >= 0;) {
                push = std::min(push, edges_[e].cap);
                const std::size_t from = edges_[e ^ 1].to;
                e = (from == s) ? -1 : prev_edge[from];
            }
            for (int e = prev_edge[t]; e >= 0;) {
                edges_[e].cap -= push;
                edges_[e ^ 1].cap += push;
                total_cost += push * edges_[e].cost;
                const std::size_t from = edges_[e ^ 1].to;
                e = (from == s) ? -1 : prev_edge[from];
            }
            amount -= push;
        }
        return total_cost;
    }

private:
    struct Edge {
        std::size_t to;
        int next;
        int cap;
        double cost;
    };

    int next_of(std::size_t v) const { return head_[v]; }

    std::vector<int> head_;
    std::vector<Edge> edges_;
};

} // namespace

Valuation separable_concave(const SeparableConcaveSpec& spec) {
    validate_tables(spec);
    auto tables = spec.tables;
    const int budget = spec.budget;
    std::vector<int> hi(tables.size());
    for (std::size_t i = 0; i < tables.size(); ++i) hi[i] = static_cast<int>(tables[i].size()) - 1;
    return Valuation("separable", Point(std::move(hi)),
                     [tables, budget](const Point& x) -> ExtendedValue {
                         if (x.total() > budget) return ExtendedValue::neg_infinity();
                         double s = 0.0;
                         for (std::size_t i = 0; i < tables.size(); ++i) {
                             s += tables[i][static_cast<std::size_t>(x[i])];
                         }
                         return ExtendedValue(s);
                     });
}

namespace detail {

double oxs_value_enumerate(const BipartiteFlowSpec& spec, const Point& x) {
    const auto adj = adjacency(spec);
    return best_assignment(spec, adj, x, 0, 0);
}

double oxs_value_flow(const BipartiteFlowSpec& spec, const Point& x) {
    // Nodes: 0 = source, 1..L = left, L+1..L+R = right, L+R+1 = sink.
    const std::size_t L = spec.left_count;
    const std::size_t R = spec.right_count;
    const std::size_t sink = L + R + 1;
    MinCostFlow mcf(sink + 1);
    int supply = 0;
    for (std::size_t i = 0; i < L; ++i) {
        if (x[i] > 0) {
            mcf.add_edge(0, 1 + i, x[i], 0.0);
            mcf.add_edge(1 + i, sink, x[i], 0.0); // unassigned units
            supply += x[i];
        }
    }
    for (const auto& e : spec.edges) {
        mcf.add_edge(1 + e.left, 1 + L + e.right, 1, -e.weight);
    }
    for (std::size_t j = 0; j < R; ++j) {
        mcf.add_edge(1 + L + j, sink, 1, 0.0);
    }
    if (supply == 0) return 0.0;
    return -mcf.run(0, sink, supply);
}

} // namespace detail

Valuation oxs_maxflow(const BipartiteFlowSpec& spec) {
    if (spec.left_count == 0) throw Error("oxs spec needs a non-empty ground set");
    if (spec.right_count > 60) throw Error("oxs spec supports at most 60 right vertices");
    if (spec.source_caps.size() != spec.left_count) {
        throw Error("oxs spec needs one source cap per left vertex");
    }
    adjacency(spec); // validates edge endpoints
    std::vector<int> hi = spec.source_caps;
    const bool small = spec.edges.size() <= 20;
    auto shared = spec;
    return Valuation("oxs", Point(std::move(hi)), [shared, small](const Point& x) -> ExtendedValue {
        return small ? detail::oxs_value_enumerate(shared, x) : detail::oxs_value_flow(shared, x);
    });
}

int tau(const Matroid& matroid, const Point& x) {
    const std::uint32_t mx = Matroid::mask_of(x);
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t b : matroid.base_masks()) {
        best = std::min(best, std::popcount(mx ^ b));
        if (best == 0) break;
    }
    return best;
}

Valuation matroid_distance(const Matroid& matroid) {
    const double n = static_cast<double>(matroid.ground_size());
    auto m = matroid;
    return Valuation("matroid_distance", Point(std::vector<int>(matroid.ground_size(), 1)),
                     [m, n](const Point& x) -> ExtendedValue {
                         return ExtendedValue(1.0 - static_cast<double>(tau(m, x)) / n);
                     });
}

Valuation matroid_indicator(const Matroid& matroid) {
    auto m = matroid;
    return Valuation("matroid_indicator", Point(std::vector<int>(matroid.ground_size(), 1)),
                     [m](const Point& x) -> ExtendedValue {
                         if (m.is_base(x)) return ExtendedValue(0.0);
                         return ExtendedValue::neg_infinity();
                     });
}

Valuation dense_table(Point box_hi, std::vector<std::optional<double>> values,
                      std::string name) {
    std::uint64_t volume = 1;
    for (std::size_t i = 0; i < box_hi.size(); ++i) {
        volume *= static_cast<std::uint64_t>(box_hi[i]) + 1;
    }
    if (values.size() != volume) {
        throw Error("dense table needs exactly " + std::to_string(volume) + " values, got " +
                    std::to_string(values.size()));
    }
    std::vector<std::size_t> strides(box_hi.size(), 1);
    for (std::size_t i = box_hi.size(); i-- > 1;) {
        strides[i - 1] = strides[i] * (static_cast<std::size_t>(box_hi[i]) + 1);
    }
    return Valuation(std::move(name), box_hi,
                     [values, strides](const Point& x) -> ExtendedValue {
                         std::size_t idx = 0;
                         for (std::size_t i = 0; i < strides.size(); ++i) {
                             idx += strides[i] * static_cast<std::size_t>(x[i]);
                         }
                         if (!values[idx]) return ExtendedValue::neg_infinity();
                         return ExtendedValue(*values[idx]);
                     });
}

SeparableConcaveSpec random_separable_spec(std::size_t n, int box_hi, int budget,
                                           RandomStream& rng) {
    SeparableConcaveSpec spec;
    spec.budget = budget;
    spec.tables.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double c = 0.2 + 0.8 * rng.uniform01();
        auto& t = spec.tables[i];
        t.resize(static_cast<std::size_t>(box_hi) + 1);
        for (int z = 0; z <= box_hi; ++z) {
            t[static_cast<std::size_t>(z)] = c * (1.0 - std::pow(2.0, -z));
        }
    }
    return spec;
}

} // namespace mnat
