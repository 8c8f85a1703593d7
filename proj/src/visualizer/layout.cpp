// SPDX-License-Identifier: Apache-2.0

#include "gita/layout.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>
#include <set>

#include "gita/error.hpp"
#include "gita/rng.hpp"

namespace gita {
namespace {

using Positions = std::vector<Point>;
using EdgeList = std::vector<NodePair>;

constexpr double kIdealLength = 1.0;
constexpr double kGravity = 0.02;
constexpr double kMinDistance = 1e-9;
constexpr int kCheckpointEvery = 20;

EdgeList undirected_pairs(const Graph& g) {
    std::set<NodePair> pairs;
    for (const Edge& e : g.edges()) pairs.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
    return {pairs.begin(), pairs.end()};
}

Positions scatter(Rng& rng, std::size_t n, double side) {
    Positions pos(n);
    for (auto& p : pos) {
        p.x = rng.uniform(0.0, side);
        p.y = rng.uniform(0.0, side);
    }
    return pos;
}

Point centroid(const Positions& pos) {
    Point c;
    for (const auto& p : pos) {
        c.x += p.x;
        c.y += p.y;
    }
    if (!pos.empty()) {
        c.x /= static_cast<double>(pos.size());
        c.y /= static_cast<double>(pos.size());
    }
    return c;
}

// Potential whose negative gradient is the Fruchterman-Reingold force field
// (attraction d^2/k along edges, repulsion k^2/d between all pairs) plus a
// weak pull toward `anchor` that keeps disconnected parts together.
double spring_energy(const Positions& pos, const EdgeList& edges, Point anchor) {
    const double k = kIdealLength;
    double e = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            const double d = std::max(std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y), kMinDistance);
            e -= k * k * std::log(d);
        }
        const double dx = pos[i].x - anchor.x, dy = pos[i].y - anchor.y;
        e += 0.5 * kGravity * (dx * dx + dy * dy);
    }
    for (const auto& [a, b] : edges) {
        const double d = std::hypot(pos[a].x - pos[b].x, pos[a].y - pos[b].y);
        e += d * d * d / (3.0 * k);
    }
    return e;
}

// Fixed-budget spring refinement with linear cooling. A step is only kept if
// it does not raise the potential; otherwise the step is halved (up to ten
// times) and the iteration is skipped if no shorter step helps.
void spring_refine(Positions& pos, const EdgeList& edges, int iterations, double t0, LayoutResult& result) {
    const std::size_t n = pos.size();
    const double k = kIdealLength;
    const Point anchor = centroid(pos);
    double energy = spring_energy(pos, edges, anchor);
    result.energy_trace.push_back(energy);
    std::vector<Point> disp(n);
    Positions trial(n);
    for (int it = 0; it < iterations; ++it) {
        const double temperature = t0 * (1.0 - static_cast<double>(it) / iterations);
        std::fill(disp.begin(), disp.end(), Point{});
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = pos[i].x - pos[j].x, dy = pos[i].y - pos[j].y;
                double d = std::hypot(dx, dy);
                if (d < kMinDistance) {
                    // Deterministic split direction for coincident nodes.
                    const double angle = static_cast<double>((i * 31 + j * 17) % 360) * std::numbers::pi / 180.0;
                    dx = std::cos(angle) * kMinDistance;
                    dy = std::sin(angle) * kMinDistance;
                    d = kMinDistance;
                }
                const double f = k * k / d;
                disp[i].x += dx / d * f;
                disp[i].y += dy / d * f;
                disp[j].x -= dx / d * f;
                disp[j].y -= dy / d * f;
            }
            disp[i].x -= kGravity * (pos[i].x - anchor.x);
            disp[i].y -= kGravity * (pos[i].y - anchor.y);
        }
        for (const auto& [a, b] : edges) {
            const double dx = pos[a].x - pos[b].x, dy = pos[a].y - pos[b].y;
            const double d = std::hypot(dx, dy);
            if (d < kMinDistance) continue;
            const double f = d * d / k;
            disp[a].x -= dx / d * f;
            disp[a].y -= dy / d * f;
            disp[b].x += dx / d * f;
            disp[b].y += dy / d * f;
        }
        double scale = 1.0;
        for (int attempt = 0; attempt < 10; ++attempt, scale *= 0.5) {
            const double cap = temperature * scale;
            for (std::size_t i = 0; i < n; ++i) {
                const double len = std::hypot(disp[i].x, disp[i].y);
                const double step = len > 0.0 ? std::min(len, cap) / len : 0.0;
                trial[i] = {pos[i].x + disp[i].x * step, pos[i].y + disp[i].y * step};
            }
            const double e = spring_energy(trial, edges, anchor);
            if (e <= energy) {
                pos.swap(trial);
                energy = e;
                break;
            }
        }
        ++result.iterations_used;
        if ((it + 1) % kCheckpointEvery == 0 && it + 1 != iterations) result.energy_trace.push_back(energy);
    }
    result.energy_trace.push_back(energy);
    result.energy = energy;
}

Positions spring_layout(const Graph& g, std::uint64_t seed, LayoutResult& result) {
    const auto n = static_cast<std::size_t>(g.node_count());
    Rng rng(seed);
    const double side = std::sqrt(static_cast<double>(n)) * kIdealLength;
    Positions pos = scatter(rng, n, side);
    spring_refine(pos, undirected_pairs(g), kSpringIterations, 0.1 * side, result);
    return pos;
}

std::vector<std::vector<int>> hop_distances(NodeId n, const EdgeList& edges) {
    std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n));
    for (const auto& [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<std::vector<int>> dist(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
    for (NodeId s = 0; s < n; ++s) {
        auto& row = dist[static_cast<std::size_t>(s)];
        row[static_cast<std::size_t>(s)] = 0;
        std::queue<NodeId> queue;
        queue.push(s);
        while (!queue.empty()) {
            const NodeId x = queue.front();
            queue.pop();
            for (NodeId y : adj[static_cast<std::size_t>(x)]) {
                if (row[static_cast<std::size_t>(y)] == -1) {
                    row[static_cast<std::size_t>(y)] = row[static_cast<std::size_t>(x)] + 1;
                    queue.push(y);
                }
            }
        }
    }
    return dist;
}

Positions stress_layout(const Graph& g, std::uint64_t seed, LayoutResult& result) {
    constexpr int kMaxSweeps = 300;
    constexpr double kTolerance = 1e-7;
    const auto n = static_cast<std::size_t>(g.node_count());
    auto dist = hop_distances(g.node_count(), undirected_pairs(g));
    int longest = 1;
    for (const auto& row : dist)
        for (int d : row) longest = std::max(longest, d);
    std::vector<std::vector<double>> target(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            target[i][j] = dist[i][j] < 0 ? static_cast<double>(longest + 1) : static_cast<double>(dist[i][j]);

    auto stress = [&](const Positions& pos) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y);
                const double diff = d - target[i][j];
                s += diff * diff / (target[i][j] * target[i][j]);
            }
        }
        return s;
    };

    Rng rng(seed);
    Positions pos = scatter(rng, n, std::sqrt(static_cast<double>(n)) * kIdealLength);
    double current = stress(pos);
    result.energy_trace.push_back(current);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        Positions next = pos;
        // Localized majorization: each node moves to the minimizer of its
        // majorizing quadratic with all other nodes fixed.
        for (std::size_t i = 0; i < n; ++i) {
            double sx = 0.0, sy = 0.0, sw = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double w = 1.0 / (target[i][j] * target[i][j]);
                const double dx = next[i].x - next[j].x, dy = next[i].y - next[j].y;
                const double d = std::hypot(dx, dy);
                sx += w * next[j].x;
                sy += w * next[j].y;
                if (d > kMinDistance) {
                    sx += w * target[i][j] * dx / d;
                    sy += w * target[i][j] * dy / d;
                }
                sw += w;
            }
            if (sw > 0.0) next[i] = {sx / sw, sy / sw};
        }
        const double s = stress(next);
        ++result.iterations_used;
        if (s > current) break;  // rounding noise at convergence
        const double gain = current - s;
        pos.swap(next);
        current = s;
        if ((sweep + 1) % 10 == 0) result.energy_trace.push_back(current);
        if (gain <= kTolerance * std::max(current, 1e-12)) break;
    }
    result.energy_trace.push_back(current);
    result.energy = current;
    return pos;
}

Positions multilevel_layout(const Graph& g, std::uint64_t seed, LayoutResult& result) {
    constexpr int kRefineIterations = 50;
    constexpr std::size_t kCoarsestSize = 6;
    Rng rng(seed);

    struct Level {
        NodeId n;
        EdgeList edges;
        std::vector<NodeId> parent;  // fine node -> coarse node of the next level
    };
    std::vector<Level> levels{{g.node_count(), undirected_pairs(g), {}}};
    while (levels.size() < 10 && static_cast<std::size_t>(levels.back().n) > kCoarsestSize) {
        Level& fine = levels.back();
        const auto n = static_cast<std::size_t>(fine.n);
        std::vector<std::vector<NodeId>> adj(n);
        for (const auto& [a, b] : fine.edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        std::vector<NodeId> order(n);
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(std::span<NodeId>(order));
        std::vector<NodeId> parent(n, -1);
        NodeId next_id = 0;
        for (NodeId u : order) {
            if (parent[static_cast<std::size_t>(u)] != -1) continue;
            NodeId mate = -1;
            for (NodeId v : adj[static_cast<std::size_t>(u)]) {
                if (parent[static_cast<std::size_t>(v)] != -1) continue;
                if (mate == -1 || adj[static_cast<std::size_t>(v)].size() < adj[static_cast<std::size_t>(mate)].size() ||
                    (adj[static_cast<std::size_t>(v)].size() == adj[static_cast<std::size_t>(mate)].size() && v < mate)) {
                    mate = v;
                }
            }
            parent[static_cast<std::size_t>(u)] = next_id;
            if (mate != -1) parent[static_cast<std::size_t>(mate)] = next_id;
            ++next_id;
        }
        if (static_cast<double>(next_id) > 0.85 * static_cast<double>(n)) break;
        std::set<NodePair> coarse;
        for (const auto& [a, b] : fine.edges) {
            const NodeId pa = parent[static_cast<std::size_t>(a)], pb = parent[static_cast<std::size_t>(b)];
            if (pa != pb) coarse.emplace(std::min(pa, pb), std::max(pa, pb));
        }
        fine.parent = std::move(parent);
        levels.push_back({next_id, EdgeList(coarse.begin(), coarse.end()), {}});
    }

    const auto coarsest_n = static_cast<std::size_t>(levels.back().n);
    const double coarse_side = std::sqrt(static_cast<double>(coarsest_n)) * kIdealLength;
    Positions pos = scatter(rng, coarsest_n, coarse_side);
    LayoutResult scratch;
    spring_refine(pos, levels.back().edges, kSpringIterations, 0.1 * coarse_side, levels.size() == 1 ? result : scratch);
    if (levels.size() == 1) return pos;

    for (std::size_t li = levels.size() - 1; li-- > 0;) {
        const Level& fine = levels[li];
        const double grow = std::sqrt(static_cast<double>(fine.n) / static_cast<double>(levels[li + 1].n));
        Positions fine_pos(static_cast<std::size_t>(fine.n));
        for (std::size_t v = 0; v < fine_pos.size(); ++v) {
            const Point& p = pos[static_cast<std::size_t>(fine.parent[v])];
            fine_pos[v] = {p.x * grow + rng.uniform(-0.1, 0.1), p.y * grow + rng.uniform(-0.1, 0.1)};
        }
        pos.swap(fine_pos);
        const double side = std::sqrt(static_cast<double>(fine.n)) * kIdealLength;
        if (li == 0) {
            spring_refine(pos, fine.edges, kRefineIterations, 0.05 * side, result);
        } else {
            LayoutResult level_result;
            spring_refine(pos, fine.edges, kRefineIterations, 0.05 * side, level_result);
        }
    }
    result.iterations_used += scratch.iterations_used;
    return pos;
}

std::optional<Positions> layered_layout(const Graph& g) {
    constexpr int kSweeps = 4;
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<std::vector<NodeId>> succ(n), pred(n);
    for (const Edge& e : g.edges()) {
        NodeId a = e.u, b = e.v;
        if (!g.directed() && a > b) std::swap(a, b);
        succ[static_cast<std::size_t>(a)].push_back(b);
        pred[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<std::size_t> indegree(n);
    for (std::size_t i = 0; i < n; ++i) indegree[i] = pred[i].size();
    std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
    for (std::size_t i = 0; i < n; ++i) {
        if (indegree[i] == 0) ready.push(static_cast<NodeId>(i));
    }
    std::vector<int> layer(n, 0);
    std::size_t visited = 0;
    while (!ready.empty()) {
        const NodeId u = ready.top();
        ready.pop();
        ++visited;
        for (NodeId v : succ[static_cast<std::size_t>(u)]) {
            layer[static_cast<std::size_t>(v)] = std::max(layer[static_cast<std::size_t>(v)], layer[static_cast<std::size_t>(u)] + 1);
            if (--indegree[static_cast<std::size_t>(v)] == 0) ready.push(v);
        }
    }
    if (visited != n) return std::nullopt;

    const int depth = n == 0 ? 0 : *std::max_element(layer.begin(), layer.end()) + 1;
    std::vector<std::vector<NodeId>> rows(static_cast<std::size_t>(depth));
    for (std::size_t i = 0; i < n; ++i) rows[static_cast<std::size_t>(layer[i])].push_back(static_cast<NodeId>(i));
    std::vector<double> x(n, 0.0);
    auto assign_x = [&](const std::vector<NodeId>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            x[static_cast<std::size_t>(row[i])] = static_cast<double>(i) - static_cast<double>(row.size() - 1) / 2.0;
        }
    };
    for (const auto& row : rows) assign_x(row);

    auto reorder = [&](std::vector<NodeId>& row, const std::vector<std::vector<NodeId>>& neighbors) {
        std::vector<std::pair<double, NodeId>> keyed;
        keyed.reserve(row.size());
        for (NodeId v : row) {
            const auto& nb = neighbors[static_cast<std::size_t>(v)];
            double key = x[static_cast<std::size_t>(v)];
            if (!nb.empty()) {
                key = 0.0;
                for (NodeId u : nb) key += x[static_cast<std::size_t>(u)];
                key /= static_cast<double>(nb.size());
            }
            keyed.emplace_back(key, v);
        }
        std::stable_sort(keyed.begin(), keyed.end());
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = keyed[i].second;
        assign_x(row);
    };
    for (int sweep = 0; sweep < kSweeps; ++sweep) {
        for (std::size_t l = 1; l < rows.size(); ++l) reorder(rows[l], pred);
        for (std::size_t l = rows.size() - 1; l-- > 0;) reorder(rows[l], succ);
    }

    Positions pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[i] = {x[i], static_cast<double>(layer[i])};
    return pos;
}

Positions radial_layout(const Graph& g) {
    const auto n = static_cast<std::size_t>(g.node_count());
    std::vector<int> depth(n, -1);
    std::vector<std::vector<NodeId>> shells;
    depth[0] = 0;
    shells.push_back({0});
    std::queue<NodeId> queue;
    queue.push(0);
    while (!queue.empty()) {
        const NodeId x = queue.front();
        queue.pop();
        for (NodeId y : g.undirected_neighbors(x)) {
            auto& d = depth[static_cast<std::size_t>(y)];
            if (d != -1) continue;
            d = depth[static_cast<std::size_t>(x)] + 1;
            if (static_cast<std::size_t>(d) >= shells.size()) shells.emplace_back();
            shells[static_cast<std::size_t>(d)].push_back(y);
            queue.push(y);
        }
    }
    std::vector<NodeId> unreached;
    for (std::size_t i = 0; i < n; ++i) {
        if (depth[i] == -1) unreached.push_back(static_cast<NodeId>(i));
    }
    if (!unreached.empty()) shells.push_back(std::move(unreached));

    Positions pos(n);
    for (std::size_t d = 1; d < shells.size(); ++d) {
        const auto& shell = shells[d];
        for (std::size_t i = 0; i < shell.size(); ++i) {
            const double angle = -std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(shell.size());
            pos[static_cast<std::size_t>(shell[i])] = {static_cast<double>(d) * std::cos(angle), static_cast<double>(d) * std::sin(angle)};
        }
    }
    return pos;
}

Positions circular_layout(const Graph& g, const Canvas& canvas) {
    const auto n = static_cast<std::size_t>(g.node_count());
    const Point center{canvas.width / 2.0, canvas.height / 2.0};
    const double radius = std::min(canvas.width, canvas.height) / 2.0 - canvas.margin;
    Positions pos(n, center);
    if (n < 2) return pos;
    for (std::size_t i = 0; i < n; ++i) {
        const double angle = -std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        pos[i] = {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
    }
    return pos;
}

// Uniform scale + translation of abstract coordinates into the canvas box,
// centered; degenerate extents collapse to the canvas center.
Positions fit_to_canvas(const Positions& raw, const Canvas& canvas) {
    const Point center{canvas.width / 2.0, canvas.height / 2.0};
    if (raw.empty()) return {};
    double min_x = raw[0].x, max_x = raw[0].x, min_y = raw[0].y, max_y = raw[0].y;
    for (const auto& p : raw) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double w = max_x - min_x, h = max_y - min_y;
    const double avail_w = canvas.width - 2.0 * canvas.margin, avail_h = canvas.height - 2.0 * canvas.margin;
    double scale = 0.0;
    if (w > 1e-12 && h > 1e-12) {
        scale = std::min(avail_w / w, avail_h / h);
    } else if (w > 1e-12) {
        scale = avail_w / w;
    } else if (h > 1e-12) {
        scale = avail_h / h;
    }
    const double mid_x = (min_x + max_x) / 2.0, mid_y = (min_y + max_y) / 2.0;
    Positions out(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[i] = {std::clamp(center.x + (raw[i].x - mid_x) * scale, canvas.margin, canvas.width - canvas.margin),
                  std::clamp(center.y + (raw[i].y - mid_y) * scale, canvas.margin, canvas.height - canvas.margin)};
    }
    return out;
}

}  // namespace

std::string_view layout_name(LayoutAlgorithm a) {
    switch (a) {
        case LayoutAlgorithm::Layered: return "layered";
        case LayoutAlgorithm::Spring: return "spring";
        case LayoutAlgorithm::Stress: return "stress";
        case LayoutAlgorithm::Multilevel: return "multilevel";
        case LayoutAlgorithm::Circular: return "circular";
        case LayoutAlgorithm::Radial: return "radial";
    }
    return "unknown";
}

std::optional<LayoutAlgorithm> parse_layout(std::string_view name) {
    for (auto a : kLayoutAlgorithms) {
        if (layout_name(a) == name) return a;
    }
    return std::nullopt;
}

LayoutResult layout(const Graph& g, LayoutAlgorithm algorithm, std::uint64_t seed, const Canvas& canvas) {
    if (g.node_count() < 1) throw ParameterError("layout: graph has no nodes");
    if (canvas.width <= 2.0 * canvas.margin || canvas.height <= 2.0 * canvas.margin) {
        throw ParameterError("layout: canvas smaller than its margins");
    }
    LayoutResult result;
    Positions raw;
    switch (algorithm) {
        case LayoutAlgorithm::Spring: raw = spring_layout(g, seed, result); break;
        case LayoutAlgorithm::Stress: raw = stress_layout(g, seed, result); break;
        case LayoutAlgorithm::Multilevel: raw = multilevel_layout(g, seed, result); break;
        case LayoutAlgorithm::Layered: {
            auto layered = layered_layout(g);
            if (layered) {
                raw = std::move(*layered);
            } else {
                result.warning = "layered layout needs an acyclic graph; fell back to spring";
                raw = spring_layout(g, seed, result);
            }
            break;
        }
        case LayoutAlgorithm::Radial: raw = radial_layout(g); break;
        case LayoutAlgorithm::Circular:
            result.positions = circular_layout(g, canvas);
            return result;
    }
    result.positions = fit_to_canvas(raw, canvas);
    return result;
}

}  // namespace gita
