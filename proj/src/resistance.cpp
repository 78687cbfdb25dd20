#include "circuitarray/resistance.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace circuitarray {

WeightedGraph grid_to_graph(const GridLabeling& g,
                            const std::map<std::string, Rational>& assignment) {
    if (!g.fully_labeled()) throw std::invalid_argument("grid is not fully labeled");
    int n = g.size();
    WeightedGraph out;
    std::set<Vertex> verts;
    for (const auto& [addr, value] : g.labels()) {
        long y = n - addr.row;
        Vertex p{y + 2 * addr.diagonal - 2, y};
        Vertex q{y + 2 * addr.diagonal - 1, y + 1};
        Vertex s{y + 2 * addr.diagonal, y};
        Rational r = substitute(value, assignment);
        if (r <= 0) throw std::domain_error("nonpositive resistance after substitution");
        switch (addr.side) {
            case Side::Left: out.edges.push_back({p, q, r}); break;
            case Side::Right: out.edges.push_back({q, s, r}); break;
            case Side::Base: out.edges.push_back({p, s, r}); break;
        }
        verts.insert(p);
        verts.insert(q);
        verts.insert(s);
    }
    out.vertices.assign(verts.begin(), verts.end());
    return out;
}

Vertex grid_corner_bottom_left(int) { return {0, 0}; }
Vertex grid_corner_bottom_right(int n) { return {2L * n, 0}; }
Vertex grid_corner_top(int n) { return {n, n}; }

namespace {

// Determinant of an integer matrix by Bareiss elimination; exact divisions.
Integer bareiss_determinant(std::vector<std::vector<Integer>> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swapRow = k + 1;
            while (swapRow < n && m[swapRow][k] == 0) ++swapRow;
            if (swapRow == n) return 0;
            std::swap(m[k], m[swapRow]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

Rational effective_resistance(const WeightedGraph& g, const Vertex& u, const Vertex& v) {
    if (u == v) throw std::invalid_argument("effective resistance needs distinct vertices");
    std::map<Vertex, std::size_t> index;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) index[g.vertices[i]] = i;
    if (!index.contains(u) || !index.contains(v))
        throw std::invalid_argument("vertex not in graph");
    std::size_t n = g.vertices.size();

    // Scale conductances to integers: L' = D * L with D the common denominator.
    Integer scale = 1;
    for (const auto& e : g.edges) {
        if (e.resistance <= 0) throw std::domain_error("nonpositive resistance");
        scale = lcm_integer(scale, numerator_of(e.resistance));
    }
    std::vector<std::vector<Integer>> lap(n, std::vector<Integer>(n, 0));
    for (const auto& e : g.edges) {
        Rational c = scale / e.resistance;
        if (denominator_of(c) != 1) throw std::logic_error("conductance scaling failed");
        Integer ci = numerator_of(c);
        std::size_t a = index[e.u], b = index[e.v];
        if (a == b) throw std::invalid_argument("self-loop in graph");
        lap[a][a] += ci;
        lap[b][b] += ci;
        lap[a][b] -= ci;
        lap[b][a] -= ci;
    }

    auto minor = [&](const std::set<std::size_t>& drop) {
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < n; ++i)
            if (!drop.contains(i)) keep.push_back(i);
        std::vector<std::vector<Integer>> m(keep.size(), std::vector<Integer>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i)
            for (std::size_t j = 0; j < keep.size(); ++j) m[i][j] = lap[keep[i]][keep[j]];
        return bareiss_determinant(std::move(m));
    };

    Integer treeSum = minor({index[u]});
    if (treeSum == 0) throw std::domain_error("graph is disconnected");
    Integer forestSum = minor({index[u], index[v]});
    // L' = D * L scales the minor ratio by 1/D.
    return Rational(scale) * Rational(forestSum, treeSum);
}

std::string graph_to_json(const WeightedGraph& g) {
    nlohmann::json j;
    nlohmann::json verts = nlohmann::json::array();
    for (const auto& v : g.vertices) verts.push_back({v.first, v.second});
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"u", {e.u.first, e.u.second}},
                         {"v", {e.v.first, e.v.second}},
                         {"r", to_string(e.resistance)}});
    j["vertices"] = std::move(verts);
    j["edges"] = std::move(edges);
    return j.dump(2);
}

}  // namespace circuitarray
