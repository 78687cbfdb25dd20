#include <algorithm>
#include <functional>
#include <numeric>

#include "circuitarray/resistance.hpp"
#include "doctest.h"

using namespace circuitarray;

namespace {

// Brute-force oracle: weighted spanning-tree / two-forest sums by explicit
// subset enumeration. Only usable on small graphs; kept independent of the
// Laplacian path on purpose.
Rational spanning_tree_resistance(const WeightedGraph& g, const Vertex& u, const Vertex& v) {
    std::map<Vertex, std::size_t> idx;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) idx[g.vertices[i]] = i;
    std::size_t n = g.vertices.size(), m = g.edges.size();
    auto component_count = [&](unsigned long mask, std::vector<std::size_t>& parent) {
        parent.resize(n);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (std::size_t e = 0; e < m; ++e) {
            if (!(mask >> e & 1)) continue;
            auto a = find(idx[g.edges[e].u]), b = find(idx[g.edges[e].v]);
            if (a != b) parent[a] = b;
        }
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (find(i) == i) ++count;
        return count;
    };
    auto weight = [&](unsigned long mask) {
        Rational w = 1;
        for (std::size_t e = 0; e < m; ++e)
            if (mask >> e & 1) w /= g.edges[e].resistance;
        return w;
    };
    Rational trees = 0, forests = 0;
    std::vector<std::size_t> parent;
    std::function<std::size_t(std::size_t)> findIn = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        std::size_t chosen = static_cast<std::size_t>(__builtin_popcountl(mask));
        if (chosen == n - 1 && component_count(mask, parent) == 1) trees += weight(mask);
        if (chosen == n - 2 && component_count(mask, parent) == 2 &&
            findIn(idx[u]) != findIn(idx[v]))
            forests += weight(mask);
    }
    return forests / trees;
}

}  // namespace

TEST_CASE("grid_to_graph shapes") {
    WeightedGraph g3 = grid_to_graph(make_all_one_grid(3));
    CHECK(g3.vertices.size() == 10);
    CHECK(g3.edges.size() == 18);
    for (const auto& e : g3.edges) CHECK(e.resistance == Rational(1));

    WeightedGraph g1 = grid_to_graph(make_all_one_grid(1));
    CHECK(g1.vertices.size() == 3);
    CHECK(g1.edges.size() == 3);

    std::vector<std::string> vx{"X"};
    RationalFunction x = RationalFunction::from_polynomial(Polynomial::variable(vx, "X"));
    GridLabeling sym = make_all_one_grid(2, vx);
    sym.set_label(1, 1, Side::Base, x);
    WeightedGraph g2 = grid_to_graph(sym, {{"X", Rational(9)}});
    bool found = false;
    for (const auto& e : g2.edges)
        if (e.resistance == Rational(9)) found = true;
    CHECK(found);
    CHECK_THROWS_AS(grid_to_graph(sym, {{"X", Rational(-1)}}), std::domain_error);
}

TEST_CASE("effective resistance basics") {
    WeightedGraph tri = grid_to_graph(make_all_one_grid(1));
    CHECK(effective_resistance(tri, {0, 0}, {2, 0}) == Rational(2, 3));

    WeightedGraph path;
    path.vertices = {{0, 0}, {1, 0}, {2, 0}};
    path.edges = {{{0, 0}, {1, 0}, Rational(1)}, {{1, 0}, {2, 0}, Rational(1)}};
    CHECK(effective_resistance(path, {0, 0}, {2, 0}) == Rational(2));

    WeightedGraph disconnected;
    disconnected.vertices = {{0, 0}, {1, 0}, {2, 0}};
    disconnected.edges = {{{0, 0}, {1, 0}, Rational(1)}};
    CHECK_THROWS_AS(effective_resistance(disconnected, {0, 0}, {2, 0}), std::domain_error);
}

TEST_CASE("all-one 2-grid bottom corners, frozen from the subset-enumeration oracle") {
    WeightedGraph g = grid_to_graph(make_all_one_grid(2));
    Rational oracle = spanning_tree_resistance(g, {0, 0}, {4, 0});
    CHECK(oracle == Rational(10, 9));  // regression constant
    CHECK(effective_resistance(g, {0, 0}, {4, 0}) == oracle);
}

TEST_CASE("laplacian path agrees with subset enumeration on small weighted graphs") {
    GridLabeling g = make_all_one_grid(2);
    g.set_label(1, 1, Side::Base, RationalFunction::constant({}, Rational(2, 5)));
    g.set_label(2, 1, Side::Right, RationalFunction::constant({}, Rational(7, 2)));
    g.set_label(2, 2, Side::Left, RationalFunction::constant({}, Rational(7, 2)));
    WeightedGraph wg = grid_to_graph(g);
    for (std::size_t a = 0; a < wg.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < wg.vertices.size(); ++b)
            CHECK(effective_resistance(wg, wg.vertices[a], wg.vertices[b]) ==
                  spanning_tree_resistance(wg, wg.vertices[a], wg.vertices[b]));
}

TEST_CASE("resistance distance is a symmetric metric; scaling is linear") {
    WeightedGraph g = grid_to_graph(make_all_one_grid(2));
    auto r = [&](Vertex a, Vertex b) { return effective_resistance(g, a, b); };
    for (std::size_t a = 0; a < g.vertices.size(); ++a) {
        for (std::size_t b = a + 1; b < g.vertices.size(); ++b) {
            CHECK(r(g.vertices[a], g.vertices[b]) == r(g.vertices[b], g.vertices[a]));
            for (std::size_t c = 0; c < g.vertices.size(); ++c) {
                if (c == a || c == b) continue;
                CHECK(r(g.vertices[a], g.vertices[b]) <=
                      r(g.vertices[a], g.vertices[c]) + r(g.vertices[c], g.vertices[b]));
            }
        }
    }
    WeightedGraph scaled = g;
    for (auto& e : scaled.edges) e.resistance *= Rational(5, 3);
    CHECK(effective_resistance(scaled, {0, 0}, {4, 0}) ==
          Rational(5, 3) * effective_resistance(g, {0, 0}, {4, 0}));
}

TEST_CASE("reduce_with_tails: tails of all-one grids") {
    for (int n : {2, 3}) {
        ReductionWithTails rt = reduce_with_tails(make_all_one_grid(n));
        for (const auto& t : rt.tails) CHECK(t == RationalFunction::constant({}, Rational(1, 3)));
        CHECK(rt.child.labels() == reduce_grid(make_all_one_grid(n)).labels());
    }
    // after one reduction the corner triangles carry boundary values 2/3
    GridLabeling once = reduce_grid(make_all_one_grid(4));
    ReductionWithTails rt = reduce_with_tails(once);
    RationalFunction expectedTop =
        delta_transform(once.label(1, 1, Side::Left), once.label(1, 1, Side::Right),
                        once.label(1, 1, Side::Base));
    CHECK(rt.tails[0] == expectedTop);
}

TEST_CASE("corner-pair resistance: parent equals child plus tails") {
    for (int n : {2, 3, 4}) {
        GridLabeling parent = make_all_one_grid(n);
        WeightedGraph pg = grid_to_graph(parent);
        ReductionWithTails rt = reduce_with_tails(parent);
        WeightedGraph cg = grid_to_graph(rt.child);
        Vertex pTop = grid_corner_top(n), pBL = grid_corner_bottom_left(n),
               pBR = grid_corner_bottom_right(n);
        Vertex cTop = grid_corner_top(n - 1), cBL = grid_corner_bottom_left(n - 1),
               cBR = grid_corner_bottom_right(n - 1);
        Rational tTop = rt.tails[0].constant_value(), tBL = rt.tails[1].constant_value(),
                 tBR = rt.tails[2].constant_value();
        CHECK(effective_resistance(pg, pTop, pBL) ==
              effective_resistance(cg, cTop, cBL) + tTop + tBL);
        CHECK(effective_resistance(pg, pTop, pBR) ==
              effective_resistance(cg, cTop, cBR) + tTop + tBR);
        CHECK(effective_resistance(pg, pBL, pBR) ==
              effective_resistance(cg, cBL, cBR) + tBL + tBR);
    }
}

TEST_CASE("graph JSON emitter") {
    WeightedGraph g = grid_to_graph(make_all_one_grid(1));
    std::string j = graph_to_json(g);
    CHECK(j.find("\"vertices\"") != std::string::npos);
    CHECK(j.find("\"edges\"") != std::string::npos);
}
