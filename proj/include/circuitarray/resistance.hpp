#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "circuitarray/grid.hpp"

namespace circuitarray {

// Lattice point of the plane embedding.
using Vertex = std::pair<long, long>;

struct WeightedEdge {
    Vertex u, v;
    Rational resistance;
};

// Connected resistor network on lattice points. No self-loops, resistances
// positive.
struct WeightedGraph {
    std::vector<Vertex> vertices;
    std::vector<WeightedEdge> edges;
};

// Plane embedding of a grid labeling: triangle (r, d) of an n-grid has
// corners (y + 2d - 2, y), (y + 2d - 1, y + 1), (y + 2d, y) with y = n - r.
// Every edge label is evaluated at the assignment and must come out positive.
WeightedGraph grid_to_graph(const GridLabeling& g,
                            const std::map<std::string, Rational>& assignment = {});

// Corner vertices of the n-grid embedding: bottom-left, bottom-right, top.
Vertex grid_corner_bottom_left(int n);
Vertex grid_corner_bottom_right(int n);
Vertex grid_corner_top(int n);

// Exact two-terminal effective resistance, computed as a ratio of principal
// minors of the conductance Laplacian via fraction-free (Bareiss) elimination
// over big integers. Throws when the graph is disconnected.
Rational effective_resistance(const WeightedGraph& g, const Vertex& u, const Vertex& v);

std::string graph_to_json(const WeightedGraph& g);

}  // namespace circuitarray
