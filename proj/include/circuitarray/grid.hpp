#pragma once

#include <array>
#include <map>
#include <string>

#include "circuitarray/rational_function.hpp"

namespace circuitarray {

enum class Side { Left, Right, Base };

char side_letter(Side s);
Side side_from_letter(char c);

// Address of one grid edge: the upright triangle that owns it plus the side.
// Every geometric edge of an n-grid belongs to exactly one upright triangle,
// so this addressing is unique. Rows count from the apex (1..n), diagonals
// left to right (1..row).
struct EdgeAddress {
    int row = 0;
    int diagonal = 0;
    Side side = Side::Left;
    auto operator<=>(const EdgeAddress&) const = default;
};

// Labels of one upright triangle.
struct TriangleLabels {
    RationalFunction left, right, base;
};

// Edge-resistance assignment of an n-grid after m reductions.
class GridLabeling {
public:
    GridLabeling(int n, int reductionCount, std::vector<std::string> variables);

    int size() const { return n_; }
    int reduction_count() const { return reductionCount_; }
    const std::vector<std::string>& variables() const { return variables_; }

    const RationalFunction& label(int row, int diagonal, Side side) const;
    void set_label(int row, int diagonal, Side side, RationalFunction value);
    TriangleLabels triangle(int row, int diagonal) const;
    const std::map<EdgeAddress, RationalFunction>& labels() const { return labels_; }

    bool fully_labeled() const;
    bool is_mirror_symmetric() const;

private:
    int n_;
    int reductionCount_;
    std::vector<std::string> variables_;
    std::map<EdgeAddress, RationalFunction> labels_;
};

// All edges labeled with the constant 1; reductionCount 0.
GridLabeling make_all_one_grid(int n, std::vector<std::string> variables = {});

// The two circuit transforms. delta(x,y,z) = xy/(x+y+z) is the star edge at
// the corner between triangle edges x and y; wye(a,b,c) = (ab+bc+ca)/a
// rebuilds the triangle edge opposite star leg a.
RationalFunction delta_transform(const RationalFunction& x, const RationalFunction& y,
                                 const RationalFunction& z);
RationalFunction wye_transform(const RationalFunction& a, const RationalFunction& b,
                               const RationalFunction& c);

// Star legs of a triangle, named by the corner they attach to.
RationalFunction leg_top(const TriangleLabels& t);
RationalFunction leg_bottom_left(const TriangleLabels& t);
RationalFunction leg_bottom_right(const TriangleLabels& t);

// Boundary edge of a once-reduced grid: series sum of the two legs meeting
// at a boundary vertex of the parent.
RationalFunction perimeter_edge(const TriangleLabels& upper, const TriangleLabels& lower);

// Interior edge of a once-reduced grid, one wye of three deltas per kind.
//   Left:  t1 = left neighbour, t2 = self,            t3 = below
//   Right: t1 = self,           t2 = right neighbour, t3 = below-right
//   Base:  t1 = two-below-right,t2 = below,           t3 = below-right
RationalFunction reduced_edge(Side kind, const TriangleLabels& t1, const TriangleLabels& t2,
                              const TriangleLabels& t3);

// One row reduction of a mirror-symmetric grid: computes the left half by the
// local edge functions and fills the right half by reflection. Corner tails
// are discarded. Requires n >= 2.
GridLabeling reduce_grid(const GridLabeling& g);

// Same reduction, also returning the three discarded corner tails
// (top, bottom-left, bottom-right).
struct ReductionWithTails {
    GridLabeling child;
    std::array<RationalFunction, 3> tails;
};
ReductionWithTails reduce_with_tails(const GridLabeling& g);

// JSON round trip for grid labelings.
std::string grid_to_json(const GridLabeling& g);
GridLabeling grid_from_json(const std::string& text);

}  // namespace circuitarray
