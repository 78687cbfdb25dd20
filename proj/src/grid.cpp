#include "circuitarray/grid.hpp"

#include <stdexcept>

#include "json.hpp"

namespace circuitarray {

char side_letter(Side s) {
    switch (s) {
        case Side::Left: return 'L';
        case Side::Right: return 'R';
        case Side::Base: return 'B';
    }
    throw std::logic_error("bad side");
}

Side side_from_letter(char c) {
    switch (c) {
        case 'L': return Side::Left;
        case 'R': return Side::Right;
        case 'B': return Side::Base;
        default: throw std::invalid_argument("bad side letter");
    }
}

GridLabeling::GridLabeling(int n, int reductionCount, std::vector<std::string> variables)
    : n_(n), reductionCount_(reductionCount), variables_(std::move(variables)) {
    if (n < 1) throw std::invalid_argument("grid size must be at least 1");
}

const RationalFunction& GridLabeling::label(int row, int diagonal, Side side) const {
    auto it = labels_.find({row, diagonal, side});
    if (it == labels_.end()) throw std::out_of_range("edge not labeled");
    return it->second;
}

void GridLabeling::set_label(int row, int diagonal, Side side, RationalFunction value) {
    if (row < 1 || row > n_ || diagonal < 1 || diagonal > row)
        throw std::out_of_range("edge address outside grid");
    labels_[{row, diagonal, side}] = std::move(value);
}

TriangleLabels GridLabeling::triangle(int row, int diagonal) const {
    return {label(row, diagonal, Side::Left), label(row, diagonal, Side::Right),
            label(row, diagonal, Side::Base)};
}

bool GridLabeling::fully_labeled() const {
    return static_cast<int>(labels_.size()) == 3 * n_ * (n_ + 1) / 2;
}

bool GridLabeling::is_mirror_symmetric() const {
    for (int r = 1; r <= n_; ++r) {
        for (int d = 1; d <= r; ++d) {
            int m = r + 1 - d;
            if (label(r, d, Side::Left) != label(r, m, Side::Right)) return false;
            if (label(r, d, Side::Base) != label(r, m, Side::Base)) return false;
        }
    }
    return true;
}

GridLabeling make_all_one_grid(int n, std::vector<std::string> variables) {
    if (n < 1) throw std::invalid_argument("grid size must be at least 1");
    GridLabeling g(n, 0, variables);
    RationalFunction one = RationalFunction::constant(variables, 1);
    for (int r = 1; r <= n; ++r)
        for (int d = 1; d <= r; ++d)
            for (Side s : {Side::Left, Side::Right, Side::Base}) g.set_label(r, d, s, one);
    return g;
}

RationalFunction delta_transform(const RationalFunction& x, const RationalFunction& y,
                                 const RationalFunction& z) {
    RationalFunction sum = x + y + z;
    if (sum.is_zero()) throw std::domain_error("delta transform: x + y + z vanishes");
    return x * y / sum;
}

RationalFunction wye_transform(const RationalFunction& a, const RationalFunction& b,
                               const RationalFunction& c) {
    if (a.is_zero()) throw std::domain_error("wye transform: first argument vanishes");
    return (a * b + b * c + c * a) / a;
}

RationalFunction leg_top(const TriangleLabels& t) {
    return delta_transform(t.left, t.right, t.base);
}
RationalFunction leg_bottom_left(const TriangleLabels& t) {
    return delta_transform(t.base, t.left, t.right);
}
RationalFunction leg_bottom_right(const TriangleLabels& t) {
    return delta_transform(t.right, t.base, t.left);
}

RationalFunction perimeter_edge(const TriangleLabels& upper, const TriangleLabels& lower) {
    return leg_bottom_left(upper) + leg_top(lower);
}

RationalFunction reduced_edge(Side kind, const TriangleLabels& t1, const TriangleLabels& t2,
                              const TriangleLabels& t3) {
    switch (kind) {
        case Side::Left:
            return wye_transform(leg_bottom_right(t1), leg_bottom_left(t2), leg_top(t3));
        case Side::Right:
            return wye_transform(leg_bottom_left(t2), leg_bottom_right(t1), leg_top(t3));
        case Side::Base:
            return wye_transform(leg_top(t1), leg_bottom_right(t2), leg_bottom_left(t3));
    }
    throw std::logic_error("bad edge kind");
}

namespace {

GridLabeling reduce_impl(const GridLabeling& g) {
    int n = g.size();
    if (n < 2) throw std::invalid_argument("cannot reduce a grid of size < 2");
    if (!g.fully_labeled()) throw std::invalid_argument("grid is not fully labeled");
    if (!g.is_mirror_symmetric()) throw std::invalid_argument("symmetric grids only");

    GridLabeling child(n - 1, g.reduction_count() + 1, g.variables());
    // Left half (mirror pairs resolved afterwards).
    for (int r = 1; r <= n - 1; ++r) {
        int half = (r + 1) / 2;
        for (int d = 1; d <= half; ++d) {
            if (d == 1) {
                child.set_label(r, 1, Side::Left,
                                perimeter_edge(g.triangle(r, 1), g.triangle(r + 1, 1)));
            } else {
                child.set_label(r, d, Side::Left,
                                reduced_edge(Side::Left, g.triangle(r, d - 1), g.triangle(r, d),
                                             g.triangle(r + 1, d)));
            }
            if (r == n - 1) {
                // Bottom boundary: series of the two legs at a parent floor vertex.
                child.set_label(r, d, Side::Base,
                                leg_bottom_right(g.triangle(n, d)) +
                                    leg_bottom_left(g.triangle(n, d + 1)));
            } else {
                child.set_label(r, d, Side::Base,
                                reduced_edge(Side::Base, g.triangle(r + 2, d + 1),
                                             g.triangle(r + 1, d), g.triangle(r + 1, d + 1)));
            }
            if (d + 1 <= r) {
                child.set_label(r, d, Side::Right,
                                reduced_edge(Side::Right, g.triangle(r, d), g.triangle(r, d + 1),
                                             g.triangle(r + 1, d + 1)));
            }
        }
    }
    // Right half by reflection.
    const auto& done = child.labels();
    for (int r = 1; r <= n - 1; ++r) {
        for (int d = 1; d <= r; ++d) {
            int m = r + 1 - d;
            if (!done.contains({r, d, Side::Left}))
                child.set_label(r, d, Side::Left, child.label(r, m, Side::Right));
            if (!done.contains({r, d, Side::Right}))
                child.set_label(r, d, Side::Right, child.label(r, m, Side::Left));
            if (!done.contains({r, d, Side::Base}))
                child.set_label(r, d, Side::Base, child.label(r, m, Side::Base));
        }
    }
    return child;
}

}  // namespace

GridLabeling reduce_grid(const GridLabeling& g) { return reduce_impl(g); }

ReductionWithTails reduce_with_tails(const GridLabeling& g) {
    int n = g.size();
    ReductionWithTails out{reduce_impl(g),
                           {leg_top(g.triangle(1, 1)), leg_bottom_left(g.triangle(n, 1)),
                            leg_bottom_right(g.triangle(n, n))}};
    return out;
}

std::string grid_to_json(const GridLabeling& g) {
    nlohmann::json j;
    j["n"] = g.size();
    j["m"] = g.reduction_count();
    j["variables"] = g.variables();
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [addr, value] : g.labels()) {
        auto c = value.canonical();
        edges.push_back({{"r", addr.row},
                         {"d", addr.diagonal},
                         {"side", std::string(1, side_letter(addr.side))},
                         {"value",
                          {{"num", c.numPrimitive.to_string()},
                           {"den", c.denPrimitive.to_string()},
                           {"content", to_string(c.content)}}}});
    }
    j["edges"] = std::move(edges);
    return j.dump(2);
}

GridLabeling grid_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<std::string> vars = j.at("variables").get<std::vector<std::string>>();
    GridLabeling g(j.at("n").get<int>(), j.at("m").get<int>(), vars);
    for (const auto& e : j.at("edges")) {
        const auto& v = e.at("value");
        Polynomial num = parse_polynomial(v.at("num").get<std::string>(), vars);
        Polynomial den = parse_polynomial(v.at("den").get<std::string>(), vars);
        Rational content = parse_rational(v.at("content").get<std::string>());
        g.set_label(e.at("r").get<int>(), e.at("d").get<int>(),
                    side_from_letter(e.at("side").get<std::string>().at(0)),
                    RationalFunction(num * content, den));
    }
    if (!g.fully_labeled()) throw std::invalid_argument("grid JSON is missing edges");
    return g;
}

}  // namespace circuitarray
