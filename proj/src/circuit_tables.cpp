#include "circuitarray/circuit_tables.hpp"

#include <stdexcept>

#include "circuitarray/grid.hpp"

namespace circuitarray {

std::string variant_name(ArrayVariant v) {
    switch (v) {
        case ArrayVariant::Numeric: return "numeric";
        case ArrayVariant::Univariate: return "univariate";
        case ArrayVariant::Multivariate: return "multivariate";
    }
    throw std::logic_error("bad variant");
}

int row_start_column(int row) {
    if (row < 0) throw std::invalid_argument("negative row");
    return row % 2 == 0 ? row / 2 + 1 : (row + 1) / 2 + 1;
}

CircuitArrayTable::CircuitArrayTable(ArrayVariant variant, int maxColumn,
                                     std::vector<std::string> variables)
    : variant_(variant), maxColumn_(maxColumn), variables_(std::move(variables)) {
    if (maxColumn < 1) throw std::invalid_argument("maxColumn must be at least 1");
}

bool CircuitArrayTable::has(int i, int j) const { return entries_.contains({i, j}); }

const RationalFunction& CircuitArrayTable::at(int i, int j) const {
    auto it = entries_.find({i, j});
    if (it == entries_.end()) throw std::out_of_range("circuit array entry not computed");
    return it->second;
}

void CircuitArrayTable::set(int i, int j, RationalFunction value) {
    if (i < 0 || j < 1 || i > 2 * (j - 1) || j > maxColumn_)
        throw std::out_of_range("entry outside the circuit array domain");
    entries_[{i, j}] = std::move(value);
}

int CircuitArrayTable::max_row() const {
    int m = -1;
    for (const auto& [key, value] : entries_) m = std::max(m, key.first);
    return m;
}

namespace {

// Shared recursion over any seed. Negative rows are the constant boundary 1.
CircuitArrayTable build_with_seeds(
    ArrayVariant variant, int maxJ, int rowCap, std::vector<std::string> variables,
    const std::function<std::optional<RationalFunction>(int /*row*/, int /*col*/)>& seed) {
    CircuitArrayTable table(variant, maxJ, variables);
    RationalFunction one = RationalFunction::constant(variables, 1);
    auto get = [&](int i, int j) -> const RationalFunction& {
        if (-3 <= i && i <= -1) return one;
        return table.at(i, j);
    };
    for (int j = 1; j <= maxJ; ++j) {
        int top = 2 * (j - 1);
        if (rowCap >= 0) top = std::min(top, rowCap);
        for (int r = 0; r <= top; ++r) {
            if (auto s = seed(r, j)) {
                table.set(r, j, std::move(*s));
                continue;
            }
            if (r % 2 == 0) {
                int c = r / 2 + 1;
                if (j == c) {
                    TriangleLabels t{get(r - 2, j - 1), get(r - 3, j - 1), get(r - 3, j - 1)};
                    table.set(r, j, perimeter_edge(t, t));
                } else {
                    TriangleLabels t1{get(r, j - 1), get(r - 1, j - 1), get(r - 1, j - 1)};
                    TriangleLabels t2{get(r - 2, j - 1), get(r - 3, j - 1), get(r - 3, j - 1)};
                    table.set(r, j, reduced_edge(Side::Left, t1, t2, t2));
                }
            } else {
                TriangleLabels t1{get(r - 1, j - 1), get(r - 2, j - 1), get(r - 2, j - 1)};
                TriangleLabels t2{get(r - 3, j - 1), get(r - 4, j - 1), get(r - 4, j - 1)};
                table.set(r, j, reduced_edge(Side::Right, t1, t2, t2));
            }
        }
    }
    return table;
}

}  // namespace

CircuitArrayTable build_numeric_array(int maxJ, int rowCap) {
    return build_with_seeds(ArrayVariant::Numeric, maxJ, rowCap, {},
                            [](int r, int j) -> std::optional<RationalFunction> {
                                if (r == 0 && j == 1)
                                    return RationalFunction::constant({}, Rational(2, 3));
                                return std::nullopt;
                            });
}

CircuitArrayTable build_numeric_array_via_grid(int maxJ, int rowCap) {
    CircuitArrayTable table(ArrayVariant::Numeric, maxJ, {});
    GridLabeling g = make_all_one_grid(4 * maxJ - 2);
    for (int j = 1; j <= maxJ; ++j) {
        g = reduce_grid(g);
        int top = 2 * (j - 1);
        if (rowCap >= 0) top = std::min(top, rowCap);
        for (int i = 0; i <= top; ++i) {
            int d = j - (i + 1) / 2;
            table.set(i, j, g.label(2 * j - 1, d, i % 2 == 0 ? Side::Left : Side::Right));
        }
    }
    return table;
}

CircuitArrayTable build_cx_array(int maxJ, int rowCap) {
    std::vector<std::string> vars{"X"};
    Polynomial x = Polynomial::variable(vars, "X");
    Polynomial three = Polynomial::constant(vars, 3);
    RationalFunction seed(x - three, x);
    return build_with_seeds(ArrayVariant::Univariate, maxJ, rowCap, vars,
                            [seed](int r, int j) -> std::optional<RationalFunction> {
                                if (r == 0 && j == 1) return seed;
                                return std::nullopt;
                            });
}

CircuitArrayTable build_cm_array(int maxRow, int maxJ) {
    if (maxRow > 3) throw std::invalid_argument("unsupported, see docs: maxRow is capped at 3");
    if (maxRow < 0) throw std::invalid_argument("maxRow must be nonnegative");
    std::vector<std::string> vars{"X1", "X2"};
    RationalFunction x1 = RationalFunction::from_polynomial(Polynomial::variable(vars, "X1"));
    RationalFunction x2 = RationalFunction::from_polynomial(Polynomial::variable(vars, "X2"));
    return build_with_seeds(ArrayVariant::Multivariate, maxJ, maxRow, vars,
                            [x1, x2](int r, int j) -> std::optional<RationalFunction> {
                                if (r == 0 && j == 1) return x1;
                                if (r == 2 && j == 2) return x2;
                                return std::nullopt;
                            });
}

// --- closed forms -----------------------------------------------------------

std::string family_name(ClosedFormFamily f) {
    switch (f) {
        case ClosedFormFamily::CX0: return "CX0";
        case ClosedFormFamily::CX1: return "CX1";
        case ClosedFormFamily::CX2: return "CX2";
        case ClosedFormFamily::CM0: return "CM0";
        case ClosedFormFamily::CM1: return "CM1";
        case ClosedFormFamily::CM2: return "CM2";
    }
    throw std::logic_error("bad family");
}

std::optional<ClosedFormFamily> family_from_name(const std::string& name) {
    for (ClosedFormFamily f :
         {ClosedFormFamily::CX0, ClosedFormFamily::CX1, ClosedFormFamily::CX2,
          ClosedFormFamily::CM0, ClosedFormFamily::CM1, ClosedFormFamily::CM2})
        if (family_name(f) == name) return f;
    return std::nullopt;
}

int family_row(ClosedFormFamily f) {
    switch (f) {
        case ClosedFormFamily::CX0:
        case ClosedFormFamily::CM0: return 0;
        case ClosedFormFamily::CX1:
        case ClosedFormFamily::CM1: return 1;
        case ClosedFormFamily::CX2:
        case ClosedFormFamily::CM2: return 2;
    }
    throw std::logic_error("bad family");
}

int family_min_index(ClosedFormFamily f) {
    switch (f) {
        case ClosedFormFamily::CX0:
        case ClosedFormFamily::CM0: return 1;
        default: return 2;
    }
}

ArrayVariant family_variant(ClosedFormFamily f) {
    switch (f) {
        case ClosedFormFamily::CX0:
        case ClosedFormFamily::CX1:
        case ClosedFormFamily::CX2: return ArrayVariant::Univariate;
        default: return ArrayVariant::Multivariate;
    }
}

namespace {

Rational nine_pow(int e) { return rational_pow(Rational(9), e); }

RationalFunction closed_form_cx(ClosedFormFamily f, int s) {
    std::vector<std::string> vars{"X"};
    Polynomial x = Polynomial::variable(vars, "X");
    auto c = [&](const Rational& v) { return Polynomial::constant(vars, v); };
    switch (f) {
        case ClosedFormFamily::CX0:
            // (3*9^(s-2) X - 1) / (3*9^(s-2) X)
            return RationalFunction(x * (3 * nine_pow(s - 2)) - c(1), x * (3 * nine_pow(s - 2)));
        case ClosedFormFamily::CX1:
            // Same numerator, tabulated denominator 3*(9^(s-2) X - 1).
            return RationalFunction(x * (3 * nine_pow(s - 2)) - c(1),
                                    (x * nine_pow(s - 2) - c(1)) * Rational(3));
        case ClosedFormFamily::CX2: {
            Rational c20 = 27 * nine_pow(s - 3) - 1;
            Rational c21 = 24 * (2 * s - 3) * nine_pow(s - 3);
            Rational c22 = 81 * rational_pow(Rational(81), s - 3) - 3 * nine_pow(s - 3);
            Polynomial num = c(c20) - x * c21 + x * x * c22;
            Polynomial den = pow(x * nine_pow(s - 2) - c(1), 2);
            return {num, den};
        }
        default: throw std::logic_error("not a one-variable family");
    }
}

RationalFunction closed_form_cm(ClosedFormFamily f, int s) {
    std::vector<std::string> vars{"X1", "X2"};
    Polynomial x1 = Polynomial::variable(vars, "X1");
    Polynomial x2 = Polynomial::variable(vars, "X2");
    auto c = [&](const Rational& v) { return Polynomial::constant(vars, v); };
    switch (f) {
        case ClosedFormFamily::CM0:
            return RationalFunction(x1 + c(nine_pow(s - 1) - 1), c(nine_pow(s - 1)));
        case ClosedFormFamily::CM1:
            return RationalFunction(x1 + c(nine_pow(s - 1) - 1),
                                    (x1 + c(3 * nine_pow(s - 2) - 1)) * Rational(3));
        case ClosedFormFamily::CM2: {
            Rational c21 = nine_pow(s - 2);
            Rational c20 = nine_pow(s - 2) - 1;
            Rational c11 = 4 * nine_pow(s - 2);
            Rational c10 = 2 + (16 * (s - 2) - 2) * nine_pow(s - 2);
            Rational c01 = 4 * nine_pow(s - 2);
            Rational c00 =
                -1 + 9 * rational_pow(Rational(81), s - 2) - (8 + 16 * (s - 2)) * nine_pow(s - 2);
            Polynomial num = x1 * x1 * x2 * c21 + x1 * x1 * c20 + x1 * x2 * c11 + x1 * c10 +
                             x2 * c01 + c(c00);
            Polynomial den = pow(x1 + c(3 * nine_pow(s - 2) - 1), 2);
            return {num, den};
        }
        default: throw std::logic_error("not a multivariable family");
    }
}

}  // namespace

RationalFunction closed_form_row(ClosedFormFamily f, int s) {
    if (s < family_min_index(f))
        throw std::domain_error("closed form index below the family's first valid index");
    return family_variant(f) == ArrayVariant::Univariate ? closed_form_cx(f, s)
                                                         : closed_form_cm(f, s);
}

RationalFunction closed_form_cx1_reference_variant(int s) {
    if (s < 2) throw std::domain_error("closed form index below the family's first valid index");
    return closed_form_cx(ClosedFormFamily::CX0, s);
}

ClosedFormVerdict verify_closed_form(ClosedFormFamily f, const CircuitArrayTable& table,
                                     int sFirst, int sLast) {
    if (family_variant(f) != table.variant())
        throw std::invalid_argument("closed-form family does not match table variant");
    ClosedFormVerdict v{f, sFirst, sLast, {}};
    int row = family_row(f);
    for (int s = sFirst; s <= sLast; ++s) {
        if (!(closed_form_row(f, s) == table.at(row, s))) v.mismatches.push_back(s);
    }
    return v;
}

std::map<std::string, Rational> recovery_assignment(ArrayVariant variant) {
    switch (variant) {
        case ArrayVariant::Numeric: return {};
        case ArrayVariant::Univariate: return {{"X", Rational(9)}};
        case ArrayVariant::Multivariate:
            return {{"X1", Rational(2, 3)}, {"X2", Rational(1, 2)}};
    }
    throw std::logic_error("bad variant");
}

}  // namespace circuitarray
