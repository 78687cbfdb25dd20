#include "circuitarray/reference_data.hpp"

namespace circuitarray {

RationalFunction ReferenceFormEntry::value(const std::vector<std::string>& variables) const {
    Polynomial num = Polynomial::constant(variables, content);
    for (const std::string& f : numFactors) num = num * parse_polynomial(f, variables);
    Polynomial den = Polynomial::constant(variables, 1);
    for (const std::string& f : denFactors) den = den * parse_polynomial(f, variables);
    return {num, den};
}

const std::vector<ReferenceNumericEntry>& reference_numeric_table() {
    static const std::vector<ReferenceNumericEntry> table = {
        {0, 1, Rational(2, 3)},     {0, 2, Rational(26, 27)},
        {0, 3, Rational(242, 243)}, {0, 4, Rational(2186, 2187)},
        {1, 2, Rational(13, 12)},   {1, 3, Rational(121, 120)},
        {1, 4, Rational(1093, 1092)},
        {2, 2, Rational(1, 2)},     {2, 3, Rational(89, 100)},
        {2, 4, Rational(16243, 16562)},
        {3, 3, Rational(1157, 960)},
        {3, 4, Rational(1965403, 1904448)},
        {4, 3, Rational(13, 32)},
    };
    return table;
}

const std::vector<Rational>& reference_diagonal_seeds() {
    static const std::vector<Rational> seeds = {Rational(2, 3), Rational(1, 2), Rational(13, 32)};
    return seeds;
}

const std::vector<ReferenceFormEntry>& reference_cx_table() {
    static const std::vector<ReferenceFormEntry> table = {
        {0, 1, Rational(1), {"X - 3"}, {"X"}, true, ""},
        {0, 2, Rational(1), {"3*X - 1"}, {"3*X"}, true, ""},
        {0, 3, Rational(1), {"27*X - 1"}, {"27*X"}, true, ""},
        {0, 4, Rational(1), {"243*X - 1"}, {"243*X"}, true, ""},
        {1, 2, Rational(1), {"3*X - 1"}, {"3*X - 3"}, true, ""},
        {1, 3, Rational(1), {"27*X - 1"}, {"27*X - 3"}, true, ""},
        {1, 4, Rational(1), {"243*X - 1"}, {"243*X - 3"}, true, ""},
        {2, 2, Rational(2), {"1 - 4/3*X + 1/3*X^2"}, {"X^2 - 2*X + 1"}, true, ""},
        {2, 3, Rational(2), {"13 - 36*X + 39*X^2"}, {"81*X^2 - 18*X + 1"}, true, ""},
        {2, 4, Rational(2), {"121 - 540*X + 3267*X^2"}, {"6561*X^2 - 162*X + 1"}, true, ""},
        {3, 3, Rational(1, 12), {"3*X - 1", "13 - 36*X + 39*X^2"},
         {"9*X - 1", "1 - 2*X + X^2"}, true, ""},
        // Printed with constant 1/12 and denominator factor 10 - 36*X + 45*X^2;
        // substitution at X = 9 then misses the numeric table. The consistent
        // cell has constant 1/24 and factor 5 - 18*X + 45*X^2.
        {3, 4, Rational(1, 12), {"27*X - 1", "121 - 540*X + 3267*X^2"},
         {"81*X - 1", "10 - 36*X + 45*X^2"}, false,
         "one-variable table cell (3,4): printed constant/denominator disagree with the "
         "numeric table; consistent form is 1/24 * (27*X-1)(3267*X^2-540*X+121) / "
         "((81*X-1)(45*X^2-18*X+5))"},
        {3, 4, Rational(1, 24), {"27*X - 1", "121 - 540*X + 3267*X^2"},
         {"81*X - 1", "5 - 18*X + 45*X^2"}, true, ""},
    };
    return table;
}

const std::vector<ReferenceFormEntry>& reference_cm_table() {
    static const std::vector<ReferenceFormEntry> table = {
        {0, 1, Rational(1), {"X1"}, {}, true, ""},
        {0, 2, Rational(1, 9), {"X1 + 8"}, {}, true, ""},
        {0, 3, Rational(1, 81), {"X1 + 80"}, {}, true, ""},
        {0, 4, Rational(1, 729), {"X1 + 728"}, {}, true, ""},
        {1, 2, Rational(1), {"X1 + 8"}, {"3*X1 + 6"}, true, ""},
        {1, 3, Rational(1, 3), {"X1 + 80"}, {"X1 + 26"}, true, ""},
        {1, 4, Rational(1, 3), {"X1 + 728"}, {"X1 + 242"}, true, ""},
        {2, 2, Rational(1), {"X2"}, {}, true, ""},
        {2, 3, Rational(1),
         {"9*X1^2*X2 + 8*X1^2 + 36*X1*X2 + 128*X1 + 36*X2 + 512"}, {"X1^2 + 52*X1 + 676"},
         true, ""},
        {2, 4, Rational(1),
         {"81*X1^2*X2 + 80*X1^2 + 324*X1*X2 + 2432*X1 + 324*X2 + 55808"},
         {"X1^2 + 484*X1 + 58564"}, true, ""},
        {3, 3, Rational(1, 3),
         {"X1 + 8", "9*X1^2*X2 + 8*X1^2 + 36*X1*X2 + 128*X1 + 36*X2 + 512"},
         {"X1 + 2", "X1 + 26", "3*X1*X2 + 2*X1 + 6*X2 + 16"}, true, ""},
        {3, 4, Rational(1, 3),
         {"X1 + 80", "81*X1^2*X2 + 80*X1^2 + 324*X1*X2 + 2432*X1 + 324*X2 + 55808"},
         {"X1 + 242", "27*X1^2*X2 + 26*X1^2 + 108*X1*X2 + 596*X1 + 108*X2 + 5696"}, true, ""},
    };
    return table;
}

const std::vector<ReferenceFormEntry>& reference_cx_examples() {
    static const std::vector<ReferenceFormEntry> table = {
        // row 2 list
        {2, 2, Rational(2, 3), {"X - 3"}, {"X - 1"}, true, ""},
        {2, 3, Rational(2), {"13 - 36*X + 39*X^2"}, {"1 - 9*X", "1 - 9*X"}, true, ""},
        {2, 4, Rational(2), {"121 - 540*X + 3267*X^2"}, {"1 - 81*X", "1 - 81*X"}, true, ""},
        // row 3 list
        {3, 3, Rational(1, 12), {"3*X - 1", "39*X^2 - 36*X + 13"},
         {"X^2 - 2*X + 1", "9*X - 1"}, true, ""},
        {3, 4, Rational(1, 24), {"27*X - 1", "3267*X^2 - 540*X + 121"},
         {"81*X - 1", "45*X^2 - 18*X + 5"}, true, ""},
        {3, 5, Rational(1, 12), {"243*X - 1", "265599*X^2 - 6804*X + 1093"},
         {"729*X - 1", "7371*X^2 - 486*X + 91"}, true, ""},
        // row 4 list
        {4, 3, Rational(1, 6), {"X - 3", "3*X - 1"}, {"X^2 - 2*X + 1"}, true, ""},
        {4, 4, Rational(1, 4), {"27*X - 1", "267*X^3 - 447*X^2 + 333*X - 89"},
         {"45*X^2 - 18*X + 5", "45*X^2 - 18*X + 5"}, true, ""},
        // Variant printed without the 1/4 constant; inconsistent with the
        // recursion (and with the list form above).
        {4, 4, Rational(1), {"27*X - 1", "267*X^3 - 447*X^2 + 333*X - 89"},
         {"45*X^2 - 18*X + 5", "45*X^2 - 18*X + 5"}, false,
         "worked example for (4,4) omits the constant 1/4 that the companion list "
         "and the numeric table require"},
        {4, 5, Rational(1, 2), {"243*X - 1", "438561*X^3 - 187029*X^2 + 87399*X - 16243"},
         {"7371*X^2 - 486*X + 91", "7371*X^2 - 486*X + 91"}, true, ""},
        // row 5 list
        {5, 4, Rational(1, 192), {"39*X^2 - 36*X + 13", "267*X^3 - 447*X^2 + 333*X - 89"},
         {"X^3 - 3*X^2 + 3*X - 1", "45*X^2 - 18*X + 5"}, true, ""},
        {5, 5, Rational(1, 192),
         {"3267*X^2 - 540*X + 121", "438561*X^3 - 187029*X^2 + 87399*X - 16243"},
         {"7371*X^2 - 486*X + 91", "981*X^3 - 855*X^2 + 495*X - 109"}, true, ""},
    };
    return table;
}

const std::vector<ReferenceRecursion>& reference_cm_row2_recursions() {
    auto nine = [](int k) { return rational_pow(Rational(9), k); };
    static const std::vector<ReferenceRecursion> rows = {
        {"X1^0*X2^0", {0, 0}, {100, -1638, 8100, -6561},
         {{Rational(1), 1}, {nine(1), 2}, {nine(2), 1}}, true, ""},
        {"X1^0*X2^1", {0, 1}, {10, -1},
         {{Rational(1), 1}, {nine(1), 1}}, false,
         "printed recursion G_s = 10 G_{s-1} - G_{s-2} does not match the printed "
         "annihilator (E-1)(E-9), which forces G_s = 10 G_{s-1} - 9 G_{s-2}"},
        {"X1^1*X2^0", {1, 0}, {19, -99, 81},
         {{Rational(1), 1}, {nine(1), 2}}, true, ""},
        {"X1^1*X2^1", {1, 1}, {9}, {{nine(1), 1}}, true, ""},
        {"X1^2*X2^0", {2, 0}, {10, -9}, {{Rational(1), 1}, {nine(1), 1}}, true, ""},
        {"X1^2*X2^1", {2, 1}, {9}, {{nine(1), 1}}, true, ""},
    };
    return rows;
}

const std::vector<ReferenceRecursion>& reference_cx_row2_recursions() {
    auto nine = [](int k) { return rational_pow(Rational(9), k); };
    static const std::vector<ReferenceRecursion> rows = {
        {"c_{2,0}", {}, {10, -9}, {{Rational(1), 1}, {nine(1), 1}}, true, ""},
        {"c_{2,1}", {}, {18, 81}, {{nine(1), 2}}, false,
         "printed recursion G_n = 18 G_{n-1} + 81 G_{n-2} does not match the printed "
         "annihilator (E-9)^2, which forces G_n = 18 G_{n-1} - 81 G_{n-2}"},
        {"c_{2,2}", {}, {90, -81}, {{nine(1), 1}, {nine(2), 1}}, false,
         "printed recursion G_n = 90 G_{n-1} - 81 G_{n-2} does not match the printed "
         "annihilator (E-9)(E-81), which forces G_n = 90 G_{n-1} - 729 G_{n-2}"},
    };
    return rows;
}

const std::vector<ReferenceExponentCell>& reference_exponent_cells() {
    static const std::vector<ReferenceExponentCell> cells = {
        {0, 0, {1}},          {0, 1, {1}},
        {1, 0, {1, 1}},       {1, 1, {2}},       {1, 2, {1, 1}},
        {2, 0, {1, 2, 1}},    {2, 1, {3, 2}},    {2, 2, {2, 3}},    {2, 3, {1, 2, 1}},
        {3, 0, {1, 3, 3, 1}}, {3, 1, {4, 4, 2}}, {3, 2, {3, 5, 3}}, {3, 3, {2, 4, 4}},
    };
    return cells;
}

}  // namespace circuitarray
