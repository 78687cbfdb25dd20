#pragma once

#include <string>
#include <vector>

#include "circuitarray/circuit_tables.hpp"
#include "circuitarray/sequences.hpp"

namespace circuitarray {

// Frozen copies of the published reference tables and formulas this library
// audits. Each item carries a `consistent` flag: false marks entries whose
// printed source disagrees with the rest of the reference material (the audit
// must report, not silently correct, those).

struct ReferenceNumericEntry {
    int i, j;
    Rational value;
};

// Numeric table, rows 0..3 and columns 1..4, plus the diagonal value at (4,3).
const std::vector<ReferenceNumericEntry>& reference_numeric_table();

// Diagonal entries (2(i-1), i) of the numeric array, i = 1..3.
const std::vector<Rational>& reference_diagonal_seeds();

struct ReferenceFormEntry {
    int i, j;
    Rational content;
    std::vector<std::string> numFactors;  // polynomial text, multiplied together
    std::vector<std::string> denFactors;
    bool consistent;   // false: printed form disagrees with the numeric table
    std::string note;  // what is wrong, when inconsistent
    RationalFunction value(const std::vector<std::string>& variables) const;
};

// One-variable table, all printed cells for rows 0..3, columns 1..4.
// Cell (3,4) is printed inconsistently and carried with consistent = false
// next to the corrected value.
const std::vector<ReferenceFormEntry>& reference_cx_table();

// Multivariable table, rows 0..3, columns 1..4.
const std::vector<ReferenceFormEntry>& reference_cm_table();

// The worked one-variable entries printed as factored lists
// (rows 2..5 over several columns), including the variant of (4,4) printed
// without its 1/4 constant (consistent = false).
const std::vector<ReferenceFormEntry>& reference_cx_examples();

struct ReferenceRecursion {
    std::string label;                    // e.g. "X1^0*X2^1" or "c_{2,1}"
    Exponents monomial;                   // for multivariable rows; empty otherwise
    std::vector<Rational> recursionCoeffs;  // G_s = c[0] G_{s-1} + c[1] G_{s-2} + ...
    RootMultiset annihilatorRoots;        // the printed annihilator, as roots
    bool recursionMatchesAnnihilator;     // printed pair internally consistent?
    std::string note;
};

// Printed recursions/annihilators of the multivariable row-2 numerator
// coefficients (six monomials).
const std::vector<ReferenceRecursion>& reference_cm_row2_recursions();

// Printed recursions/annihilators of the one-variable row-2 numerator
// coefficients c_{2,0}, c_{2,1}, c_{2,2}.
const std::vector<ReferenceRecursion>& reference_cx_row2_recursions();

// Exponent-table reference cells: values[k] with k starting at 0 for
// column 0 and at 1 for columns >= 1.
struct ReferenceExponentCell {
    int i, j;
    std::vector<unsigned> values;
};
const std::vector<ReferenceExponentCell>& reference_exponent_cells();

}  // namespace circuitarray
