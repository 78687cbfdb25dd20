#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "circuitarray/rational_function.hpp"

namespace circuitarray {

enum class ArrayVariant { Numeric, Univariate, Multivariate };

std::string variant_name(ArrayVariant v);

// Column start of a row: even row 2(c-1) starts at j = c, odd row 2(c-1)-1
// at j = c. Equivalently floor(r/2) + 1 rounded for parity.
int row_start_column(int row);

// The two-dimensional circuit array. Entry (i, j) exists iff
// 0 <= i <= 2(j-1) and j <= maxColumn (rows may additionally be capped).
class CircuitArrayTable {
public:
    CircuitArrayTable(ArrayVariant variant, int maxColumn, std::vector<std::string> variables);

    ArrayVariant variant() const { return variant_; }
    int max_column() const { return maxColumn_; }
    const std::vector<std::string>& variables() const { return variables_; }

    bool has(int i, int j) const;
    const RationalFunction& at(int i, int j) const;
    void set(int i, int j, RationalFunction value);
    const std::map<std::pair<int, int>, RationalFunction>& entries() const { return entries_; }
    int max_row() const;

private:
    ArrayVariant variant_;
    int maxColumn_;
    std::vector<std::string> variables_;
    std::map<std::pair<int, int>, RationalFunction> entries_;
};

// Numeric array by the inductive local-function recursion (fast default).
// rowCap < 0 means all rows in the column domain.
CircuitArrayTable build_numeric_array(int maxJ, int rowCap = -1);

// Numeric array read off an all-one (4*maxJ - 2)-grid reduced column by
// column; the slow cross-check path.
CircuitArrayTable build_numeric_array_via_grid(int maxJ, int rowCap = -1);

// One-variable array: seed (X-3)/X at (0, 1), then the same recursion.
CircuitArrayTable build_cx_array(int maxJ, int rowCap = -1);

// Multivariable array: diagonal seeds X1 at (0,1) and X2 at (2,2); rows
// capped at maxRow <= 3.
CircuitArrayTable build_cm_array(int maxRow, int maxJ);

// Closed forms of the first rows.
enum class ClosedFormFamily { CX0, CX1, CX2, CM0, CM1, CM2 };

std::string family_name(ClosedFormFamily f);
std::optional<ClosedFormFamily> family_from_name(const std::string& name);
int family_row(ClosedFormFamily f);
int family_min_index(ClosedFormFamily f);
ArrayVariant family_variant(ClosedFormFamily f);

// Exact closed form at index s; throws std::domain_error below the family's
// first valid index.
RationalFunction closed_form_row(ClosedFormFamily f, int s);

// The CX1 variant with the reference text's denominator 3*9^(s-2)*X, kept for
// the discrepancy audit (it disagrees with the tabulated row for every s).
RationalFunction closed_form_cx1_reference_variant(int s);

struct ClosedFormVerdict {
    ClosedFormFamily family;
    int sFirst = 0, sLast = 0;
    std::vector<int> mismatches;
    bool pass() const { return mismatches.empty(); }
};

// Compares closed_form_row against the built table over [sFirst, sLast].
ClosedFormVerdict verify_closed_form(ClosedFormFamily f, const CircuitArrayTable& table,
                                     int sFirst, int sLast);

// Variable-to-value map that recovers the numeric array from a symbolic one.
std::map<std::string, Rational> recovery_assignment(ArrayVariant variant);

// --- emitters (deterministic byte output) ----------------------------------
std::string table_to_markdown(const CircuitArrayTable& table);
std::string table_to_json(const CircuitArrayTable& table);
std::string table_to_csv(const CircuitArrayTable& table);

}  // namespace circuitarray
