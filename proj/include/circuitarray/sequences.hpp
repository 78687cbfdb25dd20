#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circuitarray/circuit_tables.hpp"

namespace circuitarray {

// Finite window of an exact sequence G_{start}, G_{start+1}, ...
struct ExactSequence {
    std::vector<Rational> terms;
    long startIndex = 0;

    bool all_zero() const;
    ExactSequence drop_front(std::size_t k) const;
};

// Polynomial in the shift operator E, coefficients ascending by power.
// (A = sum a_i E^i acts by (A G)_t = sum a_i G_{t+i}.)
class OperatorPolynomial {
public:
    OperatorPolynomial() = default;
    explicit OperatorPolynomial(std::vector<Rational> coefficients);

    static OperatorPolynomial identity();                  // the operator 1
    static OperatorPolynomial linear(const Rational& root);  // E - root

    const std::vector<Rational>& coefficients() const { return coeffs_; }
    unsigned degree() const { return coeffs_.empty() ? 0 : unsigned(coeffs_.size() - 1); }
    bool is_identity() const;

    OperatorPolynomial operator*(const OperatorPolynomial& rhs) const;
    bool operator==(const OperatorPolynomial& rhs) const = default;

    // Exact synthetic division by (E - root); nullopt when root is not a root.
    std::optional<OperatorPolynomial> divide_by_linear(const Rational& root) const;

    std::string to_string() const;  // expanded text in E

private:
    std::vector<Rational> coeffs_;
};

// Applies the operator; output length = len - deg. Throws when the sequence
// is not longer than the operator degree.
ExactSequence apply_operator(const OperatorPolynomial& op, const ExactSequence& g);

bool annihilates(const OperatorPolynomial& op, const ExactSequence& g);

// Least-degree monic annihilator of degree <= maxOrder, mined by an exact
// linear solve over the leading window and verified on at least two held-out
// terms plus the full window; nullopt when no such operator exists.
// Requires terms.size() >= 2*maxOrder + 2.
std::optional<OperatorPolynomial> minimal_annihilator(const ExactSequence& g, unsigned maxOrder);

// Root multiset (root, multiplicity) of a split operator polynomial.
using RootMultiset = std::vector<std::pair<Rational, unsigned>>;

OperatorPolynomial expand_roots(const RootMultiset& roots);

// Annihilator of a termwise product, from the factor root multisets: roots
// are the pairwise products, the multiplicity of a product value v is
// max(m_a + m_b - 1) over contributing pairs (coinciding products deduplicated).
OperatorPolynomial product_annihilator(const RootMultiset& a, const RootMultiset& b);
RootMultiset product_annihilator_roots(const RootMultiset& a, const RootMultiset& b);

// Annihilator of a sum: the product of the operators.
OperatorPolynomial sum_annihilator(const std::vector<OperatorPolynomial>& ops);

// Factorization over roots 9^k, k = 0..kMax: factors times remainder
// reproduce the input; the remainder has no root 9^k, k <= kMax.
struct NinePowerFactorization {
    std::vector<std::pair<unsigned, unsigned>> factors;  // (k, multiplicity), k ascending
    OperatorPolynomial remainder;
    bool full_success() const { return remainder.degree() == 0; }
    std::string to_string() const;  // e.g. "(E-1)^1 (E-9)^2 * remainder"
    RootMultiset roots() const;
};

NinePowerFactorization powers_of_nine_factorization(const OperatorPolynomial& op, unsigned kMax);

// Starting from a verified nine-power annihilator of g, removes factors while
// the remainder still annihilates; returns the minimal surviving multiset.
// (Used when the minimal order exceeds the Hankel mining budget.)
std::optional<RootMultiset> minimize_nine_power_annihilator(const ExactSequence& g,
                                                            RootMultiset multiset);

// --- coefficient sequences of a circuit-array row ---------------------------

enum class Part { Num, Den };

struct RowCoefficientSequences {
    int row = 0;
    int startColumn = 0;
    Part part = Part::Num;
    // Key: exponent vector of the monomial (length = table variables; a single
    // degree for the one-variable case). Values across columns, content folded
    // into the part.
    std::map<Exponents, ExactSequence> byMonomial;
    // Canonical contents of the entries, as their own sequence.
    std::vector<Rational> contents;
};

// Canonical coefficient sequences of one row: for each column the canonical
// split content = p/q is folded into the parts (num <- p, den <- q).
RowCoefficientSequences coefficient_sequences(const CircuitArrayTable& table, int row, Part part);

std::string monomial_key_name(const Exponents& e, const std::vector<std::string>& variables);

// --- sequence file I/O -------------------------------------------------------
std::vector<Rational> read_sequence_file(const std::string& path);
std::string operator_factored_text(const OperatorPolynomial& op, unsigned kMax);

}  // namespace circuitarray
