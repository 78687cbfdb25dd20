#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circuitarray/rational.hpp"

namespace circuitarray {

using Exponents = std::vector<unsigned>;

// Graded lexicographic order: total degree first, then exponents compared
// left to right (the first listed variable dominates ties).
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial over the rationals.
//
// A polynomial carries an ordered variable list; all arguments of a binary
// operation must agree on it. Stored terms never have a zero coefficient,
// and every exponent vector has exactly one entry per variable.
class Polynomial {
public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    Polynomial() = default;
    explicit Polynomial(std::vector<std::string> variables);
    Polynomial(std::vector<std::string> variables, TermMap terms);

    static Polynomial constant(std::vector<std::string> variables, const Rational& value);
    static Polynomial variable(std::vector<std::string> variables, const std::string& name);

    const std::vector<std::string>& variables() const { return variables_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // requires is_constant()
    unsigned total_degree() const;    // 0 for the zero polynomial
    unsigned degree_in(std::size_t varIndex) const;

    // Grlex-largest term; polynomial must be nonzero.
    const std::pair<const Exponents, Rational>& leading_term() const;

    Rational coefficient(const Exponents& e) const;
    void set_coefficient(const Exponents& e, const Rational& value);

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator-(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Rational& scalar) const;
    bool operator==(const Polynomial& rhs) const = default;

    Rational evaluate(const std::vector<Rational>& point) const;

    std::string to_string() const;

private:
    void check_same_variables(const Polynomial& rhs) const;

    std::vector<std::string> variables_;
    TermMap terms_;
};

// content * primitive == original; primitive has coprime integer coefficients
// and a positive grlex-leading coefficient. Canonicalizing a primitive
// polynomial yields content 1.
struct CanonicalPolynomial {
    Rational content;
    Polynomial primitive;
};

// Throws std::domain_error on the zero polynomial.
CanonicalPolynomial canonicalize(const Polynomial& p);

// Canonical gcd (primitive, positive leading coefficient). gcd(p, 0) is
// canonical(p); gcd(0, 0) is not defined and throws.
Polynomial poly_gcd(const Polynomial& p, const Polynomial& q);

// Exact quotient p / q, or nullopt when q does not divide p.
std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q);

Polynomial pow(const Polynomial& p, unsigned e);

// Parses the canonical text form: terms joined by + / -, each term a product
// of an optional rational coefficient and var^exp factors, e.g.
// "39*X^2 - 36*X + 13". Unknown variable names are rejected.
Polynomial parse_polynomial(const std::string& text, std::vector<std::string> variables);

}  // namespace circuitarray
