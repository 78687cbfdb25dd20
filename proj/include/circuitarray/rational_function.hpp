#pragma once

#include <map>
#include <string>

#include "circuitarray/polynomial.hpp"

namespace circuitarray {

// Reduced fraction of polynomials. The denominator is kept primitive with
// integer coefficients and a positive leading coefficient; the numerator
// absorbs the rational content. num and den share no nonconstant factor.
// Constants collapse to den == 1.
class RationalFunction {
public:
    RationalFunction() = default;

    // Reduces on construction. Throws std::domain_error when den == 0.
    RationalFunction(Polynomial num, Polynomial den);

    static RationalFunction constant(std::vector<std::string> variables, const Rational& value);
    static RationalFunction from_polynomial(Polynomial p);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    const std::vector<std::string>& variables() const { return num_.variables(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rational constant_value() const;

    RationalFunction operator+(const RationalFunction& rhs) const;
    RationalFunction operator-(const RationalFunction& rhs) const;
    RationalFunction operator*(const RationalFunction& rhs) const;
    RationalFunction operator/(const RationalFunction& rhs) const;
    bool operator==(const RationalFunction& rhs) const = default;

    // Full canonical split: value == content * (numPrimitive / denPrimitive).
    struct Canonical {
        Rational content;
        Polynomial numPrimitive;
        Polynomial denPrimitive;
    };
    Canonical canonical() const;

    // Content folded back into the parts: value == numPart / denPart where
    // numPart = content.num * numPrimitive and denPart = content.den * denPrimitive.
    Polynomial numerator_part() const;
    Polynomial denominator_part() const;

    std::string to_string() const;

private:
    void reduce();

    Polynomial num_;
    Polynomial den_;
};

// Exact evaluation at a full assignment of the variables.
// Throws std::domain_error naming the assignment when the denominator vanishes.
Rational substitute(const RationalFunction& f, const std::map<std::string, Rational>& assignment);

}  // namespace circuitarray
