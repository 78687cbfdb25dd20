#include "circuitarray/rational_function.hpp"

#include <sstream>
#include <stdexcept>

namespace circuitarray {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.variables() != den_.variables())
        throw std::invalid_argument("numerator and denominator variable lists differ");
    if (den_.is_zero()) throw std::domain_error("zero denominator");
    reduce();
}

RationalFunction RationalFunction::constant(std::vector<std::string> variables,
                                            const Rational& value) {
    Polynomial one = Polynomial::constant(variables, 1);
    return RationalFunction(Polynomial::constant(std::move(variables), value), std::move(one));
}

RationalFunction RationalFunction::from_polynomial(Polynomial p) {
    Polynomial one = Polynomial::constant(p.variables(), 1);
    return RationalFunction(std::move(p), std::move(one));
}

Rational RationalFunction::constant_value() const {
    if (!is_constant()) throw std::domain_error("rational function is not constant");
    return num_.constant_value() / den_.constant_value();
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Polynomial::constant(num_.variables(), 1);
        return;
    }
    if (!den_.is_constant() && !num_.is_constant()) {
        Polynomial g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *exact_divide(num_, g);
            den_ = *exact_divide(den_, g);
        }
    }
    CanonicalPolynomial cd = canonicalize(den_);
    den_ = std::move(cd.primitive);
    num_ = num_ * (Rational(1) / cd.content);
}

RationalFunction RationalFunction::operator+(const RationalFunction& rhs) const {
    return RationalFunction(num_ * rhs.den_ + rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& rhs) const {
    return RationalFunction(num_ * rhs.den_ - rhs.num_ * den_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& rhs) const {
    return RationalFunction(num_ * rhs.num_, den_ * rhs.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& rhs) const {
    if (rhs.num_.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFunction(num_ * rhs.den_, den_ * rhs.num_);
}

RationalFunction::Canonical RationalFunction::canonical() const {
    if (num_.is_zero())
        return {Rational(0), Polynomial::constant(variables(), 0),
                Polynomial::constant(variables(), 1)};
    CanonicalPolynomial cn = canonicalize(num_);
    return {cn.content, std::move(cn.primitive), den_};
}

Polynomial RationalFunction::numerator_part() const {
    if (num_.is_zero()) return num_;
    Canonical c = canonical();
    return c.numPrimitive * Rational(numerator_of(c.content));
}

Polynomial RationalFunction::denominator_part() const {
    if (num_.is_zero()) return Polynomial::constant(variables(), 1);
    Canonical c = canonical();
    return c.denPrimitive * Rational(denominator_of(c.content));
}

std::string RationalFunction::to_string() const {
    if (num_.is_zero()) return "0";
    Canonical c = canonical();
    std::ostringstream os;
    bool unitContent = (c.content == 1);
    bool unitDen = c.denPrimitive.is_constant() && c.denPrimitive.constant_value() == 1;
    if (!unitContent) os << circuitarray::to_string(c.content) << " * ";
    os << "(" << c.numPrimitive.to_string() << ")";
    if (!unitDen) os << " / (" << c.denPrimitive.to_string() << ")";
    return os.str();
}

Rational substitute(const RationalFunction& f,
                    const std::map<std::string, Rational>& assignment) {
    std::vector<Rational> point;
    point.reserve(f.variables().size());
    for (const std::string& v : f.variables()) {
        auto it = assignment.find(v);
        if (it == assignment.end())
            throw std::invalid_argument("assignment missing variable: " + v);
        point.push_back(it->second);
    }
    Rational den = f.den().evaluate(point);
    if (den == 0) {
        std::ostringstream os;
        os << "denominator vanishes at";
        for (const std::string& v : f.variables())
            os << " " << v << "=" << to_string(assignment.at(v));
        throw std::domain_error(os.str());
    }
    return f.num().evaluate(point) / den;
}

}  // namespace circuitarray
