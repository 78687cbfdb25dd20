#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace circuitarray {

// Exact scalars. The rational backend keeps fractions reduced with a positive
// denominator and represents zero as 0/1, which is exactly the canonical
// form required everywhere in this library. Expression templates are off so
// arithmetic results behave as plain values inside containers.
using Integer =
    boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                  boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Integer numerator_of(const Rational& r) { return numerator(r); }
inline Integer denominator_of(const Rational& r) { return denominator(r); }

// 9^k and friends, with negative exponents allowed.
inline Rational rational_pow(const Rational& base, long exp) {
    if (exp >= 0) {
        Rational acc = 1;
        for (long i = 0; i < exp; ++i) acc *= base;
        return acc;
    }
    if (base == 0) throw std::domain_error("rational_pow: 0 to a negative power");
    Rational acc = 1;
    for (long i = 0; i < -exp; ++i) acc /= base;
    return acc;
}

inline Integer integer_pow(const Integer& base, unsigned long exp) {
    Integer acc = 1;
    for (unsigned long i = 0; i < exp; ++i) acc *= base;
    return acc;
}

inline std::string to_string(const Rational& r) {
    std::string s = numerator_of(r).str();
    if (denominator_of(r) != 1) s += "/" + denominator_of(r).str();
    return s;
}

// Accepts "a" or "a/b" with optional sign and surrounding whitespace.
inline Rational parse_rational(const std::string& text) {
    auto first = text.find_first_not_of(" \t\r\n");
    auto last = text.find_last_not_of(" \t\r\n");
    if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
    std::string body = text.substr(first, last - first + 1);
    auto slash = body.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(body));
        Integer num(body.substr(0, slash));
        Integer den(body.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational literal: " + body);
    }
}

inline Integer gcd_integer(Integer a, Integer b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer lcm_integer(const Integer& a, const Integer& b) {
    return boost::multiprecision::lcm(a, b);
}

}  // namespace circuitarray
