#include "circuitarray/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace circuitarray {

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
    unsigned da = std::accumulate(a.begin(), a.end(), 0u);
    unsigned db = std::accumulate(b.begin(), b.end(), 0u);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial::Polynomial(std::vector<std::string> variables)
    : variables_(std::move(variables)) {}

Polynomial::Polynomial(std::vector<std::string> variables, TermMap terms)
    : variables_(std::move(variables)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.size() != variables_.size())
            throw std::invalid_argument("exponent vector length mismatch");
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
}

Polynomial Polynomial::constant(std::vector<std::string> variables, const Rational& value) {
    Polynomial p(std::move(variables));
    if (value != 0) p.terms_[Exponents(p.variables_.size(), 0)] = value;
    return p;
}

Polynomial Polynomial::variable(std::vector<std::string> variables, const std::string& name) {
    Polynomial p(std::move(variables));
    auto it = std::find(p.variables_.begin(), p.variables_.end(), name);
    if (it == p.variables_.end())
        throw std::invalid_argument("unknown variable: " + name);
    Exponents e(p.variables_.size(), 0);
    e[static_cast<std::size_t>(it - p.variables_.begin())] = 1;
    p.terms_[e] = 1;
    return p;
}

bool Polynomial::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && total_degree() == 0;
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw std::domain_error("polynomial is not constant");
    return terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
    if (terms_.empty()) return 0;
    const Exponents& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0u);
}

unsigned Polynomial::degree_in(std::size_t varIndex) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[varIndex]);
    return d;
}

const std::pair<const Exponents, Rational>& Polynomial::leading_term() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return *terms_.rbegin();
}

Rational Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::set_coefficient(const Exponents& e, const Rational& value) {
    if (e.size() != variables_.size())
        throw std::invalid_argument("exponent vector length mismatch");
    if (value == 0)
        terms_.erase(e);
    else
        terms_[e] = value;
}

void Polynomial::check_same_variables(const Polynomial& rhs) const {
    if (variables_ != rhs.variables_)
        throw std::invalid_argument("polynomial variable lists differ");
}

Polynomial Polynomial::operator-() const {
    Polynomial out(variables_);
    for (const auto& [e, c] : terms_) out.terms_[e] = -c;
    return out;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
    check_same_variables(rhs);
    Polynomial out = *this;
    for (const auto& [e, c] : rhs.terms_) {
        auto [it, inserted] = out.terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) out.terms_.erase(it);
        }
    }
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + (-rhs); }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
    check_same_variables(rhs);
    Polynomial out(variables_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto [it, inserted] = out.terms_.try_emplace(e, ca * cb);
            if (!inserted) {
                it->second += ca * cb;
                if (it->second == 0) out.terms_.erase(it);
            }
        }
    }
    return out;
}

Polynomial Polynomial::operator*(const Rational& scalar) const {
    Polynomial out(variables_);
    if (scalar == 0) return out;
    for (const auto& [e, c] : terms_) out.terms_[e] = c * scalar;
    return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& point) const {
    if (point.size() != variables_.size())
        throw std::invalid_argument("evaluation point arity mismatch");
    Rational acc = 0;
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) term *= rational_pow(point[i], e[i]);
        acc += term;
    }
    return acc;
}

Polynomial pow(const Polynomial& p, unsigned e) {
    Polynomial acc = Polynomial::constant(p.variables(), 1);
    for (unsigned i = 0; i < e; ++i) acc = acc * p;
    return acc;
}

CanonicalPolynomial canonicalize(const Polynomial& p) {
    if (p.is_zero()) throw std::domain_error("cannot canonicalize zero");
    Integer denLcm = 1;
    for (const auto& [e, c] : p.terms()) denLcm = lcm_integer(denLcm, denominator_of(c));
    Integer numGcd = 0;
    for (const auto& [e, c] : p.terms())
        numGcd = gcd_integer(numGcd, abs(numerator_of(c) * (denLcm / denominator_of(c))));
    Rational content(numGcd, denLcm);
    if (p.leading_term().second < 0) content = -content;
    Polynomial primitive = p * (Rational(1) / content);
    return {content, std::move(primitive)};
}

namespace {

// --- recursive dense view in the last variable, used by gcd ---------------

std::vector<Polynomial> coeffs_in_last(const Polynomial& p,
                                       const std::vector<std::string>& innerVars) {
    std::size_t k = p.variables().size() - 1;
    std::vector<Polynomial> out(p.is_zero() ? 0 : p.degree_in(k) + 1, Polynomial(innerVars));
    for (const auto& [e, c] : p.terms()) {
        Exponents inner(e.begin(), e.end() - 1);
        Polynomial& slot = out[e[k]];
        slot.set_coefficient(inner, slot.coefficient(inner) + c);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

Polynomial from_coeffs_in_last(const std::vector<Polynomial>& coeffs,
                               const std::vector<std::string>& fullVars) {
    Polynomial out(fullVars);
    for (std::size_t d = 0; d < coeffs.size(); ++d) {
        for (const auto& [e, c] : coeffs[d].terms()) {
            Exponents full(e);
            full.push_back(static_cast<unsigned>(d));
            out.set_coefficient(full, c);
        }
    }
    return out;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b);

// gcd of a list of polynomials (content of a recursive representation).
Polynomial gcd_list(const std::vector<Polynomial>& ps, const std::vector<std::string>& vars) {
    Polynomial g(vars);
    for (const Polynomial& p : ps) {
        if (p.is_zero()) continue;
        g = g.is_zero() ? canonicalize(p).primitive : gcd_impl(g, p);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) throw std::domain_error("gcd of zero list");
    return g;
}

// Univariate gcd over Q by monic Euclid.
Polynomial gcd_univariate(const Polynomial& a, const Polynomial& b) {
    auto degree = [](const Polynomial& p) { return p.is_zero() ? 0u : p.degree_in(0); };
    Polynomial f = a, g = b;
    while (!g.is_zero()) {
        // r = f mod g
        Polynomial r = f;
        unsigned dg = degree(g);
        Rational lg = g.leading_term().second;
        while (!r.is_zero() && degree(r) >= dg) {
            const auto& lt = r.leading_term();
            Rational q = lt.second / lg;
            Exponents shift{lt.first[0] - dg};
            Polynomial mono(r.variables());
            mono.set_coefficient(shift, q);
            r = r - mono * g;
        }
        f = g;
        g = r;
    }
    return canonicalize(f).primitive;
}

// Pseudo-remainder of dense coefficient vectors (main variable implicit):
// lc(g)^(deg f - deg g + 1) * f = q*g + r.
std::vector<Polynomial> pseudo_rem(std::vector<Polynomial> f, const std::vector<Polynomial>& g) {
    const Polynomial& lg = g.back();
    while (f.size() >= g.size() && !f.empty()) {
        Polynomial lead = f.back();
        std::size_t shift = f.size() - g.size();
        for (Polynomial& c : f) c = c * lg;
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::size_t pos = shift + i;
            f[pos] = f[pos] - lead * g[i];
        }
        while (!f.empty() && f.back().is_zero()) f.pop_back();
    }
    return f;
}

Polynomial gcd_impl(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd(0, 0) undefined");
    if (a.is_zero()) return canonicalize(b).primitive;
    if (b.is_zero()) return canonicalize(a).primitive;
    if (a.is_constant() || b.is_constant())
        return Polynomial::constant(a.variables(), 1);
    const auto& vars = a.variables();
    if (vars.size() == 1) return gcd_univariate(a, b);

    // Primitive PRS in the last variable over the remaining ones.
    std::vector<std::string> inner(vars.begin(), vars.end() - 1);
    auto fa = coeffs_in_last(a, inner);
    auto fb = coeffs_in_last(b, inner);
    if (fa.size() == 1 || fb.size() == 1) {
        // One argument is free of the last variable: gcd lives in the contents.
        Polynomial ca = gcd_list(fa, inner);
        Polynomial cb = gcd_list(fb, inner);
        Polynomial g = gcd_impl(ca, cb);
        auto lifted = std::vector<Polynomial>{g};
        return canonicalize(from_coeffs_in_last(lifted, vars)).primitive;
    }
    Polynomial contA = gcd_list(fa, inner);
    Polynomial contB = gcd_list(fb, inner);
    auto divide_out = [&](std::vector<Polynomial>& cs, const Polynomial& d) {
        for (Polynomial& c : cs) {
            if (c.is_zero()) continue;
            auto q = exact_divide(c, d);
            if (!q) throw std::logic_error("content division failed");
            c = *q;
        }
    };
    divide_out(fa, contA);
    divide_out(fb, contB);
    Polynomial contG = gcd_impl(contA, contB);

    std::vector<Polynomial> f = fa.size() >= fb.size() ? fa : fb;
    std::vector<Polynomial> g = fa.size() >= fb.size() ? fb : fa;
    while (!g.empty()) {
        std::vector<Polynomial> r = pseudo_rem(f, g);
        f = std::move(g);
        if (r.empty()) {
            g.clear();
        } else {
            Polynomial cont = gcd_list(r, inner);
            divide_out(r, cont);
            g = std::move(r);
        }
    }
    Polynomial pp = from_coeffs_in_last(f, vars);
    Polynomial contLifted = from_coeffs_in_last(std::vector<Polynomial>{contG}, vars);
    return canonicalize(contLifted * canonicalize(pp).primitive).primitive;
}

}  // namespace

Polynomial poly_gcd(const Polynomial& p, const Polynomial& q) {
    if (p.variables() != q.variables())
        throw std::invalid_argument("gcd arguments use different variable lists");
    return gcd_impl(p, q);
}

std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q) {
    if (p.variables() != q.variables())
        throw std::invalid_argument("division arguments use different variable lists");
    if (q.is_zero()) throw std::domain_error("division by zero polynomial");
    Polynomial rem = p;
    Polynomial quot(p.variables());
    const auto& [qe, qc] = q.leading_term();
    while (!rem.is_zero()) {
        const auto& [re, rc] = rem.leading_term();
        Exponents e(re.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (re[i] < qe[i]) return std::nullopt;
            e[i] = re[i] - qe[i];
        }
        Polynomial mono(p.variables());
        mono.set_coefficient(e, rc / qc);
        quot = quot + mono;
        rem = rem - mono * q;
    }
    return quot;
}

// --- text form -------------------------------------------------------------

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += variables_[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            os << circuitarray::to_string(a);
        } else if (a == 1) {
            os << mono;
        } else {
            os << circuitarray::to_string(a) << "*" << mono;
        }
    }
    return os.str();
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return text[pos];
    }
    std::string take_number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos < text.size() && text[pos] == '/') {
            ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        }
        if (start == pos) throw std::invalid_argument("expected number in polynomial text");
        return text.substr(start, pos - start);
    }
    std::string take_identifier() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (start == pos) throw std::invalid_argument("expected identifier in polynomial text");
        return text.substr(start, pos - start);
    }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, std::vector<std::string> variables) {
    Polynomial out(variables);
    Parser p(text);
    if (p.eof()) throw std::invalid_argument("empty polynomial text");
    bool firstTerm = true;
    while (!p.eof()) {
        int sign = 1;
        char c = p.peek();
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++p.pos;
        } else if (!firstTerm) {
            throw std::invalid_argument("expected + or - between terms");
        }
        firstTerm = false;
        Rational coeff = sign;
        Exponents e(variables.size(), 0);
        bool any = false;
        bool expectFactor = true;
        while (expectFactor) {
            if (p.eof()) break;
            char f = p.peek();
            if (std::isdigit(static_cast<unsigned char>(f))) {
                coeff *= parse_rational(p.take_number());
                any = true;
            } else if (std::isalpha(static_cast<unsigned char>(f))) {
                std::string name = p.take_identifier();
                auto it = std::find(variables.begin(), variables.end(), name);
                if (it == variables.end())
                    throw std::invalid_argument("unknown variable in polynomial text: " + name);
                unsigned exp = 1;
                if (!p.eof() && p.peek() == '^') {
                    ++p.pos;
                    exp = static_cast<unsigned>(std::stoul(p.take_number()));
                }
                e[static_cast<std::size_t>(it - variables.begin())] += exp;
                any = true;
            } else {
                throw std::invalid_argument("unexpected character in polynomial text");
            }
            if (!p.eof() && p.peek() == '*') {
                ++p.pos;
            } else {
                expectFactor = false;
            }
        }
        if (!any) throw std::invalid_argument("dangling sign in polynomial text");
        out.set_coefficient(e, out.coefficient(e) + coeff);
    }
    return out;
}

}  // namespace circuitarray
