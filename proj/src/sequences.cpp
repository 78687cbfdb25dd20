#include "circuitarray/sequences.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace circuitarray {

bool ExactSequence::all_zero() const {
    return std::all_of(terms.begin(), terms.end(), [](const Rational& r) { return r == 0; });
}

ExactSequence ExactSequence::drop_front(std::size_t k) const {
    if (k >= terms.size()) throw std::invalid_argument("drop beyond sequence length");
    return {std::vector<Rational>(terms.begin() + static_cast<long>(k), terms.end()),
            startIndex + static_cast<long>(k)};
}

OperatorPolynomial::OperatorPolynomial(std::vector<Rational> coefficients)
    : coeffs_(std::move(coefficients)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    if (coeffs_.empty()) throw std::invalid_argument("operator polynomial must be nonzero");
}

OperatorPolynomial OperatorPolynomial::identity() { return OperatorPolynomial({Rational(1)}); }

OperatorPolynomial OperatorPolynomial::linear(const Rational& root) {
    return OperatorPolynomial({-root, Rational(1)});
}

bool OperatorPolynomial::is_identity() const {
    return coeffs_.size() == 1 && coeffs_[0] == 1;
}

OperatorPolynomial OperatorPolynomial::operator*(const OperatorPolynomial& rhs) const {
    std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
    return OperatorPolynomial(std::move(out));
}

std::optional<OperatorPolynomial> OperatorPolynomial::divide_by_linear(
    const Rational& root) const {
    if (degree() == 0) return std::nullopt;
    std::vector<Rational> q(coeffs_.size() - 1, Rational(0));
    Rational carry = 0;
    for (std::size_t i = coeffs_.size(); i-- > 1;) {
        q[i - 1] = coeffs_[i] + carry;
        carry = q[i - 1] * root;
    }
    if (coeffs_[0] + carry != 0) return std::nullopt;
    return OperatorPolynomial(std::move(q));
}

std::string OperatorPolynomial::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const Rational& c = coeffs_[i];
        if (c == 0) continue;
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        if (i == 0) {
            os << circuitarray::to_string(a);
        } else {
            if (a != 1) os << circuitarray::to_string(a) << "*";
            os << "E";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

ExactSequence apply_operator(const OperatorPolynomial& op, const ExactSequence& g) {
    unsigned d = op.degree();
    if (g.terms.size() <= d)
        throw std::invalid_argument("sequence too short for the operator degree");
    ExactSequence out;
    out.startIndex = g.startIndex;
    out.terms.reserve(g.terms.size() - d);
    for (std::size_t t = 0; t + d < g.terms.size(); ++t) {
        Rational acc = 0;
        for (std::size_t i = 0; i <= d; ++i) acc += op.coefficients()[i] * g.terms[t + i];
        out.terms.push_back(std::move(acc));
    }
    return out;
}

bool annihilates(const OperatorPolynomial& op, const ExactSequence& g) {
    if (g.terms.size() <= op.degree()) return false;
    return apply_operator(op, g).all_zero();
}

namespace {

// Solves M x = rhs exactly; returns one solution (free variables zero),
// or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> m,
                                                 std::vector<Rational> rhs, std::size_t cols) {
    std::size_t rows = m.size();
    std::vector<std::size_t> pivotCol;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        std::swap(rhs[sel], rhs[r]);
        Rational inv = Rational(1) / m[r][c];
        for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
            rhs[i] -= f * rhs[r];
        }
        pivotCol.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (rhs[i] != 0) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (std::size_t i = 0; i < pivotCol.size(); ++i) x[pivotCol[i]] = rhs[i];
    return x;
}

}  // namespace

std::optional<OperatorPolynomial> minimal_annihilator(const ExactSequence& g, unsigned maxOrder) {
    std::size_t n = g.terms.size();
    if (maxOrder < 1) throw std::invalid_argument("maxOrder must be at least 1");
    if (n < 2 * maxOrder + 2) {
        throw std::invalid_argument("insufficient terms: need at least " +
                                    std::to_string(2 * maxOrder + 2) + ", have " +
                                    std::to_string(n));
    }
    if (g.all_zero()) return OperatorPolynomial::identity();
    for (unsigned d = 1; d <= maxOrder; ++d) {
        std::size_t rows = n - d;   // equations sum a_i G_{t+i} = -G_{t+d}
        std::size_t fit = rows - 2; // the last two are held out
        std::vector<std::vector<Rational>> m(fit, std::vector<Rational>(d));
        std::vector<Rational> rhs(fit);
        for (std::size_t t = 0; t < fit; ++t) {
            for (unsigned i = 0; i < d; ++i) m[t][i] = g.terms[t + i];
            rhs[t] = -g.terms[t + d];
        }
        auto sol = solve_exact(std::move(m), std::move(rhs), d);
        if (!sol) continue;
        std::vector<Rational> coeffs = std::move(*sol);
        coeffs.push_back(Rational(1));
        OperatorPolynomial candidate(std::move(coeffs));
        if (annihilates(candidate, g)) return candidate;
    }
    return std::nullopt;
}

OperatorPolynomial expand_roots(const RootMultiset& roots) {
    OperatorPolynomial acc = OperatorPolynomial::identity();
    for (const auto& [root, mult] : roots)
        for (unsigned i = 0; i < mult; ++i) acc = acc * OperatorPolynomial::linear(root);
    return acc;
}

RootMultiset product_annihilator_roots(const RootMultiset& a, const RootMultiset& b) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("product annihilator needs factored inputs");
    std::map<Rational, unsigned> products;
    for (const auto& [ra, ma] : a) {
        for (const auto& [rb, mb] : b) {
            Rational v = ra * rb;
            unsigned m = ma + mb - 1;
            auto [it, inserted] = products.try_emplace(v, m);
            if (!inserted) it->second = std::max(it->second, m);
        }
    }
    return RootMultiset(products.begin(), products.end());
}

OperatorPolynomial product_annihilator(const RootMultiset& a, const RootMultiset& b) {
    return expand_roots(product_annihilator_roots(a, b));
}

OperatorPolynomial sum_annihilator(const std::vector<OperatorPolynomial>& ops) {
    if (ops.empty()) throw std::invalid_argument("sum annihilator needs at least one operator");
    OperatorPolynomial acc = OperatorPolynomial::identity();
    for (const auto& op : ops) acc = acc * op;
    return acc;
}

NinePowerFactorization powers_of_nine_factorization(const OperatorPolynomial& op, unsigned kMax) {
    NinePowerFactorization out;
    OperatorPolynomial rest = op;
    for (unsigned k = 0; k <= kMax; ++k) {
        Rational root = rational_pow(Rational(9), static_cast<long>(k));
        unsigned mult = 0;
        while (true) {
            auto q = rest.divide_by_linear(root);
            if (!q) break;
            rest = std::move(*q);
            ++mult;
        }
        if (mult > 0) out.factors.emplace_back(k, mult);
    }
    out.remainder = std::move(rest);
    return out;
}

std::string NinePowerFactorization::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, mult] : factors) {
        if (!first) os << " ";
        first = false;
        os << "(E-" << integer_pow(9, k).str() << ")^" << mult;
    }
    if (!full_success()) {
        if (!first) os << " * ";
        os << "remainder " << remainder.to_string();
    } else if (!remainder.is_identity()) {
        if (!first) os << " * ";
        os << circuitarray::to_string(remainder.coefficients()[0]);
    }
    if (first && full_success() && remainder.is_identity()) return "1";
    return os.str();
}

RootMultiset NinePowerFactorization::roots() const {
    RootMultiset out;
    for (const auto& [k, mult] : factors)
        out.emplace_back(rational_pow(Rational(9), static_cast<long>(k)), mult);
    return out;
}

std::optional<RootMultiset> minimize_nine_power_annihilator(const ExactSequence& g,
                                                            RootMultiset multiset) {
    if (!annihilates(expand_roots(multiset), g)) return std::nullopt;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < multiset.size(); ++i) {
            if (multiset[i].second == 0) continue;
            RootMultiset trial = multiset;
            trial[i].second -= 1;
            OperatorPolynomial t = expand_roots(trial);
            if (g.terms.size() > t.degree() && annihilates(t, g)) {
                multiset = std::move(trial);
                changed = true;
            }
        }
    }
    std::erase_if(multiset, [](const auto& rm) { return rm.second == 0; });
    return multiset;
}

RowCoefficientSequences coefficient_sequences(const CircuitArrayTable& table, int row, Part part) {
    int s0 = row_start_column(row);
    if (!table.has(row, s0)) throw std::out_of_range("row absent from table");
    RowCoefficientSequences out;
    out.row = row;
    out.startColumn = s0;
    out.part = part;
    std::size_t arity = table.variables().size();
    std::vector<Polynomial> parts;
    for (int j = s0; j <= table.max_column(); ++j) {
        if (!table.has(row, j)) break;
        const RationalFunction& f = table.at(row, j);
        auto c = f.canonical();
        out.contents.push_back(c.content);
        parts.push_back(part == Part::Num ? f.numerator_part() : f.denominator_part());
    }
    std::size_t count = parts.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
        for (const auto& [e, coef] : parts[idx].terms()) {
            auto [it, inserted] = out.byMonomial.try_emplace(
                e, ExactSequence{std::vector<Rational>(count, Rational(0)), s0});
            it->second.terms[idx] = coef;
        }
    }
    (void)arity;
    return out;
}

std::string monomial_key_name(const Exponents& e, const std::vector<std::string>& variables) {
    if (variables.empty()) return "1";
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (any) os << "*";
        os << variables[i];
        if (e[i] > 1) os << "^" << e[i];
        any = true;
    }
    return any ? os.str() : "1";
}

std::vector<Rational> read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sequence file: " + path);
    std::vector<Rational> out;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        out.push_back(parse_rational(line));
    }
    if (out.empty()) throw std::runtime_error("sequence file has no terms: " + path);
    return out;
}

std::string operator_factored_text(const OperatorPolynomial& op, unsigned kMax) {
    return powers_of_nine_factorization(op, kMax).to_string();
}

}  // namespace circuitarray
