#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "assoc/novikov.hpp"

using namespace assoc;

namespace {

Series mono(long num, long den, long enum_, long eden, const Cutoff& c = Cutoff::infinity()) {
    return Series::monomial(rat(num, den), rat(enum_, eden), c);
}

Series random_series(std::mt19937_64& rng, const Cutoff& cut, int maxTerms = 4,
                     bool positiveVal = false) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4), expn(positiveVal ? 1 : 0, 8);
    std::vector<Series::Term> terms;
    int k = (int)(rng() % (maxTerms + 1));
    for (int i = 0; i < k; ++i) {
        Rat c = rat(num(rng), den(rng));
        if (c == 0) continue;
        terms.emplace_back(rat(expn(rng), 2), c);
    }
    return Series(std::move(terms), cut);
}

// naive term-map merge oracle for addition
Series naive_add(const Series& a, const Series& b) {
    std::map<Rat, Rat> acc;
    for (const auto& [e, c] : a.terms()) acc[e] += c;
    for (const auto& [e, c] : b.terms()) acc[e] += c;
    std::vector<Series::Term> terms(acc.begin(), acc.end());
    return Series(std::move(terms), min(a.cutoff(), b.cutoff()));
}

// brute-force convolution oracle for multiplication
Series naive_mul(const Series& a, const Series& b) {
    std::map<Rat, Rat> acc;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) acc[ea + eb] += ca * cb;
    std::vector<Series::Term> terms(acc.begin(), acc.end());
    return Series(std::move(terms), min(a.cutoff(), b.cutoff()));
}

}  // namespace

TEST_CASE("additive inverse cancels exactly") {
    Series a = mono(1, 1, 1, 2);
    Series b = mono(-1, 1, 1, 2);
    CHECK((a + b).is_zero());
}

TEST_CASE("polynomial addition example") {
    Series one = Series::one();
    Series q = mono(1, 1, 1, 1);
    Series q2 = mono(1, 1, 2, 1);
    Series lhs = (one + q) + (q + q2);
    Series expect = one + mono(2, 1, 1, 1) + q2;
    CHECK(lhs == expect);
}

TEST_CASE("monomial product adds exponents") {
    Series a = mono(1, 1, 1, 2), b = mono(1, 1, 1, 3);
    Series p = a * b;
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms()[0].first == Rat(5, 6));
}

TEST_CASE("telescoping product") {
    Series one = Series::one();
    Series q = mono(1, 1, 1, 1);
    Series q2 = mono(1, 1, 2, 1);
    Series q3 = mono(1, 1, 3, 1);
    CHECK((one + q) * (one - q + q2) == one + q3);
}

TEST_CASE("valuation basics") {
    CHECK(Series::zero().valuation().infinite);
    Series s = mono(3, 1, 2, 1) + mono(1, 1, 1, 2);
    CHECK(s.valuation() == Valuation::at(Rat(1, 2)));
}

TEST_CASE("randomized ring axioms and valuation laws") {
    std::mt19937_64 rng(7);
    Cutoff cut = Cutoff::at(Rat(5));
    for (int i = 0; i < 300; ++i) {
        Series a = random_series(rng, cut), b = random_series(rng, cut),
               c = random_series(rng, cut);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == naive_add(a, b));
        CHECK(a * b == naive_mul(a, b));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a * b) * c == a * (b * c));
        // ultrametric: |a+b| <= max(|a|, |b|), i.e. v(a+b) >= min(v(a), v(b))
        CHECK(!((a + b).valuation() < min(a.valuation(), b.valuation())));
        CHECK(norm_of((a + b).valuation()) <=
              std::max(norm_of(a.valuation()), norm_of(b.valuation())) + 1e-15);
        if (a.valuation() != b.valuation())
            CHECK((a + b).valuation() == min(a.valuation(), b.valuation()));
        // v(ab) = v(a) + v(b) whenever representable below the cutoff
        Valuation sum = a.valuation() + b.valuation();
        if (!sum.infinite && sum.v < Rat(5)) CHECK((a * b).valuation() == sum);
        // truncated integral domain: ab = 0 forces the valuations past the cutoff
        if ((a * b).is_zero()) CHECK(!(sum < Valuation::at(Rat(5))));
    }
}

TEST_CASE("exp of zero is one") { CHECK(exp_pos(Series::zero(Cutoff::at(Rat(5)))) == Series::one(Cutoff::at(Rat(5)))); }

TEST_CASE("exp and log invert each other") {
    Cutoff cut = Cutoff::at(Rat(5));
    Series q = mono(1, 1, 1, 1, cut);
    CHECK(log_unit(exp_pos(q)) == q);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        Series a = random_series(rng, cut, 3, true);
        CHECK(log_unit(exp_pos(a)) == a);
        Series u = Series::one(cut) + a;
        CHECK(exp_pos(log_unit(u)) == u);
    }
}

TEST_CASE("exp matches brute-force composition") {
    // exp(q + q^2) mod q^4 via direct expansion of sum a^k/k!
    Cutoff cut = Cutoff::at(Rat(4));
    Series a = mono(1, 1, 1, 1, cut) + mono(1, 1, 2, 1, cut);
    Series expect = Series::one(cut);
    Series pw = Series::one(cut);
    Rat fact(1);
    for (int k = 1; k <= 4; ++k) {
        pw = naive_mul(pw, a);
        fact *= k;
        expect = naive_add(expect, pw.scaled(1 / fact));
    }
    CHECK(exp_pos(a) == expect);
}

TEST_CASE("geometric inverse example") {
    Cutoff cut = Cutoff::at(Rat(4));
    Series u = Series::one(cut) + mono(1, 1, 1, 1, cut);
    Series inv = unit_pow(u, -1);
    Series expect = Series::one(cut) - mono(1, 1, 1, 1, cut) + mono(1, 1, 2, 1, cut) -
                    mono(1, 1, 3, 1, cut);
    CHECK(inv == expect);
    CHECK(unit_pow(u, 0) == Series::one(cut));
}

TEST_CASE("unit powers invert exactly") {
    std::mt19937_64 rng(13);
    Cutoff cut = Cutoff::at(Rat(5));
    for (int i = 0; i < 100; ++i) {
        Series u = Series::one(cut) + random_series(rng, cut, 3, true);
        Series t = unit_pow(u, 3) * unit_pow(u, -3);
        CHECK(t == Series::one(cut));
        // repeated-multiplication oracle
        Series cube = u * u * u;
        CHECK(unit_pow(u, 3) == cube);
    }
}

TEST_CASE("torsion-free unit group at cutoff") {
    std::mt19937_64 rng(17);
    Cutoff cut = Cutoff::at(Rat(5));
    for (int i = 0; i < 50; ++i) {
        Series a = random_series(rng, cut, 2, true);
        Series u = Series::one(cut) + a;
        if (a.is_zero()) continue;
        for (long k : {1L, 2L, 5L}) CHECK(unit_pow(u, k) != Series::one(cut));
    }
}

TEST_CASE("domain violations throw") {
    Cutoff cut = Cutoff::at(Rat(3));
    Series c1 = Series::one(cut);
    CHECK_THROWS_AS(exp_pos(c1), std::domain_error);
    CHECK_THROWS_AS(log_unit(mono(2, 1, 0, 1, cut)), std::domain_error);
    CHECK_THROWS_AS(unit_pow(mono(3, 1, 1, 2, cut), 2), std::domain_error);
}

TEST_CASE("series printing") {
    CHECK(series_str(Series::zero()) == "0");
    Series s = mono(1, 1, 1, 1) - mono(2, 1, 3, 2) + mono(1, 2, 0, 1);
    CHECK(series_str(s) == "1/2 + q^1 - 2*q^(3/2)");
    CHECK(series_str(mono(1, 1, 1, 1)) == "q^1");
}
