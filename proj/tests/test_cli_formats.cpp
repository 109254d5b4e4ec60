#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "assoc/json_io.hpp"

using namespace assoc;

TEST_CASE("series round-trips through its serialization") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 9), expn(0, 10);
    for (int t = 0; t < 100; ++t) {
        std::vector<Series::Term> terms;
        for (int i = 0; i < 4; ++i) {
            Rat c = rat(num(rng), den(rng));
            if (c != 0) terms.emplace_back(rat(expn(rng), 3), c);
        }
        Series s(std::move(terms), rng() % 2 ? Cutoff::infinity() : Cutoff::at(rat(7, 2)));
        CHECK(series_from_json(series_to_json(s)) == s);
    }
}

TEST_CASE("exponents are serialized in reduced form") {
    Series s = Series::monomial(rat(2, 4), rat(6, 4));
    Json j = series_to_json(s);
    CHECK(j["terms"][0]["exp"] == "3/2");
    CHECK(j["terms"][0]["coeff"] == "1/2");
}

TEST_CASE("theta round-trip") {
    ThetaPoint t;
    t.lambdas = {Series::monomial(rat(1, 2), rat(1, 2), Cutoff::at(Rat(4))),
                 Series::zero(Cutoff::at(Rat(4)))};
    ThetaPoint back = theta_from_json(theta_to_json(t));
    REQUIRE(back.lambdas.size() == 2);
    CHECK(back.lambdas[0] == t.lambdas[0]);
    CHECK(back.lambdas[1] == t.lambdas[1]);
}

TEST_CASE("gw table round-trip") {
    GwTable t;
    t.n = 2;
    t.gamma = {Rat(1), rat(3, 2)};
    t.cutoff = Rat(5);
    t.gw[{1, 0}] = rat(2, 3);
    t.gw[{0, 2}] = Rat(-1);
    GwTable back = gw_from_json(gw_to_json(t), t.n, t.gamma, t.cutoff);
    CHECK(back.gw == t.gw);
}

TEST_CASE("quasi-identity serialization carries every generator field") {
    QuasiIdentity u;
    u.n = 2;
    u.gens.push_back({rat(3, 2), {1, 0}, Rat(1), {rat(1, 2), Rat(0)}});
    Json j = qi_to_json(u);
    CHECK(j["n"] == 2);
    CHECK(j["generators"][0]["c"] == "3/2");
    CHECK(j["generators"][0]["area0"] == "1");
    CHECK(j["generators"][0]["delta"][0] == "1/2");
}

TEST_CASE("malformed inputs carry field diagnostics") {
    CHECK_THROWS_WITH_AS(series_from_json(Json{{"terms", {{{"exp", "1/0"}, {"coeff", "1"}}}}}),
                         doctest::Contains("series.terms.exp"), std::invalid_argument);
    Json c = {{"n", 1},
              {"gamma", {"1"}},
              {"records", {{{"id", "a"}, {"class", {0}}, {"or", 1}}}}};
    CHECK_THROWS_AS(catalog_from_json(c), std::invalid_argument);  // zero area
    Json badRing = {{"betti", {1, 0, 0, 1, 2, 0, 0, 1}},
                    {"pd", {{"1"}, {"0"}}},
                    {"pairing", {{"1"}}}};
    CHECK_THROWS_AS(ring_from_json(badRing), std::invalid_argument);  // b3 != b4
}

TEST_CASE("form files use one-based indices") {
    Json j = form_to_json(phi0());
    AltForm back = form_from_json(j);
    CHECK(back == phi0());
    bool found123 = false;
    for (const auto& t : j)
        if (t["indices"] == Json::array({1, 2, 3})) found123 = true;
    CHECK(found123);
    Json bad = Json::array({Json{{"indices", {0, 1, 2}}, {"coeff", "1"}}});
    CHECK_THROWS_AS(form_from_json(bad), std::invalid_argument);
}

TEST_CASE("transition files are kind-tagged") {
    Json a = {{"kind", "A"}, {"idPlus", "p"}, {"idMinus", "m"}, {"class", {1}},
              {"row", Json::object()}, {"self", "1/3"}};
    Transition t = transition_from_json(a);
    CHECK(std::holds_alternative<TransitionA>(t));
    Json bad = {{"kind", "Z"}};
    CHECK_THROWS_AS(transition_from_json(bad), std::invalid_argument);
}
