#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "assoc/catalog.hpp"
#include "assoc/json_io.hpp"

using namespace assoc;

namespace {

Catalog two_record_catalog() {
    Catalog c;
    c.n = 2;
    c.gamma = {Rat(1), Rat(1)};
    c.records.push_back({"a", {1, 0}, 1, Int(1), Int(1), 0});
    c.records.push_back({"b", {0, 1}, -1, Int(2), Int(1), 1});
    c.set_linking(0, 1, rat(1, 2));
    return c;
}

}  // namespace

TEST_CASE("empty catalog is valid") {
    Catalog c;
    c.n = 1;
    c.gamma = {Rat(1)};
    CHECK(validate(c).ok);
}

TEST_CASE("zero-area records are rejected") {
    Catalog c;
    c.n = 2;
    c.gamma = {Rat(1), Rat(1)};
    c.records.push_back({"a", {1, -1}, 1, Int(1), Int(1), 0});
    auto rep = validate(c);
    CHECK(!rep.ok);
    CHECK(rep.issues.front().where == "a");
}

TEST_CASE("validation groups records by area") {
    Catalog c = two_record_catalog();
    c.records.push_back({"c", {1, 0}, 1, Int(1), Int(1), 0});
    auto rep = validate(c);
    REQUIRE(rep.ok);
    REQUIRE(rep.byArea.size() == 1);  // all areas equal 1
    CHECK(rep.byArea[0].second.size() == 3);
}

TEST_CASE("symmetric catalogs round-trip; transposed corruption is rejected") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    Catalog c;
    c.n = 2;
    c.gamma = {Rat(1), rat(3, 2)};
    for (int i = 0; i < 5; ++i)
        c.records.push_back({"r" + std::to_string(i),
                             {1 + (long long)(rng() % 2), (long long)(rng() % 3)},
                             rng() % 2 ? 1 : -1,
                             Int((long)(rng() % 4)),
                             Int(1 + (long)(rng() % 3)),
                             (long)(rng() % 5)});
    for (size_t i = 0; i < 5; ++i)
        for (size_t j = i; j < 5; ++j) c.set_linking(i, j, rat(num(rng), den(rng)));
    Json j = catalog_to_json(c);
    Catalog back = catalog_from_json(j);
    CHECK(back.records.size() == c.records.size());
    for (size_t i = 0; i < 5; ++i)
        for (size_t jdx = 0; jdx < 5; ++jdx) CHECK(back.linking(i, jdx) == c.linking(i, jdx));

    // corrupt: add the transposed entry with a different value
    Json corrupted = j;
    corrupted["linking"].push_back({{"a", "r1"}, {"b", "r0"}, {"value", "99"}});
    bool hasEntry01 = false;
    for (const auto& l : j["linking"])
        if ((l["a"] == "r0" && l["b"] == "r1")) hasEntry01 = true;
    if (hasEntry01) CHECK_THROWS_AS(catalog_from_json(corrupted), std::invalid_argument);
}

TEST_CASE("flag sign parity and multiplicativity") {
    FlagStructureModel f{{1, -1, 1}};
    HomologyClass zero = {0, 0, 0};
    CHECK(flag_sign(f, zero, 0) == 1);
    for (long k = -3; k <= 3; ++k) {
        int expect = (k % 2 == 0) ? 1 : -1;
        CHECK(flag_sign(f, zero, k) == expect);
        CHECK(flag_sign(f, {1, 1, 0}, k) == -expect);
    }
    // multiplicative over class addition and offset addition, exhaustively
    for (long long a0 = -2; a0 <= 2; ++a0)
        for (long long a1 = -2; a1 <= 2; ++a1)
            for (long long b0 = -2; b0 <= 2; ++b0)
                for (long long b1 = -2; b1 <= 2; ++b1)
                    for (long j = 0; j <= 2; ++j)
                        for (long k = 0; k <= 2; ++k)
                            CHECK(flag_sign(f, {a0 + b0, a1 + b1, 0}, j + k) ==
                                  flag_sign(f, {a0, a1, 0}, j) * flag_sign(f, {b0, b1, 0}, k));
}

TEST_CASE("twist and compare round-trip") {
    FlagStructureModel f{{1, 1, -1}};
    std::vector<int> eps = {-1, 1, -1};
    auto g = twist_structure(f, eps);
    CHECK(compare_structures(f, f) == std::vector<int>{1, 1, 1});
    CHECK(compare_structures(g, f) == eps);
    CHECK(twist_structure(g, eps).signs == f.signs);
}

TEST_CASE("flag structures form a torsor for n <= 3") {
    // all 8 structures over n = 3; twisting acts freely and transitively
    std::vector<FlagStructureModel> all;
    for (int mask = 0; mask < 8; ++mask)
        all.push_back({{mask & 1 ? -1 : 1, mask & 2 ? -1 : 1, mask & 4 ? -1 : 1}});
    for (const auto& f : all)
        for (const auto& g : all) {
            auto eps = compare_structures(g, f);
            CHECK(twist_structure(f, eps).signs == g.signs);
            // freeness: trivial eps is the only stabilizer
            if (f.signs == g.signs) CHECK(eps == std::vector<int>{1, 1, 1});
        }
}

TEST_CASE("flag difference shifts like a torsor difference") {
    AssocRecord a{"a", {1}, 1, Int(1), Int(1), 3};
    AssocRecord b{"b", {1}, 1, Int(1), Int(1), 5};
    long base = flag_difference(a, b);
    for (long k1 = -2; k1 <= 2; ++k1)
        for (long k2 = -2; k2 <= 2; ++k2) {
            AssocRecord a2 = a, b2 = b;
            a2.flagOffset += k1;
            b2.flagOffset += k2;
            CHECK(flag_difference(a2, b2) == base - k1 + k2);
        }
}
