#include "assoc/json_io.hpp"

#include <fstream>

namespace assoc {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw std::invalid_argument(where + ": " + what);
}

Rat rat_field(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rat((long)j.get<long long>());
    if (!j.is_string()) bad(where, "expected rational as \"p/q\" string");
    try {
        return rat_parse(j.get<std::string>());
    } catch (const std::exception& e) {
        bad(where, e.what());
    }
}

Int int_field(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Int((long)j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    bad(where, "expected integer");
}

}  // namespace

Json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

Json series_to_json(const Series& s) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back({{"exp", rat_str(e)}, {"coeff", rat_str(c)}});
    return Json{{"cutoff", s.cutoff().str()}, {"terms", terms}};
}

Series series_from_json(const Json& j) {
    if (!j.is_object()) bad("series", "expected object");
    Cutoff cut = Cutoff::infinity();
    if (j.contains("cutoff")) {
        const Json& c = j.at("cutoff");
        if (!(c.is_string() && c.get<std::string>() == "inf"))
            cut = Cutoff::at(rat_field(c, "series.cutoff"));
    }
    std::vector<Series::Term> terms;
    for (const auto& t : j.value("terms", Json::array())) {
        Rat e = rat_field(t.at("exp"), "series.terms.exp");
        if (e < 0) bad("series.terms.exp", "exponent must be nonnegative");
        terms.emplace_back(e, rat_field(t.at("coeff"), "series.terms.coeff"));
    }
    return Series(std::move(terms), cut);
}

Json theta_to_json(const ThetaPoint& t) {
    Json lambdas = Json::array();
    for (const auto& l : t.lambdas) lambdas.push_back(series_to_json(l));
    return Json{{"lambdas", lambdas}};
}

ThetaPoint theta_from_json(const Json& j) {
    ThetaPoint t;
    if (!j.is_object() || !j.contains("lambdas")) bad("theta", "expected {\"lambdas\": [...]}");
    for (const auto& l : j.at("lambdas")) t.lambdas.push_back(series_from_json(l));
    return t;
}

Json catalog_to_json(const Catalog& c) {
    Json records = Json::array();
    for (const auto& r : c.records) {
        Json cls = Json::array();
        for (long long x : r.cls) cls.push_back(x);
        records.push_back({{"id", r.id},
                           {"class", cls},
                           {"or", r.orientation},
                           {"i", r.iInv.get_str()},
                           {"iso", r.isoOrder.get_str()},
                           {"flag", r.flagOffset}});
    }
    Json gamma = Json::array();
    for (const auto& g : c.gamma) gamma.push_back(rat_str(g));
    Json linking = Json::array();
    for (const auto& [k, v] : c.linking_entries())
        linking.push_back({{"a", c.records[k.first].id},
                           {"b", c.records[k.second].id},
                           {"value", rat_str(v)}});
    return Json{{"n", c.n}, {"gamma", gamma}, {"records", records}, {"linking", linking}};
}

Catalog catalog_from_json(const Json& j) {
    Catalog c;
    if (!j.is_object()) bad("catalog", "expected object");
    c.n = j.value("n", -1);
    if (c.n < 0) bad("catalog.n", "missing or negative");
    if (!j.contains("gamma")) bad("catalog.gamma", "missing");
    for (const auto& g : j.at("gamma")) c.gamma.push_back(rat_field(g, "catalog.gamma"));
    if ((int)c.gamma.size() != c.n) bad("catalog.gamma", "length != n");
    for (const auto& r : j.value("records", Json::array())) {
        AssocRecord rec;
        rec.id = r.value("id", "");
        if (rec.id.empty()) bad("catalog.records.id", "missing");
        if (!r.contains("class")) bad(rec.id, "missing class");
        for (const auto& x : r.at("class")) rec.cls.push_back(x.get<long long>());
        rec.orientation = r.value("or", 1);
        rec.iInv = int_field(r.value("i", Json(1)), rec.id + ".i");
        rec.isoOrder = int_field(r.value("iso", Json(1)), rec.id + ".iso");
        rec.flagOffset = r.value("flag", 0L);
        c.records.push_back(std::move(rec));
    }
    for (const auto& l : j.value("linking", Json::array())) {
        std::string a = l.value("a", ""), b = l.value("b", "");
        size_t ia = c.index_of(a), ib = c.index_of(b);
        Rat v = rat_field(l.at("value"), "catalog.linking.value");
        // duplicate entries (including transposed ones) must agree
        bool seen = false;
        for (const auto& [k, old] : c.linking_entries())
            if ((k.first == std::min(ia, ib)) && (k.second == std::max(ia, ib))) {
                seen = true;
                if (old != v)
                    bad("catalog.linking",
                        "conflicting entries for (" + a + ", " + b + "): linking must be symmetric");
            }
        if (!seen) c.set_linking(ia, ib, v);
    }
    ValidationReport rep = validate(c);
    if (!rep.ok) bad("catalog." + rep.issues.front().where, rep.issues.front().what);
    return c;
}

Json gw_to_json(const GwTable& t) {
    Json arr = Json::array();
    for (const auto& [cls, v] : t.gw) {
        Json c = Json::array();
        for (long long x : cls) c.push_back(x);
        arr.push_back({{"class", c}, {"gw", rat_str(v)}});
    }
    return arr;
}

GwTable gw_from_json(const Json& j, int n, std::vector<Rat> gamma, Rat cutoff) {
    GwTable t;
    t.n = n;
    t.gamma = std::move(gamma);
    t.cutoff = std::move(cutoff);
    if (!j.is_array()) bad("gw", "expected array");
    for (const auto& e : j) {
        HomologyClass cls;
        for (const auto& x : e.at("class")) cls.push_back(x.get<long long>());
        if ((int)cls.size() != n) bad("gw.class", "length != n");
        Rat v = rat_field(e.at("gw"), "gw.gw");
        if (v != 0) t.gw[cls] = v;
    }
    return t;
}

CohRingData ring_from_json(const Json& j) {
    CohRingData ring;
    if (!j.is_object()) bad("ring", "expected object");
    const Json& betti = j.at("betti");
    if (!betti.is_array() || betti.size() != 8) bad("ring.betti", "expected 8 numbers");
    for (int i = 0; i < 8; ++i) ring.betti[i] = betti[i].get<int>();

    auto ensure_block = [&](int k, int l) -> std::vector<std::vector<RatVec>>& {
        auto& block = ring.cup[{k, l}];
        if (block.empty())
            block.assign((size_t)ring.betti[k],
                         std::vector<RatVec>((size_t)ring.betti[l],
                                             RatVec((size_t)ring.betti[k + l], Rat(0))));
        return block;
    };
    for (const auto& t : j.value("cup", Json::array())) {
        int k = t.at("k").get<int>(), l = t.at("l").get<int>();
        int i = t.at("i").get<int>(), jj = t.at("j").get<int>(), m = t.at("m").get<int>();
        if (k < 0 || l < 0 || k + l > 7) bad("ring.cup", "degrees out of range");
        if (i >= ring.betti[k] || jj >= ring.betti[l] || m >= ring.betti[k + l])
            bad("ring.cup", "basis index out of range");
        ensure_block(k, l)[(size_t)i][(size_t)jj][(size_t)m] = rat_field(t.at("c"), "ring.cup.c");
    }
    // fill unit blocks and graded transposes that were left implicit
    for (int l = 0; l <= 7; ++l) {
        auto& b0l = ensure_block(0, l);
        auto& bl0 = ensure_block(l, 0);
        bool empty0 = true, emptyl = true;
        for (const auto& row : b0l)
            for (const auto& c : row)
                for (const auto& x : c) empty0 = empty0 && x == 0;
        for (const auto& row : bl0)
            for (const auto& c : row)
                for (const auto& x : c) emptyl = emptyl && x == 0;
        if (empty0)
            for (int jj = 0; jj < ring.betti[l]; ++jj) b0l[0][(size_t)jj][(size_t)jj] = 1;
        if (emptyl)
            for (int jj = 0; jj < ring.betti[l]; ++jj) bl0[(size_t)jj][0][(size_t)jj] = 1;
    }
    for (int k = 0; k <= 7; ++k)
        for (int l = k + 1; k + l <= 7; ++l) {
            bool haveKL = ring.cup.count({k, l}), haveLK = ring.cup.count({l, k});
            if (haveKL == haveLK) continue;
            int sign = (k * l) % 2 == 0 ? 1 : -1;
            if (haveKL) {
                auto& src = ring.cup[{k, l}];
                auto& dst = ensure_block(l, k);
                for (int i = 0; i < ring.betti[k]; ++i)
                    for (int jj = 0; jj < ring.betti[l]; ++jj)
                        for (int m = 0; m < ring.betti[k + l]; ++m)
                            dst[(size_t)jj][(size_t)i][(size_t)m] =
                                Rat(sign) * src[(size_t)i][(size_t)jj][(size_t)m];
            } else {
                auto& src = ring.cup[{l, k}];
                auto& dst = ensure_block(k, l);
                for (int i = 0; i < ring.betti[k]; ++i)
                    for (int jj = 0; jj < ring.betti[l]; ++jj)
                        for (int m = 0; m < ring.betti[k + l]; ++m)
                            dst[(size_t)i][(size_t)jj][(size_t)m] =
                                Rat(sign) * src[(size_t)jj][(size_t)i][(size_t)m];
            }
        }

    auto mat_field = [&](const char* name, int rows, int cols) {
        RatMat m;
        if (!j.contains(name)) bad(std::string("ring.") + name, "missing");
        for (const auto& row : j.at(name)) {
            RatVec r;
            for (const auto& x : row) r.push_back(rat_field(x, std::string("ring.") + name));
            m.push_back(std::move(r));
        }
        if ((int)m.size() != rows) bad(std::string("ring.") + name, "row count mismatch");
        for (const auto& r : m)
            if ((int)r.size() != cols) bad(std::string("ring.") + name, "column count mismatch");
        return m;
    };
    ring.pd = mat_field("pd", ring.betti[4], ring.betti[3]);
    ring.pairing = mat_field("pairing", ring.betti[3], ring.betti[3]);

    auto issues = validate_ring(ring);
    if (!issues.empty()) bad("ring", issues.front().what);
    return ring;
}

ConeSmoothingInput prop51_from_json(const Json& j) {
    ConeSmoothingInput in;
    if (!j.is_object()) bad("prop51", "expected object");
    in.presentationOfP.generators = j.value("generators", -1);
    if (in.presentationOfP.generators < 0) bad("prop51.generators", "missing or negative");
    for (const auto& row : j.value("relations", Json::array())) {
        std::vector<Int> r;
        for (const auto& x : row) r.push_back(int_field(x, "prop51.relations"));
        if ((int)r.size() != in.presentationOfP.generators)
            bad("prop51.relations", "row length != generators");
        in.presentationOfP.relations.push_back(std::move(r));
    }
    if (!j.contains("rho")) bad("prop51.rho", "missing");
    for (const auto& row : j.at("rho")) {
        std::vector<Int> r;
        for (const auto& x : row) r.push_back(int_field(x, "prop51.rho"));
        if ((int)r.size() != in.presentationOfP.generators)
            bad("prop51.rho", "row length != generators");
        in.rho.push_back(std::move(r));
    }
    if (in.rho.size() != 2) bad("prop51.rho", "expected exactly two rows");
    return in;
}

AltForm form_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) bad("form", "expected nonempty array of terms");
    int degree = (int)j.front().at("indices").size();
    AltForm f(degree);
    for (const auto& t : j) {
        std::vector<int> idx;
        for (const auto& x : t.at("indices")) {
            int i = x.get<int>();
            if (i < 1 || i > 7) bad("form.indices", "indices are 1-based in 1..7");
            idx.push_back(i - 1);
        }
        if ((int)idx.size() != degree) bad("form.indices", "mixed degrees");
        f.add_term(std::move(idx), rat_field(t.at("coeff"), "form.coeff"));
    }
    return f;
}

Json form_to_json(const AltForm& f) {
    Json arr = Json::array();
    for (const auto& [idx, c] : f.terms()) {
        Json ind = Json::array();
        for (int i : idx) ind.push_back(i + 1);
        arr.push_back({{"indices", ind}, {"coeff", rat_str(c)}});
    }
    return arr;
}

Transition transition_from_json(const Json& j) {
    if (!j.is_object()) bad("transition", "expected object");
    std::string kind = j.value("kind", "");
    if (kind == "A") {
        TransitionA t;
        t.idPlus = j.at("idPlus").get<std::string>();
        t.idMinus = j.at("idMinus").get<std::string>();
        for (const auto& x : j.at("class")) t.cls.push_back(x.get<long long>());
        t.iInv = int_field(j.value("i", Json(1)), "transition.i");
        t.isoOrder = int_field(j.value("iso", Json(1)), "transition.iso");
        t.flagOffset = j.value("flag", 0L);
        Json row = j.value("row", Json::object());
        for (const auto& [id, v] : row.items())
            t.row.emplace_back(id, rat_field(v, "transition.row"));
        t.selfLink = j.contains("self") ? rat_field(j.at("self"), "transition.self") : Rat(0);
        return t;
    }
    if (kind == "B") {
        TransitionB t;
        t.plus = j.at("plus").get<std::string>();
        t.minus = j.at("minus").get<std::string>();
        t.newId = j.at("newId").get<std::string>();
        t.eps = j.value("eps", 1);
        t.deltaSign = j.value("deltaSign", 1);
        return t;
    }
    if (kind == "C") {
        TransitionC t;
        t.record = j.at("record").get<std::string>();
        t.newId = j.at("newId").get<std::string>();
        t.deltaSign = j.value("deltaSign", 1);
        return t;
    }
    if (kind == "D") {
        TransitionD t;
        t.record = j.at("record").get<std::string>();
        t.newId = j.at("newId").get<std::string>();
        t.eps = j.value("eps", 1);
        t.deltaSign = j.value("deltaSign", 1);
        return t;
    }
    if (kind == "E") {
        TransitionE t;
        t.remove = j.at("remove").get<std::string>();
        t.id2 = j.at("id2").get<std::string>();
        t.id3 = j.at("id3").get<std::string>();
        t.or2 = j.value("or2", 1);
        t.or3 = j.value("or3", 1);
        t.i2 = int_field(j.value("i2", Json(1)), "transition.i2");
        t.i3 = int_field(j.value("i3", Json(1)), "transition.i3");
        t.iso2 = int_field(j.value("iso2", Json(1)), "transition.iso2");
        t.iso3 = int_field(j.value("iso3", Json(1)), "transition.iso3");
        t.flag2 = j.value("flag2", 0L);
        t.flag3 = j.value("flag3", 0L);
        return t;
    }
    if (kind == "X") {
        TransitionX t;
        t.record = j.at("record").get<std::string>();
        for (const auto& x : j.at("delta")) t.delta.push_back(rat_field(x, "transition.delta"));
        t.eps = j.value("eps", 1);
        return t;
    }
    bad("transition.kind", "expected one of A, B, C, D, E, X");
}

Json qi_to_json(const QuasiIdentity& u) {
    Json gens = Json::array();
    for (const auto& g : u.gens) {
        Json alpha = Json::array();
        for (long long x : g.alpha0) alpha.push_back(x);
        Json delta = Json::array();
        for (const auto& d : g.delta) delta.push_back(rat_str(d));
        gens.push_back(
            {{"c", rat_str(g.c)}, {"alpha0", alpha}, {"area0", rat_str(g.area0)}, {"delta", delta}});
    }
    return Json{{"n", u.n}, {"generators", gens}};
}

}  // namespace assoc
