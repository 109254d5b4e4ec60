#include "assoc/catalog.hpp"

#include <algorithm>
#include <stdexcept>

namespace assoc {

HomologyClass class_add(const HomologyClass& a, const HomologyClass& b) {
    if (a.size() != b.size()) throw std::invalid_argument("class length mismatch");
    HomologyClass r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

HomologyClass class_scale(long long k, const HomologyClass& a) {
    HomologyClass r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

Rat Catalog::area(const AssocRecord& r) const {
    if ((int)r.cls.size() != n) throw std::invalid_argument("record class length != n");
    Rat a(0);
    for (int i = 0; i < n; ++i) a += gamma[i] * Rat((long)r.cls[i]);
    return a;
}

size_t Catalog::index_of(const std::string& id) const {
    auto idx = find(id);
    if (!idx) throw std::invalid_argument("unknown record id '" + id + "'");
    return *idx;
}

std::optional<size_t> Catalog::find(const std::string& id) const {
    for (size_t i = 0; i < records.size(); ++i)
        if (records[i].id == id) return i;
    return std::nullopt;
}

const Rat& Catalog::linking(size_t i, size_t j) const {
    static const Rat zero(0);
    auto it = linking_.find(key(i, j));
    return it == linking_.end() ? zero : it->second;
}

void Catalog::set_linking(size_t i, size_t j, Rat v) {
    if (i >= records.size() || j >= records.size())
        throw std::out_of_range("linking index out of range");
    if (v == 0)
        linking_.erase(key(i, j));
    else
        linking_[key(i, j)] = std::move(v);
}

Rat Catalog::weight(size_t idx) const {
    const AssocRecord& r = records.at(idx);
    if (r.isoOrder <= 0) throw std::invalid_argument("isotropy order must be positive");
    return Rat(r.orientation) * Rat(r.iInv) / Rat(r.isoOrder);
}

ValidationReport validate(const Catalog& c) {
    ValidationReport rep;
    auto fail = [&](std::string where, std::string what) {
        rep.ok = false;
        rep.issues.push_back({std::move(where), std::move(what)});
    };
    if ((int)c.gamma.size() != c.n) fail("gamma", "length != n");
    std::vector<std::string> seen;
    std::vector<std::pair<Rat, std::string>> areas;
    for (const auto& r : c.records) {
        if (std::find(seen.begin(), seen.end(), r.id) != seen.end())
            fail(r.id, "duplicate record id");
        seen.push_back(r.id);
        if ((int)r.cls.size() != c.n) {
            fail(r.id, "class length != n");
            continue;
        }
        if (r.orientation != 1 && r.orientation != -1) fail(r.id, "orientation must be +-1");
        if (r.iInv < 0) fail(r.id, "I-invariant must be >= 0");
        if (r.isoOrder < 1) fail(r.id, "isotropy order must be >= 1");
        if ((int)c.gamma.size() == c.n) {
            Rat a = c.area(r);
            if (a <= 0) fail(r.id, "area gamma.[N] = " + rat_str(a) + " is not positive");
            areas.emplace_back(a, r.id);
        }
    }
    std::stable_sort(areas.begin(), areas.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (const auto& [a, id] : areas) {
        if (rep.byArea.empty() || !(rep.byArea.back().first == a)) rep.byArea.push_back({a, {}});
        rep.byArea.back().second.push_back(id);
    }
    for (const auto& [k, v] : c.linking_entries())
        if (k.first >= c.records.size() || k.second >= c.records.size())
            fail("linking", "entry references missing record");
    return rep;
}

int flag_sign(const FlagStructureModel& f, const HomologyClass& cls, long offset) {
    if (f.signs.size() < cls.size()) throw std::invalid_argument("flag structure too short");
    int s = (offset % 2 == 0) ? 1 : -1;
    for (size_t i = 0; i < cls.size(); ++i)
        if (cls[i] % 2 != 0 && f.signs[i] == -1) s = -s;
    return s;
}

FlagStructureModel twist_structure(const FlagStructureModel& f, const std::vector<int>& eps) {
    if (eps.size() != f.signs.size()) throw std::invalid_argument("twist length mismatch");
    FlagStructureModel g = f;
    for (size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] != 1 && eps[i] != -1) throw std::invalid_argument("twist entries must be +-1");
        g.signs[i] *= eps[i];
    }
    return g;
}

std::vector<int> compare_structures(const FlagStructureModel& f, const FlagStructureModel& g) {
    if (f.signs.size() != g.signs.size()) throw std::invalid_argument("structure size mismatch");
    std::vector<int> eps(f.signs.size());
    for (size_t i = 0; i < eps.size(); ++i) eps[i] = f.signs[i] * g.signs[i];
    return eps;
}

long flag_difference(const AssocRecord& a, const AssocRecord& b) {
    return b.flagOffset - a.flagOffset;
}

}  // namespace assoc
