#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "assoc/rational.hpp"

namespace assoc {

// Class in H_3(X; Z)/torsion in a fixed basis.
using HomologyClass = std::vector<long long>;

HomologyClass class_add(const HomologyClass& a, const HomologyClass& b);
HomologyClass class_scale(long long k, const HomologyClass& a);

struct AssocRecord {
    std::string id;
    HomologyClass cls;
    int orientation = 1;  // +1 or -1
    Int iInv = 1;         // |H1| of the underlying 3-manifold, 0 when infinite
    Int isoOrder = 1;     // order of the isotropy group, >= 1
    long flagOffset = 0;  // canonical-flag bookkeeping relative to a baseline
};

// Finite synthetic moduli space: records plus the symmetric rational linking
// pairing (diagonal entries permitted). Immutable in use; transitions build
// new catalogs.
class Catalog {
  public:
    int n = 0;                  // rank of H_3
    std::vector<Rat> gamma;     // the cohomology class pairing areas
    std::vector<AssocRecord> records;

    Rat area(const AssocRecord& r) const;
    Rat area(size_t idx) const { return area(records.at(idx)); }

    size_t index_of(const std::string& id) const;  // throws on unknown id
    std::optional<size_t> find(const std::string& id) const;

    const Rat& linking(size_t i, size_t j) const;
    void set_linking(size_t i, size_t j, Rat v);
    const std::map<std::pair<size_t, size_t>, Rat>& linking_entries() const { return linking_; }

    // scalar weight Or * I / iso of a record
    Rat weight(size_t idx) const;

  private:
    std::map<std::pair<size_t, size_t>, Rat> linking_;  // key i <= j
    static std::pair<size_t, size_t> key(size_t i, size_t j) {
        return i <= j ? std::make_pair(i, j) : std::make_pair(j, i);
    }
};

struct ValidationIssue {
    std::string where;
    std::string what;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> issues;
    // records grouped by area, ascending
    std::vector<std::pair<Rat, std::vector<std::string>>> byArea;
};

ValidationReport validate(const Catalog& c);

// Multiplicative sign assignment on H_3 determined by its values on the
// basis, together with the parity action of flag offsets.
struct FlagStructureModel {
    std::vector<int> signs;  // +-1 per basis class
};

int flag_sign(const FlagStructureModel& f, const HomologyClass& cls, long offset);
FlagStructureModel twist_structure(const FlagStructureModel& f, const std::vector<int>& eps);
std::vector<int> compare_structures(const FlagStructureModel& f, const FlagStructureModel& g);

// Z-torsor difference of two records' flag data.
long flag_difference(const AssocRecord& a, const AssocRecord& b);

}  // namespace assoc
