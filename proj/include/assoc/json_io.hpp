#pragma once

#include <nlohmann/json.hpp>

#include "assoc/catalog.hpp"
#include "assoc/g2forms.hpp"
#include "assoc/novikov.hpp"
#include "assoc/qcoh.hpp"
#include "assoc/superpotential.hpp"
#include "assoc/threeman.hpp"
#include "assoc/wallcross.hpp"

namespace assoc {

using Json = nlohmann::json;

// All loaders throw std::invalid_argument with a field diagnostic on
// malformed input.

Json series_to_json(const Series& s);
Series series_from_json(const Json& j);

Json theta_to_json(const ThetaPoint& t);
ThetaPoint theta_from_json(const Json& j);

Json catalog_to_json(const Catalog& c);
Catalog catalog_from_json(const Json& j);

Json gw_to_json(const GwTable& t);
GwTable gw_from_json(const Json& j, int n, std::vector<Rat> gamma, Rat cutoff);

CohRingData ring_from_json(const Json& j);

ConeSmoothingInput prop51_from_json(const Json& j);

AltForm form_from_json(const Json& j);
Json form_to_json(const AltForm& f);

Transition transition_from_json(const Json& j);

Json qi_to_json(const QuasiIdentity& u);

Json parse_file(const std::string& path);  // reads and parses, diagnostics on failure

}  // namespace assoc
