#pragma once

// JSON forms. Scalars are "p/q" strings, vectors and functionals are objects
// from decimal coordinate strings to scalars, and sets are tagged unions on
// "type". Object key order is preserved so reports are byte-stable.

#include <json.hpp>

#include "symdex/extraction.hpp"
#include "symdex/series.hpp"

namespace symdex {

using Json = nlohmann::ordered_json;

Json to_json(const Scalar& value);
Json to_json(const SparseVec& v);
Json to_json(const Functional& f);
Json to_json(const std::vector<SparseVec>& vs);
Json to_json(const SetExpr& set);
Json to_json(const SeriesSpec& s);
Json to_json(const BoundPair& b);
Json to_json(const LowerCertificate& c);
Json to_json(const DeltaResult& r);
Json to_json(const ExtractionTranscript& t);
Json to_json(const EpsTree& tree);

Scalar scalar_from_json(const Json& j);
SparseVec vector_from_json(const Json& j);
Functional functional_from_json(const Json& j);
std::vector<SparseVec> vectors_from_json(const Json& j);
SetExpr set_from_json(const Json& j);
SeriesSpec series_from_json(const Json& j);

/// Optional root "norm" key of a set or series document; Sup when absent.
NormKind norm_from_json(const Json& j);

}  // namespace symdex
