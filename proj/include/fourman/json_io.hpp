#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "fourman/ringcalc.hpp"
#include "fourman/series.hpp"
#include "fourman/topology.hpp"

namespace fourman {

using Json = nlohmann::json;

// FNV-1a, 64-bit; the report digest is the hex form over a canonical dump.
std::uint64_t fnv1a64(std::string_view s);
std::string digest_string(const Json& inputs);

// Reads a JSON document; "-" means stdin. A report document is accepted too:
// its results.record is unwrapped so emitted reports re-ingest directly.
Json load_json(const std::string& path);

ManifoldRecord record_from_json(const Json& j);
Json record_to_json(const ManifoldRecord& rec);

Json vector_to_json(const LatticeVector& v);
LatticeVector vector_from_json(const Json& j);
Json gram_to_json(const GramMatrix& g);
GramMatrix gram_from_json(const Json& j);

TruncatedSeries series_from_json(const Json& j);
Json series_to_json(const TruncatedSeries& s);

Json class_to_json(const BigradedClass& c);
Json congruence_to_json(const CongruenceOutcome& c);
Json suite_to_json(const BlowupSuiteReport& rep);

}  // namespace fourman
