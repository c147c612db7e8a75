#pragma once

// Stable JSON encoding of reports. Object keys keep insertion order and state
// lists follow the canonical StateSet order, so output is byte-deterministic.

#include <json.hpp>

#include "cuc/analysis.hpp"
#include "cuc/ast.hpp"
#include "cuc/denot.hpp"
#include "cuc/op.hpp"

namespace cuc::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Value& v);
Json to_json(const Config& c);
Json to_json(const StateSet& s);
Json to_json(const ValidationReport& r);
Json to_json(const ReachReport& r);
Json to_json(const DenotReport& r);
Json to_json(const ConformanceReport& r);
Json to_json(const InvariantReport& r);
Json to_json(const InvOplusReport& r);

}  // namespace cuc::cli
