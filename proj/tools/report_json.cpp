#include "report_json.hpp"

namespace cuc::cli {

Json to_json(const Value& v) {
  if (is_bool(v)) return std::get<bool>(v);
  return std::get<std::int64_t>(v);
}

Json to_json(const Config& c) {
  Json trace = Json::array();
  for (const auto& ev : c.trace) trace.push_back({{"channel", ev.channel}, {"value", to_json(ev.value)}});
  Json store = Json::object();
  for (const auto& [k, v] : c.store) store[k] = to_json(v);
  return {{"trace", trace}, {"store", store}, {"pc", c.pc}};
}

Json to_json(const StateSet& s) {
  Json out = Json::array();
  for (const auto& c : s) out.push_back(to_json(c));
  return out;
}

Json to_json(const ValidationReport& r) {
  auto diags = [](const std::vector<Diagnostic>& ds) {
    Json out = Json::array();
    for (const auto& d : ds) out.push_back({{"location", d.location}, {"message", d.message}});
    return out;
  };
  return {{"ok", r.ok}, {"errors", diags(r.errors)}, {"warnings", diags(r.warnings)}};
}

Json to_json(const ReachReport& r) {
  return {{"saturated", r.saturated},
          {"steps_used", r.steps_used},
          {"frontier_truncated", r.frontier_truncated},
          {"state_limit_hit", r.state_limit_hit},
          {"state_count", r.states.size()},
          {"states", to_json(r.states)}};
}

Json to_json(const DenotReport& r) {
  return {{"fixpoint_reached", r.fixpoint_reached},
          {"iterations", r.iterations},
          {"frontier_truncated", r.frontier_truncated},
          {"state_limit_hit", r.state_limit_hit},
          {"state_count", r.states.size()},
          {"states", to_json(r.states)}};
}

Json to_json(const ConformanceReport& r) {
  return {{"equal", r.equal},
          {"exhaustive", r.exhaustive},
          {"denotational_states", r.denotational.states.size()},
          {"operational_states", r.operational.states.size()},
          {"only_denotational", to_json(r.only_denotational)},
          {"only_operational", to_json(r.only_operational)}};
}

Json to_json(const InvariantReport& r) {
  return {{"holds", r.holds},
          {"exhaustive", r.exhaustive},
          {"frontier_truncated", r.frontier_truncated},
          {"states_checked", r.states_checked},
          {"counterexample", r.counterexample ? to_json(*r.counterexample) : Json(nullptr)}};
}

Json to_json(const InvOplusReport& r) {
  return {{"holds", r.holds},
          {"exhaustive", r.exhaustive},
          {"rule_consistent", r.rule_consistent},
          {"premise_first", to_json(r.first)},
          {"premise_second", to_json(r.second)},
          {"conclusion", to_json(r.conclusion)}};
}

}  // namespace cuc::cli
