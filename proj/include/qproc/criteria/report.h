#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "qproc/criteria/checks.h"
#include "qproc/criteria/counterexample.h"

namespace qproc::criteria {

inline constexpr int kReportSchema = 1;

nlohmann::json trace_json(const std::vector<TraceStep> &trace);
nlohmann::json stats_json(const Stats &stats);
nlohmann::json matrix_json(const quantum::Matrix &m);

/// {schema, check, verdict, reason, witness_trace?, script?, stats, tolerance, seed}
nlohmann::json check_report(const std::string &check, const CheckResult &result, double tolerance, uint64_t seed);
nlohmann::json counterexample_report(const std::vector<CounterexampleRow> &rows, double tolerance, uint64_t seed);
nlohmann::json campaign_report(const CampaignResult &result, const CampaignOptions &options);

/// Two-space indentation and a final newline; keys in sorted order.
std::string render(const nlohmann::json &j);

}  // namespace qproc::criteria
