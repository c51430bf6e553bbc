#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "biotfs/experiment.hpp"
#include "biotfs/verification.hpp"

namespace biotfs {

// JSON documents, pretty-printed with round-trip double precision. The
// schema is described in docs/report_schema.md. Non-finite numbers are
// written as null.
std::string to_json(const EstimateReport& report);
std::string to_json(const SolveReport& report);
std::string to_json(const SweepReport& report);
std::string to_json(const VerificationReport& report);

EstimateReport estimate_report_from_json(const std::string& text);
SweepReport sweep_report_from_json(const std::string& text);

/// Header `n,h,D,L,avg_iterations,diverged`, one row per (n, D), shortest
/// round-trip number formatting.
void write_sweep_csv(std::ostream& os, const SweepReport& report);
std::vector<SweepRow> read_sweep_csv(std::istream& is);

}  // namespace biotfs
