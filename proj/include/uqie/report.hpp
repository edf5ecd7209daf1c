#pragma once

// JSON report fragments and CSV writers. Field order is fixed so identical
// runs produce identical files.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "uqie/catalog.hpp"
#include "uqie/comparison.hpp"
#include "uqie/extremal.hpp"
#include "uqie/hypotheses.hpp"
#include "uqie/operator.hpp"

namespace uqie {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "uqie-report/1";

Json to_json(const Bounds& b);
Json to_json(const CapResolution& c);
Json to_json(const AuditReport& a);
Json to_json(const CompactnessAudit& c);
Json to_json(const SolveResult& r);
Json to_json(const OrderingVerdict& v);
Json to_json(const SandwichVerdict& v);
Json to_json(const EpsilonFamily& f);
Json to_json(const CorpusOutcome& o);
Json to_json(const LemmaSummary& s);

// Shortest text that reads back to the same double (17 significant digits).
std::string format_double(double v);

// Columns t, then one per function.
std::string to_csv(const std::vector<std::string>& headers, const std::vector<const GridFunction*>& columns);

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace uqie
