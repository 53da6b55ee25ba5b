#pragma once

#include <iosfwd>
#include <json.hpp>

#include "ladder/duration_solver.hpp"
#include "ladder/exact_solvers.hpp"
#include "ladder/montecarlo.hpp"
#include "ladder/recurrence_analysis.hpp"
#include "ladder/validation.hpp"

namespace ladder {

using Json = nlohmann::json;

// JSON encodings. Numbers use shortest round-trip formatting, so decoding
// reproduces every double bit for bit.
void to_json(Json& j, const MethodInfo& m);
void from_json(const Json& j, MethodInfo& m);
void to_json(Json& j, const RuinSolution& s);
void from_json(const Json& j, RuinSolution& s);
void to_json(Json& j, const DurationSolution& s);
void from_json(const Json& j, DurationSolution& s);
void to_json(Json& j, const MCEstimate& e);
void from_json(const Json& j, MCEstimate& e);
void to_json(Json& j, const RecurrenceReport& r);
void from_json(const Json& j, RecurrenceReport& r);
void to_json(Json& j, const ValidationCheck& c);
void from_json(const Json& j, ValidationCheck& c);
void to_json(Json& j, const ValidationReport& r);

Json params_json(const ChainParams& params);

/// Formats a number exactly as the JSON encoder does, so CSV and JSON carry
/// identical text per value.
std::string format_number(double value);

// CSV encodings, one header line then one row per record.
void write_csv(std::ostream& out, const RuinSolution& s);      // x,alpha,beta
void write_csv(std::ostream& out, const DurationSolution& s);  // x,m,bound
void write_csv(std::ostream& out, const BarrierEstimates& e);
void write_csv(std::ostream& out, const RecurrenceReport& r);
void write_csv(std::ostream& out, const ValidationReport& r);

}  // namespace ladder
