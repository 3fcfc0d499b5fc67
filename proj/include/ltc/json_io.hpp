#pragma once

// JSON encodings of the public value types. Decoders are strict: unknown
// keys and wrongly typed values raise ConfigError.

#include <json.hpp>

#include <string>

#include "ltc/constants.hpp"
#include "ltc/optimize.hpp"
#include "ltc/verify.hpp"

namespace ltc {

using Json = nlohmann::ordered_json;

/// Rounds to 15 significant digits, the precision of every machine-readable
/// output.
double round15(double value);

Json to_json(const FFamily& fam);
Json to_json(const PhiFamily& phi);
Json to_json(const BoundReport& report);
Json to_json(const TrialParams& params);
Json to_json(const OptResult& result);
Json to_json(const OptConfig& cfg);
Json to_json(const PotentialSpec& pot);
Json to_json(const GridSpec& grid);
Json to_json(const SpectrumResult& result);
Json to_json(const InequalityCheck& check);

/// Rebuilds and re-normalizes the family; a stored mu or c that disagrees
/// with the normalization by more than 1e-9 relative is rejected.
FFamily f_family_from_json(const Json& j);
PhiFamily phi_family_from_json(const Json& j);
BoundReport bound_report_from_json(const Json& j);
TrialParams trial_params_from_json(const Json& j);
OptConfig opt_config_from_json(const Json& j);
PotentialSpec potential_from_json(const Json& j);
GridSpec grid_from_json(const Json& j);

}  // namespace ltc
