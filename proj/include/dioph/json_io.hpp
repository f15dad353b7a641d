#pragma once

#include "json.hpp"

#include "dioph/approxfn.hpp"
#include "dioph/ia_channel.hpp"
#include "dioph/logreal.hpp"
#include "dioph/manifold.hpp"
#include "dioph/scalar_bounds.hpp"
#include "dioph/verifier.hpp"

// JSON views of every report type. Log-domain constants serialize as
// {"log10": ..., "value": ...} where value is null outside |log10| < 280;
// field names here are the stable external contract.

namespace dioph {

nlohmann::json to_json(const LogReal& v);

nlohmann::json to_json(const ApproxFunction& psi);
ApproxFunction approx_function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DensityModel& d);
DensityModel density_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ApproxSummary& s);

nlohmann::json to_json(const KappaReport& r);
nlohmann::json to_json(const GaussianScalarReport& r);

nlohmann::json to_json(const ConstantsLedger& led);

nlohmann::json to_json(const TrialConfig& cfg);
TrialConfig trial_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TrialReport& rep);

nlohmann::json to_json(const WMeasureReport& rep);

nlohmann::json to_json(const OutcomeSet& o);
nlohmann::json to_json(const ChannelInstance& ch);
ChannelInstance channel_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepConfig& cfg, const ChannelInstance& ch, Precoding pre);
struct SweepBundle {
  ChannelInstance channel;
  Precoding precoding = Precoding::aligned;
  SweepConfig config;
};
SweepBundle sweep_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<SweepRow>& rows);

}  // namespace dioph
