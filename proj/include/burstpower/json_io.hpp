#pragma once

#include "json.hpp"

#include "burstpower/closed_form.hpp"
#include "burstpower/parallel.hpp"
#include "burstpower/simulator.hpp"

namespace burstpower {

using json = nlohmann::ordered_json;

// Non-finite doubles serialise as null.

json to_json(const ChannelModel& ch);
json to_json(const ProblemSpec& spec);
json to_json(const AnnealingSchedule& schedule);
json to_json(const Policy& policy);
json to_json(const SimReport& report);
json to_json(const ValidationRecord& record);

/// Solver output document: problem, spec, schedule, winning seed, P* and the
/// best policy with its stationary distribution and counters.
json solve_document(Problem problem, const ProblemSpec& spec, const AnnealingSchedule& schedule,
                    const RestartResult& result);

/// Both closed-form N=1 problems with region annotation; sections that have
/// no solution carry an "error" string instead.
json closed_form_document(const ProblemSpec& spec, int grid_points = kDefaultGridPoints);

ChannelModel channel_from_json(const json& j);
ProblemSpec spec_from_json(const json& j);

/// A policy document to simulate: the object must hold "eps" and "rates"
/// (and optionally "powers", which must then match). Accepts either a bare
/// policy, {"policy": ...}, or a solver document ({"best_policy": ..., "spec": ...}).
struct PolicyDocument {
    Policy policy;
    ProblemSpec spec;  // n_states matches the policy; channel from the document
};

PolicyDocument policy_from_json(const json& j);

}  // namespace burstpower
