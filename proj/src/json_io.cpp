#include "burstpower/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace burstpower {

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json numbers(std::span<const double> xs) {
    json arr = json::array();
    for (double x : xs) arr.push_back(number(x));
    return arr;
}

json comparison(const Comparison& c) {
    return {{"analytic", number(c.analytic)},
            {"empirical", number(c.empirical)},
            {"std_error", number(c.std_error)},
            {"z", number(c.z)}};
}

std::string_view region_name(FixedRegion r) {
    return r == FixedRegion::BurstDominant ? "bursty packet loss dominant" : "average packet loss dominant";
}

json solution(const ClosedFormSolution& s) {
    return {{"avg_power", number(s.avg_power)},
            {"pi", {number(s.pi.first), number(s.pi.second)}},
            {"policy", to_json(s.policy)}};
}

template <class F>
json guarded(F&& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {{"error", e.what()}};
    }
}

std::vector<double> doubles(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) throw std::invalid_argument(std::string("policy needs an array '") + key + "'");
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw std::invalid_argument(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

json to_json(const ChannelModel& ch) {
    return {{"kind", "rayleigh"}, {"mean_fading_power", ch.mean_fading_power}, {"noise_power", ch.noise_power}};
}

json to_json(const ProblemSpec& spec) {
    return {{"gamma", spec.gamma},
            {"n", spec.n_states},
            {"eps_out", spec.eps_out},
            {"rate", spec.avg_rate},
            {"r_min", spec.r_min},
            {"r_max", spec.r_max},
            {"peak_power_w", spec.peak_power},
            {"noise_power", spec.channel.noise_power},
            {"mean_fading_power", spec.channel.mean_fading_power}};
}

json to_json(const AnnealingSchedule& s) {
    return {{"t0", s.t0 ? json(*s.t0) : json(nullptr)},
            {"c_sa", s.c_sa},
            {"t_min", s.t_min},
            {"outer_per_temp", s.outer_per_temp},
            {"rate_inner", s.rate_inner},
            {"seed", s.seed}};
}

json to_json(const Policy& p) {
    return {{"eps", numbers(p.eps.values())}, {"rates", numbers(p.rates)}, {"powers", numbers(p.powers)}};
}

json to_json(const SimReport& r) {
    json hist = json::object();
    for (const auto& [len, count] : r.run_length_histogram) hist[std::to_string(len)] = count;
    return {{"slots", r.slots},
            {"empirical_gamma", number(r.empirical_gamma)},
            {"empirical_eps_out", r.empirical_eps_out ? number(*r.empirical_eps_out) : json(nullptr)},
            {"occupancy", numbers(r.occupancy)},
            {"state_outage", numbers(r.state_outage)},
            {"run_length_histogram", hist},
            {"avg_power", number(r.avg_power)},
            {"transmitted_rate", number(r.transmitted_rate)},
            {"delivered_rate", number(r.delivered_rate)},
            {"violations", r.violations}};
}

json to_json(const ValidationRecord& v) {
    json occ = json::array();
    for (const auto& c : v.occupancy) occ.push_back(comparison(c));
    json out = json::array();
    for (const auto& c : v.state_outage) out.push_back(comparison(c));
    return {{"gamma", comparison(v.gamma)},
            {"avg_power", comparison(v.avg_power)},
            {"occupancy", occ},
            {"state_outage", out},
            {"eps_out", out.back()},
            {"max_abs_z", number(v.max_abs_z)}};
}

json solve_document(Problem problem, const ProblemSpec& spec, const AnnealingSchedule& schedule,
                    const RestartResult& result) {
    const SolveResult& s = result.best;
    const EvalReport report = evaluate(problem, s.best_policy, spec);
    json sched = to_json(schedule);
    sched["t0_resolved"] = s.t0;
    return {{"problem", to_string(problem)},
            {"spec", to_json(spec)},
            {"schedule", sched},
            {"restarts", result.restarts},
            {"failed_restarts", result.failed},
            {"seed", result.seed},
            {"best_avg_power", number(s.best_avg_power)},
            {"best_policy", to_json(s.best_policy)},
            {"pi", numbers(report.pi.pi)},
            {"gamma_r", number(report.gamma_r)},
            {"avg_rate", number(report.avg_rate_achieved)},
            {"power_ordered", check_power_ordering(s.best_policy.powers)},
            {"accepted_count", s.accepted_count},
            {"feasible_count", s.feasible_count},
            {"evaluated_count", s.evaluated_count},
            {"temperature_steps", s.temperature_steps}};
}

json closed_form_document(const ProblemSpec& spec, int grid_points) {
    if (spec.n_states != 1) throw std::invalid_argument("closed form defined only for N=1");
    spec.validate();
    json fixed = {
        {"region", region_name(fixed_region(spec))},
        {"boundary", guarded([&] { return solution(n1_fixed_solution(spec).solution); })},
        {"search", guarded([&] { return solution(n1_fixed_search(spec, grid_points)); })},
    };
    json variable = {
        {"boundary", guarded([&] { return solution(n1_variable_solution(spec, spec.r_min)); })},
        {"search", guarded([&] { return solution(n1_variable_search(spec, grid_points)); })},
    };
    return {{"spec", to_json(spec)}, {"grid_points", grid_points}, {"fixed", fixed}, {"variable", variable}};
}

ChannelModel channel_from_json(const json& j) {
    ChannelModel ch;
    ch.mean_fading_power = j.value("mean_fading_power", ch.mean_fading_power);
    ch.noise_power = j.value("noise_power", ch.noise_power);
    if (j.contains("kind") && j.at("kind") != "rayleigh") throw std::invalid_argument("only rayleigh fading is supported");
    ch.validate();
    return ch;
}

ProblemSpec spec_from_json(const json& j) {
    ProblemSpec s;
    s.gamma = j.value("gamma", s.gamma);
    s.n_states = j.value("n", s.n_states);
    s.eps_out = j.value("eps_out", s.eps_out);
    s.avg_rate = j.value("rate", s.avg_rate);
    s.r_min = j.value("r_min", s.r_min);
    s.r_max = j.value("r_max", s.r_max);
    s.peak_power = j.value("peak_power_w", s.peak_power);
    s.channel = channel_from_json(j);
    s.validate();
    return s;
}

PolicyDocument policy_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("policy document must be a JSON object");
    const json* body = &j;
    if (j.contains("best_policy")) body = &j.at("best_policy");
    else if (j.contains("policy")) body = &j.at("policy");

    ProblemSpec spec;
    if (j.contains("spec")) spec = spec_from_json(j.at("spec"));
    else if (j.contains("channel")) spec.channel = channel_from_json(j.at("channel"));

    std::vector<double> rates = doubles(*body, "rates");
    Policy policy = make_policy(OutageVector(doubles(*body, "eps")), std::move(rates), spec.channel);
    if (body->contains("powers")) {
        Policy given = policy;
        given.powers = doubles(*body, "powers");
        check_policy_consistent(given, spec.channel);
    }
    if (j.contains("spec") && policy.size() != static_cast<std::size_t>(spec.n_states) + 1)
        throw std::invalid_argument("policy length does not match spec.n");
    spec.n_states = static_cast<int>(policy.size()) - 1;
    return {std::move(policy), spec};
}

}  // namespace burstpower
