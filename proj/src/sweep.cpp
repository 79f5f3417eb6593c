#include "burstpower/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace burstpower {

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::EpsOut: return "eps_out";
        case SweepAxis::NStates: return "n";
        case SweepAxis::Gamma: return "gamma";
        case SweepAxis::Rate: return "rate";
    }
    return "?";
}

std::optional<SweepAxis> parse_axis(std::string_view name) {
    if (name == "eps_out") return SweepAxis::EpsOut;
    if (name == "n") return SweepAxis::NStates;
    if (name == "gamma") return SweepAxis::Gamma;
    if (name == "rate") return SweepAxis::Rate;
    return std::nullopt;
}

void SweepRequest::validate() const {
    if (values.empty()) throw std::invalid_argument("sweep range is empty");
    if (values.size() >= 2) {
        const bool up = values[1] > values[0];
        for (std::size_t i = 1; i < values.size(); ++i) {
            const bool ok = up ? values[i] > values[i - 1] : values[i] < values[i - 1];
            if (!ok) throw std::invalid_argument("sweep values must be strictly monotone");
        }
    }
    for (double v : values)
        if (!std::isfinite(v)) throw std::invalid_argument("sweep values must be finite");
    if (closed_form_grid < 2) throw std::invalid_argument("closed_form_grid must be >= 2");
}

ProblemSpec apply_axis(ProblemSpec base, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::EpsOut: base.eps_out = value; break;
        case SweepAxis::Gamma: base.gamma = value; break;
        case SweepAxis::Rate: base.avg_rate = value; break;
        case SweepAxis::NStates:
            if (value < 1.0 || value != std::floor(value))
                throw std::invalid_argument("n sweep values must be integers >= 1");
            base.n_states = static_cast<int>(value);
            break;
    }
    return base;
}

SweepRow solve_point(const SweepRequest& request, std::size_t index) {
    SweepRow row;
    row.index = index;
    row.axis_value = request.values.at(index);
    row.spec = request.base;
    row.schedule = request.schedule;
    row.schedule.seed = derive_seed(request.schedule.seed, index);
    try {
        row.spec = apply_axis(request.base, request.axis, row.axis_value);
        row.spec.validate();
    } catch (const std::exception& e) {
        row.error = e.what();
        return row;
    }
    try {
        row.result = solve(request.problem, row.spec, row.schedule);
    } catch (const std::exception& e) {
        row.error = e.what();
    }

    if (row.spec.n_states == 1) {
        try {
            row.closed_form_boundary = request.problem == Problem::Fixed
                                           ? n1_fixed_solution(row.spec).solution.avg_power
                                           : n1_variable_solution(row.spec, row.spec.r_min).avg_power;
        } catch (const std::exception&) {
        }
        try {
            row.closed_form_search = request.problem == Problem::Fixed
                                         ? n1_fixed_search(row.spec, request.closed_form_grid).avg_power
                                         : n1_variable_search(row.spec, request.closed_form_grid).avg_power;
        } catch (const std::exception&) {
        }
    }
    return row;
}

}  // namespace burstpower
