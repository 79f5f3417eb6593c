#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "burstpower/annealer.hpp"
#include "burstpower/closed_form.hpp"

namespace burstpower {

enum class SweepAxis { EpsOut, NStates, Gamma, Rate };

std::string_view to_string(SweepAxis axis);
std::optional<SweepAxis> parse_axis(std::string_view name);

struct SweepRequest {
    Problem problem = Problem::Fixed;
    SweepAxis axis = SweepAxis::EpsOut;
    std::vector<double> values;  // strictly monotone
    ProblemSpec base;
    AnnealingSchedule schedule;
    int closed_form_grid = kDefaultGridPoints;

    /// Throws std::invalid_argument for an empty or non-monotone range.
    void validate() const;
};

struct SweepRow {
    std::size_t index = 0;
    double axis_value = 0.0;
    ProblemSpec spec;
    AnnealingSchedule schedule;  // seed is the per-point seed actually used
    std::optional<SolveResult> result;
    std::string error;  // set when result is empty
    std::optional<double> closed_form_boundary;
    std::optional<double> closed_form_search;

    bool feasible() const noexcept { return result.has_value(); }
};

/// Base spec with one field replaced. The n axis requires an integer >= 1.
ProblemSpec apply_axis(ProblemSpec base, SweepAxis axis, double value);

/// Solves one sweep point. Never throws for solver or spec errors; those are
/// recorded in the row.
SweepRow solve_point(const SweepRequest& request, std::size_t index);

}  // namespace burstpower
