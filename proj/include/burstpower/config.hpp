#pragma once

#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>

#include "burstpower/annealer.hpp"

namespace burstpower {

/// Problem + schedule loaded from a flat `key = value` file. `#` starts a
/// comment. Recognised keys:
///
///   gamma n eps_out rate r_min r_max peak_power_dbw | peak_power_w
///   noise_power mean_fading_power t0 c_sa t_min outer_per_temp rate_inner seed
///
/// Unset keys keep the experiment preset (unit fading and noise, 20 dBW peak,
/// r_min 0.001, gamma 0.2, N 1, eps_out 0.1, rate 1). r_max defaults to the
/// Shannon rate at peak power with the mean fading gain.
struct RunConfig {
    ProblemSpec spec;
    AnnealingSchedule schedule;
};

class ConfigError : public std::invalid_argument {
public:
    ConfigError(const std::string& source, int line, const std::string& key, const std::string& message);

    int line() const noexcept { return line_; }
    const std::string& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

RunConfig parse_config(std::istream& in, const std::string& source = "<input>");
RunConfig load_config(const std::filesystem::path& path);

double dbw_to_watts(double dbw);

}  // namespace burstpower
