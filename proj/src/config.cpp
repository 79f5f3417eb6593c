#include "burstpower/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string_view>

namespace burstpower {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view text) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::string format_location(const std::string& source, int line, const std::string& key) {
    std::string loc = source;
    if (line > 0) loc += ":" + std::to_string(line);
    if (!key.empty()) loc += ": " + key;
    return loc;
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& key, const std::string& message)
    : std::invalid_argument(format_location(source, line, key) + ": " + message), line_(line), key_(key) {}

double dbw_to_watts(double dbw) { return std::pow(10.0, dbw / 10.0); }

RunConfig parse_config(std::istream& in, const std::string& source) {
    RunConfig cfg;
    ProblemSpec& spec = cfg.spec;
    AnnealingSchedule& sched = cfg.schedule;
    std::optional<double> r_max;
    std::optional<double> peak_dbw;
    std::optional<double> peak_w;

    using Setter = std::function<bool(std::string_view)>;
    auto real = [](auto& field) -> Setter {
        return [&field](std::string_view v) {
            auto x = parse_number<double>(v);
            if (!x || !std::isfinite(*x)) return false;
            field = *x;
            return true;
        };
    };
    auto integer = [](int& field) -> Setter {
        return [&field](std::string_view v) {
            auto x = parse_number<int>(v);
            if (!x) return false;
            field = *x;
            return true;
        };
    };

    const std::map<std::string, Setter, std::less<>> setters = {
        {"gamma", real(spec.gamma)},
        {"n", integer(spec.n_states)},
        {"eps_out", real(spec.eps_out)},
        {"rate", real(spec.avg_rate)},
        {"r_min", real(spec.r_min)},
        {"r_max", real(r_max)},
        {"peak_power_dbw", real(peak_dbw)},
        {"peak_power_w", real(peak_w)},
        {"noise_power", real(spec.channel.noise_power)},
        {"mean_fading_power", real(spec.channel.mean_fading_power)},
        {"t0", real(sched.t0)},
        {"c_sa", real(sched.c_sa)},
        {"t_min", real(sched.t_min)},
        {"outer_per_temp", integer(sched.outer_per_temp)},
        {"rate_inner", integer(sched.rate_inner)},
        {"seed",
         [&sched](std::string_view v) {
             auto x = parse_number<std::uint64_t>(v);
             if (!x) return false;
             sched.seed = *x;
             return true;
         }},
    };

    std::set<std::string, std::less<>> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(source, line_no, "", "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(source, line_no, key, "unknown key");
        if (!seen.insert(key).second) throw ConfigError(source, line_no, key, "duplicate key");
        if (value.empty()) throw ConfigError(source, line_no, key, "missing value");
        if (!it->second(value)) throw ConfigError(source, line_no, key, "cannot parse '" + std::string(value) + "'");
    }

    if (peak_dbw && peak_w) throw ConfigError(source, 0, "peak_power_w", "give peak power in dBW or in watts, not both");
    if (peak_dbw) spec.peak_power = dbw_to_watts(*peak_dbw);
    if (peak_w) spec.peak_power = *peak_w;

    try {
        spec.channel.validate();
        if (!(spec.peak_power > 0.0)) throw std::invalid_argument("peak_power must be positive");
        spec.r_max = r_max ? *r_max : max_rate(spec.peak_power, spec.channel, spec.channel.mean_fading_power);
        spec.validate();
        sched.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(source, 0, "", e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), 0, "", "cannot open file");
    return parse_config(in, path.string());
}

}  // namespace burstpower
