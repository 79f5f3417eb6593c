#include "burstpower/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "burstpower/error.hpp"

namespace burstpower {

namespace {

// 2^rate - 1 without cancellation at small rates.
double snr_threshold(double rate) { return std::expm1(rate * std::numbers::ln2); }

}  // namespace

void ChannelModel::validate() const {
    if (!(mean_fading_power > 0.0) || !std::isfinite(mean_fading_power))
        throw std::invalid_argument("mean_fading_power must be positive");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        throw std::invalid_argument("noise_power must be positive");
}

double outage_probability(double power, double rate, const ChannelModel& ch) {
    if (!(power >= 0.0)) throw std::invalid_argument("power must be non-negative");
    if (!(rate >= 0.0)) throw std::invalid_argument("rate must be non-negative");
    if (rate == 0.0) return 0.0;
    if (power == 0.0) return 1.0;
    const double x = snr_threshold(rate) * ch.noise_power / (power * ch.mean_fading_power);
    return -std::expm1(-x);
}

double power_for_outage(double epsilon, double rate, const ChannelModel& ch) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("epsilon must lie in [0, 1]");
    if (!(rate >= 0.0)) throw std::invalid_argument("rate must be non-negative");
    if (epsilon == 1.0) throw ModelError("degenerate outage target");
    if (rate == 0.0) return 0.0;
    if (epsilon == 0.0) throw ModelError("infinite power required");
    const double neg_log = -std::log1p(-epsilon);
    return snr_threshold(rate) * ch.noise_power / (neg_log * ch.mean_fading_power);
}

double max_rate(double peak_power, const ChannelModel& ch, double reference_gain) {
    if (!(peak_power > 0.0)) throw std::invalid_argument("peak_power must be positive");
    if (!(reference_gain > 0.0)) throw std::invalid_argument("reference_gain must be positive");
    return std::log2(1.0 + peak_power * reference_gain / ch.noise_power);
}

}  // namespace burstpower
