#pragma once

// Block-fading link without transmitter CSI: maps a (power, rate) pair to an
// outage probability and back.

namespace burstpower {

enum class FadingKind { Rayleigh };

struct ChannelModel {
    FadingKind kind = FadingKind::Rayleigh;
    double mean_fading_power = 1.0;  // E[|h|^2]
    double noise_power = 1.0;        // N0, linear watts

    /// Throws std::invalid_argument unless both powers are positive and finite.
    void validate() const;
};

/// Pr[log2(1 + P|h|^2/N0) < rate]. Zero rate is never in outage; zero power
/// with positive rate always is.
double outage_probability(double power, double rate, const ChannelModel& ch);

/// Power that yields outage `epsilon` at `rate`; the inverse of
/// outage_probability at fixed rate. Natural log throughout.
double power_for_outage(double epsilon, double rate, const ChannelModel& ch);

/// Shannon rate at peak power for a deterministic gain proxy.
double max_rate(double peak_power, const ChannelModel& ch, double reference_gain);

}  // namespace burstpower
