#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "burstpower/channel.hpp"
#include "burstpower/error.hpp"
#include "support.hpp"

using namespace burstpower;
namespace ts = testing_support;

TEST_CASE("outage_probability reference points") {
    const ChannelModel ch;
    CHECK(outage_probability(1.0, 1.0, ch) == doctest::Approx(0.6321205588285577).epsilon(1e-15));
    CHECK(outage_probability(5.0, 0.0, ch) == 0.0);
    CHECK(outage_probability(0.0, 1.0, ch) == 1.0);
}

TEST_CASE("outage_probability rejects negative inputs") {
    const ChannelModel ch;
    CHECK_THROWS_AS(outage_probability(-1.0, 1.0, ch), std::invalid_argument);
    CHECK_THROWS_AS(outage_probability(1.0, -0.5, ch), std::invalid_argument);
}

TEST_CASE("power_for_outage reference points") {
    const ChannelModel ch;
    // -1/ln(0.775)
    CHECK(power_for_outage(0.225, 1.0, ch) == doctest::Approx(3.9232263886263334).epsilon(1e-13));
    CHECK(power_for_outage(0.5, 0.0, ch) == 0.0);
    CHECK(power_for_outage(1.0 - std::exp(-1.0), 1.0, ch) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("power_for_outage degenerate targets") {
    const ChannelModel ch;
    CHECK_THROWS_WITH_AS(power_for_outage(0.0, 1.0, ch), "infinite power required", ModelError);
    CHECK_THROWS_WITH_AS(power_for_outage(1.0, 1.0, ch), "degenerate outage target", ModelError);
    CHECK_THROWS_AS(power_for_outage(1.5, 1.0, ch), std::invalid_argument);
}

TEST_CASE("max_rate reference points") {
    const ChannelModel ch;
    CHECK(max_rate(1.0, ch, 1.0) == doctest::Approx(1.0));
    CHECK(max_rate(3.0, ch, 1.0) == doctest::Approx(2.0));
    CHECK(max_rate(100.0, ch, 1.0) == doctest::Approx(6.658211482751795).epsilon(1e-14));
}

TEST_CASE("generalised fading and noise scale the power linearly") {
    ts::Gen g(11);
    for (int k = 0; k < 200; ++k) {
        ChannelModel ch;
        ch.mean_fading_power = ts::uniform(g, 0.1, 10.0);
        ch.noise_power = ts::uniform(g, 0.01, 5.0);
        const double eps = ts::uniform(g, 0.01, 0.99);
        const double rate = ts::uniform(g, 0.1, 6.0);
        const double unit = power_for_outage(eps, rate, ChannelModel{});
        CHECK(ts::rel_diff(power_for_outage(eps, rate, ch), unit * ch.noise_power / ch.mean_fading_power) < 1e-12);
    }
}

TEST_CASE("channel validation") {
    ChannelModel ch;
    ch.noise_power = 0.0;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
    ch.noise_power = 1.0;
    ch.mean_fading_power = -2.0;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
}

TEST_CASE("property: roundtrip and agreement with the textbook CDF") {
    ts::Gen g(2024);
    const ChannelModel ch;
    for (int k = 0; k < 10000; ++k) {
        const double eps = ts::uniform(g, 1e-9, 1.0 - 1e-9);
        const double rate = ts::uniform(g, 1e-6, 10.0);
        const double p = power_for_outage(eps, rate, ch);
        REQUIRE(ts::rel_diff(outage_probability(p, rate, ch), eps) < 1e-12);
        if (eps > 1e-3 && eps < 0.999) CHECK(ts::rel_diff(ts::rayleigh_outage(p, rate), eps) < 1e-9);
    }
}

TEST_CASE("property: monotonicity") {
    ts::Gen g(5);
    const ChannelModel ch;
    for (int k = 0; k < 2000; ++k) {
        // Outage stays well inside (0, 1) here, so strictness is visible in double.
        const double rate = ts::uniform(g, 0.1, 4.0);
        const double p = ts::uniform(g, 1.0, 100.0);
        const double dp = ts::uniform(g, 0.01, 10.0);
        CHECK(outage_probability(p + dp, rate, ch) < outage_probability(p, rate, ch));
        CHECK(outage_probability(p, rate + 0.05, ch) > outage_probability(p, rate, ch));

        const double eps = ts::uniform(g, 0.01, 0.9);
        CHECK(power_for_outage(eps + 0.05, rate, ch) < power_for_outage(eps, rate, ch));
        CHECK(power_for_outage(eps, rate + 0.05, ch) > power_for_outage(eps, rate, ch));
    }
}
