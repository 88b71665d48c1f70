#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "csdp/neuron.hpp"

using namespace csdp;

namespace {

const NeuronParams kDefault{};

// Closed-form rate written out with the measured constants.
double rate_oracle(double i_in) {
    if (i_in <= 365e-9) return 0.0;
    return 1.0 / (0.7 * 120e-15 / (i_in - 365e-9) + 12e-9 + 13e-9);
}

}  // namespace

TEST_CASE("rate is zero at and below the leak") {
    CHECK(spike_rate(kDefault, 0.0) == 0.0);
    CHECK(spike_rate(kDefault, 365e-9) == 0.0);
    CHECK(spike_rate(kDefault, -1e-6) == 0.0);
}

TEST_CASE("rate at 1 uA is about 6.36 MHz") {
    CHECK(spike_rate(kDefault, 1e-6) == doctest::Approx(rate_oracle(1e-6)).epsilon(1e-12));
    CHECK(spike_rate(kDefault, 1e-6) / 1e6 == doctest::Approx(6.36).epsilon(1e-3));
}

TEST_CASE("rate at 3 uA is about 17.6 MHz") {
    CHECK(spike_rate(kDefault, 3e-6) / 1e6 == doctest::Approx(17.6).epsilon(2e-3));
}

TEST_CASE("rate saturates at 40 MHz") {
    CHECK(kDefault.max_rate() == doctest::Approx(40e6).epsilon(1e-12));
    CHECK(spike_rate(kDefault, 1.0) == doctest::Approx(40e6).epsilon(1e-4));
}

TEST_CASE("spike counts over a 1 us window") {
    CHECK(spike_count(kDefault, 1e-6, 1e-6) == 6);
    CHECK(spike_count(kDefault, 1.0, 1e-6) == 40);
    CHECK(spike_count(kDefault, 0.0, 1e-6) == 0);
    CHECK_THROWS_AS(spike_count(kDefault, 1e-6, 0.0), std::invalid_argument);
}

TEST_CASE("oracle at 1 uA fires 6 times with ~157 ns intervals") {
    const auto train = integrate_oracle(kDefault, [](Seconds) { return 1e-6; }, 0.1e-9, 1e-6);
    CHECK(train.spike_times.size() == 6);
    for (std::size_t k = 1; k < train.spike_times.size(); ++k)
        CHECK((train.spike_times[k] - train.spike_times[k - 1]) * 1e9 ==
              doctest::Approx(157.0).epsilon(0.01));
}

TEST_CASE("oracle agrees with the closed form across currents") {
    for (double i : {0.5e-6, 2e-6, 10e-6}) {
        const auto train = integrate_oracle(kDefault, [i](Seconds) { return i; }, 0.1e-9, 10e-6);
        CHECK(train.mean_rate_from_intervals() == doctest::Approx(spike_rate(kDefault, i)).epsilon(0.01));
    }
}

TEST_CASE("oracle below the leak stays silent") {
    const auto train = integrate_oracle(kDefault, [](Seconds) { return 300e-9; }, 0.1e-9, 5e-6);
    CHECK(train.spike_times.empty());
    CHECK(train.mean_rate_from_intervals() == 0.0);
}

TEST_CASE("ramping input shortens inter-spike intervals") {
    const auto train =
        integrate_oracle(kDefault, [](Seconds t) { return 0.5e-6 + 10.0 * t; }, 0.1e-9, 2e-6);
    REQUIRE(train.spike_times.size() > 4);
    for (std::size_t k = 2; k < train.spike_times.size(); ++k)
        CHECK(train.spike_times[k] - train.spike_times[k - 1] <=
              train.spike_times[k - 1] - train.spike_times[k - 2]);
}

TEST_CASE("oracle rejects bad step sizes") {
    auto one = [](Seconds) { return 1e-6; };
    CHECK_THROWS_AS(integrate_oracle(kDefault, one, 0.0, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(integrate_oracle(kDefault, one, 1e-9, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(integrate_oracle(kDefault, one, 0.1e-9, -1.0), std::invalid_argument);
}

TEST_CASE("parameter validation") {
    NeuronParams p;
    p.c_m = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_NOTHROW(kDefault.validate());
}

TEST_CASE("property: rate is bounded and nondecreasing in current") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> log_i(-8.0, -2.0);
    for (int k = 0; k < 10000; ++k) {
        const double a = std::pow(10.0, log_i(gen));
        const double b = std::pow(10.0, log_i(gen));
        const double ra = spike_rate(kDefault, a);
        REQUIRE(ra >= 0.0);
        REQUIRE(ra <= kDefault.max_rate());
        if (a <= b) REQUIRE(ra <= spike_rate(kDefault, b));
    }
}
