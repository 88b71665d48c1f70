#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "csdp/learning.hpp"

using namespace csdp;

namespace {

int sign(double x) { return (x > 0.0) - (x < 0.0); }

std::vector<Example> xor_dataset() {
    std::vector<Example> pos{{{0, 0}, {0}, Phase::positive},
                             {{0, 1}, {1}, Phase::positive},
                             {{1, 0}, {1}, Phase::positive},
                             {{1, 1}, {0}, Phase::positive}};
    auto neg = generate_negatives(pos, 1);
    pos.insert(pos.end(), neg.begin(), neg.end());
    return pos;
}

}  // namespace

TEST_CASE("modulator error") {
    CHECK(modulator_error(1.0, 1) == 0.0);
    CHECK(modulator_error(1.0, 0) == 1.0);
    CHECK(modulator_error(0.3, 1) == doctest::Approx(-0.7));
}

TEST_CASE("csdp_delta examples") {
    CHECK(csdp_delta(0.0, 0.5, 0.5, 0.05) == 0.0);
    CHECK(csdp_delta(0.4, 0.5, 0.0, 0.05) == 0.0);
    CHECK(csdp_delta(-0.7, 0.5, 0.9, 0.05) == doctest::Approx(0.025).epsilon(1e-12));
    CHECK(csdp_delta(-0.7, 0.5, 0.9, 0.05, UpdateRule::exact) ==
          doctest::Approx(0.05 * 0.7 * 0.5 * 0.9).epsilon(1e-12));
    CHECK(csdp_delta(0.2, 0.5, 0.9, 0.05) == doctest::Approx(-0.01).epsilon(1e-12));
}

TEST_CASE("label bit conversions are MSB first") {
    CHECK(value_to_bits(2, 3) == std::vector<int>{0, 1, 0});
    CHECK(value_to_bits(1, 1) == std::vector<int>{1});
    const std::vector<int> bits{1, 1, 0};
    CHECK(bits_to_value(bits) == 6);
}

TEST_CASE("negatives pair each input with every wrong label") {
    const std::vector<Example> pos{{{0, 1}, {1}, Phase::positive}, {{0, 0}, {0}, Phase::positive}};
    const auto neg = generate_negatives(pos, 1);
    REQUIRE(neg.size() == pos.size());
    CHECK(neg[0].input_bits == std::vector<int>{0, 1});
    CHECK(neg[0].label_bits == std::vector<int>{0});
    CHECK(neg[0].phase == Phase::negative);
    CHECK(neg[1].label_bits == std::vector<int>{1});

    const std::vector<Example> wide{{{1}, {1, 0}, Phase::positive}};
    const auto three = generate_negatives(wide, 2);
    CHECK(three.size() == 3);
    for (const auto& n : three) CHECK(n.label_bits != std::vector<int>{1, 0});
}

TEST_CASE("config validation") {
    TrainConfig tc;
    tc.alpha = -0.1;
    CHECK_THROWS_AS(tc.validate(), std::invalid_argument);
    tc = {};
    tc.init_weight_range = 1.5;
    CHECK_THROWS_AS(tc.validate(), std::invalid_argument);
    tc = {};
    tc.gamma_neg = 2.0;
    CHECK_THROWS_AS(tc.validate(), std::invalid_argument);
    tc = {};
    tc.epochs = -1;
    CHECK_THROWS_AS(tc.validate(), std::invalid_argument);
    CHECK(TrainConfig{}.rule() == UpdateRule::min_approx);
}

TEST_CASE("empty dataset is rejected") {
    Network net{NetworkConfig{}};
    Rng rng(0);
    CHECK_THROWS_AS(train_epoch(net, {}, TrainConfig{}, rng), std::invalid_argument);
}

TEST_CASE("alpha = 0 is a pure measurement pass") {
    Network net{NetworkConfig{}};
    Rng rng(4);
    net.initialize_uniform(1.0, rng);
    const auto before0 = net.layer(0).weights();
    const auto before1 = net.layer(1).weights();
    TrainConfig tc;
    tc.alpha = 0.0;
    tc.epochs = 3;
    const auto data = xor_dataset();
    const auto history = train(net, data, tc, rng);
    CHECK(net.layer(0).weights() == before0);
    CHECK(net.layer(1).weights() == before1);
    REQUIRE(history.size() == 3);
    // Shuffling changes only the summation order.
    for (std::size_t l = 0; l < 2; ++l) CHECK(history[0].mse[l] == doctest::Approx(history[2].mse[l]));
    CHECK(history[2].mean_abs_delta == std::vector<double>{0.0, 0.0});
}

TEST_CASE("epoch MSE is the mean squared modulator error") {
    Network net{NetworkConfig{}};
    Rng rng(8);
    net.initialize_uniform(1.0, rng);
    const auto data = xor_dataset();
    std::vector<double> expect(2, 0.0);
    for (const auto& ex : data) {
        const auto g = forward_pass(net, ex).goodness();
        for (std::size_t l = 0; l < 2; ++l) expect[l] += std::pow(g[l] - ex.target(), 2) / data.size();
    }
    TrainConfig tc;
    tc.alpha = 0.0;
    const auto report = train_epoch(net, data, tc, rng);
    CHECK(report.mse[0] == doctest::Approx(expect[0]));
    CHECK(report.mse[1] == doctest::Approx(expect[1]));
}

TEST_CASE("device and direct programming agree away from the bounds") {
    Network a{NetworkConfig{}};
    Rng ra(6);
    a.initialize_uniform(0.5, ra);
    Network b = a;
    Rng rb = ra;
    TrainConfig tc;
    tc.alpha = 0.01;
    const auto data = xor_dataset();
    train_epoch(a, data, tc, ra);
    tc.program_mode = ProgramMode::direct;
    train_epoch(b, data, tc, rb);
    for (std::size_t l = 0; l < 2; ++l)
        CHECK((a.layer(l).weights() - b.layer(l).weights()).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("same seed gives the same training history") {
    auto run = [] {
        Network net{NetworkConfig{}};
        Rng rng(77);
        net.initialize_uniform(1.0, rng);
        TrainConfig tc;
        tc.epochs = 20;
        const auto data = xor_dataset();
        auto h = train(net, data, tc, rng);
        return std::make_pair(h, net.layer(0).weights());
    };
    const auto a = run();
    const auto b = run();
    REQUIRE(a.first.size() == b.first.size());
    for (std::size_t e = 0; e < a.first.size(); ++e) {
        CHECK(a.first[e].mse == b.first[e].mse);
        CHECK(a.first[e].mean_abs_delta == b.first[e].mean_abs_delta);
    }
    CHECK(a.second == b.second);
}

TEST_CASE("property: a lone example moves every weight in its phase's direction") {
    std::mt19937_64 gen(61);
    int moved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Network net{NetworkConfig{}};
        Rng rng(gen());
        net.initialize_uniform(1.0, rng);
        const Phase phase = (trial % 2) ? Phase::positive : Phase::negative;
        const std::vector<Example> one{{{int(gen() & 1), int(gen() & 1)}, {int(gen() & 1)}, phase}};
        const auto w0 = net.layer(0).weights();
        const auto w1 = net.layer(1).weights();
        train_epoch(net, one, TrainConfig{}, rng);
        const MatrixXd d0 = net.layer(0).weights() - w0;
        const MatrixXd d1 = net.layer(1).weights() - w1;
        if (phase == Phase::positive) {
            REQUIRE(d0.minCoeff() >= 0.0);
            REQUIRE(d1.minCoeff() >= 0.0);
        } else {
            REQUIRE(d0.maxCoeff() <= 0.0);
            REQUIRE(d1.maxCoeff() <= 0.0);
        }
        if (!d0.isZero(0.0) || !d1.isZero(0.0)) ++moved;
    }
    CHECK(moved > 0);
}

TEST_CASE("property: update rule laws over random triples") {
    std::mt19937_64 gen(62);
    std::uniform_real_distribution<double> e(-1.0, 1.0);
    std::uniform_real_distribution<double> z(0.0, 1.0);
    std::uniform_real_distribution<double> a(0.0, 0.5);
    for (int k = 0; k < 10000; ++k) {
        // Inject exact zeros now and then so the gating branch is exercised.
        const double eps = (k % 17 == 0) ? 0.0 : e(gen);
        const double zp = (k % 13 == 0) ? 0.0 : z(gen);
        const double zq = (k % 11 == 0) ? 0.0 : z(gen);
        const double alpha = a(gen);
        const double m = csdp_delta(eps, zp, zq, alpha, UpdateRule::min_approx);
        const double x = csdp_delta(eps, zp, zq, alpha, UpdateRule::exact);
        if (eps != 0.0 && zp * zq > 0.0 && alpha > 0.0) {
            REQUIRE(sign(m) == -sign(eps));
            REQUIRE(sign(x) == -sign(eps));
        } else {
            REQUIRE(m == 0.0);
            REQUIRE(x == 0.0);
        }
        REQUIRE(std::abs(m) <= alpha);
        REQUIRE(std::abs(x) <= alpha);
        REQUIRE(std::abs(m) >= std::abs(x));
    }
}
