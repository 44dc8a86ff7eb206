#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qumeas/errors.hpp"
#include "qumeas/rng.hpp"
#include "qumeas/state.hpp"

using namespace qumeas;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(SplitMix64& rng) {
    const double radius = std::sqrt(rng.next_double());
    const double angle = 2.0 * kPi * rng.next_double();
    return {1.0, radius * std::cos(angle), radius * std::sin(angle)};
}

ModelParams random_params(SplitMix64& rng, int n = 2) {
    return {rng.next_double() * kPi / 2.0, rng.next_double() * kPi,
            rng.next_double() < 0.5 ? 0.0 : 0.2 * rng.next_double(), n, {1.0, 0.0, 0.0}};
}

}  // namespace

TEST_CASE("parameter validation names the violated constraint") {
    ModelParams params{0.3, 0.4, 0.0, 4, {1.0, 0.0, 0.0}};
    CHECK_NOTHROW(params.validate());

    params.theta = 2.0;
    CHECK_THROWS_WITH_AS(params.validate(), "theta must lie in [0, pi/2]", std::invalid_argument);
    params.theta = -0.1;
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.theta = 0.3;

    params.omega = 4.0;
    CHECK_THROWS_WITH_AS(params.validate(), "omega must lie in [0, pi]", std::invalid_argument);
    params.omega = 0.4;

    params.r_tau = -1e-3;
    CHECK_THROWS_WITH_AS(params.validate(), "r_tau must be >= 0", std::invalid_argument);
    params.r_tau = 0.0;

    params.n_meas = 0;
    CHECK_THROWS_WITH_AS(params.validate(), "n must be >= 2", std::invalid_argument);
    params.n_meas = 101;
    CHECK_THROWS_WITH_AS(params.validate(), "n must be even", std::invalid_argument);
    params.n_meas = 4;

    params.initial = {0.5, 0.0, 0.0};
    CHECK_THROWS_AS(params.validate(), std::invalid_argument);
    params.initial = {1.0, 0.9, 0.9};
    CHECK_THROWS_WITH_AS(params.validate(), "initial state must satisfy rhoz^2 + rhox^2 <= rho0^2",
                         std::invalid_argument);
}

TEST_CASE("precession rotates the polarization and preserves its norm") {
    const StateVector p{1.0, 0.0, 1.0};

    const StateVector same = precess(p, 0.0);
    CHECK(same.rho0 == 1.0);
    CHECK(same.rhoz == 0.0);
    CHECK(same.rhox == 1.0);

    const StateVector quarter = precess(p, kPi / 2.0);
    CHECK(std::abs(quarter.rhoz - (-1.0)) <= 1e-15);
    CHECK(std::abs(quarter.rhox) <= 1e-15);

    SplitMix64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector out = precess({1.0, 0.6, 0.8}, rng.next_double() * 2.0 * kPi);
        CHECK(std::abs(out.rhoz * out.rhoz + out.rhox * out.rhox - 1.0) <= 1e-12);
        CHECK(out.rho0 == 1.0);
    }
}

TEST_CASE("branch propagator matrix entries") {
    SUBCASE("projective, no precession") {
        const EvolvingMatrix m = evolving_matrix({kPi / 2.0, 0.0, 0.0, 2, {1.0, 0.0, 0.0}}, +1);
        const double expected[9] = {0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0};
        for (int k = 0; k < 9; ++k) CHECK(std::abs(m.m[static_cast<std::size_t>(k)] - expected[k]) <= 1e-15);
    }

    SUBCASE("zero strength leaves halved precession") {
        const double omega = 0.7;
        const EvolvingMatrix m = evolving_matrix({0.0, omega, 0.0, 2, {1.0, 0.0, 0.0}}, -1);
        const double c = std::cos(omega), w = std::sin(omega);
        const double expected[9] = {0.5, 0.0, 0.0, 0.0, 0.5 * c, -0.5 * w, 0.0, 0.5 * w, 0.5 * c};
        for (int k = 0; k < 9; ++k) CHECK(std::abs(m.m[static_cast<std::size_t>(k)] - expected[k]) <= 1e-15);
    }

    SUBCASE("relaxation damps everything except the outcome bias") {
        const ModelParams params{0.4, 0.9, 0.25, 2, {1.0, 0.0, 0.0}};
        const EvolvingMatrix damped = evolving_matrix(params, +1);
        ModelParams undamped = params;
        undamped.r_tau = 0.0;
        const EvolvingMatrix plain = evolving_matrix(undamped, +1);
        const double e = std::exp(-0.25);
        CHECK(damped(0, 0) == plain(0, 0));
        CHECK(damped(1, 0) == plain(1, 0));
        for (int i = 0; i < 3; ++i)
            for (int j = 1; j < 3; ++j)
                CHECK(std::abs(damped(i, j) - e * plain(i, j)) <= 1e-15);
    }

    SUBCASE("rejects bad outcome labels") {
        CHECK_THROWS_AS(evolving_matrix({0.3, 0.4, 0.0, 2, {1.0, 0.0, 0.0}}, 0),
                        std::invalid_argument);
        CHECK_THROWS_AS(evolving_matrix({0.3, 0.4, 0.0, 2, {1.0, 0.0, 0.0}}, 2),
                        std::invalid_argument);
    }

    SUBCASE("branch sum conserves weight exactly") {
        SplitMix64 rng(22);
        for (int trial = 0; trial < 50; ++trial) {
            const ModelParams params = random_params(rng);
            const EvolvingMatrix total =
                evolving_matrix(params, +1) + evolving_matrix(params, -1);
            CHECK(total(0, 0) == 1.0);
            CHECK(total(0, 1) == 0.0);
            CHECK(total(0, 2) == 0.0);
            for (std::size_t k = 0; k < 9; ++k) CHECK(std::abs(total.m[k]) <= 1.0);
        }
    }
}

TEST_CASE("single steps at the projective point") {
    const ModelParams params{kPi / 2.0, kPi / 2.0, 0.0, 2, {1.0, 0.0, 1.0}};
    const StateVector p{1.0, 0.0, 1.0};

    const StateVector up = step(p, params, +1);
    CHECK(std::abs(up.rho0) <= 1e-15);
    CHECK(std::abs(up.rhoz) <= 1e-15);
    CHECK(std::abs(up.rhox) <= 1e-15);

    const StateVector down = step(p, params, -1);
    CHECK(std::abs(down.rho0 - 1.0) <= 1e-15);
    CHECK(std::abs(down.rhoz - (-1.0)) <= 1e-15);
    CHECK(std::abs(down.rhox) <= 1e-15);
}

TEST_CASE("maximally mixed state gives unbiased outcomes") {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 50; ++trial) {
        const ModelParams params = random_params(rng);
        const StateVector p{1.0, 0.0, 0.0};
        CHECK(step(p, params, +1).rho0 == 0.5);
        CHECK(branch_probability(p, params, +1) == 0.5);
        CHECK(branch_probability(p, params, -1) == 0.5);
    }
}

TEST_CASE("branch probabilities behave like conditional probabilities") {
    const ModelParams certain{kPi / 2.0, kPi / 2.0, 0.0, 2, {1.0, 0.0, 1.0}};
    CHECK(std::abs(branch_probability({1.0, 0.0, 1.0}, certain, -1) - 1.0) <= 1e-15);

    SplitMix64 rng(44);
    for (int trial = 0; trial < 1000; ++trial) {
        const ModelParams params = random_params(rng);
        const StateVector p = random_state(rng);
        const double total =
            branch_probability(p, params, +1) + branch_probability(p, params, -1);
        CHECK(std::abs(total - 1.0) <= 1e-14);
    }

    CHECK_THROWS_AS(branch_probability({0.0, 0.0, 0.0}, certain, +1), numeric_error);
}

TEST_CASE("weight conservation accumulates safely over long sequences") {
    const ModelParams params{0.9, 2.1, 0.0, 2, {1.0, 0.0, 0.0}};
    const EvolvingMatrix total = evolving_matrix(params, +1) + evolving_matrix(params, -1);
    StateVector p{1.0, 0.2, 0.3};
    for (int n = 0; n < 1000; ++n) p = apply(total, p);
    CHECK(std::abs(p.rho0 - 1.0) <= 1e-10);
}

TEST_CASE("steps keep states inside the Bloch cone") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 500; ++trial) {
        const ModelParams params = random_params(rng);
        const StateVector p = random_state(rng);
        for (int alpha : {+1, -1}) {
            const StateVector out = step(p, params, alpha);
            CHECK(out.physical());
        }
    }
}

TEST_CASE("spin-flip covariance is exact") {
    SplitMix64 rng(66);
    for (int trial = 0; trial < 200; ++trial) {
        const ModelParams params = random_params(rng);
        const StateVector p = random_state(rng);
        for (int alpha : {+1, -1}) {
            const StateVector direct = step(p, params, alpha);
            const StateVector mirrored = step({p.rho0, -p.rhoz, -p.rhox}, params, -alpha);
            CHECK(mirrored.rho0 == direct.rho0);
            CHECK(mirrored.rhoz == -direct.rhoz);
            CHECK(mirrored.rhox == -direct.rhox);
        }
    }
}

TEST_CASE("projective branch weight matches the rotated polarization") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        ModelParams params = random_params(rng);
        params.theta = kPi / 2.0;
        params.r_tau = 0.0;
        const StateVector p = random_state(rng);
        const double rotated = p.rhoz * std::cos(params.omega) - p.rhox * std::sin(params.omega);
        for (int alpha : {+1, -1}) {
            const double weight = step(p, params, alpha).rho0;
            CHECK(std::abs(weight - 0.5 * (1.0 + alpha * rotated)) <= 1e-15);
        }
    }
}
