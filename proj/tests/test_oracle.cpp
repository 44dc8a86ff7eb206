#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "qumeas/dp.hpp"
#include "qumeas/oracle.hpp"

using namespace qumeas;
using namespace qumeas::oracle;

namespace {

constexpr double kPi = std::numbers::pi;

const StateVector kPlusX{1.0, 0.0, 1.0};
const StateVector kMixed{1.0, 0.0, 0.0};

std::vector<double> binomial_half(int n) {
    std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
    p[0] = std::pow(0.5, n);
    for (int k = 1; k <= n; ++k)
        p[static_cast<std::size_t>(k)] =
            p[static_cast<std::size_t>(k) - 1] * static_cast<double>(n - k + 1) / k;
    return p;
}

}  // namespace

TEST_CASE("outcome sequences decode masks and count cells time-ordered") {
    const auto seq = OutcomeSequence::from_mask(0b0110u, 4);
    REQUIRE(seq.outcomes.size() == 4);
    // Bit k holds measurement k+1; set bit = +1.
    CHECK(seq.outcomes[0] == -1);
    CHECK(seq.outcomes[1] == +1);
    CHECK(seq.outcomes[2] == +1);
    CHECK(seq.outcomes[3] == -1);
    CHECK(seq.n_up() == 2);
    // Cells: (-1,+1) -> +1, (+1,-1) -> -1.
    CHECK(seq.n_a() == 0);

    // 0b0101 decodes to (+1,-1,+1,-1): both cells are (+1,-1), so n_a = -2.
    CHECK(OutcomeSequence::from_mask(0b0101u, 4).n_a() == -2);
    CHECK(OutcomeSequence::from_mask(0b1010u, 4).n_a() == 2);
    CHECK(OutcomeSequence::from_mask(0b1111u, 4).n_a() == 0);
}

TEST_CASE("single measurement probability from the x-polarized state") {
    // One precession tilts rhox = 1 into rhoz = -sin(omega); the up-outcome
    // weight is then (1 - sin(theta) sin(omega))/2.
    for (double theta : {0.2, 0.9}) {
        for (double omega : {0.3, 1.4}) {
            const ModelParams params{theta, omega, 0.0, 1, kPlusX};
            const auto fm = brute_force_fm(params);
            REQUIRE(fm.size() == 2);
            const double expect = 0.5 * (1.0 - std::sin(theta) * std::sin(omega));
            CHECK(fm.probability(1) == doctest::Approx(expect).epsilon(1e-14));
            CHECK(fm.probability(0) == doctest::Approx(1.0 - expect).epsilon(1e-14));
        }
    }
}

TEST_CASE("enumeration conserves total weight and matches the recursion") {
    const ModelParams params{0.7, 0.9, 0.0, 10, kPlusX};
    const auto fm = brute_force_fm(params);
    const auto afm = brute_force_afm(params);
    CHECK(fm.total_probability() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(afm.total_probability() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(max_abs_diff(fm.probabilities(), dp::fm_distribution(params).probabilities()) <= 1e-13);
    CHECK(max_abs_diff(afm.probabilities(), dp::afm_distribution(params).probabilities()) <=
          1e-13);
}

TEST_CASE("enumeration refuses records too long to enumerate") {
    CHECK_THROWS_AS(brute_force_fm({0.3, 0.4, 0.0, 22, kPlusX}), std::invalid_argument);
}

TEST_CASE("sampling is reproducible and thread-count invariant") {
    const ModelParams params{0.9, 0.7, 0.0, 20, kPlusX};
    const auto a = monte_carlo_sample(params, 5000, 42, 1);
    const auto b = monte_carlo_sample(params, 5000, 42, 1);
    const auto c = monte_carlo_sample(params, 5000, 42, 4);
    CHECK(a.fm_counts == b.fm_counts);
    CHECK(a.afm_counts == b.afm_counts);
    CHECK(a.fm_counts == c.fm_counts);
    CHECK(a.afm_counts == c.afm_counts);

    const auto d = monte_carlo_sample(params, 5000, 43, 1);
    CHECK(a.fm_counts != d.fm_counts);

    long total = 0;
    for (long k : a.fm_counts) total += k;
    CHECK(total == 5000);
}

TEST_CASE("sampled mean outcome is unbiased for a decoupled meter") {
    // theta = 0: n_up ~ Binomial(N, 1/2); check the empirical mean within
    // three standard errors of N/2 (the fixed seed lands at 1.1).
    const int n = 100;
    const long n_traj = 10000;
    const auto hist = monte_carlo_sample({0.0, 0.9, 0.0, n, kPlusX}, n_traj, 7, 1);
    double mean = 0.0;
    for (std::size_t i = 0; i < hist.fm_counts.size(); ++i)
        mean += static_cast<double>(i) * hist.fm_counts[i];
    mean /= static_cast<double>(n_traj);
    const double stderr_mean = 0.5 * std::sqrt(static_cast<double>(n) / n_traj);
    CHECK(std::fabs(mean - 50.0) <= 3.0 * stderr_mean);
}

TEST_CASE("sampled histogram converges to the exact distribution") {
    const ModelParams params{2.0 * kPi / 5.0, 0.5, 0.0, 100, kPlusX};
    const auto exact = dp::fm_distribution(params).probabilities();
    const auto exact_afm = dp::afm_distribution(params).probabilities();
    const auto hist = monte_carlo_sample(params, 20000, 11, 1);
    CHECK(total_variation(hist.fm_probabilities(), exact) <= 0.05);
    CHECK(total_variation(hist.afm_probabilities(), exact_afm) <= 0.05);
}

TEST_CASE("projective chain: frozen, fair, and generic flip rates") {
    // omega = 0 never flips: only the extreme bins are occupied.
    const auto frozen = projective_distribution(0.0, kPlusX, 10);
    CHECK(frozen.probability(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(frozen.probability(10) == doctest::Approx(0.5).epsilon(1e-15));

    // omega = pi/2 flips with probability 1/2: iid fair outcomes.
    const auto fair = projective_distribution(kPi / 2.0, kMixed, 12);
    const auto ref = binomial_half(12);
    CHECK(max_abs_diff(fair.probabilities(), ref) <= 1e-14);

    // Generic omega agrees with the full dynamics at theta = pi/2.
    const ModelParams params{kPi / 2.0, 0.8, 0.0, 10, kPlusX};
    const auto chain = projective_distribution(0.8, kPlusX, 10);
    const auto exact = brute_force_fm(params);
    for (std::size_t i = 0; i < exact.size(); ++i) {
        CHECK(chain.table[i].rho0 ==
              doctest::Approx(exact.table[i].rho0).epsilon(1e-12));
        CHECK(chain.table[i].rhoz ==
              doctest::Approx(exact.table[i].rhoz).epsilon(1e-12));
    }
}

TEST_CASE("nearest-neighbor chain coupling inverts the flip rate") {
    for (double omega : {0.3, 1.2, 2.5}) {
        const auto spec = IsingSpec::nn_chain(omega, 8);
        CHECK(std::tanh(spec.beta_j) == doctest::Approx(std::cos(omega)).epsilon(1e-15));
    }
    // cos(omega) = +-1 has no finite coupling.
    CHECK_THROWS_AS(IsingSpec::nn_chain(0.0, 8), std::invalid_argument);
    CHECK_THROWS_AS(IsingSpec::nn_chain(kPi, 8), std::invalid_argument);
}

TEST_CASE("chain Gibbs marginal reproduces the projective record") {
    // Uncoupled chain: binomial.
    const auto free_chain = ising_nn_distribution(kPi / 2.0, 10);
    CHECK(max_abs_diff(free_chain, binomial_half(10)) <= 1e-14);

    // Finite coupling: matches the Markov chain from the mixed state.
    for (double omega : {0.5, 1.0, 2.0, 2.6}) {
        const auto gibbs = ising_nn_distribution(omega, 8);
        const auto chain = projective_distribution(omega, kMixed, 8).probabilities();
        CHECK(max_abs_diff(gibbs, chain) <= 1e-12);
    }

    // Singular limits return the deterministic records.
    const auto frozen = ising_nn_distribution(0.0, 10);
    CHECK(frozen[0] == 0.5);
    CHECK(frozen[10] == 0.5);
    const auto alternating = ising_nn_distribution(kPi, 10);
    CHECK(alternating[5] == 1.0);
}

TEST_CASE("long-range Gibbs marginal becomes exact as theta vanishes") {
    // theta = 0: no couplings at all.
    CHECK(max_abs_diff(long_range_gibbs(0.0, 0.8, 12), binomial_half(12)) <= 1e-14);

    for (double omega : {0.2, 0.8}) {
        double last = 2.0;
        for (double theta : {0.1, 0.05, 0.02}) {
            const ModelParams params{theta, omega, 0.0, 12, kMixed};
            const auto exact = dp::fm_distribution(params).probabilities();
            const double tv = total_variation(long_range_gibbs(theta, omega, 12), exact);
            CHECK(tv < last);
            last = tv;
        }
        CHECK(last <= 0.01);
    }
}

TEST_CASE("coupling profile oscillates with the documented period") {
    const auto p100 = coupling_profile(0.1, 0.5, 100);
    CHECK(p100.delta_omega == doctest::Approx(2.0 * kPi / 98.0).epsilon(1e-15));
    const auto p1000 = coupling_profile(0.1, 0.5, 1000);
    CHECK(p1000.delta_omega == doctest::Approx(2.0 * kPi / 998.0).epsilon(1e-15));

    // At omega = delta_omega/2 the end-to-end coupling has turned through pi.
    const double theta = 0.3;
    const auto half = coupling_profile(theta, p100.delta_omega / 2.0, 100);
    CHECK(half.coupling(0, 99) == doctest::Approx(-theta * theta).epsilon(1e-12));

    // Symmetric, zero diagonal, bounded by theta^2, adjacent pairs at full
    // strength regardless of omega.
    for (int j : {0, 17, 63}) {
        for (int k : {1, 42, 99}) {
            CHECK(half.coupling(j, k) == half.coupling(k, j));
            CHECK(std::fabs(half.coupling(j, k)) <= theta * theta + 1e-15);
        }
        CHECK(half.coupling(j, j) == 0.0);
    }
    CHECK(half.coupling(4, 5) == doctest::Approx(theta * theta).epsilon(1e-15));
}
