#include "qumeas/validation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "qumeas/distribution.hpp"
#include "qumeas/dp.hpp"
#include "qumeas/fcs.hpp"
#include "qumeas/oracle.hpp"
#include "qumeas/rng.hpp"

namespace qumeas::validation {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

const std::vector<StateVector> kInitials = {{1.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {1.0, 1.0, 0.0}};

CheckResult check_dp_vs_brute_force() {
    double worst = 0.0;
    for (int n : {4, 8, 12})
        for (int it = 0; it < 5; ++it)
            for (int iw = 0; iw < 5; ++iw)
                for (const auto& init : kInitials) {
                    const ModelParams params{it * (kPi / 2.0) / 4.0, iw * kPi / 4.0, 0.0, n,
                                             init};
                    worst = std::max(worst,
                                     max_abs_diff(dp::fm_distribution(params).probabilities(),
                                                  oracle::brute_force_fm(params).probabilities()));
                    worst = std::max(worst,
                                     max_abs_diff(dp::afm_distribution(params).probabilities(),
                                                  oracle::brute_force_afm(params).probabilities()));
                }
    return {"dp matches brute-force enumeration (FM and AFM)", worst <= 1e-12,
            "max |diff| = " + fmt(worst) + " over N in {4,8,12}, 5x5 grid, 3 initial states"};
}

CheckResult check_normalization() {
    const ModelParams params{0.7, 0.9, 0.0, 2000, {1.0, 0.0, 1.0}};
    const double fm_err = std::abs(dp::fm_distribution(params).total_probability() - 1.0);
    const double afm_err = std::abs(dp::afm_distribution(params).total_probability() - 1.0);
    const double worst = std::max(fm_err, afm_err);
    return {"distributions stay normalized at N = 2000", worst <= 1e-10,
            "|sum - 1| = " + fmt(worst)};
}

CheckResult check_mixed_state_symmetry() {
    // From the maximally mixed state, flipping every outcome is an exact
    // symmetry. The FM recursion adds the two branches in an order that the
    // flip preserves, so its table must mirror bitwise; the AFM recursion's
    // three-term sums re-associate under the flip, so it mirrors only to
    // rounding error.
    const ModelParams params{0.8, 1.1, 0.0, 100, {1.0, 0.0, 0.0}};
    const auto fm = dp::fm_distribution(params);
    const auto afm = dp::afm_distribution(params);
    bool fm_exact = true;
    double afm_rel = 0.0;
    for (std::size_t i = 0; i < fm.size(); ++i) {
        fm_exact = fm_exact && fm.table[i].rho0 == fm.table[fm.size() - 1 - i].rho0;
        const double a = afm.table[i].rho0;
        const double b = afm.table[afm.size() - 1 - i].rho0;
        const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
        afm_rel = std::max(afm_rel, std::abs(a - b) / scale);
    }
    const bool pass = fm_exact && afm_rel <= 1e-12;
    return {"maximally mixed initial state gives symmetric records", pass,
            fm_exact ? "FM bitwise; AFM max rel dev = " + fmt(afm_rel)
                     : "FM symmetry violated"};
}

CheckResult check_projective_markov_chain() {
    double worst = 0.0;
    for (double omega : {0.3, 0.9, 2.2}) {
        const StateVector init{1.0, 0.0, 1.0};
        const ModelParams params{kPi / 2.0, omega, 0.0, 1000, init};
        const auto via_dp = dp::fm_distribution(params);
        const auto chain = oracle::projective_distribution(omega, init, 1000);
        for (std::size_t i = 0; i < via_dp.size(); ++i) {
            worst = std::max(worst, std::abs(via_dp.table[i].rho0 - chain.table[i].rho0));
            worst = std::max(worst, std::abs(via_dp.table[i].rhoz - chain.table[i].rhoz));
            worst = std::max(worst, std::abs(via_dp.table[i].rhox - chain.table[i].rhox));
        }
    }
    return {"projective limit reproduces the two-state Markov chain (N = 1000)", worst <= 1e-12,
            "max |diff| = " + fmt(worst)};
}

CheckResult check_projective_vs_ising() {
    double worst = 0.0;
    for (double omega : {0.5, 1.0, 2.0, 2.6}) {
        const ModelParams params{kPi / 2.0, omega, 0.0, 12, {1.0, 0.0, 0.0}};
        worst = std::max(worst, max_abs_diff(dp::fm_distribution(params).probabilities(),
                                             oracle::ising_nn_distribution(omega, 12)));
    }
    return {"projective records follow the nearest-neighbor Ising Gibbs weights", worst <= 1e-12,
            "max |diff| = " + fmt(worst) + " at N = 12"};
}

CheckResult check_monte_carlo_convergence() {
    const ModelParams params{2.0 * kPi / 5.0, 0.5, 0.0, 100, {1.0, 0.0, 1.0}};
    const auto exact = dp::fm_distribution(params).probabilities();
    double tv3 = 0.0, tv4 = 0.0, tv5 = 0.0;
    tv3 = total_variation(exact, oracle::monte_carlo_sample(params, 1000, 7).fm_probabilities());
    tv4 = total_variation(exact, oracle::monte_carlo_sample(params, 10000, 7).fm_probabilities());
    tv5 = total_variation(exact, oracle::monte_carlo_sample(params, 100000, 7).fm_probabilities());
    const bool ok = tv3 > tv4 && tv4 > tv5 && tv5 <= 0.02;
    return {"Monte Carlo total variation shrinks with trajectory count", ok,
            "TV = " + fmt(tv3) + " / " + fmt(tv4) + " / " + fmt(tv5) +
                " at 1e3 / 1e4 / 1e5 trajectories"};
}

CheckResult check_long_range_convergence() {
    bool ok = true;
    std::string detail;
    for (double omega : {0.2, 0.8}) {
        double prev = 2.0;
        detail += (detail.empty() ? "" : "; ") + ("omega=" + fmt(omega) + ": TV");
        for (double theta : {0.1, 0.05, 0.02}) {
            const ModelParams params{theta, omega, 0.0, 12, {1.0, 0.0, 0.0}};
            const double tv = total_variation(dp::fm_distribution(params).probabilities(),
                                              oracle::long_range_gibbs(theta, omega, 12));
            ok = ok && tv < prev;
            prev = tv;
            detail += " " + fmt(tv);
        }
    }
    return {"long-range Ising Gibbs converges to dp as theta -> 0", ok, detail};
}

CheckResult check_generating_function_round_trip() {
    SplitMix64 rng(0x5eedULL);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double radius = std::sqrt(rng.next_double());
        const double angle = 2.0 * kPi * rng.next_double();
        const ModelParams params{rng.next_double() * kPi / 2.0, rng.next_double() * kPi,
                                 trial % 2 == 0 ? 0.0 : 0.01, 64,
                                 {1.0, radius * std::cos(angle), radius * std::sin(angle)}};
        worst = std::max(worst, max_abs_diff(fcs::fm_distribution_via_dft(params),
                                             dp::fm_distribution(params).probabilities()));
    }
    return {"generating-function DFT round trip equals dp (10 random sets, N = 64)",
            worst <= 1e-10, "max |diff| = " + fmt(worst)};
}

CheckResult check_spectral_identities() {
    SplitMix64 rng(0xabcdULL);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const std::complex<double> z = std::polar(1.0, 2.0 * kPi * rng.next_double());
        const double theta = 0.1 * rng.next_double();
        const double omega = 0.1 * rng.next_double();
        const auto gen = fcs::k_matrix(z, theta, omega);
        const auto pt = fcs::k_eigenvalues(z, theta, omega);
        worst = std::max(worst, std::abs(gen.matrix.trace() - (pt.e1 + pt.e2 + pt.e3)));
        worst = std::max(worst, std::abs(gen.matrix.det() - pt.e1 * pt.e2 * pt.e3));
    }
    return {"tilted-generator trace and determinant match the closed-form spectrum",
            worst <= 1e-12, "max |diff| = " + fmt(worst) + " over 20 random unit-circle tilts"};
}

CheckResult check_spectrum_reality() {
    bool ok = true;
    for (double theta = 0.01; theta < 0.1; theta += 0.02)
        for (double omega = 0.01; omega < 0.1; omega += 0.02) {
            const auto pt = fcs::k_eigenvalues({0.0, 0.0}, theta, omega);
            if (theta >= omega) {
                ok = ok && std::abs(pt.e1.imag()) <= 1e-15 && std::abs(pt.e2.imag()) <= 1e-15;
            } else {
                ok = ok && std::abs(pt.e1 - std::conj(pt.e2)) <= 1e-15 &&
                     std::abs(pt.e1.imag()) > 0.0;
            }
        }
    return {"spectrum at z = 0 is real iff theta >= omega", ok,
            "checked on a grid straddling theta = omega"};
}

CheckResult check_closed_form_normalization() {
    auto sum_of = [](const std::vector<double>& p) {
        double s = 0.0;
        for (double v : p) s += v;
        return s;
    };
    const double b = std::abs(sum_of(fcs::binomial_limit(100)) - 1.0);
    const double t = std::abs(sum_of(fcs::two_binomial_limit(0.3, 0.001, 100)) - 1.0);
    const double c = std::abs(sum_of(fcs::closed_form_distribution(0.01, 0.2, 500)) - 1.0);
    const double worst = std::max({b, t, c});
    return {"closed-form distributions are normalized", worst <= 1e-12,
            "|sum - 1| = " + fmt(worst)};
}

}  // namespace

std::vector<CheckResult> run_all() {
    return {check_dp_vs_brute_force(),
            check_normalization(),
            check_mixed_state_symmetry(),
            check_projective_markov_chain(),
            check_projective_vs_ising(),
            check_monte_carlo_convergence(),
            check_long_range_convergence(),
            check_generating_function_round_trip(),
            check_spectral_identities(),
            check_spectrum_reality(),
            check_closed_form_normalization()};
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

}  // namespace qumeas::validation
