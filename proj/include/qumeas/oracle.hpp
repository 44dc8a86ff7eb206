#pragma once

#include <cstdint>
#include <vector>

#include "qumeas/distribution.hpp"
#include "qumeas/state.hpp"

namespace qumeas::oracle {

// A concrete measurement record, entries +1/-1.
struct OutcomeSequence {
    std::vector<int> outcomes;

    int n_up() const;
    // Sum over unit cells (2k-1, 2k): +1 for time-ordered outcomes (-1, +1),
    // -1 for (+1, -1). Matches the shift convention of the AFM recursion.
    int n_a() const;

    static OutcomeSequence from_mask(std::uint32_t mask, int n);
};

// Reference FM/AFM distributions by summing the weights of all 2^N outcome
// sequences. Exact but exponential; refuses N > 20.
ConditionedDistribution brute_force_fm(const ModelParams& params);
ConditionedDistribution brute_force_afm(const ModelParams& params);

// Empirical histograms from independent measurement trajectories. Trajectory
// k draws from a splitmix64 stream keyed by (seed, k), so the result is
// reproducible for a given seed at any thread count.
struct McHistograms {
    int n_meas = 0;
    long n_traj = 0;
    std::uint64_t seed = 0;
    std::vector<long> fm_counts;   // index n_up
    std::vector<long> afm_counts;  // index n_A + N/2

    std::vector<double> fm_probabilities() const;
    std::vector<double> afm_probabilities() const;
};
McHistograms monte_carlo_sample(const ModelParams& params, long n_traj, std::uint64_t seed,
                                int threads = 1);

// Projective-limit FM distribution: the outcome record is a two-state Markov
// chain with flip probability (1 - cos omega)/2 and first-outcome
// probability (1 + alpha * rhoz(tau))/2 after one precession of p0.
ConditionedDistribution projective_distribution(double omega, const StateVector& p0, int n_meas);

// Ising couplings for the outcome-record mappings: either a uniform
// nearest-neighbor beta*J on a free-boundary chain, or a full long-range
// matrix J_jk = theta^2 cos[(k-j-1) omega].
struct IsingSpec {
    int n_sites = 0;
    bool nearest_neighbor = true;
    double beta_j = 0.0;            // NN case
    std::vector<double> couplings;  // full case: row-major n_sites^2, zero diagonal

    double coupling(int j, int k) const;

    static IsingSpec nn_chain(double omega, int n_sites);
    static IsingSpec long_range(double theta, double omega, int n_sites);
};

// Gibbs marginal over n_up by exact enumeration of all 2^N configurations.
std::vector<double> gibbs_fm_marginal(const IsingSpec& spec);

// Gibbs FM marginal of the nearest-neighbor chain with tanh(beta J) =
// cos(omega). The singular couplings omega = 0 (frozen chain) and omega = pi
// (strictly alternating chain) are returned as their deterministic limits.
std::vector<double> ising_nn_distribution(double omega, int n_sites);

// Gibbs FM marginal of the long-range model; accurate for small theta.
std::vector<double> long_range_gibbs(double theta, double omega, int n_sites);

// Full coupling matrix plus the longest-range oscillation period
// delta_omega = 2 pi / (N - 2).
struct CouplingProfile {
    int n_sites = 0;
    std::vector<double> couplings;  // row-major n_sites^2
    double delta_omega = 0.0;

    double coupling(int j, int k) const;
};
CouplingProfile coupling_profile(double theta, double omega, int n_sites);

}  // namespace qumeas::oracle
