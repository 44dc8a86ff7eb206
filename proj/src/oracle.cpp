#include "qumeas/oracle.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qumeas/errors.hpp"
#include "qumeas/rng.hpp"

namespace qumeas::oracle {

namespace {

constexpr int kBruteForceLimit = 20;

void check_enumerable(int n) {
    if (n > kBruteForceLimit)
        throw std::invalid_argument("exact enumeration limited to n <= " +
                                    std::to_string(kBruteForceLimit));
}

}  // namespace

int OutcomeSequence::n_up() const {
    int k = 0;
    for (int a : outcomes) k += (a > 0);
    return k;
}

int OutcomeSequence::n_a() const {
    int k = 0;
    for (std::size_t c = 0; c + 1 < outcomes.size(); c += 2) {
        if (outcomes[c] < 0 && outcomes[c + 1] > 0) ++k;
        if (outcomes[c] > 0 && outcomes[c + 1] < 0) --k;
    }
    return k;
}

OutcomeSequence OutcomeSequence::from_mask(std::uint32_t mask, int n) {
    OutcomeSequence seq;
    seq.outcomes.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) seq.outcomes[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? 1 : -1;
    return seq;
}

namespace {

// One pass over all 2^N records, binning the final weights by n_up and n_A.
// Unlike dp, enumeration works for any N >= 1 (odd N leaves a half cell out
// of the n_A count), so single-measurement spot checks stay possible.
void enumerate_records(const ModelParams& params, std::vector<StateVector>& fm,
                       std::vector<StateVector>& afm) {
    if (params.n_meas < 1) throw std::invalid_argument("n must be >= 1");
    check_enumerable(params.n_meas);
    ModelParams ranges = params;
    ranges.n_meas = 2;  // validate everything except the evenness of N
    ranges.validate();
    const int n = params.n_meas;
    const EvolvingMatrix a_plus = evolving_matrix(ranges, +1);
    const EvolvingMatrix a_minus = evolving_matrix(ranges, -1);

    fm.assign(static_cast<std::size_t>(n) + 1, StateVector{0.0, 0.0, 0.0});
    afm.assign(static_cast<std::size_t>(n) + 1, StateVector{0.0, 0.0, 0.0});

    const std::uint32_t total = 1u << n;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        const OutcomeSequence seq = OutcomeSequence::from_mask(mask, n);
        StateVector p = params.initial;
        for (int a : seq.outcomes) p = apply(a > 0 ? a_plus : a_minus, p);
        fm[static_cast<std::size_t>(seq.n_up())] = fm[static_cast<std::size_t>(seq.n_up())] + p;
        const std::size_t abin = static_cast<std::size_t>(seq.n_a() + n / 2);
        afm[abin] = afm[abin] + p;
    }
}

}  // namespace

ConditionedDistribution brute_force_fm(const ModelParams& params) {
    std::vector<StateVector> fm, afm;
    enumerate_records(params, fm, afm);
    return {OrderKind::FM, params.n_meas, std::move(fm)};
}

ConditionedDistribution brute_force_afm(const ModelParams& params) {
    std::vector<StateVector> fm, afm;
    enumerate_records(params, fm, afm);
    return {OrderKind::AFM, params.n_meas, std::move(afm)};
}

std::vector<double> McHistograms::fm_probabilities() const {
    std::vector<double> p(fm_counts.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = static_cast<double>(fm_counts[i]) / static_cast<double>(n_traj);
    return p;
}

std::vector<double> McHistograms::afm_probabilities() const {
    std::vector<double> p(afm_counts.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = static_cast<double>(afm_counts[i]) / static_cast<double>(n_traj);
    return p;
}

McHistograms monte_carlo_sample(const ModelParams& params, long n_traj, std::uint64_t seed,
                                int threads) {
    params.validate();
    if (n_traj < 1) throw std::invalid_argument("n_traj must be >= 1");
    const int n = params.n_meas;
    const EvolvingMatrix a_plus = evolving_matrix(params, +1);
    const EvolvingMatrix a_minus = evolving_matrix(params, -1);

    McHistograms h;
    h.n_meas = n;
    h.n_traj = n_traj;
    h.seed = seed;
    h.fm_counts.assign(static_cast<std::size_t>(n) + 1, 0);
    h.afm_counts.assign(static_cast<std::size_t>(n) + 1, 0);

    const int n_workers = std::max(1, threads);
    std::atomic<long> cursor{0};
    constexpr long kChunk = 512;
    std::vector<std::vector<long>> fm_local(static_cast<std::size_t>(n_workers)),
        afm_local(static_cast<std::size_t>(n_workers));

    auto worker = [&](int w) {
        auto& fm = fm_local[static_cast<std::size_t>(w)];
        auto& afm = afm_local[static_cast<std::size_t>(w)];
        fm.assign(static_cast<std::size_t>(n) + 1, 0);
        afm.assign(static_cast<std::size_t>(n) + 1, 0);
        for (;;) {
            const long begin = cursor.fetch_add(kChunk);
            if (begin >= n_traj) break;
            const long end = std::min(begin + kChunk, n_traj);
            for (long t = begin; t < end; ++t) {
                SplitMix64 g = SplitMix64::stream(seed, static_cast<std::uint64_t>(t));
                StateVector p = params.initial;
                int ups = 0, na = 0, prev = 0;
                for (int m = 0; m < n; ++m) {
                    const StateVector up = apply(a_plus, p);
                    const double q_up = up.rho0 / p.rho0;
                    const int alpha = g.next_double() < q_up ? 1 : -1;
                    p = alpha > 0 ? up : apply(a_minus, p);
                    // Renormalize so rho0 stays 1 along the trajectory.
                    p = {1.0, p.rhoz / p.rho0, p.rhox / p.rho0};
                    ups += (alpha > 0);
                    if (m % 2 == 1) {
                        if (prev < 0 && alpha > 0) ++na;
                        if (prev > 0 && alpha < 0) --na;
                    }
                    prev = alpha;
                }
                ++fm[static_cast<std::size_t>(ups)];
                ++afm[static_cast<std::size_t>(na + n / 2)];
            }
        }
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (auto& t : pool) t.join();

    for (int w = 0; w < n_workers; ++w)
        for (std::size_t i = 0; i <= static_cast<std::size_t>(n); ++i) {
            h.fm_counts[i] += fm_local[static_cast<std::size_t>(w)][i];
            h.afm_counts[i] += afm_local[static_cast<std::size_t>(w)][i];
        }
    return h;
}

ConditionedDistribution projective_distribution(double omega, const StateVector& p0, int n_meas) {
    if (n_meas < 1) throw std::invalid_argument("n must be >= 1");
    if (p0.rho0 <= 0.0) throw std::invalid_argument("p0.rho0 must be positive");
    if (!p0.physical()) throw std::invalid_argument("p0 must be a physical state");

    const double c = std::cos(omega);
    const double s = std::sin(omega);
    const double rhoz_tau = (p0.rhoz * c - p0.rhox * s) / p0.rho0;
    const double stay = 0.5 * (1.0 + c);
    const double flip = 0.5 * (1.0 - c);

    // up[k]/down[k]: weight of records with k up outcomes whose latest
    // outcome is up/down.
    const std::size_t bins = static_cast<std::size_t>(n_meas) + 1;
    std::vector<double> up(bins, 0.0), down(bins, 0.0), up2(bins), down2(bins);
    up[1] = 0.5 * (1.0 + rhoz_tau);
    down[0] = 0.5 * (1.0 - rhoz_tau);

    for (int m = 1; m < n_meas; ++m) {
        for (std::size_t k = 0; k < bins; ++k) {
            up2[k] = (k > 0 ? up[k - 1] * stay + down[k - 1] * flip : 0.0);
            down2[k] = down[k] * stay + up[k] * flip;
        }
        up.swap(up2);
        down.swap(down2);
    }

    std::vector<StateVector> table(bins);
    for (std::size_t k = 0; k < bins; ++k) table[k] = {up[k] + down[k], up[k] - down[k], 0.0};
    return {OrderKind::FM, n_meas, std::move(table)};
}

double IsingSpec::coupling(int j, int k) const {
    if (nearest_neighbor) return std::abs(j - k) == 1 ? beta_j : 0.0;
    return couplings[static_cast<std::size_t>(j * n_sites + k)];
}

IsingSpec IsingSpec::nn_chain(double omega, int n_sites) {
    const double c = std::cos(omega);
    if (std::abs(c) >= 1.0 - 1e-12)
        throw std::invalid_argument("nn_chain: coupling singular at omega = 0 or pi");
    IsingSpec spec;
    spec.n_sites = n_sites;
    spec.nearest_neighbor = true;
    spec.beta_j = std::atanh(c);
    return spec;
}

IsingSpec IsingSpec::long_range(double theta, double omega, int n_sites) {
    IsingSpec spec;
    spec.n_sites = n_sites;
    spec.nearest_neighbor = false;
    spec.couplings = coupling_profile(theta, omega, n_sites).couplings;
    return spec;
}

std::vector<double> gibbs_fm_marginal(const IsingSpec& spec) {
    const int n = spec.n_sites;
    check_enumerable(n);
    if (n < 2) throw std::invalid_argument("need at least 2 sites");

    std::vector<long double> bins(static_cast<std::size_t>(n) + 1, 0.0L);
    long double z = 0.0L;
    const std::uint32_t total = 1u << n;
    std::vector<int> s(static_cast<std::size_t>(n));
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        for (int i = 0; i < n; ++i) s[static_cast<std::size_t>(i)] = (mask >> i) & 1u ? 1 : -1;
        double energy = 0.0;  // -beta H
        if (spec.nearest_neighbor) {
            for (int i = 0; i + 1 < n; ++i)
                energy += spec.beta_j * s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i) + 1];
        } else {
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    energy += spec.coupling(j, k) * s[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k)];
        }
        const long double w = std::exp(energy);
        bins[static_cast<std::size_t>(std::popcount(mask))] += w;
        z += w;
    }

    std::vector<double> p(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) p[i] = static_cast<double>(bins[i] / z);
    return p;
}

std::vector<double> ising_nn_distribution(double omega, int n_sites) {
    const double c = std::cos(omega);
    std::vector<double> p(static_cast<std::size_t>(n_sites) + 1, 0.0);
    if (c >= 1.0 - 1e-12) {
        // Frozen ferromagnetic chain: the free first spin picks the record.
        p[0] = 0.5;
        p[static_cast<std::size_t>(n_sites)] = 0.5;
        return p;
    }
    if (c <= -1.0 + 1e-12) {
        // Strictly alternating chain, one record per choice of first spin.
        p[static_cast<std::size_t>((n_sites + 1) / 2)] += 0.5;
        p[static_cast<std::size_t>(n_sites / 2)] += 0.5;
        return p;
    }
    return gibbs_fm_marginal(IsingSpec::nn_chain(omega, n_sites));
}

std::vector<double> long_range_gibbs(double theta, double omega, int n_sites) {
    return gibbs_fm_marginal(IsingSpec::long_range(theta, omega, n_sites));
}

double CouplingProfile::coupling(int j, int k) const {
    return couplings[static_cast<std::size_t>(j * n_sites + k)];
}

CouplingProfile coupling_profile(double theta, double omega, int n_sites) {
    if (n_sites < 3) throw std::invalid_argument("coupling profile needs n >= 3");
    CouplingProfile prof;
    prof.n_sites = n_sites;
    prof.delta_omega = 2.0 * std::numbers::pi / static_cast<double>(n_sites - 2);
    prof.couplings.assign(static_cast<std::size_t>(n_sites) * static_cast<std::size_t>(n_sites),
                          0.0);
    for (int j = 0; j < n_sites; ++j)
        for (int k = j + 1; k < n_sites; ++k) {
            const double v = theta * theta * std::cos(static_cast<double>(k - j - 1) * omega);
            prof.couplings[static_cast<std::size_t>(j * n_sites + k)] = v;
            prof.couplings[static_cast<std::size_t>(k * n_sites + j)] = v;
        }
    return prof;
}

}  // namespace qumeas::oracle
