#include "qumeas/fcs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qumeas/errors.hpp"

namespace qumeas::fcs {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Binary exponentiation keeps the error at O(log N) ulps, which matters for
// N ~ 1000 where exp(N log E) would lose a couple more digits.
Complex cpow_int(Complex base, int n) {
    Complex result{1.0, 0.0};
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

struct TwoBinomialParams {
    double q1;
    double q2;
};

TwoBinomialParams two_binomial_params(double theta, double omega) {
    if (!(theta > omega)) throw std::domain_error("two-binomial limit requires omega < theta");
    const double q2 = std::sqrt(theta * theta - omega * omega);
    const double q1 = (theta * theta + omega * omega) / q2;
    if (q1 >= 1.0 || q2 >= 1.0)
        throw std::domain_error("two-binomial limit invalid outside the small-angle regime");
    return {q1, q2};
}

}  // namespace

std::array<Complex, 3> exact_generating_function(const ModelParams& params, double chi) {
    params.validate();
    const EvolvingMatrix a_plus = evolving_matrix(params, +1);
    const EvolvingMatrix a_minus = evolving_matrix(params, -1);
    const Complex phase = std::polar(1.0, chi);

    CMat3 tilted;
    for (std::size_t k = 0; k < 9; ++k) tilted.m[k] = phase * a_plus.m[k] + a_minus.m[k];

    std::array<Complex, 3> v{params.initial.rho0, params.initial.rhoz, params.initial.rhox};
    for (int m = 0; m < params.n_meas; ++m) v = tilted * v;
    return v;
}

std::vector<double> invert_generating_function(const std::vector<Complex>& samples, int n_meas) {
    const std::size_t m = samples.size();
    if (m < static_cast<std::size_t>(n_meas) + 1)
        throw std::invalid_argument("inversion needs at least n + 1 generating-function samples");

    std::vector<double> p(static_cast<std::size_t>(n_meas) + 1);
    for (std::size_t n = 0; n < p.size(); ++n) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < m; ++k) {
            const double angle = -kTwoPi * static_cast<double>(k) * static_cast<double>(n) /
                                 static_cast<double>(m);
            acc += samples[k] * std::polar(1.0, angle);
        }
        acc /= static_cast<double>(m);
        if (std::abs(acc.imag()) > 1e-10)
            throw numeric_error("generating-function inversion left an imaginary residue of " +
                                std::to_string(std::abs(acc.imag())));
        p[n] = acc.real();
    }
    return p;
}

std::vector<double> fm_distribution_via_dft(const ModelParams& params) {
    const std::size_t m = static_cast<std::size_t>(params.n_meas) + 1;
    std::vector<Complex> samples(m);
    for (std::size_t k = 0; k < m; ++k)
        samples[k] =
            exact_generating_function(params, kTwoPi * static_cast<double>(k) / static_cast<double>(m))[0];
    return invert_generating_function(samples, params.n_meas);
}

TiltedGenerator k_matrix(Complex z, double theta, double omega) {
    const Complex zp = z + 1.0;
    const Complex zm = z - 1.0;
    TiltedGenerator gen;
    gen.z = z;
    gen.matrix.m = {0.5 * zp,         0.5 * zm * theta, Complex{0.0, 0.0},
                    0.5 * zm * theta, 0.5 * zp,         -0.5 * zp * omega,
                    Complex{0.0, 0.0}, 0.5 * zp * omega, 0.5 * zp};
    return gen;
}

SpectrumPoint k_eigenvalues(Complex z, double theta, double omega) {
    const Complex zp = z + 1.0;
    const Complex zm = z - 1.0;
    SpectrumPoint pt;
    pt.z = z;
    pt.epsilon = std::sqrt(zm * zm * theta * theta - zp * zp * omega * omega);
    pt.e1 = 0.5 * (zp + pt.epsilon);
    pt.e2 = 0.5 * (zp - pt.epsilon);
    pt.e3 = 0.5 * zp;
    return pt;
}

Complex closed_form_z0(Complex z, double theta, double omega, int n_meas) {
    const SpectrumPoint pt = k_eigenvalues(z, theta, omega);
    if (theta == 0.0 && omega == 0.0) return cpow_int(pt.e3, n_meas);

    const Complex denom = (z - 1.0) * theta + (z + 1.0) * omega;
    const double scale = std::abs(z - 1.0) * theta + std::abs(z + 1.0) * omega;
    if (std::abs(denom) <= 1e-14 * scale)
        throw numeric_error("closed-form generating function has a pole at this tilt");

    const Complex f = (z + 1.0) * omega / denom;
    return f * cpow_int(pt.e3, n_meas) +
           0.5 * (1.0 - f) * (cpow_int(pt.e1, n_meas) + cpow_int(pt.e2, n_meas));
}

std::vector<double> closed_form_distribution(double theta, double omega, int n_meas) {
    const std::size_t m = static_cast<std::size_t>(n_meas) + 1;
    std::vector<Complex> samples(m);
    for (std::size_t k = 0; k < m; ++k) {
        const Complex z = std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(m));
        samples[k] = closed_form_z0(z, theta, omega, n_meas);
    }
    return invert_generating_function(samples, n_meas);
}

std::vector<double> binomial_limit(int n_meas) {
    if (n_meas < 1) throw std::invalid_argument("n must be >= 1");
    // Pascal's row in long double: exact for small N, ~N ulps of relative
    // error for large N, and ldexpl avoids the 2^{-N} underflow that a
    // term-by-term product would hit near N = 1000.
    std::vector<long double> row(static_cast<std::size_t>(n_meas) + 1, 0.0L);
    row[0] = 1.0L;
    for (int r = 1; r <= n_meas; ++r) {
        row[static_cast<std::size_t>(r)] = 1.0L;
        for (int j = r - 1; j >= 1; --j)
            row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
    }
    std::vector<double> p(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        p[i] = static_cast<double>(ldexpl(row[i], -n_meas));
    return p;
}

std::vector<double> two_binomial_limit(double theta, double omega, int n_meas) {
    if (n_meas < 1) throw std::invalid_argument("n must be >= 1");
    const auto [q1, q2] = two_binomial_params(theta, omega);

    // Log-space evaluation: the unnormalized weights span hundreds of orders
    // of magnitude at N ~ 1000.
    const double lg_n = std::lgamma(static_cast<double>(n_meas) + 1.0);
    std::vector<double> w1(static_cast<std::size_t>(n_meas) + 1), w2(w1.size());
    double top = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_meas; ++n) {
        const double lg_binom = lg_n - std::lgamma(static_cast<double>(n) + 1.0) -
                                std::lgamma(static_cast<double>(n_meas - n) + 1.0);
        w1[static_cast<std::size_t>(n)] =
            lg_binom + n * std::log1p(q1) + (n_meas - n) * std::log1p(-q2);
        w2[static_cast<std::size_t>(n)] =
            lg_binom + n * std::log1p(-q1) + (n_meas - n) * std::log1p(q2);
        top = std::max({top, w1[static_cast<std::size_t>(n)], w2[static_cast<std::size_t>(n)]});
    }

    std::vector<double> p(w1.size());
    double total = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) {
        p[n] = std::exp(w1[n] - top) + std::exp(w2[n] - top);
        total += p[n];
    }
    for (double& v : p) v /= total;
    return p;
}

std::pair<double, double> peak_positions(double theta, double omega, int n_meas) {
    const auto [q1, q2] = two_binomial_params(theta, omega);
    const double n = static_cast<double>(n_meas);
    return {n * (1.0 + q1) / (2.0 + q1 - q2), n * (1.0 - q1) / (2.0 - q1 + q2)};
}

}  // namespace qumeas::fcs
