#include "qumeas/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qumeas/errors.hpp"

namespace qumeas {

void ModelParams::validate() const {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!(theta >= 0.0 && theta <= half_pi))
        throw std::invalid_argument("theta must lie in [0, pi/2]");
    if (!(omega >= 0.0 && omega <= std::numbers::pi))
        throw std::invalid_argument("omega must lie in [0, pi]");
    if (!(r_tau >= 0.0)) throw std::invalid_argument("r_tau must be >= 0");
    if (n_meas < 2) throw std::invalid_argument("n must be >= 2");
    if (n_meas % 2 != 0) throw std::invalid_argument("n must be even");
    if (std::abs(initial.rho0 - 1.0) > 1e-12)
        throw std::invalid_argument("initial state must be normalized (rho0 = 1)");
    if (!initial.physical())
        throw std::invalid_argument("initial state must satisfy rhoz^2 + rhox^2 <= rho0^2");
}

StateVector precess(const StateVector& p, double omega) {
    const double c = std::cos(omega);
    const double s = std::sin(omega);
    return {p.rho0, p.rhoz * c - p.rhox * s, p.rhox * c + p.rhoz * s};
}

EvolvingMatrix evolving_matrix(const ModelParams& params, int alpha) {
    params.validate();
    if (alpha != 1 && alpha != -1) throw std::invalid_argument("alpha must be +1 or -1");

    const double a = static_cast<double>(alpha);
    const double s = std::sin(params.theta);
    const double t = std::cos(params.theta);
    const double c = std::cos(params.omega);
    const double w = std::sin(params.omega);
    const double e = std::exp(-params.r_tau);

    EvolvingMatrix m;
    m(0, 0) = 0.5;
    m(0, 1) = 0.5 * a * s * c * e;
    m(0, 2) = -0.5 * a * s * w * e;
    m(1, 0) = 0.5 * a * s;
    m(1, 1) = 0.5 * c * e;
    m(1, 2) = -0.5 * w * e;
    m(2, 0) = 0.0;
    m(2, 1) = 0.5 * t * w * e;
    m(2, 2) = 0.5 * t * c * e;
    return m;
}

StateVector apply(const EvolvingMatrix& a, const StateVector& p) {
    return StateVector::from_array(a * p.as_array());
}

StateVector step(const StateVector& p, const ModelParams& params, int alpha) {
    return apply(evolving_matrix(params, alpha), p);
}

double branch_probability(const StateVector& p, const ModelParams& params, int alpha) {
    if (p.rho0 <= 1e-14)
        throw numeric_error("degenerate state: rho0 = " + std::to_string(p.rho0));
    return step(p, params, alpha).rho0 / p.rho0;
}

}  // namespace qumeas
