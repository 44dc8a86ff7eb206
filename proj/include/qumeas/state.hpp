#pragma once

#include <array>

#include "qumeas/linalg.hpp"

namespace qumeas {

// Conditioned qubit state (rho0, rhoz, rhox). rho0 is the probability weight
// of the outcome-record class the vector is conditioned on; rhoz and rhox
// carry the polarization. Precession is about the y axis, so the y component
// stays zero and is not stored.
struct StateVector {
    double rho0 = 1.0;
    double rhoz = 0.0;
    double rhox = 0.0;

    std::array<double, 3> as_array() const { return {rho0, rhoz, rhox}; }
    static StateVector from_array(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

    // Physical cone: rhoz^2 + rhox^2 <= rho0^2, within tolerance on the squares.
    bool physical(double tol = 1e-12) const {
        return rho0 >= -tol && rhoz * rhoz + rhox * rhox <= rho0 * rho0 + tol;
    }

    friend StateVector operator+(const StateVector& a, const StateVector& b) {
        return {a.rho0 + b.rho0, a.rhoz + b.rhoz, a.rhox + b.rhox};
    }
};

// Experiment specification: measurement strength angle theta (lambda =
// sin(theta)), per-step precession angle omega = omega_L * tau, per-step
// relaxation r * tau, number of measurements N, and the initial state.
struct ModelParams {
    double theta = 0.0;
    double omega = 0.0;
    double r_tau = 0.0;
    int n_meas = 2;
    StateVector initial{1.0, 0.0, 0.0};

    // Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

// One-step propagator for a single outcome branch: a 3x3 real matrix
// combining one precession interval and one measurement.
using EvolvingMatrix = Mat3;

// Rotate (rhoz, rhox) by omega; rho0 is untouched.
StateVector precess(const StateVector& p, double omega);

// Branch propagator A_alpha for outcome alpha in {+1, -1}:
//
//         1 (      1        alpha s c e     -alpha s w e )
//   A  =  - ( alpha s            c e              -w e   )
//         2 (      0            t w e              t c e )
//
// with s = sin(theta), c = cos(omega), w = sin(omega), t = cos(theta) and
// e = exp(-r_tau). A_+ + A_- has first row (1, 0, 0) exactly, so summing
// both branches conserves total weight.
EvolvingMatrix evolving_matrix(const ModelParams& params, int alpha);

StateVector apply(const EvolvingMatrix& a, const StateVector& p);

// p -> A_alpha p. The first component of the result is the joint weight
// P(branch) * rho0.
StateVector step(const StateVector& p, const ModelParams& params, int alpha);

// Conditional probability of outcome alpha given state p, i.e.
// (A_alpha p).rho0 / p.rho0. The two branch probabilities sum to 1.
// Throws numeric_error when p.rho0 is not positive beyond tolerance.
double branch_probability(const StateVector& p, const ModelParams& params, int alpha);

}  // namespace qumeas
