#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "qumeas/linalg.hpp"
#include "qumeas/state.hpp"

// Full counting statistics of the up-outcome count: the exact tilted product,
// discrete Fourier inversion back to the distribution, and the small-angle
// spectral machinery (tilted generator K(z), its eigenvalues, and the
// closed-form limiting distributions derived from them).
namespace qumeas::fcs {

using Complex = std::complex<double>;

// Small-angle generating-function propagator at tilt z = e^{i chi}:
//
//          1 ( z+1      (z-1)t        0    )
//   K(z) = - ( (z-1)t    z+1      -(z+1)w  )
//          2 (  0       (z+1)w      z+1    )
//
// with t = theta, w = omega (leading order in both angles). At z = 1 this
// reduces to the small-angle form of A_+ + A_-.
struct TiltedGenerator {
    Complex z;
    CMat3 matrix;
};

// Spectrum of K(z): E_{1,2} = ((z+1) +/- epsilon)/2 with
// epsilon = sqrt((z-1)^2 theta^2 - (z+1)^2 omega^2) (principal branch), and
// E_3 = (z+1)/2. Only symmetric functions of {E_1, E_2} are branch-safe.
struct SpectrumPoint {
    Complex z;
    Complex e1, e2, e3;
    Complex epsilon;
};

// Z(chi) = (A_+ e^{i chi} + A_-)^N p0, computed exactly by repeated
// matrix-vector products. The first component is the generating function of
// the n_up distribution: Z_0(chi) = sum_n P(n) e^{i chi n}.
std::array<Complex, 3> exact_generating_function(const ModelParams& params, double chi);

// Inverse DFT of generating-function samples taken at chi_k = 2 pi k / M,
// k = 0..M-1. Exact for M >= n_meas + 1 because Z_0 is a polynomial of degree
// n_meas in e^{i chi}. Throws std::invalid_argument with fewer samples and
// numeric_error if any recovered value has imaginary residue above 1e-10.
std::vector<double> invert_generating_function(const std::vector<Complex>& samples, int n_meas);

// Distribution of n_up obtained by sampling exact_generating_function at the
// minimal N+1 tilt angles and inverting. Agrees with dp::fm_distribution.
std::vector<double> fm_distribution_via_dft(const ModelParams& params);

TiltedGenerator k_matrix(Complex z, double theta, double omega);

SpectrumPoint k_eigenvalues(Complex z, double theta, double omega);

// Closed form of the generating function for the x-polarized initial state
// (1, 0, 1):  Z_0 = f_z E_3^N + (1 - f_z)(E_1^N + E_2^N)/2  with
// f_z = (z+1) omega / ((z-1) theta + (z+1) omega). Throws numeric_error at a
// pole of f_z. theta = omega = 0 is handled as the f_z -> 1 limit.
Complex closed_form_z0(Complex z, double theta, double omega, int n_meas);

// Inverse DFT of closed_form_z0 over the minimal N+1 tilt samples.
std::vector<double> closed_form_distribution(double theta, double omega, int n_meas);

// Weak-measurement limit theta << omega: here Z_0 = ((z+1)/2)^N, whose
// inverse DFT is the symmetric binomial P(n) = C(N, n) / 2^N.
std::vector<double> binomial_limit(int n_meas);

// Strong-measurement limit theta >> omega: mixture of two binomials,
//   P(n) ~ C(N, n) [(1+q1)^n (1-q2)^{N-n} + (1-q1)^n (1+q2)^{N-n}],
// renormalized to unit sum (the stationary-phase prefactor is n-independent
// at leading order). q1 = (theta^2 + omega^2)/sqrt(theta^2 - omega^2),
// q2 = sqrt(theta^2 - omega^2). Throws std::domain_error unless
// omega < theta and q1 < 1.
std::vector<double> two_binomial_limit(double theta, double omega, int n_meas);

// Saddle-point peak locations of the two-binomial mixture:
// N (1+q1)/(2+q1-q2) and N (1-q1)/(2-q1+q2). Same domain as above.
std::pair<double, double> peak_positions(double theta, double omega, int n_meas);

}  // namespace qumeas::fcs
