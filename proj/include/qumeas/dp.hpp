#pragma once

#include "qumeas/distribution.hpp"
#include "qumeas/state.hpp"

namespace qumeas::dp {

// Exact distribution of the ferromagnetic order count n_up after N
// measurements, via the two-term recursion
//
//   P(n_up, n+1) = A_+ P(n_up - 1, n) + A_- P(n_up, n)
//
// with P(n_up, 0) = delta_{n_up,0} p0. O(N^2) vector-matrix products, no
// sampling.
ConditionedDistribution fm_distribution(const ModelParams& params);

// Exact distribution of the anti-ferromagnetic count n_A over the N/2
// two-measurement unit cells (cell k = measurements 2k-1 and 2k), via the
// three-term recursion
//
//   P_A(n_A, n+1) = A_P P_A(n_A, n) + A_+A_- P_A(n_A - 1, n)
//                                   + A_-A_+ P_A(n_A + 1, n)
//
// with the parallel-outcome operator A_P = A_+^2 + A_-^2. In the matrix
// products the right factor acts first, so the +1 shift corresponds to a
// cell whose time-ordered outcomes are (-1, +1).
ConditionedDistribution afm_distribution(const ModelParams& params);

}  // namespace qumeas::dp
