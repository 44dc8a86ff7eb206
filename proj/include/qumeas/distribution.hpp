#pragma once

#include <cstddef>
#include <vector>

#include "qumeas/state.hpp"

namespace qumeas {

enum class OrderKind { FM, AFM };

// Exact distribution of an order-parameter count: one conditioned state
// vector per count bin. For FM the bin index is n_up in [0, N]; for AFM it
// is n_A + N/2 with n_A in [-N/2, N/2]. Either way the table has N+1 bins,
// the zero-order bin sits at index N/2, and the first components form a
// probability distribution.
struct ConditionedDistribution {
    OrderKind kind = OrderKind::FM;
    int n_meas = 0;
    std::vector<StateVector> table;

    std::size_t size() const { return table.size(); }
    std::size_t zero_bin() const { return static_cast<std::size_t>(n_meas / 2); }

    // M_F = (2 n_up - N)/N for FM bins, M_AF = n_A/(N/2) for AFM bins.
    double order_param(std::size_t i) const;

    // First component of bin i, clamped to zero inside [-1e-12, 0).
    // Values below -1e-12 indicate a sign bug, not roundoff, and throw
    // numeric_error.
    double probability(std::size_t i) const;
    std::vector<double> probabilities() const;

    double total_probability() const;
    std::size_t argmax() const;  // strict max; lowest index wins exact ties
};

// Largest absolute difference between the two probability distributions.
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

// Total-variation distance (half the L1 distance).
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace qumeas
