#include "qumeas/dp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qumeas/errors.hpp"

namespace qumeas {

double ConditionedDistribution::order_param(std::size_t i) const {
    const double n = static_cast<double>(n_meas);
    if (kind == OrderKind::FM) return (2.0 * static_cast<double>(i) - n) / n;
    return (static_cast<double>(i) - n / 2.0) / (n / 2.0);
}

double ConditionedDistribution::probability(std::size_t i) const {
    const double v = table[i].rho0;
    if (v >= 0.0) return v;
    if (v >= -1e-12) return 0.0;
    throw numeric_error("negative probability " + std::to_string(v) + " in bin " +
                        std::to_string(i));
}

std::vector<double> ConditionedDistribution::probabilities() const {
    std::vector<double> p(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) p[i] = probability(i);
    return p;
}

double ConditionedDistribution::total_probability() const {
    double s = 0.0;
    for (std::size_t i = 0; i < table.size(); ++i) s += probability(i);
    return s;
}

std::size_t ConditionedDistribution::argmax() const {
    std::size_t best = 0;
    double best_p = probability(0);
    for (std::size_t i = 1; i < table.size(); ++i) {
        const double p = probability(i);
        if (p > best_p) {
            best = i;
            best_p = p;
        }
    }
    return best;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        d = std::max(d, std::abs(x - y));
    }
    return d;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    const std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i < a.size() ? a[i] : 0.0;
        const double y = i < b.size() ? b[i] : 0.0;
        d += std::abs(x - y);
    }
    return 0.5 * d;
}

namespace dp {

ConditionedDistribution fm_distribution(const ModelParams& params) {
    params.validate();
    const int n = params.n_meas;
    const EvolvingMatrix a_plus = evolving_matrix(params, +1);
    const EvolvingMatrix a_minus = evolving_matrix(params, -1);

    // Single table updated in place from high n_up to low: bin k after the
    // update only reads bins k and k-1 from before it.
    std::vector<StateVector> table(static_cast<std::size_t>(n) + 1, StateVector{0.0, 0.0, 0.0});
    table[0] = params.initial;
    for (int meas = 0; meas < n; ++meas) {
        for (int k = meas + 1; k >= 0; --k) {
            StateVector next = apply(a_minus, table[static_cast<std::size_t>(k)]);
            if (k > 0) next = next + apply(a_plus, table[static_cast<std::size_t>(k) - 1]);
            table[static_cast<std::size_t>(k)] = next;
        }
    }
    return {OrderKind::FM, n, std::move(table)};
}

ConditionedDistribution afm_distribution(const ModelParams& params) {
    params.validate();
    if (params.n_meas % 2 != 0) throw std::invalid_argument("n must be even");
    const int n = params.n_meas;
    const int cells = n / 2;
    const int offset = cells;  // bin index of n_A = 0 is N/2

    const EvolvingMatrix a_plus = evolving_matrix(params, +1);
    const EvolvingMatrix a_minus = evolving_matrix(params, -1);
    const EvolvingMatrix a_par = a_plus * a_plus + a_minus * a_minus;
    const EvolvingMatrix a_up_shift = a_plus * a_minus;    // n_A -> n_A + 1
    const EvolvingMatrix a_down_shift = a_minus * a_plus;  // n_A -> n_A - 1

    std::vector<StateVector> cur(static_cast<std::size_t>(n) + 1, StateVector{0.0, 0.0, 0.0});
    std::vector<StateVector> next(cur.size());
    cur[static_cast<std::size_t>(offset)] = params.initial;

    for (int cell = 0; cell < cells; ++cell) {
        const int lo = offset - cell - 1;
        const int hi = offset + cell + 1;
        for (int j = lo; j <= hi; ++j) {
            const std::size_t u = static_cast<std::size_t>(j);
            StateVector v = apply(a_par, cur[u]);
            if (j > 0) v = v + apply(a_up_shift, cur[u - 1]);
            if (j < n) v = v + apply(a_down_shift, cur[u + 1]);
            next[u] = v;
        }
        for (int j = lo; j <= hi; ++j) {
            const std::size_t u = static_cast<std::size_t>(j);
            cur[u] = next[u];
        }
    }
    return {OrderKind::AFM, n, std::move(cur)};
}

}  // namespace dp
}  // namespace qumeas
