#include "qumeas/phase.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

#include "qumeas/dp.hpp"
#include "qumeas/errors.hpp"
#include "qumeas/parallel.hpp"

namespace qumeas::phase {

namespace {

// Index of the maximal probability, except that the zero bin wins whenever it
// comes within 1e-12 of the maximum. Displacements of a single bin therefore
// count as off-zero only when they are genuinely larger.
std::size_t argmax_with_zero_preference(const ConditionedDistribution& dist) {
    const std::vector<double> p = dist.probabilities();
    std::size_t best = 0;
    for (std::size_t i = 1; i < p.size(); ++i)
        if (p[i] > p[best]) best = i;
    if (p[dist.zero_bin()] >= p[best] - 1e-12) return dist.zero_bin();
    return best;
}

bool past_boundary(const PhaseLabel& label, BoundaryKind kind) {
    // Along a row of increasing omega the phases appear in the order
    // PL, UPL, APL, so "past the PL-UPL boundary" means no longer PL and
    // "past the UPL-APL boundary" means already APL.
    if (kind == BoundaryKind::PL_UPL) return label.label != Phase::PL;
    return label.label == Phase::APL;
}

Phase lower_phase(BoundaryKind kind) {
    return kind == BoundaryKind::PL_UPL ? Phase::PL : Phase::UPL;
}

Phase upper_phase(BoundaryKind kind) {
    return kind == BoundaryKind::PL_UPL ? Phase::UPL : Phase::APL;
}

void check_grid(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument(std::string(name) + " grid must be strictly increasing");
}

bool strictly_monotone(const std::vector<double>& v) {
    bool inc = true, dec = true;
    for (std::size_t i = 1; i < v.size(); ++i) {
        inc = inc && v[i] > v[i - 1];
        dec = dec && v[i] < v[i - 1];
    }
    return inc || dec;
}

}  // namespace

const char* to_string(Phase phase) {
    switch (phase) {
        case Phase::PL: return "PL";
        case Phase::UPL: return "UPL";
        case Phase::APL: return "APL";
    }
    return "?";
}

const char* to_string(BoundaryKind kind) {
    return kind == BoundaryKind::PL_UPL ? "PL-UPL" : "UPL-APL";
}

PhaseLabel classify(const ConditionedDistribution& fm, const ConditionedDistribution& afm) {
    if (fm.kind != OrderKind::FM || afm.kind != OrderKind::AFM)
        throw std::invalid_argument("classify expects one FM and one AFM distribution");
    if (fm.n_meas != afm.n_meas)
        throw std::invalid_argument("classify: distributions disagree on n");

    const std::size_t fm_idx = argmax_with_zero_preference(fm);
    const std::size_t afm_idx = argmax_with_zero_preference(afm);

    PhaseLabel out;
    out.fm_argmax = fm.order_param(fm_idx);
    out.afm_argmax = afm.order_param(afm_idx);

    const bool fm_peaked = fm_idx != fm.zero_bin();
    const bool afm_peaked = afm_idx != afm.zero_bin();
    if (fm_peaked && afm_peaked) {
        out.conflict = true;
        out.label = std::abs(out.fm_argmax) >= std::abs(out.afm_argmax) ? Phase::PL : Phase::APL;
    } else if (fm_peaked) {
        out.label = Phase::PL;
    } else if (afm_peaked) {
        out.label = Phase::APL;
    } else {
        out.label = Phase::UPL;
    }
    return out;
}

PhaseLabel classify_point(const ModelParams& params) {
    return classify(dp::fm_distribution(params), dp::afm_distribution(params));
}

std::vector<double> linspace(double lo, double hi, int count) {
    if (count < 1) throw std::invalid_argument("linspace needs at least one point");
    std::vector<double> grid(static_cast<std::size_t>(count));
    if (count == 1) {
        grid[0] = lo;
        return grid;
    }
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return grid;
}

PhaseDiagram sweep(const std::vector<double>& theta_grid, const std::vector<double>& omega_grid,
                   int n_meas, const StateVector& initial, double r_tau, int threads) {
    check_grid(theta_grid, "theta");
    check_grid(omega_grid, "omega");

    PhaseDiagram diagram;
    diagram.theta_grid = theta_grid;
    diagram.omega_grid = omega_grid;
    diagram.n_meas = n_meas;
    diagram.initial = initial;
    diagram.r_tau = r_tau;
    diagram.labels.resize(theta_grid.size() * omega_grid.size());

    const std::size_t n_omega = omega_grid.size();
    parallel_for(diagram.labels.size(), threads, [&](std::size_t idx) {
        const double theta = theta_grid[idx / n_omega];
        const double omega = omega_grid[idx % n_omega];
        try {
            diagram.labels[idx] = classify_point({theta, omega, r_tau, n_meas, initial});
        } catch (const std::exception& e) {
            throw std::runtime_error("at theta=" + std::to_string(theta) +
                                     ", omega=" + std::to_string(omega) + ": " + e.what());
        }
    });
    return diagram;
}

std::vector<BoundaryPoint> extract_boundary(const PhaseDiagram& diagram, BoundaryKind kind) {
    const Phase lower = lower_phase(kind);
    const Phase upper = upper_phase(kind);
    std::vector<BoundaryPoint> boundary;
    for (std::size_t i = 0; i < diagram.theta_grid.size(); ++i) {
        std::size_t last_lower = 0, first_upper = 0;
        bool has_lower = false, has_upper = false;
        for (std::size_t j = 0; j < diagram.omega_grid.size(); ++j) {
            const Phase lbl = diagram.at(i, j).label;
            if (lbl == lower) {
                last_lower = j;
                has_lower = true;
            }
            if (lbl == upper && !has_upper) {
                first_upper = j;
                has_upper = true;
            }
        }
        if (has_lower && has_upper)
            boundary.push_back({diagram.theta_grid[i],
                                0.5 * (diagram.omega_grid[last_lower] +
                                       diagram.omega_grid[first_upper])});
    }
    return boundary;
}

double find_boundary(double theta, BoundaryKind kind, int n_meas, const StateVector& initial,
                     double r_tau, double omega_lo, double omega_hi, double resolution) {
    if (!(omega_lo < omega_hi)) throw std::invalid_argument("bisection bracket is empty");
    if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");

    auto past = [&](double omega) {
        return past_boundary(classify_point({theta, omega, r_tau, n_meas, initial}), kind);
    };
    if (past(omega_lo) || !past(omega_hi))
        throw std::invalid_argument("bisection bracket does not straddle the boundary");

    double lo = omega_lo, hi = omega_hi;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (past(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<BoundaryPoint> boundary_scan(const std::vector<double>& thetas, BoundaryKind kind,
                                         int n_meas, const StateVector& initial, double r_tau,
                                         double omega_lo, double omega_hi, double resolution,
                                         int threads) {
    // NaN marks rows without the transition; they are dropped at the end so
    // the result is independent of worker scheduling.
    std::vector<double> found(thetas.size());
    parallel_for(thetas.size(), threads, [&](std::size_t i) {
        try {
            found[i] = find_boundary(thetas[i], kind, n_meas, initial, r_tau, omega_lo, omega_hi,
                                     resolution);
        } catch (const std::invalid_argument&) {
            found[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }, 1);

    std::vector<BoundaryPoint> boundary;
    for (std::size_t i = 0; i < thetas.size(); ++i)
        if (!std::isnan(found[i])) boundary.push_back({thetas[i], found[i]});
    return boundary;
}

double find_onset(double omega, BoundaryKind kind, int n_meas, const StateVector& initial,
                  double r_tau, double theta_lo, double theta_hi, double resolution) {
    if (!(theta_lo < theta_hi)) throw std::invalid_argument("bisection bracket is empty");
    if (!(resolution > 0.0)) throw std::invalid_argument("resolution must be positive");

    const Phase target = kind == BoundaryKind::PL_UPL ? Phase::PL : Phase::APL;
    auto polarized = [&](double theta) {
        return classify_point({theta, omega, r_tau, n_meas, initial}).label == target;
    };
    if (polarized(theta_lo) || !polarized(theta_hi))
        throw std::invalid_argument("bisection bracket does not straddle the onset");

    double lo = theta_lo, hi = theta_hi;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (polarized(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<BoundaryPoint> onset_scan(const std::vector<double>& omegas, BoundaryKind kind,
                                      int n_meas, const StateVector& initial, double r_tau,
                                      double theta_lo, double theta_hi, double resolution,
                                      int threads) {
    std::vector<double> found(omegas.size());
    parallel_for(omegas.size(), threads, [&](std::size_t i) {
        try {
            found[i] = find_onset(omegas[i], kind, n_meas, initial, r_tau, theta_lo, theta_hi,
                                  resolution);
        } catch (const std::invalid_argument&) {
            found[i] = std::numeric_limits<double>::quiet_NaN();
        }
    }, 1);

    std::vector<BoundaryPoint> boundary;
    for (std::size_t i = 0; i < omegas.size(); ++i)
        if (!std::isnan(found[i])) boundary.push_back({found[i], omegas[i]});
    return boundary;
}

double oscillation_period(const std::vector<BoundaryPoint>& boundary) {
    const std::size_t n = boundary.size();
    if (n < 8)
        throw insufficient_resolution_error("boundary scan too short for a period estimate");

    // The scan coordinate is the monotone one; the other is the curve value.
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = boundary[i].theta;
        y[i] = boundary[i].omega_boundary;
    }
    if (!strictly_monotone(x)) {
        x.swap(y);
        if (!strictly_monotone(x))
            throw insufficient_resolution_error(
                "boundary points are not monotone along either coordinate");
    }

    // Least-squares linear fit y ~ a + b * x.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double count = static_cast<double>(n);
    const double denom = count * sxx - sx * sx;
    if (denom == 0.0) throw insufficient_resolution_error("degenerate scan range");
    const double b = (count * sxy - sx * sy) / denom;
    const double a = (sy - b * sx) / count;

    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - (a + b * x[i]);

    // Zero crossings of the residual, positioned by linear interpolation.
    // Consecutive crossings are half a period apart.
    std::vector<double> crossings;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (residual[i] == 0.0) {
            crossings.push_back(x[i]);
        } else if (residual[i] * residual[i + 1] < 0.0) {
            const double t = residual[i] / (residual[i] - residual[i + 1]);
            crossings.push_back(x[i] + t * (x[i + 1] - x[i]));
        }
    }
    if (crossings.size() < 7)
        throw insufficient_resolution_error(
            "fewer than 3 oscillation cycles resolved (" +
            std::to_string(crossings.size()) + " zero crossings)");
    return 2.0 * (crossings.back() - crossings.front()) /
           static_cast<double>(crossings.size() - 1);
}

}  // namespace qumeas::phase
