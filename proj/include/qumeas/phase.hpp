#pragma once

#include <string>
#include <vector>

#include "qumeas/distribution.hpp"
#include "qumeas/state.hpp"

// Phase classification of measurement records: polarized (the ferromagnetic
// order peaks away from zero), anti-polarized (the anti-ferromagnetic order
// does), or unpolarized (both peak at zero), plus the machinery for sweeping
// the (theta, omega) plane and locating the boundaries between the phases.
namespace qumeas::phase {

enum class Phase { PL, UPL, APL };

const char* to_string(Phase phase);

struct PhaseLabel {
    Phase label = Phase::UPL;
    double fm_argmax = 0.0;   // order parameter at the FM distribution's max
    double afm_argmax = 0.0;  // order parameter at the AFM distribution's max
    bool conflict = false;    // both orders peaked away from zero
};

// Label a point from its two order-parameter distributions. The argmax rule
// prefers the zero bin whenever the global maximum is within 1e-12 of it
// (ties break toward unpolarized, keeping that region simply connected).
// When both orders peak away from zero the larger displacement wins and the
// conflict flag is set; an exact displacement tie goes to PL. Throws
// std::invalid_argument if the distributions disagree on N or kinds.
PhaseLabel classify(const ConditionedDistribution& fm, const ConditionedDistribution& afm);

// Convenience: both exact distributions plus classify in one call.
PhaseLabel classify_point(const ModelParams& params);

struct PhaseDiagram {
    std::vector<double> theta_grid;
    std::vector<double> omega_grid;
    std::vector<PhaseLabel> labels;  // row-major: index = i_theta * n_omega + i_omega
    int n_meas = 0;
    StateVector initial;
    double r_tau = 0.0;

    const PhaseLabel& at(std::size_t i_theta, std::size_t i_omega) const {
        return labels[i_theta * omega_grid.size() + i_omega];
    }
};

std::vector<double> linspace(double lo, double hi, int count);

// Classify every grid point. Points are independent work items distributed
// over `threads` workers and written by index, so the diagram is bit-identical
// for any thread count. Per-point failures are rethrown with the grid
// coordinates attached.
PhaseDiagram sweep(const std::vector<double>& theta_grid, const std::vector<double>& omega_grid,
                   int n_meas, const StateVector& initial, double r_tau, int threads = 1);

enum class BoundaryKind { PL_UPL, UPL_APL };

const char* to_string(BoundaryKind kind);

struct BoundaryPoint {
    double theta = 0.0;
    double omega_boundary = 0.0;
};

// Grid-resolution boundary: per theta row, the midpoint between the last
// omega labelled with the lower phase and the first labelled with the upper
// phase. Rows without the transition are omitted.
std::vector<BoundaryPoint> extract_boundary(const PhaseDiagram& diagram, BoundaryKind kind);

// Sub-grid refinement: bisect omega in [omega_lo, omega_hi] down to
// `resolution` at fixed theta. The bracket must straddle the boundary
// (lower phase at omega_lo, upper at omega_hi) or std::invalid_argument is
// thrown.
double find_boundary(double theta, BoundaryKind kind, int n_meas, const StateVector& initial,
                     double r_tau, double omega_lo, double omega_hi, double resolution);

// find_boundary for each theta, parallel over rows. Rows whose bracket does
// not straddle the boundary (no transition at that theta) are skipped.
std::vector<BoundaryPoint> boundary_scan(const std::vector<double>& thetas, BoundaryKind kind,
                                         int n_meas, const StateVector& initial, double r_tau,
                                         double omega_lo, double omega_hi, double resolution,
                                         int threads = 1);

// The same boundary curve approached from the other axis: at fixed omega,
// bisect theta in [theta_lo, theta_hi] down to `resolution` for the onset of
// the polarized phase of `kind` (PL above the PL-UPL curve, APL above the
// UPL-APL curve; strengthening the measurement always polarizes, so the label
// is monotone in theta even where a fixed-theta row crosses the boundary
// several times). The bracket must straddle the onset (unpolarized at
// theta_lo, polarized at theta_hi) or std::invalid_argument is thrown.
double find_onset(double omega, BoundaryKind kind, int n_meas, const StateVector& initial,
                  double r_tau, double theta_lo, double theta_hi, double resolution);

// find_onset for each omega, parallel over columns. Columns whose bracket
// does not straddle the onset are skipped. Points come back as
// {theta = onset, omega_boundary = omega}, ordered by omega.
std::vector<BoundaryPoint> onset_scan(const std::vector<double>& omegas, BoundaryKind kind,
                                      int n_meas, const StateVector& initial, double r_tau,
                                      double theta_lo, double theta_hi, double resolution,
                                      int threads = 1);

// Dominant oscillation period of a boundary curve: subtract the linear fit,
// locate the zero crossings of the residual, and average their spacing
// (the scan windows hold too few cycles for a spectral fit). The abscissa is
// whichever coordinate the scan marched along — theta when the theta fields
// are strictly monotone (boundary_scan output), otherwise omega (onset_scan
// output) — and the period is measured in that coordinate. Throws
// insufficient_resolution_error when fewer than 3 full cycles are resolved
// or when neither coordinate is monotone.
double oscillation_period(const std::vector<BoundaryPoint>& boundary);

}  // namespace qumeas::phase
