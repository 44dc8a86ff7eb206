#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qumeas/distribution.hpp"
#include "qumeas/fcs.hpp"
#include "qumeas/oracle.hpp"
#include "qumeas/phase.hpp"

// CSV emission. Every file starts with a '#'-prefixed metadata block (tool
// version plus the fully resolved configuration) so outputs are
// self-describing; numeric cells use %.17g so equal doubles always print to
// equal bytes.
namespace qumeas::csv {

std::string format_double(double value);

// Ordered key/value block written as "# key = value" lines after the
// "# qumeas <version>" banner.
struct Metadata {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add(const std::string& key, long long value);
};

void write_metadata(std::ostream& os, const Metadata& meta);

// Columns: order_param, probability, rho0, rhoz, rhox.
void write_distribution(std::ostream& os, const ConditionedDistribution& dist,
                        const Metadata& meta);

// Columns: order_param, probability, count, n_traj, seed.
void write_mc_histogram(std::ostream& os, const oracle::McHistograms& hist, OrderKind kind,
                        const Metadata& meta);

// Columns: theta, omega, label, fm_argmax, afm_argmax, conflict.
void write_diagram(std::ostream& os, const phase::PhaseDiagram& diagram, const Metadata& meta);

// Columns: theta, omega_boundary, kind.
struct BoundaryRow {
    phase::BoundaryPoint point;
    phase::BoundaryKind kind;
};
void write_boundary(std::ostream& os, const std::vector<BoundaryRow>& rows, const Metadata& meta);

// Columns: kind, period, n_points, status. One row per boundary kind scanned;
// status is "ok" or the reason no period could be estimated.
struct PeriodRow {
    phase::BoundaryKind kind;
    double period;
    std::size_t n_points;
    std::string status;
};
void write_periods(std::ostream& os, const std::vector<PeriodRow>& rows, const Metadata& meta);

// Columns: chi, re_E1, im_E1, re_E2, im_E2, re_E3, im_E3.
void write_eigenvalue_locus(std::ostream& os, const std::vector<fcs::SpectrumPoint>& points,
                            const std::vector<double>& chis, const Metadata& meta);

// Columns: order_param, probability (for closed-form distributions that carry
// no conditioned moments).
void write_plain_distribution(std::ostream& os, const std::vector<double>& probabilities,
                              int n_meas, const Metadata& meta);

}  // namespace qumeas::csv
