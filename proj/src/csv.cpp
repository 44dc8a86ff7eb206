#include "qumeas/csv.hpp"

#include <cstdio>

#include "qumeas/version.hpp"

namespace qumeas::csv {

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

void Metadata::add(const std::string& key, const std::string& value) {
    entries.emplace_back(key, value);
}

void Metadata::add(const std::string& key, double value) {
    entries.emplace_back(key, format_double(value));
}

void Metadata::add(const std::string& key, long long value) {
    entries.emplace_back(key, std::to_string(value));
}

void write_metadata(std::ostream& os, const Metadata& meta) {
    os << "# qumeas " << kVersion << "\n";
    for (const auto& [key, value] : meta.entries) os << "# " << key << " = " << value << "\n";
}

void write_distribution(std::ostream& os, const ConditionedDistribution& dist,
                        const Metadata& meta) {
    write_metadata(os, meta);
    os << "order_param,probability,rho0,rhoz,rhox\n";
    for (std::size_t i = 0; i < dist.size(); ++i)
        os << format_double(dist.order_param(i)) << ',' << format_double(dist.probability(i))
           << ',' << format_double(dist.table[i].rho0) << ',' << format_double(dist.table[i].rhoz)
           << ',' << format_double(dist.table[i].rhox) << '\n';
}

void write_mc_histogram(std::ostream& os, const oracle::McHistograms& hist, OrderKind kind,
                        const Metadata& meta) {
    write_metadata(os, meta);
    os << "order_param,probability,count,n_traj,seed\n";
    const auto& counts = kind == OrderKind::FM ? hist.fm_counts : hist.afm_counts;
    const double n = static_cast<double>(hist.n_meas);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double order = kind == OrderKind::FM
                                 ? (2.0 * static_cast<double>(i) - n) / n
                                 : (static_cast<double>(i) - n / 2.0) / (n / 2.0);
        os << format_double(order) << ','
           << format_double(static_cast<double>(counts[i]) / static_cast<double>(hist.n_traj))
           << ',' << counts[i] << ',' << hist.n_traj << ',' << hist.seed << '\n';
    }
}

void write_diagram(std::ostream& os, const phase::PhaseDiagram& diagram, const Metadata& meta) {
    write_metadata(os, meta);
    os << "theta,omega,label,fm_argmax,afm_argmax,conflict\n";
    for (std::size_t i = 0; i < diagram.theta_grid.size(); ++i)
        for (std::size_t j = 0; j < diagram.omega_grid.size(); ++j) {
            const phase::PhaseLabel& lbl = diagram.at(i, j);
            os << format_double(diagram.theta_grid[i]) << ','
               << format_double(diagram.omega_grid[j]) << ',' << phase::to_string(lbl.label)
               << ',' << format_double(lbl.fm_argmax) << ',' << format_double(lbl.afm_argmax)
               << ',' << (lbl.conflict ? 1 : 0) << '\n';
        }
}

void write_boundary(std::ostream& os, const std::vector<BoundaryRow>& rows, const Metadata& meta) {
    write_metadata(os, meta);
    os << "theta,omega_boundary,kind\n";
    for (const auto& row : rows)
        os << format_double(row.point.theta) << ',' << format_double(row.point.omega_boundary)
           << ',' << phase::to_string(row.kind) << '\n';
}

void write_periods(std::ostream& os, const std::vector<PeriodRow>& rows, const Metadata& meta) {
    write_metadata(os, meta);
    os << "kind,period,n_points,status\n";
    for (const auto& row : rows)
        os << phase::to_string(row.kind) << ',' << format_double(row.period) << ','
           << row.n_points << ',' << row.status << '\n';
}

void write_eigenvalue_locus(std::ostream& os, const std::vector<fcs::SpectrumPoint>& points,
                            const std::vector<double>& chis, const Metadata& meta) {
    write_metadata(os, meta);
    os << "chi,re_E1,im_E1,re_E2,im_E2,re_E3,im_E3\n";
    for (std::size_t i = 0; i < points.size(); ++i)
        os << format_double(chis[i]) << ',' << format_double(points[i].e1.real()) << ','
           << format_double(points[i].e1.imag()) << ',' << format_double(points[i].e2.real())
           << ',' << format_double(points[i].e2.imag()) << ','
           << format_double(points[i].e3.real()) << ',' << format_double(points[i].e3.imag())
           << '\n';
}

void write_plain_distribution(std::ostream& os, const std::vector<double>& probabilities,
                              int n_meas, const Metadata& meta) {
    write_metadata(os, meta);
    os << "order_param,probability\n";
    const double n = static_cast<double>(n_meas);
    for (std::size_t i = 0; i < probabilities.size(); ++i)
        os << format_double((2.0 * static_cast<double>(i) - n) / n) << ','
           << format_double(probabilities[i]) << '\n';
}

}  // namespace qumeas::csv
