#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psi6/analyzer.hpp"
#include "psi6/montecarlo.hpp"
#include "psi6/qstate.hpp"

namespace psi6 {

/// Correlations, p estimate, fidelity, both witnesses with noise tolerances
/// and the tensor-norm indicator sums for the white-noise state at the given
/// p. `significance` is the SE multiplier used in verdicts (ignored here:
/// analytic inputs carry no SE).
nlohmann::json analytic_report(double p);

/// The same report from three measured count tables (z, x, y bases), with
/// standard errors. The fidelity and tolerance entries use the white-noise
/// model at the estimated p. `significance` scales the SE in verdicts.
nlohmann::json counts_report(const CountTable& z, const CountTable& x, const CountTable& y,
                             double significance);

/// 64-bin outcome probabilities of the white-noise state in a uniform named
/// basis.
std::vector<double> histogram_analytic(NamedBasis basis, double p);

/// Writers for histogram artifacts. `counts`/`stderrs` may be empty
/// (analytic histograms have no counts).
void write_histogram_csv(std::ostream& out, const std::vector<std::string>& labels,
                         const std::vector<double>& probabilities,
                         const std::vector<std::uint64_t>& counts,
                         const std::vector<double>& stderrs);
nlohmann::json histogram_json(const std::vector<std::string>& labels,
                              const std::vector<double>& probabilities,
                              const std::vector<std::uint64_t>& counts,
                              const std::vector<double>& stderrs);

/// Minimal static SVG bar chart.
void write_bar_chart_svg(std::ostream& out, const std::string& title,
                         const std::vector<std::string>& labels,
                         const std::vector<double>& values);

/// Deterministic float formatting used by every text artifact.
std::string format_double(double v);

}  // namespace psi6
