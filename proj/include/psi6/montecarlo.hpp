#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "psi6/analyzer.hpp"
#include "psi6/parallel.hpp"
#include "psi6/pauli.hpp"
#include "psi6/qstate.hpp"

namespace psi6 {

/// Per-setting coincidence counts with acquisition metadata. counts has one
/// bin per outcome string (lexicographic, first basis letter < second).
struct CountTable {
    std::string basisName = "HV";
    int n = 6;
    std::vector<std::uint64_t> counts;
    double durationHours = 0;
    double eventRatePerHour = 0;
    std::uint64_t seed = 0;

    std::uint64_t total_events() const;
};

struct Estimate {
    double value = 0;
    double standardError = 0;
    std::uint64_t sampleSize = 0;
};

/// Multinomial draw of a fixed number of events from the outcome
/// distribution; deterministic per seed.
CountTable sample_counts(const DensityOperator& state, const SettingVector& settings,
                         const std::string& basisName, std::uint64_t events, std::uint64_t seed);

/// Poisson mode: the event count itself is drawn as Poisson(duration * rate)
/// before the multinomial draw.
CountTable sample_counts_timed(const DensityOperator& state, const SettingVector& settings,
                               const std::string& basisName, double durationHours,
                               double eventRatePerHour, std::uint64_t seed);

/// Full-parity correlation estimate E = sum parity * counts / N with the
/// multinomial delta-method error sqrt((1 - E^2)/N). Throws
/// std::domain_error when the table is empty.
Estimate estimate_correlation(const CountTable& table);

/// Correlation over a subset of qubits (parity restricted to mask bits,
/// qubit 0 = most significant).
Estimate marginal_correlation(const CountTable& table, std::uint64_t qubitMask);

/// Per-bin relative frequencies with SE = sqrt(p(1-p)/N).
std::vector<Estimate> estimate_probabilities(const CountTable& table);

/// residual_i = (E_i - pHat * ideal_i) / (1 - pHat); near zero when the
/// white-noise model holds. Throws std::domain_error at pHat = 1.
std::vector<double> noise_residual_correlation(const std::vector<Estimate>& measured, double pHat,
                                               const std::vector<double>& ideal);

/// Witness expectation from one count table per uniform setting (x, y, z).
/// Every non-identity word must be single-type; each word's marginal parity
/// is estimated from the table of its Pauli letter. The standard error
/// combines the three independent multinomial tables.
Estimate witness_from_tables(const PauliObservable& obs, const CountTable& tableZ,
                             const CountTable& tableX, const CountTable& tableY);

/// Independent correlation estimates for seeds baseSeed..baseSeed+count-1.
std::vector<Estimate> correlation_sweep(const DensityOperator& state,
                                        const SettingVector& settings, std::uint64_t events,
                                        std::uint64_t baseSeed, int count,
                                        Execution policy = Execution::Parallel);

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// CSV layout: a metadata header row plus one "label,count" row per outcome.
void write_count_table_csv(std::ostream& out, const CountTable& table);
CountTable read_count_table_csv(std::istream& in);  // CsvError mentions the line number

}  // namespace psi6
