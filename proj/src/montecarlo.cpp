#include "psi6/montecarlo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace psi6 {

namespace {
/// Poisson draw via Knuth's product method, chunked so exp(-lambda) never
/// underflows.
std::uint64_t poisson_draw(double lambda, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uint64_t total = 0;
    while (lambda > 0) {
        const double chunk = std::min(lambda, 200.0);
        lambda -= chunk;
        const double limit = std::exp(-chunk);
        double prod = uni(rng);
        std::uint64_t k = 0;
        while (prod > limit) {
            ++k;
            prod *= uni(rng);
        }
        total += k;
    }
    return total;
}

std::vector<std::uint64_t> multinomial_draw(const std::vector<double>& probs, std::uint64_t events,
                                            std::mt19937_64& rng) {
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    const double total = cdf.back();
    std::uniform_real_distribution<double> uni(0.0, total);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (std::uint64_t e = 0; e < events; ++e) {
        const double u = uni(rng);
        const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        const std::size_t bin = std::min(static_cast<std::size_t>(it - cdf.begin()),
                                         probs.size() - 1);
        ++counts[bin];
    }
    return counts;
}

void require_events(const CountTable& table) {
    if (table.total_events() == 0) {
        throw std::domain_error("count table has no events");
    }
}
}  // namespace

std::uint64_t CountTable::total_events() const {
    return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

CountTable sample_counts(const DensityOperator& state, const SettingVector& settings,
                         const std::string& basisName, std::uint64_t events, std::uint64_t seed) {
    CountTable table;
    table.basisName = basisName;
    table.n = state.qubit_count();
    table.seed = seed;
    std::mt19937_64 rng(seed);
    table.counts = multinomial_draw(outcome_distribution(state, settings), events, rng);
    return table;
}

CountTable sample_counts_timed(const DensityOperator& state, const SettingVector& settings,
                               const std::string& basisName, double durationHours,
                               double eventRatePerHour, std::uint64_t seed) {
    if (durationHours < 0 || eventRatePerHour < 0) {
        throw std::domain_error("duration and rate must be non-negative");
    }
    std::mt19937_64 rng(seed);
    const std::uint64_t events = poisson_draw(durationHours * eventRatePerHour, rng);
    CountTable table;
    table.basisName = basisName;
    table.n = state.qubit_count();
    table.seed = seed;
    table.durationHours = durationHours;
    table.eventRatePerHour = eventRatePerHour;
    table.counts = multinomial_draw(outcome_distribution(state, settings), events, rng);
    return table;
}

Estimate estimate_correlation(const CountTable& table) {
    return marginal_correlation(table, (std::uint64_t{1} << table.n) - 1);
}

Estimate marginal_correlation(const CountTable& table, std::uint64_t qubitMask) {
    require_events(table);
    const std::uint64_t events = table.total_events();
    double sum = 0;
    for (std::size_t o = 0; o < table.counts.size(); ++o) {
        const int parity = (std::popcount(o & qubitMask) % 2 == 0) ? 1 : -1;
        sum += parity * static_cast<double>(table.counts[o]);
    }
    Estimate e;
    e.sampleSize = events;
    e.value = sum / static_cast<double>(events);
    e.standardError =
        std::sqrt(std::max(0.0, 1.0 - e.value * e.value) / static_cast<double>(events));
    return e;
}

std::vector<Estimate> estimate_probabilities(const CountTable& table) {
    require_events(table);
    const double events = static_cast<double>(table.total_events());
    std::vector<Estimate> out(table.counts.size());
    for (std::size_t o = 0; o < table.counts.size(); ++o) {
        const double p = static_cast<double>(table.counts[o]) / events;
        out[o] = {p, std::sqrt(std::max(0.0, p * (1.0 - p)) / events),
                  table.total_events()};
    }
    return out;
}

std::vector<double> noise_residual_correlation(const std::vector<Estimate>& measured, double pHat,
                                               const std::vector<double>& ideal) {
    if (measured.size() != ideal.size()) {
        throw std::invalid_argument("measured and ideal correlation counts differ");
    }
    if (!(pHat >= 0.0 && pHat < 1.0)) {
        throw std::domain_error("pHat must lie in [0, 1)");
    }
    std::vector<double> residuals(measured.size());
    for (std::size_t i = 0; i < measured.size(); ++i) {
        residuals[i] = (measured[i].value - pHat * ideal[i]) / (1.0 - pHat);
    }
    return residuals;
}

Estimate witness_from_tables(const PauliObservable& obs, const CountTable& tableZ,
                             const CountTable& tableX, const CountTable& tableY) {
    const int n = obs.qubit_count();
    for (const CountTable* t : {&tableZ, &tableX, &tableY}) {
        if (t->n != n) throw std::invalid_argument("table qubit count mismatch");
        require_events(*t);
    }
    // Per-table outcome score f(o) = sum over that table's words of
    // coeff * parity(o, support); the witness estimate is the identity
    // coefficient plus the three score means. Variance adds across the
    // independent tables (multinomial delta method per table).
    double value = 0;
    double variance = 0;
    for (const auto& [letter, table] :
         {std::pair{'Z', &tableZ}, std::pair{'X', &tableX}, std::pair{'Y', &tableY}}) {
        std::vector<double> score(std::size_t{1} << n, 0.0);
        bool any = false;
        for (const auto& [word, coeff] : obs.terms()) {
            if (!single_pauli_type(word)) {
                throw std::invalid_argument(
                    "witness_from_tables needs single-type Pauli words, got " + word);
            }
            std::uint64_t mask = 0;
            char type = 0;
            for (int q = 0; q < n; ++q) {
                const char c = word[static_cast<std::size_t>(q)];
                if (c == 'I') continue;
                type = c;
                mask |= std::uint64_t{1} << (n - 1 - q);
            }
            if (type != letter) continue;
            any = true;
            for (std::uint64_t o = 0; o < score.size(); ++o) {
                const int parity = (std::popcount(o & mask) % 2 == 0) ? 1 : -1;
                score[o] += coeff * parity;
            }
        }
        if (!any) continue;
        const double events = static_cast<double>(table->total_events());
        double mean = 0, meanSq = 0;
        for (std::uint64_t o = 0; o < score.size(); ++o) {
            const double w = static_cast<double>(table->counts[o]) / events;
            mean += w * score[o];
            meanSq += w * score[o] * score[o];
        }
        value += mean;
        variance += std::max(0.0, meanSq - mean * mean) / events;
    }
    Estimate e;
    e.value = value + obs.coeff(obs.identity_word());
    e.standardError = std::sqrt(variance);
    e.sampleSize = tableZ.total_events() + tableX.total_events() + tableY.total_events();
    return e;
}

std::vector<Estimate> correlation_sweep(const DensityOperator& state,
                                        const SettingVector& settings, std::uint64_t events,
                                        std::uint64_t baseSeed, int count, Execution policy) {
    const std::vector<double> probs = outcome_distribution(state, settings);
    std::vector<Estimate> out(static_cast<std::size_t>(count));
    parallel_for(policy, count, [&](std::int64_t i) {
        CountTable table;
        table.n = state.qubit_count();
        table.seed = baseSeed + static_cast<std::uint64_t>(i);
        std::mt19937_64 rng(table.seed);
        table.counts = multinomial_draw(probs, events, rng);
        out[static_cast<std::size_t>(i)] = estimate_correlation(table);
    });
    return out;
}

void write_count_table_csv(std::ostream& out, const CountTable& table) {
    out << "basis,events,durationHours,eventRatePerHour,seed\n";
    out << table.basisName << ',' << table.total_events() << ',' << table.durationHours << ','
        << table.eventRatePerHour << ',' << table.seed << '\n';
    out << "label,count\n";
    const auto basis = parse_basis(table.basisName);
    const SettingVector settings =
        uniform_settings(basis.value_or(NamedBasis::HV), table.n);
    for (std::size_t o = 0; o < table.counts.size(); ++o) {
        const std::string label = basis ? outcome_label(o, settings) : outcome_label(o, table.n);
        out << label << ',' << table.counts[o] << '\n';
    }
}

namespace {
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

[[noreturn]] void csv_fail(int lineNo, const std::string& what) {
    throw CsvError("count table line " + std::to_string(lineNo) + ": " + what);
}

double parse_double(const std::string& s, int lineNo) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) csv_fail(lineNo, "bad number '" + s + "'");
        return v;
    } catch (const CsvError&) {
        throw;
    } catch (const std::exception&) {
        csv_fail(lineNo, "bad number '" + s + "'");
    }
}

std::uint64_t parse_uint(const std::string& s, int lineNo) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) csv_fail(lineNo, "bad count '" + s + "'");
        return v;
    } catch (const CsvError&) {
        throw;
    } catch (const std::exception&) {
        csv_fail(lineNo, "bad count '" + s + "'");
    }
}
}  // namespace

CountTable read_count_table_csv(std::istream& in) {
    std::string line;
    int lineNo = 0;
    auto next_line = [&](const char* what) {
        if (!std::getline(in, line)) {
            csv_fail(lineNo + 1, std::string("missing ") + what);
        }
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
    };

    next_line("metadata header");
    if (line != "basis,events,durationHours,eventRatePerHour,seed") {
        csv_fail(lineNo, "expected metadata header row");
    }
    next_line("metadata values");
    const auto meta = split_csv(line);
    if (meta.size() != 5) csv_fail(lineNo, "expected 5 metadata fields");
    CountTable table;
    table.basisName = meta[0];
    const std::uint64_t declaredEvents = parse_uint(meta[1], lineNo);
    table.durationHours = parse_double(meta[2], lineNo);
    table.eventRatePerHour = parse_double(meta[3], lineNo);
    table.seed = parse_uint(meta[4], lineNo);

    next_line("column header");
    if (line != "label,count") csv_fail(lineNo, "expected 'label,count' header");

    std::vector<std::pair<std::uint64_t, std::uint64_t>> rows;
    while (std::getline(in, line)) {
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2) csv_fail(lineNo, "expected 'label,count'");
        std::uint64_t index = 0;
        try {
            index = outcome_index(fields[0]);
        } catch (const std::exception& e) {
            csv_fail(lineNo, e.what());
        }
        rows.emplace_back(index, parse_uint(fields[1], lineNo));
    }
    if (rows.empty()) csv_fail(lineNo + 1, "no count rows");
    table.n = static_cast<int>(std::log2(static_cast<double>(rows.size())) + 0.5);
    if ((std::size_t{1} << table.n) != rows.size()) {
        csv_fail(lineNo, "row count must be a power of two (one row per outcome)");
    }
    table.counts.assign(rows.size(), 0);
    for (const auto& [index, count] : rows) {
        if (index >= table.counts.size()) csv_fail(lineNo, "outcome label out of range");
        table.counts[index] += count;
    }
    if (table.total_events() != declaredEvents) {
        csv_fail(2, "declared event total does not match the count rows");
    }
    return table;
}

}  // namespace psi6
