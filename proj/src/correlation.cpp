#include "fnet/correlation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "fnet/error.hpp"

namespace fnet {

const char* to_string(DissimilarityKind kind) noexcept {
    return kind == DissimilarityKind::Euclidean ? "euclidean" : "power";
}

DissimilarityKind parse_dissimilarity_kind(const std::string& name) {
    if (name == "euclidean") return DissimilarityKind::Euclidean;
    if (name == "power") return DissimilarityKind::Power;
    throw Error(ErrorCode::ConfigError, "unknown dissimilarity '" + name + "'");
}

CorrelationMatrix pearson_matrix(const ReturnPanel& panel) {
    return pearson_matrix(panel, simd::active_kernels());
}

CorrelationMatrix pearson_matrix(const ReturnPanel& panel, const simd::KernelTable& kernels) {
    const std::size_t n = panel.n();
    const std::size_t t_len = panel.t_len;
    if (t_len < 3) throw Error(ErrorCode::TooFewSamples, "Pearson needs T >= 3");
    if (panel.returns.size() != n * t_len) {
        throw Error(ErrorCode::DimensionMismatch, "return matrix size does not match n x T");
    }

    std::vector<double> centered(panel.returns);
    std::vector<double> norm2(n);
    const double inv_t = 1.0 / static_cast<double>(t_len);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = centered.data() + i * t_len;
        const bool flat = std::all_of(row, row + t_len, [&](double v) { return v == row[0]; });
        const double mean = kernels.sum(row, t_len) * inv_t;
        kernels.subtract(row, t_len, mean);
        norm2[i] = kernels.dot(row, row, t_len);
        if (flat || !(norm2[i] > 0.0)) {
            throw Error(ErrorCode::ZeroVariance,
                        "series " + std::to_string(i) + " (" + panel.symbols[i] +
                            ") has zero variance");
        }
    }

    CorrelationMatrix corr;
    corr.symbols = panel.symbols;
    corr.t_len = t_len;
    corr.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        corr(i, i) = 1.0;
        const double* xi = centered.data() + i * t_len;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* xj = centered.data() + j * t_len;
            const double rho = kernels.dot(xi, xj, t_len) / std::sqrt(norm2[i] * norm2[j]);
            const double clamped = std::clamp(rho, -1.0, 1.0);
            corr(i, j) = clamped;
            corr(j, i) = clamped;
        }
    }
    return corr;
}

double dissimilarity(double rho, DissimilarityKind kind) {
    if (kind == DissimilarityKind::Euclidean) return std::sqrt(std::max(0.0, 2.0 * (1.0 - rho)));
    return 1.0 - rho * rho;
}

DissimilarityMatrix to_dissimilarity(const CorrelationMatrix& corr, DissimilarityKind kind) {
    const std::size_t n = corr.n();
    DissimilarityMatrix out;
    out.symbols = corr.symbols;
    out.kind = kind;
    out.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = dissimilarity(corr(i, j), kind);
            out(i, j) = d;
            out(j, i) = d;
        }
    }
    return out;
}

double quantile_sorted(std::span<const double> sorted, double level) {
    if (sorted.empty()) throw std::invalid_argument("quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * level / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CorrelationSummary summarize(std::vector<double> values, std::span<const double> percentile_levels) {
    if (percentile_levels.empty()) {
        throw Error(ErrorCode::EmptyPercentileList, "no percentile levels requested");
    }
    if (values.empty()) throw Error(ErrorCode::EmptyInput, "no coefficients to summarize");
    std::sort(values.begin(), values.end());
    CorrelationSummary s;
    s.count = values.size();
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());

    std::vector<double> abs_values(values.size());
    std::transform(values.begin(), values.end(), abs_values.begin(),
                   [](double v) { return std::abs(v); });
    std::sort(abs_values.begin(), abs_values.end());
    double abs_sum = 0.0;
    for (double v : abs_values) abs_sum += v;
    s.mean_abs = abs_sum / static_cast<double>(values.size());

    for (double level : percentile_levels) {
        if (!(level > 0.0 && level < 100.0)) {
            throw std::invalid_argument("percentile level must lie in (0, 100)");
        }
        s.percentiles[level] = quantile_sorted(values, level);
    }
    return s;
}

std::vector<double> off_diagonal(const CorrelationMatrix& corr) {
    std::vector<double> out;
    const std::size_t n = corr.n();
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out.push_back(corr(i, j));
    }
    return out;
}

CorrelationSummary pairwise_summary(const CorrelationMatrix& corr,
                                    std::span<const double> percentile_levels) {
    if (corr.n() < 2) throw Error(ErrorCode::TooFewNodes, "pairwise summary needs n >= 2");
    return summarize(off_diagonal(corr), percentile_levels);
}

CorrelationSummary sector_summary(const CorrelationMatrix& corr, const SectorTaxonomy& taxonomy,
                                  const std::string& sector,
                                  std::span<const double> percentile_levels) {
    if (!taxonomy.contains_sector(sector)) {
        throw Error(ErrorCode::UnknownSector, "unknown sector '" + sector + "'");
    }
    const auto members = taxonomy.member_indices(sector, corr.symbols);
    if (members.size() < 2) {
        throw Error(ErrorCode::SectorTooSmall,
                    "sector '" + sector + "' has " + std::to_string(members.size()) +
                        " member(s) in the matrix");
    }
    std::vector<double> values;
    for (std::size_t a = 0; a < members.size(); ++a) {
        for (std::size_t b = a + 1; b < members.size(); ++b) {
            values.push_back(corr(members[a], members[b]));
        }
    }
    return summarize(std::move(values), percentile_levels);
}

void write_matrix_csv(std::ostream& out, std::span<const std::string> symbols,
                      std::span<const double> values) {
    const std::size_t n = symbols.size();
    std::string text;
    for (std::size_t i = 0; i < n; ++i) {
        if (i) text.push_back(',');
        text += symbols[i];
    }
    text.push_back('\n');
    char buf[64];
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j) text.push_back(',');
            auto res = std::to_chars(buf, buf + sizeof(buf), values[i * n + j]);
            text.append(buf, res.ptr);
        }
        text.push_back('\n');
    }
    out << text;
}

}  // namespace fnet
