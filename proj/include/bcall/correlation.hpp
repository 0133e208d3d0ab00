#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bcall {

struct Correlation {
    double r = 0.0;  // coefficient in [-1,1]
    double se = 0.0; // sqrt((1 - r^2) / (n - 2))
    std::size_t n = 0;
};

// Fractional ranks, 1-based; ties receive the average of their positions.
std::vector<double> fractional_ranks(std::span<const double> v);

// Pearson correlation with its standard error. Mismatched lengths throw
// std::invalid_argument; a constant vector or n < 3 yields nullopt (the
// correlation is undefined, not zero).
std::optional<Correlation> pearson(std::span<const double> x, std::span<const double> y);

// Pearson applied to fractional ranks; same error behavior.
std::optional<Correlation> spearman(std::span<const double> x, std::span<const double> y);

struct CorrelationReport {
    std::optional<double> pearson_r, pearson_se;
    std::optional<double> spearman_rho, spearman_se;
    std::size_t n = 0;
};

CorrelationReport correlation_report(std::span<const double> x, std::span<const double> y);

} // namespace bcall
