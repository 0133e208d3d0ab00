#include "bcall/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bcall {

std::vector<double> fractional_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        // positions i+1 .. j+1 share the average rank
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

std::optional<Correlation> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("pearson: vector lengths differ (" + std::to_string(x.size()) +
                                    " vs " + std::to_string(y.size()) + ")");
    const std::size_t n = x.size();
    if (n < 3) return std::nullopt;

    // exact-constant vectors have no defined correlation; checking values
    // directly avoids a spurious tiny variance from summation rounding
    bool x_const = true, y_const = true;
    for (std::size_t i = 1; i < n; ++i) {
        if (x[i] != x[0]) x_const = false;
        if (y[i] != y[0]) y_const = false;
    }
    if (x_const || y_const) return std::nullopt;

    const double dn = static_cast<double>(n);
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= dn;
    my /= dn;

    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if (vx == 0.0 || vy == 0.0) return std::nullopt; // constant vector

    double r = cov / std::sqrt(vx * vy);
    r = std::clamp(r, -1.0, 1.0);
    double se = std::sqrt(std::max(0.0, 1.0 - r * r) / (dn - 2.0));
    return Correlation{r, se, n};
}

std::optional<Correlation> spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("spearman: vector lengths differ (" +
                                    std::to_string(x.size()) + " vs " + std::to_string(y.size()) +
                                    ")");
    auto rx = fractional_ranks(x);
    auto ry = fractional_ranks(y);
    return pearson(rx, ry);
}

CorrelationReport correlation_report(std::span<const double> x, std::span<const double> y) {
    CorrelationReport rep;
    rep.n = x.size();
    if (auto p = pearson(x, y)) {
        rep.pearson_r = p->r;
        rep.pearson_se = p->se;
    }
    if (auto s = spearman(x, y)) {
        rep.spearman_rho = s->r;
        rep.spearman_se = s->se;
    }
    return rep;
}

} // namespace bcall
