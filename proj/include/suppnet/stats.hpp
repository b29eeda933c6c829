#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace suppnet {

inline double mean(std::span<const double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

inline double sample_stddev(std::span<const double> v) {
    if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

/// Percentile with linear interpolation between order statistics
/// (rank = p/100 * (n-1)).
inline double percentile(std::vector<double> v, double p) {
    if (v.empty()) throw std::invalid_argument("percentile of empty sample");
    std::sort(v.begin(), v.end());
    if (p <= 0.0) return v.front();
    if (p >= 100.0) return v.back();
    const double rank = p / 100.0 * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    const double frac = rank - static_cast<double>(lo);
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

/// Pearson correlation; NaN when either sample has zero variance.
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return sxy / std::sqrt(sxx * syy);
}

/// Fractional ranks, ties get the average of the ranks they span (1-based).
inline std::vector<double> fractional_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace detail {

/// Regularized incomplete beta I_x(a, b), Lentz continued fraction.
inline double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_beta = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
    const double front = std::exp(ln_beta + a * std::log(x) + b * std::log(1.0 - x));
    // Use the symmetry relation for faster convergence.
    if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - incomplete_beta(b, a, 1.0 - x);

    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double dm = static_cast<double>(m);
        double num = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        num = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
        d = 1.0 + num * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + num / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-14) break;
    }
    return front * h / a;
}

inline double student_t_two_sided_p(double t, double df) {
    if (!std::isfinite(t)) return 0.0;
    return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

}  // namespace detail

struct CorrelationTest {
    double rho = std::numeric_limits<double>::quiet_NaN();
    double p = std::numeric_limits<double>::quiet_NaN();
};

/// Pearson correlation with a two-sided p from the t approximation
/// (n - 2 degrees of freedom).
inline CorrelationTest pearson_test(std::span<const double> x, std::span<const double> y) {
    CorrelationTest out;
    out.rho = pearson(x, y);
    const double n = static_cast<double>(x.size());
    if (!std::isfinite(out.rho) || n < 3) return out;
    if (std::fabs(out.rho) >= 1.0) {
        out.p = 0.0;
        return out;
    }
    const double t = out.rho * std::sqrt((n - 2.0) / (1.0 - out.rho * out.rho));
    out.p = detail::student_t_two_sided_p(t, n - 2.0);
    return out;
}

/// Spearman rank correlation (average ranks for ties). Two-sided p-value:
/// exact permutation enumeration for n < 10, t approximation with n - 2
/// degrees of freedom otherwise. Constant input yields NaN for both fields.
inline CorrelationTest spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
    const std::size_t n = x.size();
    if (n < 3) throw std::invalid_argument("spearman needs at least 3 observations");

    CorrelationTest out;
    const std::vector<double> rx = fractional_ranks(x);
    const std::vector<double> ry = fractional_ranks(y);
    out.rho = pearson(rx, ry);
    if (!std::isfinite(out.rho)) return out;

    if (n < 10) {
        // Enumerate all permutations of the y ranks.
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::vector<double> ry_perm(n);
        const double observed = std::fabs(out.rho);
        std::size_t total = 0, at_least = 0;
        do {
            for (std::size_t i = 0; i < n; ++i) ry_perm[i] = ry[perm[i]];
            const double rho = pearson(rx, ry_perm);
            ++total;
            if (std::fabs(rho) >= observed - 1e-12) ++at_least;
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.p = static_cast<double>(at_least) / static_cast<double>(total);
    } else {
        if (std::fabs(out.rho) >= 1.0) {
            out.p = 0.0;
        } else {
            const double nn = static_cast<double>(n);
            const double t = out.rho * std::sqrt((nn - 2.0) / (1.0 - out.rho * out.rho));
            out.p = detail::student_t_two_sided_p(t, nn - 2.0);
        }
    }
    return out;
}

}  // namespace suppnet
