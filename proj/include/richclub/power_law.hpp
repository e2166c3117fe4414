#ifndef RICHCLUB_POWER_LAW_HPP
#define RICHCLUB_POWER_LAW_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "richclub/graph.hpp"

namespace richclub {

/// Degree histogram of a graph: k -> number of nodes with that degree.
struct DegreeDistribution {
    std::size_t node_count = 0;
    std::map<std::size_t, std::size_t> histogram;

    std::size_t max_degree() const {
        return histogram.empty() ? 0 : histogram.rbegin()->first;
    }
};

inline DegreeDistribution degree_distribution(const Graph& g) {
    DegreeDistribution dist;
    dist.node_count = g.node_count();
    for (NodeId u = 0; u < g.node_count(); ++u) ++dist.histogram[g.degree(u)];
    return dist;
}

/// Complementary CDF over the distinct observed degrees, ascending:
/// (k, fraction of nodes with degree >= k). The smallest degree maps to 1.
inline std::vector<std::pair<std::size_t, double>> ccdf(const DegreeDistribution& dist) {
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(dist.histogram.size());
    std::size_t at_least = 0;
    for (auto it = dist.histogram.rbegin(); it != dist.histogram.rend(); ++it) {
        at_least += it->second;
        out.emplace_back(it->first, static_cast<double>(at_least) / static_cast<double>(dist.node_count));
    }
    std::reverse(out.begin(), out.end());
    return out;
}

enum class FitMethod { ccdf_regression, discrete_mle };

struct FitResult {
    double exponent = 0.0;
    FitMethod method = FitMethod::ccdf_regression;
    std::size_t k_min = 1;
    std::size_t points_used = 0;              // regression: CCDF points; MLE: samples
    std::optional<double> r_squared;          // regression only
    std::optional<double> log_likelihood;     // MLE only
};

namespace detail {

// Hurwitz-style tail sum: sum_{k=a}^inf k^-s for s > 1, via direct summation
// plus an Euler-Maclaurin tail correction.
inline double power_tail_sum(double s, std::size_t a) {
    if (s <= 1.0) throw std::invalid_argument("power_tail_sum requires s > 1");
    const double m = static_cast<double>(a) + 2000.0;
    double total = 0.0;
    for (double k = static_cast<double>(a); k < m; k += 1.0) total += std::pow(k, -s);
    total += std::pow(m, 1.0 - s) / (s - 1.0);
    total += 0.5 * std::pow(m, -s);
    total += s * std::pow(m, -s - 1.0) / 12.0;
    total -= s * (s + 1.0) * (s + 2.0) * std::pow(m, -s - 3.0) / 720.0;
    return total;
}

}  // namespace detail

/// Least-squares fit of log CCDF against log k over points with k >= k_min.
/// The CCDF of P(k) ~ k^-y decays as k^-(y-1), so the reported exponent is
/// 1 minus the fitted slope.
inline FitResult fit_ccdf_regression(std::span<const std::pair<double, double>> ccdf_points,
                                     double k_min) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [k, frac] : ccdf_points) {
        if (k >= k_min && frac > 0.0 && k > 0.0) logs.emplace_back(std::log(k), std::log(frac));
    }
    if (logs.size() < 3)
        throw std::invalid_argument("ccdf regression needs at least 3 distinct degrees >= k_min");

    const double n = static_cast<double>(logs.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : logs) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("ccdf regression is degenerate: single log-k value");
    const double slope = sxy / sxx;

    double ss_res = 0.0;
    for (const auto& [x, y] : logs) {
        const double fit = my + slope * (x - mx);
        ss_res += (y - fit) * (y - fit);
    }
    FitResult result;
    result.exponent = 1.0 - slope;
    result.method = FitMethod::ccdf_regression;
    result.k_min = static_cast<std::size_t>(k_min);
    result.points_used = logs.size();
    result.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    return result;
}

inline FitResult fit_ccdf_regression(const DegreeDistribution& dist, std::size_t k_min) {
    if (k_min > dist.max_degree())
        throw std::invalid_argument("k_min exceeds the maximum observed degree");
    std::vector<std::pair<double, double>> points;
    for (const auto& [k, frac] : ccdf(dist))
        points.emplace_back(static_cast<double>(k), frac);
    return fit_ccdf_regression(points, static_cast<double>(k_min));
}

/// Maximum-likelihood exponent of the discrete power law
/// P(k) = k^-y / sum_{j>=k_min} j^-y, over the samples with degree >= k_min.
/// The log-likelihood is concave in y, so a golden-section search suffices.
inline FitResult fit_discrete_mle(const DegreeDistribution& dist, std::size_t k_min) {
    if (k_min < 1) throw std::invalid_argument("k_min must be >= 1");
    if (k_min > dist.max_degree())
        throw std::invalid_argument("k_min exceeds the maximum observed degree");

    std::size_t samples = 0, distinct = 0;
    double sum_log_k = 0.0;
    for (const auto& [k, count] : dist.histogram) {
        if (k < k_min) continue;
        ++distinct;
        samples += count;
        sum_log_k += static_cast<double>(count) * std::log(static_cast<double>(k));
    }
    if (distinct < 3)
        throw std::invalid_argument("discrete MLE needs at least 3 distinct degrees >= k_min");

    const auto neg_log_likelihood = [&](double y) {
        return static_cast<double>(samples) * std::log(detail::power_tail_sum(y, k_min)) +
               y * sum_log_k;
    };

    double lo = 1.01, hi = 12.0;
    constexpr double kGolden = 0.6180339887498949;
    double x1 = hi - kGolden * (hi - lo);
    double x2 = lo + kGolden * (hi - lo);
    double f1 = neg_log_likelihood(x1);
    double f2 = neg_log_likelihood(x2);
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-10; ++iter) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kGolden * (hi - lo);
            f1 = neg_log_likelihood(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kGolden * (hi - lo);
            f2 = neg_log_likelihood(x2);
        }
    }
    const double y = 0.5 * (lo + hi);

    FitResult result;
    result.exponent = y;
    result.method = FitMethod::discrete_mle;
    result.k_min = k_min;
    result.points_used = samples;
    result.log_likelihood = -neg_log_likelihood(y);
    return result;
}

inline FitResult fit_power_law_exponent(const DegreeDistribution& dist, std::size_t k_min,
                                        FitMethod method) {
    return method == FitMethod::ccdf_regression ? fit_ccdf_regression(dist, k_min)
                                                : fit_discrete_mle(dist, k_min);
}

}  // namespace richclub

#endif  // RICHCLUB_POWER_LAW_HPP
