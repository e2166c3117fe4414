#ifndef RICHCLUB_METRICS_HPP
#define RICHCLUB_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "richclub/graph.hpp"
#include "richclub/power_law.hpp"

namespace richclub {

/// Nodes ordered by decreasing degree, ties broken by ascending id. Position
/// p (0-based) carries the normalized rank (p+1)/N in (0, 1].
struct RankedNodes {
    std::vector<NodeId> order;             // position -> node
    std::vector<std::size_t> position_of;  // node -> position
    std::vector<double> normalized_rank;   // position -> (p+1)/N
    std::vector<std::size_t> degree_of;    // position -> degree
};

inline RankedNodes rank_nodes(const Graph& g) {
    const std::size_t n = g.node_count();
    if (n < 1) throw std::invalid_argument("rank_nodes requires at least 1 node");
    RankedNodes ranks;
    ranks.order.resize(n);
    std::iota(ranks.order.begin(), ranks.order.end(), NodeId{0});
    std::sort(ranks.order.begin(), ranks.order.end(), [&](NodeId a, NodeId b) {
        const std::size_t da = g.degree(a), db = g.degree(b);
        return da != db ? da > db : a < b;
    });
    ranks.position_of.resize(n);
    ranks.normalized_rank.resize(n);
    ranks.degree_of.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        ranks.position_of[ranks.order[p]] = p;
        ranks.normalized_rank[p] = static_cast<double>(p + 1) / static_cast<double>(n);
        ranks.degree_of[p] = g.degree(ranks.order[p]);
    }
    return ranks;
}

/// One sample of the rich-club connectivity curve: the club holds the
/// `club_size` highest-ranked nodes and phi is the fraction of the
/// n(n-1)/2 possible intra-club links that are present.
struct RichClubPoint {
    double r = 0.0;
    std::size_t club_size = 0;
    std::uint64_t intra_club_links = 0;
    double phi = 0.0;
};

namespace detail {

inline std::size_t club_size_from_cutoff(double r_max, std::size_t n) {
    return static_cast<std::size_t>(std::floor(r_max * static_cast<double>(n)));
}

inline std::uint64_t count_intra_club_links(const Graph& g, const RankedNodes& ranks,
                                            std::size_t club_size) {
    std::vector<char> in_club(g.node_count(), 0);
    for (std::size_t p = 0; p < club_size; ++p) in_club[ranks.order[p]] = 1;
    std::uint64_t twice = 0;
    for (std::size_t p = 0; p < club_size; ++p) {
        for (NodeId v : g.neighbors(ranks.order[p])) twice += in_club[v];
    }
    return twice / 2;
}

inline RichClubPoint rich_club_point_for_size(const Graph& g, const RankedNodes& ranks,
                                              double r, std::size_t club_size) {
    if (club_size < 2)
        throw std::invalid_argument("club too small for connectivity (need at least 2 members)");
    RichClubPoint point;
    point.r = r;
    point.club_size = club_size;
    point.intra_club_links = count_intra_club_links(g, ranks, club_size);
    const double max_links = static_cast<double>(club_size) * static_cast<double>(club_size - 1) / 2.0;
    point.phi = static_cast<double>(point.intra_club_links) / max_links;
    return point;
}

// Snaps a club boundary that falls inside an equal-degree run to the nearest
// end of that run, so tie order cannot change phi.
inline std::size_t snap_to_tie_boundary(const RankedNodes& ranks, std::size_t club_size) {
    const std::size_t n = ranks.order.size();
    if (club_size == 0 || club_size >= n) return club_size;
    const std::size_t cut_degree = ranks.degree_of[club_size - 1];
    if (ranks.degree_of[club_size] != cut_degree) return club_size;  // already on a boundary
    std::size_t start = club_size;
    while (start > 0 && ranks.degree_of[start - 1] == cut_degree) --start;
    std::size_t end = club_size;
    while (end < n && ranks.degree_of[end] == cut_degree) ++end;
    const std::size_t snapped = (club_size - start <= end - club_size) ? start : end;
    return std::max<std::size_t>(snapped, 2);
}

}  // namespace detail

inline RichClubPoint rich_club_connectivity(const Graph& g, const RankedNodes& ranks,
                                            double r_max) {
    const std::size_t club = detail::club_size_from_cutoff(r_max, g.node_count());
    return detail::rich_club_point_for_size(g, ranks, r_max, club);
}

struct CurvePointError {
    double r = 0.0;
    std::string reason;
};

struct RichClubCurve {
    std::vector<RichClubPoint> points;
    std::vector<CurvePointError> errors;
};

struct CurveOptions {
    bool snap_to_tie_boundary = false;
};

/// Evaluates phi at each cutoff. A cutoff whose club is too small yields a
/// per-point error record; the remaining points are still returned.
inline RichClubCurve rich_club_curve(const Graph& g, const RankedNodes& ranks,
                                     std::span<const double> r_values,
                                     const CurveOptions& options = {}) {
    RichClubCurve curve;
    curve.points.reserve(r_values.size());
    for (double r : r_values) {
        std::size_t club = detail::club_size_from_cutoff(r, g.node_count());
        if (options.snap_to_tie_boundary) club = detail::snap_to_tie_boundary(ranks, club);
        try {
            curve.points.push_back(detail::rich_club_point_for_size(g, ranks, r, club));
        } catch (const std::invalid_argument& err) {
            curve.errors.push_back({r, err.what()});
        }
    }
    return curve;
}

/// Logarithmically spaced rank cutoffs from the smallest valid club (n = 2)
/// up to the whole graph.
inline std::vector<double> default_rank_grid(std::size_t node_count, std::size_t points = 40) {
    if (node_count < 2) throw std::invalid_argument("rank grid requires at least 2 nodes");
    if (points < 2) throw std::invalid_argument("rank grid requires at least 2 points");
    const double lo = std::log(2.0 / static_cast<double>(node_count));
    std::vector<double> grid(points);
    for (std::size_t i = 0; i + 1 < points; ++i) {
        // The relative nudge keeps floor(r * N) from landing one below the
        // intended club size after the log/exp round trip.
        const double r =
            std::exp(lo * (1.0 - static_cast<double>(i) / static_cast<double>(points - 1)));
        grid[i] = std::min(1.0, r * (1.0 + 1e-9));
    }
    grid[points - 1] = 1.0;
    return grid;
}

/// Link counts between rank bins: cell (i, j) with i <= j holds the number of
/// edges whose richer endpoint falls in bin i and poorer endpoint in bin j.
struct LinkMatrix {
    double bin_width = 0.05;
    std::size_t bins = 20;
    std::vector<std::uint64_t> counts;  // bins x bins, upper triangle populated

    std::uint64_t at(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return counts[i * bins + j];
    }

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < bins; ++i)
            for (std::size_t j = i; j < bins; ++j) sum += counts[i * bins + j];
        return sum;
    }
};

inline LinkMatrix link_distribution_matrix(const Graph& g, const RankedNodes& ranks,
                                           double bin_width = 0.05) {
    if (!(bin_width > 0.0 && bin_width <= 1.0))
        throw std::invalid_argument("bin_width must be in (0, 1]");
    const double raw_bins = 1.0 / bin_width;
    const auto bins = static_cast<std::size_t>(std::llround(raw_bins));
    if (std::abs(raw_bins - static_cast<double>(bins)) > 1e-9 || bins == 0)
        throw std::invalid_argument("1/bin_width must be an integer number of bins");

    LinkMatrix matrix;
    matrix.bin_width = bin_width;
    matrix.bins = bins;
    matrix.counts.assign(bins * bins, 0);
    const std::size_t n = g.node_count();
    g.for_each_edge([&](NodeId u, NodeId v) {
        const std::size_t pu = ranks.position_of[u];
        const std::size_t pv = ranks.position_of[v];
        const std::size_t bi = std::min(pu, pv) * bins / n;
        const std::size_t bj = std::max(pu, pv) * bins / n;
        ++matrix.counts[bi * bins + bj];
    });
    return matrix;
}

struct TopShare {
    std::uint64_t touching = 0;  // edges with at least one endpoint in the top group
    std::uint64_t within = 0;    // edges with both endpoints in the top group
};

inline TopShare top_share_links(const Graph& g, const RankedNodes& ranks, double r_cut) {
    const std::size_t top = detail::club_size_from_cutoff(r_cut, g.node_count());
    if (top < 1) throw std::invalid_argument("empty top group: floor(r_cut * N) must be >= 1");
    std::vector<char> is_top(g.node_count(), 0);
    for (std::size_t p = 0; p < top; ++p) is_top[ranks.order[p]] = 1;
    TopShare share;
    g.for_each_edge([&](NodeId u, NodeId v) {
        const bool tu = is_top[u], tv = is_top[v];
        if (tu || tv) ++share.touching;
        if (tu && tv) ++share.within;
    });
    return share;
}

/// Random-network estimate of the mean intra-club hop distance,
/// ln(n) / ln(phi * (n-1) / 2). Absent when the log base is not above 1.
inline std::optional<double> estimate_hop_distance(std::size_t n, double phi) {
    if (n < 2) throw std::invalid_argument("hop estimate requires a club of at least 2 nodes");
    const double mean_degree = phi * static_cast<double>(n - 1) / 2.0;
    if (mean_degree <= 1.0) return std::nullopt;
    return std::log(static_cast<double>(n)) / std::log(mean_degree);
}

struct HopDistanceReport {
    std::size_t club_size = 0;
    double phi = 0.0;
    std::optional<double> estimated_mean;
    std::optional<double> measured_mean;
    std::uint64_t disconnected_pairs = 0;
};

inline HopDistanceReport club_hop_distance(const Graph& g, const RankedNodes& ranks,
                                           double r_max) {
    const auto point = rich_club_connectivity(g, ranks, r_max);
    const auto club = induced_subgraph(
        g, std::span<const NodeId>(ranks.order.data(), point.club_size));
    const auto paths = average_path_length(club.graph);
    HopDistanceReport report;
    report.club_size = point.club_size;
    report.phi = point.phi;
    report.estimated_mean = estimate_hop_distance(point.club_size, point.phi);
    report.measured_mean = paths.mean_hops;
    report.disconnected_pairs = paths.disconnected_pairs;
    return report;
}

/// Intra-club degree histogram next to the matched Binomial(n-1, phi)
/// reference, with their total-variation distance.
struct ClubDegreeDistribution {
    std::size_t club_size = 0;
    double phi = 0.0;
    std::vector<std::uint64_t> histogram;  // index = intra-club degree, 0..n-1
    std::vector<double> binomial_reference;
    double total_variation = 0.0;
};

inline ClubDegreeDistribution club_degree_distribution(const Graph& g, const RankedNodes& ranks,
                                                       double r_max) {
    const auto point = rich_club_connectivity(g, ranks, r_max);
    const auto club = induced_subgraph(
        g, std::span<const NodeId>(ranks.order.data(), point.club_size));
    const std::size_t n = point.club_size;

    ClubDegreeDistribution dist;
    dist.club_size = n;
    dist.phi = point.phi;
    dist.histogram.assign(n, 0);
    for (NodeId u = 0; u < n; ++u) ++dist.histogram[club.graph.degree(u)];

    dist.binomial_reference.assign(n, 0.0);
    const std::size_t trials = n - 1;
    const double p = point.phi;
    if (p <= 0.0) {
        dist.binomial_reference[0] = 1.0;
    } else if (p >= 1.0) {
        dist.binomial_reference[trials] = 1.0;
    } else {
        for (std::size_t k = 0; k <= trials; ++k) {
            const double log_pmf = std::lgamma(static_cast<double>(trials) + 1.0) -
                                   std::lgamma(static_cast<double>(k) + 1.0) -
                                   std::lgamma(static_cast<double>(trials - k) + 1.0) +
                                   static_cast<double>(k) * std::log(p) +
                                   static_cast<double>(trials - k) * std::log1p(-p);
            dist.binomial_reference[k] = std::exp(log_pmf);
        }
    }

    double tv = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double empirical = static_cast<double>(dist.histogram[k]) / static_cast<double>(n);
        tv += std::abs(empirical - dist.binomial_reference[k]);
    }
    dist.total_variation = 0.5 * tv;
    return dist;
}

struct SummaryOptions {
    double top_share_r_cut = 0.05;
    double phi_rank = 0.01;
    std::size_t fit_k_min = 1;
    FitMethod fit_method = FitMethod::ccdf_regression;
};

/// Per-graph statistics in the shape of the paper's comparison table.
/// Sub-metrics that are undefined for the given graph (a top group that
/// rounds to zero nodes, a degenerate degree sequence) are reported as absent
/// with a reason instead of failing the whole summary.
struct SummaryReport {
    std::size_t node_count = 0;
    std::uint64_t link_count = 0;
    std::optional<TopShare> top_links;
    std::string top_links_error;
    std::size_t max_degree = 0;
    double avg_degree = 0.0;
    std::optional<FitResult> fit;
    std::string fit_error;
    std::optional<double> phi_top;
    SummaryOptions options;
};

inline SummaryReport summary_table(const Graph& g, const SummaryOptions& options = {}) {
    if (g.node_count() < 2) throw std::invalid_argument("summary_table requires at least 2 nodes");
    const auto ranks = rank_nodes(g);

    SummaryReport report;
    report.options = options;
    report.node_count = g.node_count();
    report.link_count = g.edge_count();
    report.max_degree = ranks.degree_of[0];
    report.avg_degree = 2.0 * static_cast<double>(g.edge_count()) /
                        static_cast<double>(g.node_count());
    try {
        report.top_links = top_share_links(g, ranks, options.top_share_r_cut);
    } catch (const std::invalid_argument& err) {
        report.top_links_error = err.what();
    }
    try {
        const auto dist = degree_distribution(g);
        report.fit = fit_power_law_exponent(dist, options.fit_k_min, options.fit_method);
    } catch (const std::invalid_argument& err) {
        report.fit_error = err.what();
    }
    try {
        report.phi_top = rich_club_connectivity(g, ranks, options.phi_rank).phi;
    } catch (const std::invalid_argument&) {
        report.phi_top = std::nullopt;
    }
    return report;
}

}  // namespace richclub

#endif  // RICHCLUB_METRICS_HPP
