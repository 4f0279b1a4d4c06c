#include "asd/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace asd {

std::vector<SectorCount> count_per_sector(const Deployment& deployment)
{
    const int total = sector_total(deployment);
    std::vector<SectorCount> out(static_cast<std::size_t>(total));
    for (int i = 0; i < total; ++i) {
        out[static_cast<std::size_t>(i)] = {i + 1, 0};
    }
    for (const NodePoint& p : deployment.points) {
        if (p.sector < 1 || p.sector > total) {
            throw SampleError("count_per_sector: point carries no valid sector tag");
        }
        ++out[static_cast<std::size_t>(p.sector - 1)].count;
    }
    return out;
}

std::vector<Point2> sector_points(const Deployment& deployment, int sector)
{
    std::vector<Point2> out;
    for (const NodePoint& p : deployment.points) {
        if (p.sector == sector) {
            out.push_back({p.x, p.y});
        }
    }
    return out;
}

double kolmogorov_cdf(double x)
{
    if (x <= 0.0) {
        return 0.0;
    }
    if (x < 0.3) {
        // alternating series converges slowly here; use the theta-function form
        const double t = kPi * kPi / (8.0 * x * x);
        double sum = 0.0;
        for (int k = 1; k <= 50; k += 2) {
            sum += std::exp(-static_cast<double>(k * k) * t);
        }
        return std::sqrt(2.0 * kPi) / x * sum;
    }
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) {
            break;
        }
    }
    return 1.0 - 2.0 * sum;
}

double kolmogorov_critical(double alpha)
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::domain_error("kolmogorov_critical: alpha must be in (0, 1)");
    }
    double lo = 0.1;
    double hi = 5.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (kolmogorov_cdf(mid) < 1.0 - alpha) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf)
{
    if (sample.empty()) {
        throw SampleError("ks_statistic: empty sample");
    }
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = std::clamp(cdf(sample[i]), 0.0, 1.0);
        const double below = static_cast<double>(i) / n;
        const double above = static_cast<double>(i + 1) / n;
        d = std::max({d, above - f, f - below});
    }
    return d;
}

KsResult radial_ks(std::span<const Point2> points, double inner, double outer, double alpha)
{
    if (!(inner >= 0.0) || !(inner < outer)) {
        throw std::domain_error("radial_ks: need 0 <= L1 < L2");
    }
    if (points.size() < kMinKsSample) {
        throw SampleError("radial_ks: need at least 30 points");
    }
    std::vector<double> radii;
    radii.reserve(points.size());
    for (const Point2& p : points) {
        radii.push_back(std::hypot(p.x, p.y));
    }
    const double inner_sq = inner * inner;
    const double span_sq = outer * outer - inner_sq;
    const double d = ks_statistic(std::move(radii), [=](double r) { return (r * r - inner_sq) / span_sq; });
    const double critical = kolmogorov_critical(alpha) / std::sqrt(static_cast<double>(points.size()));
    return {points.size(), d, critical, d < critical};
}

double chi2_critical(int dof, double alpha)
{
    if (dof < 1) {
        throw std::domain_error("chi2_critical: dof must be >= 1");
    }
    const boost::math::chi_squared dist(dof);
    return boost::math::quantile(boost::math::complement(dist, alpha));
}

Chi2Result chi2_equal_expected(std::span<const std::int64_t> counts, double alpha)
{
    if (counts.size() < 2) {
        throw SampleError("chi-square: need at least 2 cells (dof would be 0)");
    }
    const auto total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    if (expected < static_cast<double>(kMinExpectedPerCell)) {
        throw SampleError("chi-square: fewer than 5 expected points per cell");
    }
    double stat = 0.0;
    for (std::int64_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    const int dof = static_cast<int>(counts.size()) - 1;
    const double critical = chi2_critical(dof, alpha);
    const double p_value = boost::math::gamma_q(0.5 * dof, 0.5 * stat);
    return {stat, dof, critical, p_value, stat <= critical};
}

namespace {

int angle_bin(const Point2& p, int bins)
{
    double theta = std::atan2(p.y, p.x);
    if (theta < 0.0) {
        theta += 2.0 * kPi;
    }
    const int bin = static_cast<int>(theta / (2.0 * kPi) * bins);
    return std::clamp(bin, 0, bins - 1);
}

void require_cells(std::size_t n, std::int64_t cells)
{
    if (cells < 2) {
        throw SampleError("chi-square: need at least 2 cells (dof would be 0)");
    }
    if (static_cast<std::int64_t>(n) < kMinExpectedPerCell * cells) {
        throw SampleError("chi-square: need at least 5 points per cell");
    }
}

}  // namespace

Chi2Result angular_chi2(std::span<const Point2> points, int bins, double alpha)
{
    require_cells(points.size(), bins);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
    for (const Point2& p : points) {
        ++counts[static_cast<std::size_t>(angle_bin(p, bins))];
    }
    return chi2_equal_expected(counts, alpha);
}

std::vector<double> equal_area_boundaries(double inner, double outer, int shells)
{
    if (shells < 1) {
        throw std::domain_error("equal_area_boundaries: need k >= 1");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(shells) + 1);
    const double inner_sq = inner * inner;
    const double span_sq = outer * outer - inner_sq;
    for (int j = 0; j <= shells; ++j) {
        out.push_back(std::sqrt(inner_sq + (static_cast<double>(j) / shells) * span_sq));
    }
    out.back() = outer;
    return out;
}

Chi2Result areal_chi2(std::span<const Point2> points, double inner, double outer, int shells, int wedges,
                      double alpha)
{
    if (!(inner >= 0.0) || !(inner < outer)) {
        throw std::domain_error("areal_chi2: need 0 <= L1 < L2");
    }
    if (shells < 1 || wedges < 1) {
        throw SampleError("areal_chi2: grid dimensions must be >= 1");
    }
    require_cells(points.size(), static_cast<std::int64_t>(shells) * wedges);
    const std::vector<double> bounds = equal_area_boundaries(inner, outer, shells);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(shells * wedges), 0);
    for (const Point2& p : points) {
        const double r = std::hypot(p.x, p.y);
        // interior boundaries only: radii past either end fall into the edge shells
        const auto it = std::upper_bound(bounds.begin() + 1, bounds.end() - 1, r);
        const int shell = static_cast<int>(it - (bounds.begin() + 1));
        ++counts[static_cast<std::size_t>(shell * wedges + angle_bin(p, wedges))];
    }
    return chi2_equal_expected(counts, alpha);
}

Chi2Result rect_grid_chi2(std::span<const Point2> points, const Rect& rect, int columns, int rows, double alpha)
{
    validate_shape(rect);
    if (columns < 1 || rows < 1) {
        throw SampleError("rect_grid_chi2: grid dimensions must be >= 1");
    }
    require_cells(points.size(), static_cast<std::int64_t>(columns) * rows);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(columns * rows), 0);
    for (const Point2& p : points) {
        const int cx = std::clamp(static_cast<int>((p.x - rect.x0) / (rect.x1 - rect.x0) * columns), 0, columns - 1);
        const int cy = std::clamp(static_cast<int>((p.y - rect.y0) / (rect.y1 - rect.y0) * rows), 0, rows - 1);
        ++counts[static_cast<std::size_t>(cy * columns + cx)];
    }
    return chi2_equal_expected(counts, alpha);
}

std::vector<SectorDensity> empirical_density_profile(const Deployment& deployment)
{
    std::vector<SectorDensity> out;
    for (const SectorCount& c : count_per_sector(deployment)) {
        const Shape shape = sector_shape(deployment, c.sector);
        const auto bounds = radial_bounds(shape);
        // a zero-width layer has no area; report its density as infinite
        const double area = bounds && !(bounds->r_inner < bounds->r_outer) ? 0.0 : shape_area(shape);
        const double density = area > 0.0 ? static_cast<double>(c.count) / area : INFINITY;
        out.push_back({c.sector, c.count, area, density});
    }
    return out;
}

double coefficient_of_variation(std::span<const double> values)
{
    if (values.empty()) {
        throw SampleError("coefficient_of_variation: empty input");
    }
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / n) / mean;
}

bool StatReport::pass() const
{
    if (!outside.empty() || !count_mismatches.empty()) {
        return false;
    }
    if (angular_all && !angular_all->pass) {
        return false;
    }
    for (const SectorTests& t : tests) {
        if ((t.radial && !t.radial->pass) || (t.angular && !t.angular->pass) || (t.areal && !t.areal->pass)) {
            return false;
        }
    }
    return true;
}

namespace {

int largest_grid(std::size_t n, int cap)
{
    int k = cap;
    while (k >= 2 && static_cast<std::int64_t>(n) < kMinExpectedPerCell * k * k) {
        --k;
    }
    return k;
}

double membership_slack(const Shape& shape)
{
    if (const auto* r = std::get_if<Rect>(&shape)) {
        return 1e-12 * std::max({std::abs(r->x0), std::abs(r->x1), std::abs(r->y0), std::abs(r->y1), 1.0});
    }
    return 1e-12 * std::max(radial_bounds(shape)->r_outer, 1.0);
}

}  // namespace

StatReport build_report(const Deployment& deployment, const ReportOptions& options)
{
    StatReport report{};
    report.ks_alpha = options.ks_alpha;
    report.chi2_alpha = options.chi2_alpha;
    report.total = static_cast<std::int64_t>(deployment.points.size());
    report.per_sector = empirical_density_profile(deployment);

    const int sectors = sector_total(deployment);
    std::vector<Shape> shapes;
    for (int i = 1; i <= sectors; ++i) {
        shapes.push_back(sector_shape(deployment, i));
    }

    for (std::size_t k = 0; k < deployment.points.size(); ++k) {
        const NodePoint& p = deployment.points[k];
        const Shape& shape = shapes[static_cast<std::size_t>(p.sector - 1)];
        if (!shape_contains(shape, p.x, p.y, membership_slack(shape))) {
            report.outside.push_back({k, p.sector, p.x, p.y});
        }
    }

    for (const SectorDensity& s : report.per_sector) {
        std::int64_t expected = 0;
        if (deployment.automatic()) {
            expected = s.sector == 1 ? deployment.n_in : deployment.n_out;
        } else {
            expected = std::get<DeploymentPlan>(deployment.config).sectors[static_cast<std::size_t>(s.sector - 1)].n;
        }
        if (s.count != expected) {
            report.count_mismatches.push_back("sector " + std::to_string(s.sector) + ": expected " +
                                              std::to_string(expected) + " points, found " +
                                              std::to_string(s.count));
        }
    }

    for (int i = 1; i <= sectors; ++i) {
        SectorTests t{i, std::nullopt, std::nullopt, std::nullopt, {}};
        const auto pts = sector_points(deployment, i);
        const Shape& shape = shapes[static_cast<std::size_t>(i - 1)];
        const auto bounds = radial_bounds(shape);
        const int grid = largest_grid(pts.size(), options.max_grid);

        if (bounds && !(bounds->r_inner < bounds->r_outer)) {
            t.skipped.emplace_back("zero-width layer");
        } else if (bounds) {
            if (pts.size() >= kMinKsSample) {
                t.radial = radial_ks(pts, bounds->r_inner, bounds->r_outer, options.ks_alpha);
            } else {
                t.skipped.emplace_back("radial_ks: fewer than 30 points");
            }
            const int bins = std::min<int>(options.max_angular_bins, static_cast<int>(pts.size() / 5));
            if (bins >= 2) {
                t.angular = angular_chi2(pts, bins, options.chi2_alpha);
            } else {
                t.skipped.emplace_back("angular_chi2: fewer than 10 points");
            }
            if (grid >= 2) {
                t.areal = areal_chi2(pts, bounds->r_inner, bounds->r_outer, grid, grid, options.chi2_alpha);
            } else {
                t.skipped.emplace_back("areal_chi2: fewer than 20 points");
            }
        } else {
            t.skipped.emplace_back("radial_ks: not a radial sector");
            t.skipped.emplace_back("angular_chi2: not a radial sector");
            if (grid >= 2) {
                t.areal = rect_grid_chi2(pts, std::get<Rect>(shape), grid, grid, options.chi2_alpha);
            } else {
                t.skipped.emplace_back("areal_chi2: fewer than 20 points");
            }
        }
        report.tests.push_back(std::move(t));
    }

    if (deployment.automatic()) {
        std::vector<Point2> all;
        all.reserve(deployment.points.size());
        for (const NodePoint& p : deployment.points) {
            all.push_back({p.x, p.y});
        }
        const int bins = std::min<int>(options.max_angular_bins, static_cast<int>(all.size() / 5));
        if (bins >= 2) {
            report.angular_all = angular_chi2(all, bins, options.chi2_alpha);
        }
    }
    return report;
}

}  // namespace asd
