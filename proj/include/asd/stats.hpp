// Goodness-of-fit checks for generated deployments.
//
// Every check is a deterministic function of its input points. KS critical
// values come from the asymptotic Kolmogorov distribution (valid for n >= 30);
// chi-square critical values from the chi-square quantile.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "asd/core.hpp"

namespace asd {

inline constexpr double kDefaultKsAlpha = 0.01;
inline constexpr double kDefaultChi2Alpha = 0.001;
inline constexpr std::size_t kMinKsSample = 30;
inline constexpr std::int64_t kMinExpectedPerCell = 5;

/// Input too small or malformed for the requested test.
class SampleError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

struct SectorCount {
    int sector;
    std::int64_t count;
};

/// Exact tally for sectors 1..sector_total; throws SampleError on a tag outside that range.
std::vector<SectorCount> count_per_sector(const Deployment& deployment);

/// Positions of the points tagged with `sector`.
std::vector<Point2> sector_points(const Deployment& deployment, int sector);

/// Asymptotic Kolmogorov distribution P(sqrt(n) D_n <= x).
double kolmogorov_cdf(double x);

/// c(alpha) with kolmogorov_cdf(c) = 1 - alpha.
double kolmogorov_critical(double alpha);

/// sup |F_n - F| of a one-sample KS test.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

struct KsResult {
    std::size_t n;
    double statistic;
    double critical;
    bool pass;
};

/// Radii against F(r) = (r^2 - L1^2) / (L2^2 - L1^2). Requires n >= 30.
KsResult radial_ks(std::span<const Point2> points, double inner, double outer, double alpha = kDefaultKsAlpha);

struct Chi2Result {
    double statistic;
    int dof;
    double critical;
    double p_value;
    bool pass;
};

double chi2_critical(int dof, double alpha);

/// Pearson chi-square of observed counts against equal expected counts.
Chi2Result chi2_equal_expected(std::span<const std::int64_t> counts, double alpha = kDefaultChi2Alpha);

/// Angle histogram over k equal wedges of [0, 2 pi). Requires k >= 2 and n >= 5 k.
Chi2Result angular_chi2(std::span<const Point2> points, int bins, double alpha = kDefaultChi2Alpha);

/// b_j = sqrt(L1^2 + (j / k) (L2^2 - L1^2)), j = 0..k.
std::vector<double> equal_area_boundaries(double inner, double outer, int shells);

/// Equal-area shells x equal wedges of an annulus. Requires n >= 5 k_r k_theta.
Chi2Result areal_chi2(std::span<const Point2> points, double inner, double outer, int shells, int wedges,
                      double alpha = kDefaultChi2Alpha);

/// Equal cells of an axis-aligned rectangle.
Chi2Result rect_grid_chi2(std::span<const Point2> points, const Rect& rect, int columns, int rows,
                          double alpha = kDefaultChi2Alpha);

struct SectorDensity {
    int sector;
    std::int64_t count;
    double area;
    double density;
};

/// Realised density count_i / A_i per sector (layer areas in automatic mode).
std::vector<SectorDensity> empirical_density_profile(const Deployment& deployment);

double coefficient_of_variation(std::span<const double> values);

struct SectorTests {
    int sector;
    std::optional<KsResult> radial;
    std::optional<Chi2Result> angular;
    std::optional<Chi2Result> areal;
    std::vector<std::string> skipped;
};

struct MembershipViolation {
    std::size_t point_index;  // 0-based row in generation order
    int sector;
    double x;
    double y;
};

struct ReportOptions {
    double ks_alpha = kDefaultKsAlpha;
    double chi2_alpha = kDefaultChi2Alpha;
    int max_angular_bins = 36;
    int max_grid = 8;
};

struct StatReport {
    double ks_alpha;
    double chi2_alpha;
    std::int64_t total;
    std::vector<SectorDensity> per_sector;
    std::vector<SectorTests> tests;
    std::optional<Chi2Result> angular_all;  // automatic mode: every layer is rotation invariant
    std::vector<MembershipViolation> outside;
    std::vector<std::string> count_mismatches;

    bool pass() const;
};

/// Runs counts, membership, and every applicable distributional test.
/// Tests whose minimum sample size is not met are recorded as skipped.
StatReport build_report(const Deployment& deployment, const ReportOptions& options = {});

}  // namespace asd
