#ifndef SITEPI_SENSITIVITY_HPP
#define SITEPI_SENSITIVITY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "sitepi/dynamics.hpp"
#include "sitepi/params.hpp"

namespace sitepi {

/// Row-major sample matrix: n rows, one column per parameter.
using SampleMatrix = std::vector<std::vector<double>>;

/// Stratified uniform design: one draw per equal-probability stratum per
/// parameter, strata independently permuted across parameters.
/// Deterministic for a given seed. Requires lo < hi for every range, n >= 2.
SampleMatrix lhs_sample(const std::vector<ParamRange>& ranges, std::size_t n,
                        std::uint64_t seed);

struct PrccResult {
    std::vector<double> prcc;
    std::vector<double> ci_lo;
    std::vector<double> ci_hi;
};

/// Partial rank correlation of each input column with the output,
/// controlling for the remaining columns. Confidence intervals are
/// percentile bootstrap over row resamples. Throws on constant or
/// collinear columns.
PrccResult prcc(const SampleMatrix& inputs, const std::vector<double>& output,
                std::size_t n_boot, double level, std::uint64_t seed);

enum class OutputSelector { FWildTotal, SI, FWI, Ih };
const char* to_string(OutputSelector s);
OutputSelector output_selector_from_string(const std::string& s);

struct SensitivityOptions {
    std::vector<ParamRange> ranges;  ///< empty = default_ranges()
    OutputSelector selector = OutputSelector::FWildTotal;
    double window_lo = 800.0;        ///< output statistic: mean over [lo, hi]
    double window_hi = 1000.0;
    std::size_t n = 500;
    std::size_t n_boot = 1000;
    double level = 0.95;
    std::uint64_t seed = 1;
    ModelParams base;                ///< defaults applied before each row
    Schedule schedule;               ///< horizon must cover the window
    unsigned workers = 0;            ///< 0: SITEPI_THREADS env or hardware count
    /// Re-derive mu_A2 from the carrying capacity K = 3 N_h after each row
    /// (the model's own constitutive relation) instead of sampling it as an
    /// independent axis.
    bool link_mu_A2_to_capacity = false;

    SensitivityOptions();
};

struct PrccEntry {
    std::string name;
    double prcc;
    double ci_lo;
    double ci_hi;
};

struct SensitivityReport {
    std::vector<PrccEntry> entries;  ///< sorted most negative to most positive
    std::size_t n = 0;
    std::size_t n_boot = 0;
    double level = 0.95;
    std::uint64_t seed = 0;
    double window_lo = 0, window_hi = 0;
    std::string output_variable;
    std::size_t failed_rows = 0;
};

/// Samples the ranges, simulates each row, averages the selected output over
/// the window and ranks the partial correlations. Zero-width ranges pin the
/// parameter and report a zero coefficient. Rows whose integration fails are
/// dropped; more than 1% failures is an error.
SensitivityReport sensitivity_run(const SensitivityOptions& opts);

/// Worker-count resolution shared by the concurrent drivers.
unsigned resolve_workers(unsigned requested);

} // namespace sitepi

#endif
